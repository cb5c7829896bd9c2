#pragma once

#include <vector>

#include "ncdg/connection.hpp"

namespace ncdg {

using VectorFieldCoefficients = std::vector<HbarSeries>;

enum class Side { left, right };

// Left: (nabla_i V)^m = d_i a^m + a^p * Gamma^m_{ip}.
// Right: (nabla~_i V)^m = d_i a^m + Gamma~^m_{ip} * a^p.
VectorFieldCoefficients covariant_derivative_vector(const ConnectionCoefficients& conn,
                                                    const VectorFieldCoefficients& v, int i,
                                                    Side side, const StarProduct& s);

// Components of [nabla_i, nabla_j] E_k (or the right analogue on E~_k).
VectorFieldCoefficients curvature_operator_components(const ConnectionCoefficients& conn, int i,
                                                      int j, int k, Side side,
                                                      const StarProduct& s);

// c(k, i, j, m) = m-th component of [nabla_i, nabla_j] E_k.
struct CurvatureOperators {
  SeriesArray c;
};

CurvatureOperators curvature_operators(const ConnectionCoefficients& conn, Side side,
                                       const StarProduct& s);

struct RiemannField {
  SeriesArray r;        // (l, k, i, j) -> R_{lkij}
  SeriesArray r_tilde;  // right curvature, must equal r
};

// R_{lkij} = c^m_{kij} * g_{ml}
SeriesArray riemann_from_operators(const NCMetric& g, const CurvatureOperators& ops);
// The two component formulas in terms of Gamma and Gamma~ respectively.
SeriesArray riemann_from_gamma(const NCMetric& g, const InverseMetric& ginv,
                               const ConnectionCoefficients& conn);
SeriesArray riemann_from_gamma_tilde(const NCMetric& g, const InverseMetric& ginv,
                                     const ConnectionCoefficients& conn);
// R~_{lkij} = -g_{km} * c~^m_{lij}
SeriesArray right_riemann(const NCMetric& g, const CurvatureOperators& right_ops);

// Computes all three routes plus the right curvature; throws
// InternalDisagreement unless all four agree exactly.
RiemannField riemann(const NCMetric& g, const InverseMetric& ginv,
                     const ConnectionCoefficients& conn);
RiemannField riemann(const NCMetric& g, const InverseMetric& ginv,
                     const ConnectionCoefficients& conn, const CurvatureOperators& left_ops);

struct RicciBundle {
  SeriesArray ricci;        // (k, j) -> R_{kj} = R_{lkij} * g^{li}
  SeriesArray theta;        // (i, l) -> Theta_{il} = g^{jk} * R_{lkij}
  SeriesArray ricci_up;     // (p, j) -> R^p_j = g^{pk} * R_{lkij} * g^{li}
  SeriesArray theta_up;     // (p, i) -> Theta^p_i = g^{jk} * R_{lkij} * g^{lp}
  HbarSeries scalar;        // R^j_j
  HbarSeries scalar_theta;  // Theta^i_i
};

// Throws InternalDisagreement if the two traces differ.
RicciBundle ricci_bundle(const NCMetric& g, const InverseMetric& ginv, const RiemannField& riem);

struct CurvatureDerivative {
  SeriesArray vectors;  // (s, k, i, j, m) -> m-th component of (nabla_s R)_{E_i E_j} E_k
  SeriesArray r;        // (s, l, k, i, j) -> nabla_s R_{lkij}
  SeriesArray ricci_up;  // (s, p, j) -> nabla_s R^p_j
  SeriesArray theta_up;  // (s, p, i) -> nabla_s Theta^p_i
  SeriesArray scalar;    // (s) -> nabla_s R
};

CurvatureDerivative curvature_covariant_derivative(const NCMetric& g, const InverseMetric& ginv,
                                                   const ConnectionCoefficients& conn,
                                                   const CurvatureOperators& ops);

CheckResult first_bianchi_check(const CurvatureOperators& ops, const std::string& name = "first-bianchi");
CheckResult second_bianchi_check(const CurvatureDerivative& d);
// sum_s nabla_s R^s_j + sum_s nabla_s Theta^s_j - nabla_j R = 0
CheckResult contracted_bianchi_check(const CurvatureDerivative& d);

struct RicciEquivalenceReport {
  CheckResult hypotheses;
  CheckResult connection_parity;
  CheckResult riemann_parity;
  CheckResult ricci_equivalence;
};

// R_{lkij}[q] = -(-1)^q R_{klij}[q]
CheckResult riemann_parity_relation(const RiemannField& riem);
// R_{ij}[q] = (-1)^q Theta_{ji}[q] and R^i_j[q] = (-1)^q Theta^i_j[q]
CheckResult ricci_equivalence_relation(const RicciBundle& b);
RicciEquivalenceReport ricci_equivalence_check(const NCMetric& g, const ChiralCoefficients& ups,
                                               const ConnectionCoefficients& conn,
                                               const RiemannField& riem, const RicciBundle& b);

}  // namespace ncdg
