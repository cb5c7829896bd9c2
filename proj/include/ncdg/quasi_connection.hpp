#pragma once

#include <cstdint>
#include <vector>

#include "ncdg/curvature.hpp"
#include "ncdg/embedding.hpp"

namespace ncdg {

// An element of A_U^m.
using AmbientVector = std::vector<HbarSeries>;

struct StarMetric {
  NCMetric g;
  InverseMetric ginv;
};

// Y *_eta Z = sum_a eta_aa Y^a * Z^a
HbarSeries eta_pair(const AmbientVector& y, const AmbientVector& z, const std::vector<int>& eta,
                    const StarProduct& s);

// Throws NonAssociative unless (a*b)*c = a*(b*c) on random jets of the chart.
// Moyal products are associative by construction and are not sampled.
void require_associative(const StarProduct& s, const ChartPtr& chart, int order, int N,
                         std::uint64_t seed = 0);

// *g_ij = d_i X *_eta d_j X with its two-sided inverse. Runs the
// associativity gate first.
StarMetric star_metric_from_embedding(const IsometricEmbedding& x, const StarProduct& s, int N);

AmbientVector tangent_vector(const IsometricEmbedding& x, int i, int N);
// sigma(a^i * E_i) = a^i * d_i X and sigma~(E~_i * a^i) = d_i X * a^i.
AmbientVector sigma(const IsometricEmbedding& x, const VectorFieldCoefficients& a,
                    const StarProduct& s);
AmbientVector sigma_tilde(const IsometricEmbedding& x, const VectorFieldCoefficients& a,
                          const StarProduct& s);

// y^i = Y *_eta d_j X * g^{ji}, the coefficients of pr_1(Y).
VectorFieldCoefficients sigma_tangential_coefficients(const AmbientVector& y,
                                                      const IsometricEmbedding& x,
                                                      const StarMetric& sg);
// y~^i = g^{ij} * (d_j X *_eta Y), the coefficients of pr~_1(Y).
VectorFieldCoefficients sigma_tilde_tangential_coefficients(const AmbientVector& y,
                                                            const IsometricEmbedding& x,
                                                            const StarMetric& sg);

// sigma^{-1}(pr_1(d_i sigma(V))) and its right analogue, computed literally.
VectorFieldCoefficients quasi_covariant_derivative(const IsometricEmbedding& x,
                                                   const StarMetric& sg,
                                                   const VectorFieldCoefficients& v, int i,
                                                   Side side);

struct QuasiConnection {
  SeriesArray upper;        // (i, j, k) -> *Gamma^k_{ij}
  SeriesArray upper_tilde;  // (i, j, k) -> *Gamma~^k_{ij}
};

// Both quasi-connections of the embedding; asserts torsion freeness.
QuasiConnection quasi_connection(const IsometricEmbedding& x, const StarMetric& sg);

// Components c(k, i, j, m) of [*nabla_i, *nabla_j] E_k (or the right analogue
// on E~_k) applied literally, without assuming a Leibniz rule.
CurvatureOperators star_curvature_operators(const IsometricEmbedding& x, const StarMetric& sg,
                                            const QuasiConnection& qc, Side side);

struct StarCurvatureBundle {
  CurvatureOperators left_ops, right_ops;
  SeriesArray r;        // *R_lkij = c^m_kij * g_ml
  SeriesArray r_tilde;  // *R~_lkij = -g_km * c~^m_lij
  RicciBundle left;     // *R_kj, *Theta_il, *R^p_j, *Theta^p_i, *R
  RicciBundle right;    // the same contractions of *R~
};

StarCurvatureBundle star_curvature_bundle(const IsometricEmbedding& x, const StarMetric& sg,
                                          const QuasiConnection& qc);

CheckResult first_bianchi_star_check(const CurvatureOperators& ops, const std::string& name);
CheckResult check_quasi_torsion(const QuasiConnection& qc);

}  // namespace ncdg
