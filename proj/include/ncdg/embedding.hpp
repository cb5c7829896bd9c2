#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ncdg/check.hpp"
#include "ncdg/closed_form.hpp"
#include "ncdg/connection.hpp"
#include "ncdg/metric.hpp"

namespace ncdg {

// X : U -> R^{p, m-p}; eta holds the diagonal of the flat metric.
struct IsometricEmbedding {
  ChartPtr chart;
  std::vector<Scalar> x;
  std::vector<int> eta;

  IsometricEmbedding(ChartPtr chart, std::vector<Scalar> x, std::vector<int> eta);
  int dim() const { return chart->dim(); }
  int codim() const { return static_cast<int>(x.size()); }
};

// Signature with the first p entries -1 and the rest +1.
std::vector<int> signature(int m, int p);

// g_ij = sum_a eta_aa d_i X^a * d_j X^a
NCMetric fluctuation_metric(const IsometricEmbedding& x, const StarProduct& s, int N);
// sum_a eta_aa d_i X^a d_j X^a with the pointwise product.
ScalarMatrix classical_pullback(const IsometricEmbedding& x);

struct EmbeddingGeometry {
  ConnectionCoefficients conn;
  ChiralCoefficients ups;
};

// Gamma_ijk = sum eta d_i d_j X * d_k X, Gamma~_ijk = sum eta d_k X * d_i d_j X and
// Upsilon = Gamma - Gamma~, raised with ginv.
EmbeddingGeometry embedding_connection_and_chiral(const IsometricEmbedding& x, const NCMetric& g,
                                                  const InverseMetric& ginv);

// Radial profile f(rho) given by polynomial coefficients in rho or by the
// derivative table f^(k)(rho0).
struct RadialProfile {
  bool polynomial = true;
  std::vector<Rational> data;

  static RadialProfile identity() { return {true, {Rational(0), Rational(1)}}; }
};

// Coordinates (rho, theta_1, ..., theta_{n-1});
// X^1..X^{m-n} = f^a(rho), X^{m-n+1} = f sin theta_{n-1} ... sin theta_1,
// X^{m-n+2} = f sin theta_{n-1} ... sin theta_2 cos theta_1, ...,
// X^m = f^m cos theta_{n-1}. The Moyal matrix has theta^{2l} = -theta^{l2} = lambda.
struct SphericalEmbeddingSpec {
  int n = 3, m = 4, p = 0, l = 3;
  Rational lambda = 1;
  std::vector<RadialProfile> outer;  // f^1 .. f^{m-n}
  RadialProfile f;                   // f^{m-n+1} = f^{m-n+2}
  std::vector<RadialProfile> inner;  // f^{m-n+3} .. f^m
};

// rho at the base point and (sin, cos) of each angle theta_1..theta_{n-1}.
struct SphericalBase {
  Rational rho;
  std::vector<std::pair<Rational, Rational>> angles;
};

// Throws SpecViolation when the hypotheses fail.
void validate_spherical(const SphericalEmbeddingSpec& spec, const SphericalBase& base);
ThetaMatrix spherical_theta(const SphericalEmbeddingSpec& spec);
IsometricEmbedding spherical_embedding(const SphericalEmbeddingSpec& spec,
                                       const SphericalBase& base, int order);
// Descriptor of g^{(a0,a0)}_ij + g^{(a0+1,a0+1)}_ij, 0-based (i, j).
std::string spherical_closed_form(const SphericalEmbeddingSpec& spec, int i, int j);

struct SphericalFluctuation {
  IsometricEmbedding embedding;
  NCMetric g;
  SeriesArray block;  // the two non-commuting components only
  ClosedFormBindings bindings;
  std::vector<CheckResult> checks;
};

SphericalFluctuation spherical_fluctuation(const SphericalEmbeddingSpec& spec,
                                           const SphericalBase& base, int N, int order);

// d/d theta_1 of every entry is zero within its budget.
CheckResult check_theta1_independence(const SeriesArray& a, const std::string& name);
// g_{2k} = -g_{k2} for k != 2, every other pair symmetric.
CheckResult check_spherical_transpose(const SeriesArray& g);

}  // namespace ncdg
