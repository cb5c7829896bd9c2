#pragma once

#include <vector>

#include "ncdg/check.hpp"
#include "ncdg/star_product.hpp"
#include "ncdg/tensor.hpp"

namespace ncdg {

struct NCMetric {
  SeriesArray g;  // g(i, j) = g_{ij}
  StarProduct star;

  NCMetric(SeriesArray g, StarProduct star);
  int dim() const { return g.dim(); }
  int truncation() const { return g.truncation(); }
};

struct InverseMetric {
  SeriesArray g;  // g(i, j) = g^{ij}
};

using ScalarMatrix = std::vector<std::vector<Scalar>>;

// Exact determinant of g_{ij}[0] at the base point is nonzero.
bool check_invertible(const NCMetric& g);
// Pointwise inverse of a matrix of scalars by Gauss-Jordan elimination.
ScalarMatrix pointwise_inverse(const ScalarMatrix& m);

// g^{ij} built from g * g^{-1} = 1 order by order.
SeriesArray right_inverse_recursion(const NCMetric& g);
// g^{ij} built from g^{-1} * g = 1 order by order.
SeriesArray left_inverse_recursion(const NCMetric& g);
// Runs both recursions, requires them to agree and checks both defining
// products. Throws NotInvertible or InternalDisagreement.
InverseMetric star_inverse(const NCMetric& g);

// sum_k a(i, k) * b(k, j) with the star product of g.
SeriesArray star_matmul(const SeriesArray& a, const SeriesArray& b, const StarProduct& s);
SeriesArray identity_matrix(int n, int truncation);

// g_{ij}[q] = (-1)^q g_{ji}[q]
CheckResult check_metric_parity(const SeriesArray& g, const std::string& name = "metric-parity");
CheckResult check_inverse_parity(const NCMetric& g, const InverseMetric& ginv);
// (g^{ij} * f * g^{kl})[q] = (-1)^q (g^{lk} * f * g^{ji})[q]
CheckResult check_gfg_lemma(const NCMetric& g, const InverseMetric& ginv,
                            const std::vector<Scalar>& samples);
// (u * g^{ij} * v)[q] = (-1)^q (v * g^{ji} * u)[q]
CheckResult check_ugv_lemma(const NCMetric& g, const InverseMetric& ginv,
                            const std::vector<std::pair<Scalar, Scalar>>& samples);

}  // namespace ncdg
