#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "ncdg/check.hpp"
#include "ncdg/series.hpp"

namespace ncdg {

class ThetaMatrix {
 public:
  // Throws ValidationError unless entries form a skew-symmetric square matrix.
  explicit ThetaMatrix(std::vector<std::vector<Rational>> entries);
  static ThetaMatrix zero(int n);
  // theta^{ij} = -theta^{ji} = value, 0-based i, j.
  static ThetaMatrix single(int n, int i, int j, const Rational& value);

  int dim() const { return static_cast<int>(m_.size()); }
  const Rational& operator()(int i, int j) const { return m_[i][j]; }
  bool is_zero() const;

 private:
  std::vector<std::vector<Rational>> m_;
};

struct BidifferentialTerm {
  Scalar coefficient;
  MultiIndex left;
  MultiIndex right;
};

// sum of c * (d^left u)(d^right v)
class BidifferentialOperator {
 public:
  BidifferentialOperator() = default;
  BidifferentialOperator(int dim, std::vector<BidifferentialTerm> terms);

  int dim() const { return dim_; }
  const std::vector<BidifferentialTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  // Every term differentiates both arguments at least once.
  bool is_unital() const;
  Scalar apply(const Scalar& u, const Scalar& v) const;

 private:
  int dim_ = 0;
  std::vector<BidifferentialTerm> terms_;
};

// (1/q!) (a^{ij} d_i (x) d_j)^q grouped multinomially; a need not be skew.
BidifferentialOperator exponential_operator(const std::vector<std::vector<Rational>>& a, int q);
// The mu_q term list of the Moyal product.
BidifferentialOperator moyal_operator(const ThetaMatrix& theta, int q);

class StarProduct {
 public:
  static StarProduct moyal(ThetaMatrix theta);
  // ops[0] is B_1. Orders beyond the list are zero. Throws ValidationError
  // when a term is not unital or has the wrong dimension.
  static StarProduct general(int dim, std::vector<BidifferentialOperator> ops);

  bool is_moyal() const { return theta_ != nullptr; }
  const ThetaMatrix& theta() const { return *theta_; }
  int dim() const { return dim_; }
  // B_q for q >= 1.
  const BidifferentialOperator& op(int q) const;
  // B_q(u, v) with B_0 the pointwise product.
  Scalar apply(int q, const Scalar& u, const Scalar& v) const;

 private:
  struct Cache;
  int dim_ = 0;
  std::shared_ptr<const ThetaMatrix> theta_;
  std::vector<BidifferentialOperator> ops_;
  std::shared_ptr<Cache> cache_;
};

// 0-based coordinate indices inside the library; q >= 0.
Scalar mu_q(const Scalar& u, const Scalar& v, int q, const ThetaMatrix& theta);
// The literal q-fold index-tuple sum, kept as a cross-check of mu_q.
Scalar mu_q_index_sum(const Scalar& u, const Scalar& v, int q, const ThetaMatrix& theta);
HbarSeries star_mul(const HbarSeries& a, const HbarSeries& b, const StarProduct& s);
// a * b * c, left to right.
HbarSeries star_mul(const HbarSeries& a, const HbarSeries& b, const HbarSeries& c,
                    const StarProduct& s);
Scalar poisson_bracket(const StarProduct& s, const Scalar& u, const Scalar& v);

CheckResult check_leibniz(const StarProduct& s,
                          const std::vector<std::pair<HbarSeries, HbarSeries>>& samples);
CheckResult check_associativity(const StarProduct& s,
                                const std::vector<std::vector<HbarSeries>>& triples);
CheckResult check_unitality(const StarProduct& s, const std::vector<HbarSeries>& samples);

}  // namespace ncdg
