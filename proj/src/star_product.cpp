#include "ncdg/star_product.hpp"

#include <functional>
#include <map>
#include <mutex>

#include "ncdg/errors.hpp"
#include "ncdg/tensor.hpp"

namespace ncdg {

ThetaMatrix::ThetaMatrix(std::vector<std::vector<Rational>> entries) : m_(std::move(entries)) {
  int n = dim();
  if (n == 0) throw ValidationError("theta must be non-empty");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(m_[i].size()) != n) throw ValidationError("theta must be square");
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (m_[i][j] != -m_[j][i])
        throw ValidationError("theta is not skew-symmetric at " + index_label({i, j}));
}

ThetaMatrix ThetaMatrix::zero(int n) {
  return ThetaMatrix(std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)));
}

ThetaMatrix ThetaMatrix::single(int n, int i, int j, const Rational& value) {
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  m.at(i).at(j) = value;
  m.at(j).at(i) = -value;
  return ThetaMatrix(std::move(m));
}

bool ThetaMatrix::is_zero() const {
  for (const auto& row : m_)
    for (const auto& x : row)
      if (sgn(x) != 0) return false;
  return true;
}

BidifferentialOperator::BidifferentialOperator(int dim, std::vector<BidifferentialTerm> terms)
    : dim_(dim), terms_(std::move(terms)) {
  for (const auto& t : terms_)
    if (static_cast<int>(t.left.size()) != dim_ || static_cast<int>(t.right.size()) != dim_)
      throw ValidationError("bidifferential term multi-index length differs from dimension");
}

bool BidifferentialOperator::is_unital() const {
  for (const auto& t : terms_) {
    if (t.coefficient.is_zero()) continue;
    int l = 0, r = 0;
    for (int a : t.left) l += a;
    for (int b : t.right) r += b;
    if (l == 0 || r == 0) return false;
  }
  return true;
}

namespace {

// Memoized derivatives of one argument, each built from a cached lower one.
class DerivativeCache {
 public:
  explicit DerivativeCache(const Scalar& base) : base_(base) {}

  const Scalar& get(const MultiIndex& alpha) {
    auto it = memo_.find(alpha);
    if (it != memo_.end()) return it->second;
    int v = static_cast<int>(alpha.size()) - 1;
    while (v >= 0 && alpha[v] == 0) --v;
    Scalar d = base_;
    if (v >= 0) {
      MultiIndex lower = alpha;
      --lower[v];
      d = get(lower).partial(v);
    }
    return memo_.emplace(alpha, std::move(d)).first->second;
  }

 private:
  Scalar base_;
  std::map<MultiIndex, Scalar> memo_;
};

// Terms are grouped by left multi-index so each distinct left derivative costs one product.
Scalar apply_cached(const BidifferentialOperator& op, DerivativeCache& u, DerivativeCache& v) {
  std::map<MultiIndex, Scalar> right_sums;
  for (const auto& t : op.terms()) {
    const Scalar& dv = v.get(t.right);
    if (dv.is_zero()) continue;
    Scalar& slot = right_sums[t.left];
    slot = slot + t.coefficient * dv;
  }
  Scalar acc;
  for (const auto& [left, rhs] : right_sums) {
    if (rhs.is_zero()) continue;
    const Scalar& du = u.get(left);
    if (du.is_zero()) continue;
    acc = acc + du * rhs;
  }
  return acc;
}

}  // namespace

Scalar BidifferentialOperator::apply(const Scalar& u, const Scalar& v) const {
  DerivativeCache cu(u), cv(v);
  return apply_cached(*this, cu, cv);
}

BidifferentialOperator moyal_operator(const ThetaMatrix& theta, int q) {
  std::vector<std::vector<Rational>> a(theta.dim(), std::vector<Rational>(theta.dim()));
  for (int i = 0; i < theta.dim(); ++i)
    for (int j = 0; j < theta.dim(); ++j) a[i][j] = theta(i, j);
  return exponential_operator(a, q);
}

BidifferentialOperator exponential_operator(const std::vector<std::vector<Rational>>& theta,
                                            int q) {
  int n = static_cast<int>(theta.size());
  struct Pair {
    int i, j;
    Rational t;
  };
  std::vector<Pair> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (sgn(theta[i][j]) != 0) pairs.push_back({i, j, theta[i][j]});
  std::map<std::pair<MultiIndex, MultiIndex>, Rational> acc;
  if (q == 0) {
    acc[{MultiIndex(n, 0), MultiIndex(n, 0)}] = 1;
  } else if (!pairs.empty()) {
    std::vector<int> k(pairs.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t p, int left) {
      if (p + 1 == pairs.size()) {
        k[p] = left;
        Rational c = 1;
        MultiIndex a(n, 0), b(n, 0);
        for (std::size_t s = 0; s < pairs.size(); ++s) {
          Rational pw = 1;
          for (int e = 0; e < k[s]; ++e) pw *= pairs[s].t;
          c *= pw * inverse_factorial(k[s]);
          a[pairs[s].i] += k[s];
          b[pairs[s].j] += k[s];
        }
        acc[{a, b}] += c;
        return;
      }
      for (int v = left; v >= 0; --v) {
        k[p] = v;
        rec(p + 1, left - v);
      }
    };
    rec(0, q);
  }
  std::vector<BidifferentialTerm> terms;
  for (auto& [ab, c] : acc)
    if (sgn(c) != 0) terms.push_back({Scalar(c), ab.first, ab.second});
  return BidifferentialOperator(n, std::move(terms));
}

struct StarProduct::Cache {
  std::mutex mu;
  std::vector<std::unique_ptr<BidifferentialOperator>> ops;
};

StarProduct StarProduct::moyal(ThetaMatrix theta) {
  StarProduct s;
  s.dim_ = theta.dim();
  s.theta_ = std::make_shared<const ThetaMatrix>(std::move(theta));
  s.cache_ = std::make_shared<Cache>();
  return s;
}

StarProduct StarProduct::general(int dim, std::vector<BidifferentialOperator> ops) {
  for (std::size_t q = 0; q < ops.size(); ++q) {
    if (ops[q].dim() != dim && !ops[q].empty())
      throw ValidationError("B_" + std::to_string(q + 1) + " has the wrong dimension");
    if (!ops[q].is_unital())
      throw ValidationError("B_" + std::to_string(q + 1) +
                            " is not unital: every term must differentiate both arguments");
  }
  StarProduct s;
  s.dim_ = dim;
  s.ops_ = std::move(ops);
  return s;
}

const BidifferentialOperator& StarProduct::op(int q) const {
  static const BidifferentialOperator empty;
  if (q < 1) throw OrderOutOfRange("B_q is defined for q >= 1");
  if (!theta_) return q <= static_cast<int>(ops_.size()) ? ops_[q - 1] : empty;
  std::lock_guard<std::mutex> lock(cache_->mu);
  auto& v = cache_->ops;
  while (static_cast<int>(v.size()) < q)
    v.push_back(std::make_unique<BidifferentialOperator>(
        moyal_operator(*theta_, static_cast<int>(v.size()) + 1)));
  return *v[q - 1];
}

Scalar StarProduct::apply(int q, const Scalar& u, const Scalar& v) const {
  if (u.is_zero() || v.is_zero()) return Scalar();
  if (q == 0) return u * v;
  if (u.is_constant() || v.is_constant()) return Scalar();
  return op(q).apply(u, v);
}

Scalar mu_q(const Scalar& u, const Scalar& v, int q, const ThetaMatrix& theta) {
  if (q == 0) return u * v;
  return moyal_operator(theta, q).apply(u, v);
}

Scalar mu_q_index_sum(const Scalar& u, const Scalar& v, int q, const ThetaMatrix& theta) {
  int n = theta.dim();
  if (q == 0) return u * v;
  Scalar acc;
  std::vector<int> is(q, 0), js(q, 0);
  std::function<void(int)> rec = [&](int depth) {
    if (depth == 2 * q) {
      Rational c = inverse_factorial(q);
      MultiIndex a(n, 0), b(n, 0);
      for (int s = 0; s < q; ++s) {
        c *= theta(is[s], js[s]);
        ++a[is[s]];
        ++b[js[s]];
      }
      if (sgn(c) == 0) return;
      acc = acc + u.derivative(a) * v.derivative(b) * Scalar(c);
      return;
    }
    for (int x = 0; x < n; ++x) {
      (depth < q ? is[depth] : js[depth - q]) = x;
      rec(depth + 1);
    }
  };
  rec(0);
  return acc;
}

HbarSeries star_mul(const HbarSeries& a, const HbarSeries& b, const StarProduct& s) {
  if (a.truncation() != b.truncation())
    throw OrderMismatch("star product of series truncated at " + std::to_string(a.truncation()) +
                        " and " + std::to_string(b.truncation()));
  int n = a.truncation();
  std::vector<Scalar> r(n + 1);
  for (int i = 0; i <= n; ++i) {
    if (a[i].is_zero()) continue;
    DerivativeCache ca(a[i]);
    for (int j = 0; i + j <= n; ++j) {
      if (b[j].is_zero()) continue;
      DerivativeCache cb(b[j]);
      for (int t = 0; i + j + t <= n; ++t) {
        Scalar term;
        if (t == 0)
          term = a[i] * b[j];
        else if (!a[i].is_constant() && !b[j].is_constant())
          term = apply_cached(s.op(t), ca, cb);
        if (!term.is_zero()) r[i + j + t] = r[i + j + t] + term;
      }
    }
  }
  return HbarSeries(std::move(r));
}

HbarSeries star_mul(const HbarSeries& a, const HbarSeries& b, const HbarSeries& c,
                    const StarProduct& s) {
  return star_mul(star_mul(a, b, s), c, s);
}

Scalar poisson_bracket(const StarProduct& s, const Scalar& u, const Scalar& v) {
  return (s.apply(1, u, v) - s.apply(1, v, u)).scaled(Rational(1, 2));
}

CheckResult check_leibniz(const StarProduct& s,
                          const std::vector<std::pair<HbarSeries, HbarSeries>>& samples) {
  const std::string name = "leibniz";
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& [u, v] = samples[k];
    HbarSeries uv = star_mul(u, v, s);
    for (int i = 0; i < s.dim(); ++i) {
      HbarSeries lhs = uv.partial(i);
      HbarSeries rhs = star_mul(u.partial(i), v, s) + star_mul(u, v.partial(i), s);
      int q = first_difference(lhs, rhs);
      if (q >= 0)
        return CheckResult::fail(name, "d_i(u*v) differs from (d_i u)*v + u*(d_i v)",
                                 {{"sample", std::to_string(k)},
                                  {"i", std::to_string(i + 1)},
                                  {"order", std::to_string(q)},
                                  {"lhs", lhs[q].to_string()},
                                  {"rhs", rhs[q].to_string()}});
    }
  }
  return CheckResult::pass(name, std::to_string(samples.size()) + " samples");
}

CheckResult check_associativity(const StarProduct& s,
                                const std::vector<std::vector<HbarSeries>>& triples) {
  const std::string name = "associativity";
  for (std::size_t k = 0; k < triples.size(); ++k) {
    const auto& t = triples[k];
    if (t.size() != 3) throw std::invalid_argument("associativity samples must be triples");
    HbarSeries lhs = star_mul(star_mul(t[0], t[1], s), t[2], s);
    HbarSeries rhs = star_mul(t[0], star_mul(t[1], t[2], s), s);
    int q = first_difference(lhs, rhs);
    if (q >= 0)
      return CheckResult::fail(name, "(a*b)*c differs from a*(b*c)",
                               {{"triple", std::to_string(k)},
                                {"order", std::to_string(q)},
                                {"lhs", lhs[q].to_string()},
                                {"rhs", rhs[q].to_string()}});
  }
  return CheckResult::pass(name, std::to_string(triples.size()) + " triples");
}

CheckResult check_unitality(const StarProduct& s, const std::vector<HbarSeries>& samples) {
  const std::string name = "unitality";
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& u = samples[k];
    HbarSeries one = HbarSeries::constant(u.truncation(), Scalar(1));
    if (star_mul(one, u, s) != u || star_mul(u, one, s) != u)
      return CheckResult::fail(name, "1*u or u*1 differs from u", {{"sample", std::to_string(k)}});
  }
  return CheckResult::pass(name, std::to_string(samples.size()) + " samples");
}

}  // namespace ncdg
