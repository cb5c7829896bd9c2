#include "ncdg/jet.hpp"

#include <map>
#include <mutex>
#include <sstream>

#include "ncdg/errors.hpp"

namespace ncdg {

Chart::Chart(std::vector<Rational> base_point) : base_point_(std::move(base_point)) {
  if (base_point_.empty()) throw ShapeMismatch("chart needs at least one coordinate");
}

ChartPtr make_chart(std::vector<Rational> base_point) {
  return std::make_shared<const Chart>(std::move(base_point));
}

namespace {

std::uint64_t choose(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

void enumerate_degree(int n, int d, std::vector<std::uint16_t>& prefix,
                      std::vector<std::uint16_t>& out) {
  int pos = static_cast<int>(prefix.size());
  if (pos == n - 1) {
    prefix.push_back(static_cast<std::uint16_t>(d));
    out.insert(out.end(), prefix.begin(), prefix.end());
    prefix.pop_back();
    return;
  }
  for (int a = d; a >= 0; --a) {
    prefix.push_back(static_cast<std::uint16_t>(a));
    enumerate_degree(n, d - a, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

MonomialBasis::MonomialBasis(int num_vars, int degree) : n_(num_vars), degree_(degree) {
  if (n_ < 1 || degree_ < 0) throw ShapeMismatch("invalid monomial basis shape");
  for (int d = 0; d <= degree_; ++d) counts_.push_back(choose(d + n_, n_));
  std::vector<std::uint16_t> prefix;
  for (int d = 0; d <= degree_; ++d) enumerate_degree(n_, d, prefix, exps_);
  std::size_t total = counts_.back();
  degrees_.resize(total);
  for (std::size_t i = 0; i < total; ++i) {
    int s = 0;
    for (int v = 0; v < n_; ++v) s += exps_[i * n_ + v];
    degrees_[i] = s;
  }
  row_offsets_.resize(total + 1);
  row_offsets_[0] = 0;
  for (std::size_t i = 0; i < total; ++i)
    row_offsets_[i + 1] = row_offsets_[i] + count(degree_ - degrees_[i]);
  products_.resize(row_offsets_[total]);
  std::vector<std::uint16_t> tmp(n_);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t lim = count(degree_ - degrees_[i]);
    for (std::size_t j = 0; j < lim; ++j) {
      for (int v = 0; v < n_; ++v) tmp[v] = exps_[i * n_ + v] + exps_[j * n_ + v];
      products_[row_offsets_[i] + j] = static_cast<std::uint32_t>(index_of(tmp.data()));
    }
  }
  raised_.assign(total * n_, 0);
  for (std::size_t i = 0; i < total; ++i) {
    if (degrees_[i] >= degree_) continue;
    for (int v = 0; v < n_; ++v) {
      for (int w = 0; w < n_; ++w) tmp[w] = exps_[i * n_ + w];
      ++tmp[v];
      raised_[i * n_ + v] = static_cast<std::uint32_t>(index_of(tmp.data()));
    }
  }
}

std::size_t MonomialBasis::index_of(const std::uint16_t* exps) const {
  int d = 0;
  for (int v = 0; v < n_; ++v) d += exps[v];
  std::size_t rank = d == 0 ? 0 : choose(d - 1 + n_, n_);
  int r = d;
  for (int k = 0; k + 1 < n_; ++k) {
    int p = n_ - k - 1;
    if (r - exps[k] >= 1) rank += choose(r - exps[k] - 1 + p, p);
    r -= exps[k];
  }
  return rank;
}

std::size_t MonomialBasis::index_of(const MultiIndex& alpha) const {
  if (static_cast<int>(alpha.size()) != n_) throw ShapeMismatch("multi-index length");
  std::vector<std::uint16_t> e(n_);
  for (int v = 0; v < n_; ++v) {
    if (alpha[v] < 0) throw ShapeMismatch("negative multi-index entry");
    e[v] = static_cast<std::uint16_t>(alpha[v]);
  }
  return index_of(e.data());
}

std::shared_ptr<const MonomialBasis> MonomialBasis::get(int num_vars, int degree) {
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const MonomialBasis>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[num_vars];
  if (!slot || slot->degree() < degree) {
    int d = slot ? std::max(degree, slot->degree() + 2) : degree;
    slot = std::make_shared<const MonomialBasis>(num_vars, d);
  }
  return slot;
}

Jet::Jet(ChartPtr chart, int order, std::shared_ptr<const MonomialBasis> basis,
         std::shared_ptr<const Data> data)
    : chart_(std::move(chart)), order_(order), basis_(std::move(basis)), data_(std::move(data)) {}

Jet::Jet(ChartPtr chart, int order) : chart_(std::move(chart)), order_(order) {
  if (!chart_) throw ShapeMismatch("jet without chart");
  if (order_ < 0) throw BudgetExhausted("negative jet order");
  basis_ = MonomialBasis::get(chart_->dim(), order_);
  Data d;
  d.num.resize(size());
  data_ = std::make_shared<const Data>(std::move(d));
}

std::shared_ptr<const Jet::Data> Jet::normalize(Data&& d) {
  bool any = false;
  Integer g = d.den;
  for (const auto& x : d.num) {
    if (sgn(x) == 0) continue;
    any = true;
    if (g == 1) break;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  }
  if (!any) {
    d.den = 1;
  } else if (g != 1) {
    for (auto& x : d.num)
      if (sgn(x) != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(d.den.get_mpz_t(), d.den.get_mpz_t(), g.get_mpz_t());
  }
  return std::make_shared<const Data>(std::move(d));
}

Jet Jet::constant(ChartPtr chart, int order, const Rational& value) {
  Jet j(std::move(chart), order);
  Data d;
  d.num.resize(j.size());
  d.num[0] = value.get_num();
  d.den = value.get_den();
  j.data_ = normalize(std::move(d));
  return j;
}

Jet Jet::coordinate(ChartPtr chart, int order, int i) {
  if (i < 0 || i >= chart->dim()) throw ShapeMismatch("coordinate index out of range");
  MultiIndex zero(chart->dim(), 0), e = zero;
  e[i] = 1;
  Rational base = chart->base_point()[i];
  return from_terms(std::move(chart), order, {{zero, base}, {e, Rational(1)}});
}

Jet Jet::from_terms(ChartPtr chart, int order,
                    const std::vector<std::pair<MultiIndex, Rational>>& terms) {
  Jet j(std::move(chart), order);
  std::vector<Rational> vals(j.size());
  Integer den = 1;
  for (const auto& [alpha, c] : terms) {
    std::size_t idx = j.basis_->index_of(alpha);
    if (idx >= j.size()) continue;
    vals[idx] += c;
  }
  for (const auto& v : vals) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  Data d;
  d.num.resize(j.size());
  d.den = den;
  for (std::size_t i = 0; i < vals.size(); ++i)
    if (sgn(vals[i]) != 0) d.num[i] = vals[i].get_num() * (den / vals[i].get_den());
  j.data_ = normalize(std::move(d));
  return j;
}

Rational Jet::coefficient(const MultiIndex& alpha) const {
  std::size_t idx = basis_->index_of(alpha);
  if (idx >= size()) return Rational(0);
  Rational r(data_->num[idx], data_->den);
  r.canonicalize();
  return r;
}

Rational Jet::value() const {
  Rational r(data_->num[0], data_->den);
  r.canonicalize();
  return r;
}

std::vector<std::pair<MultiIndex, Rational>> Jet::terms() const {
  std::vector<std::pair<MultiIndex, Rational>> out;
  int n = num_vars();
  for (std::size_t i = 0; i < size(); ++i) {
    if (sgn(data_->num[i]) == 0) continue;
    const auto* e = basis_->exponents(i);
    MultiIndex alpha(e, e + n);
    Rational r(data_->num[i], data_->den);
    r.canonicalize();
    out.emplace_back(std::move(alpha), std::move(r));
  }
  return out;
}

bool Jet::is_zero() const {
  for (std::size_t i = 0; i < size(); ++i)
    if (sgn(data_->num[i]) != 0) return false;
  return true;
}

bool Jet::compatible(const Jet& other) const {
  return chart_ == other.chart_ || *chart_ == *other.chart_;
}

void Jet::require_compatible(const Jet& other) const {
  if (!compatible(other))
    throw ShapeMismatch("jets live on different charts or base points");
}

Jet Jet::truncated(int order) const {
  if (order >= order_) return *this;
  if (order < 0) throw BudgetExhausted("truncation below order 0");
  Data d;
  std::size_t cnt = basis_->count(order);
  d.num.assign(data_->num.begin(), data_->num.begin() + cnt);
  d.den = data_->den;
  return Jet(chart_, order, basis_, normalize(std::move(d)));
}

Jet Jet::scaled(const Rational& c) const {
  if (sgn(c) == 0) return Jet(chart_, order_);
  Data d;
  d.num.resize(size());
  for (std::size_t i = 0; i < size(); ++i)
    if (sgn(data_->num[i]) != 0) d.num[i] = data_->num[i] * c.get_num();
  d.den = data_->den * c.get_den();
  return Jet(chart_, order_, basis_, normalize(std::move(d)));
}

Jet Jet::plus_constant(const Rational& c) const {
  Data d = *data_;
  Integer l;
  mpz_lcm(l.get_mpz_t(), d.den.get_mpz_t(), c.get_den_mpz_t());
  if (l != d.den) {
    Integer f = l / d.den;
    for (auto& x : d.num)
      if (sgn(x) != 0) x *= f;
    d.den = l;
  }
  d.num[0] += c.get_num() * (l / c.get_den());
  return Jet(chart_, order_, basis_, normalize(std::move(d)));
}

Jet Jet::partial(int i) const {
  if (i < 0 || i >= num_vars()) throw ShapeMismatch("partial index out of range");
  if (order_ == 0) throw BudgetExhausted("derivative of an order-0 jet");
  int m = order_ - 1;
  std::size_t cnt = basis_->count(m);
  Data d;
  d.num.resize(cnt);
  d.den = data_->den;
  for (std::size_t k = 0; k < cnt; ++k) {
    std::uint32_t src = basis_->raised(k, i);
    const Integer& x = data_->num[src];
    if (sgn(x) != 0) d.num[k] = x * (basis_->exponents(k)[i] + 1);
  }
  return Jet(chart_, m, basis_, normalize(std::move(d)));
}

Jet Jet::derivative(const MultiIndex& alpha) const {
  if (static_cast<int>(alpha.size()) != num_vars()) throw ShapeMismatch("multi-index length");
  Jet r = *this;
  for (int v = 0; v < num_vars(); ++v)
    for (int k = 0; k < alpha[v]; ++k) r = r.partial(v);
  return r;
}

Jet Jet::reciprocal() const {
  Rational c = value();
  if (sgn(c) == 0) throw NotInvertible("jet vanishes at the base point");
  Rational inv = 1 / c;
  Jet w = plus_constant(-c).scaled(inv);
  Jet r = Jet::constant(chart_, order_, Rational(1));
  for (int k = 0; k < order_; ++k) r = (-(w * r)).plus_constant(Rational(1));
  return r.scaled(inv);
}

Jet Jet::operator-() const {
  Data d = *data_;
  for (auto& x : d.num) x = -x;
  return Jet(chart_, order_, basis_, std::make_shared<const Data>(std::move(d)));
}

namespace {

// a/da + sign*b/db over lcm(da, db), first `cnt` coefficients.
template <typename NumVec>
void combine(const NumVec& a, const Integer& da, const NumVec& b, const Integer& db, int sign,
             std::size_t cnt, std::vector<Integer>& out, Integer& den) {
  mpz_lcm(den.get_mpz_t(), da.get_mpz_t(), db.get_mpz_t());
  Integer fa = den / da, fb = den / db;
  out.resize(cnt);
  for (std::size_t i = 0; i < cnt; ++i) {
    if (sgn(a[i]) != 0) mpz_mul(out[i].get_mpz_t(), a[i].get_mpz_t(), fa.get_mpz_t());
    if (sgn(b[i]) == 0) continue;
    if (sign > 0)
      mpz_addmul(out[i].get_mpz_t(), b[i].get_mpz_t(), fb.get_mpz_t());
    else
      mpz_submul(out[i].get_mpz_t(), b[i].get_mpz_t(), fb.get_mpz_t());
  }
}

}  // namespace

Jet operator+(const Jet& a, const Jet& b) {
  a.require_compatible(b);
  int m = std::min(a.order_, b.order_);
  const auto& basis = a.order_ >= b.order_ ? a.basis_ : b.basis_;
  Jet::Data d;
  combine(a.data_->num, a.data_->den, b.data_->num, b.data_->den, +1, basis->count(m), d.num,
          d.den);
  return Jet(a.chart_, m, basis, Jet::normalize(std::move(d)));
}

Jet operator-(const Jet& a, const Jet& b) {
  a.require_compatible(b);
  int m = std::min(a.order_, b.order_);
  const auto& basis = a.order_ >= b.order_ ? a.basis_ : b.basis_;
  Jet::Data d;
  combine(a.data_->num, a.data_->den, b.data_->num, b.data_->den, -1, basis->count(m), d.num,
          d.den);
  return Jet(a.chart_, m, basis, Jet::normalize(std::move(d)));
}

Jet operator*(const Jet& a, const Jet& b) {
  a.require_compatible(b);
  int m = std::min(a.order_, b.order_);
  const auto& basis = a.basis_->degree() >= b.basis_->degree() ? a.basis_ : b.basis_;
  std::size_t cnt = basis->count(m);
  Jet::Data d;
  d.num.resize(cnt);
  const auto& an = a.data_->num;
  const auto& bn = b.data_->num;
  std::vector<std::uint32_t> bnz;
  bnz.reserve(cnt);
  for (std::size_t j = 0; j < cnt; ++j)
    if (sgn(bn[j]) != 0) bnz.push_back(static_cast<std::uint32_t>(j));
  for (std::size_t i = 0; i < cnt; ++i) {
    if (sgn(an[i]) == 0) continue;
    int di = basis->total_degree(i);
    std::size_t lim = basis->count(m - di);
    const std::uint32_t* row = basis->product_row(i);
    for (std::uint32_t j : bnz) {
      if (j >= lim) break;
      mpz_addmul(d.num[row[j]].get_mpz_t(), an[i].get_mpz_t(), bn[j].get_mpz_t());
    }
  }
  d.den = a.data_->den * b.data_->den;
  return Jet(a.chart_, m, basis, Jet::normalize(std::move(d)));
}

bool operator==(const Jet& a, const Jet& b) {
  if (!a.compatible(b)) return false;
  std::size_t cnt = a.basis_->count(std::min(a.order_, b.order_));
  const auto& an = a.data_->num;
  const auto& bn = b.data_->num;
  const Integer& da = a.data_->den;
  const Integer& db = b.data_->den;
  if (da == db) {
    for (std::size_t i = 0; i < cnt; ++i)
      if (an[i] != bn[i]) return false;
    return true;
  }
  for (std::size_t i = 0; i < cnt; ++i)
    if (an[i] * db != bn[i] * da) return false;
  return true;
}

std::string Jet::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [alpha, c] : terms()) {
    if (!first) os << " + ";
    first = false;
    os << ncdg::to_string(c);
    for (std::size_t v = 0; v < alpha.size(); ++v) {
      if (alpha[v] == 0) continue;
      os << "*dx" << (v + 1);
      if (alpha[v] > 1) os << "^" << alpha[v];
    }
  }
  if (first) os << "0";
  os << " [order " << order_ << "]";
  return os.str();
}

}  // namespace ncdg
