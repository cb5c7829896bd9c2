#include "ncdg/series.hpp"

#include <sstream>

#include "ncdg/errors.hpp"

namespace ncdg {

HbarSeries::HbarSeries(int truncation) {
  if (truncation < 0) throw OrderOutOfRange("negative truncation order");
  c_.resize(truncation + 1);
}

HbarSeries::HbarSeries(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) throw OrderOutOfRange("series needs at least one coefficient");
}

HbarSeries HbarSeries::constant(int truncation, const Scalar& s) {
  HbarSeries r(truncation);
  r.c_[0] = s;
  return r;
}

HbarSeries HbarSeries::from_rationals(int truncation, const std::vector<Rational>& coeffs) {
  HbarSeries r(truncation);
  for (std::size_t q = 0; q < coeffs.size() && static_cast<int>(q) <= truncation; ++q)
    r.c_[q] = Scalar(coeffs[q]);
  return r;
}

HbarSeries HbarSeries::monomial(int truncation, int k, const Scalar& s) {
  HbarSeries r(truncation);
  if (k <= truncation) r.c_[k] = s;
  return r;
}

const Scalar& HbarSeries::coefficient(int q) const {
  if (q < 0 || q > truncation())
    throw OrderOutOfRange("coefficient " + std::to_string(q) + " of a series truncated at " +
                          std::to_string(truncation()));
  return c_[q];
}

bool HbarSeries::is_zero() const {
  for (const auto& s : c_)
    if (!s.is_zero()) return false;
  return true;
}

bool HbarSeries::is_constant() const {
  for (const auto& s : c_)
    if (!s.is_constant()) return false;
  return true;
}

namespace {

void require_same_order(const HbarSeries& a, const HbarSeries& b) {
  if (a.truncation() != b.truncation())
    throw OrderMismatch("series truncated at " + std::to_string(a.truncation()) + " and " +
                        std::to_string(b.truncation()));
}

}  // namespace

HbarSeries HbarSeries::operator-() const {
  std::vector<Scalar> r;
  r.reserve(c_.size());
  for (const auto& s : c_) r.push_back(-s);
  return HbarSeries(std::move(r));
}

HbarSeries operator+(const HbarSeries& a, const HbarSeries& b) {
  require_same_order(a, b);
  std::vector<Scalar> r;
  r.reserve(a.c_.size());
  for (std::size_t q = 0; q < a.c_.size(); ++q) r.push_back(a.c_[q] + b.c_[q]);
  return HbarSeries(std::move(r));
}

HbarSeries operator-(const HbarSeries& a, const HbarSeries& b) {
  require_same_order(a, b);
  std::vector<Scalar> r;
  r.reserve(a.c_.size());
  for (std::size_t q = 0; q < a.c_.size(); ++q) r.push_back(a.c_[q] - b.c_[q]);
  return HbarSeries(std::move(r));
}

bool operator==(const HbarSeries& a, const HbarSeries& b) {
  if (a.truncation() != b.truncation()) return false;
  for (std::size_t q = 0; q < a.c_.size(); ++q)
    if (!(a.c_[q] == b.c_[q])) return false;
  return true;
}

HbarSeries HbarSeries::scaled(const Rational& c) const {
  std::vector<Scalar> r;
  r.reserve(c_.size());
  for (const auto& s : c_) r.push_back(s.scaled(c));
  return HbarSeries(std::move(r));
}

HbarSeries HbarSeries::partial(int i) const {
  std::vector<Scalar> r;
  r.reserve(c_.size());
  for (const auto& s : c_) r.push_back(s.partial(i));
  return HbarSeries(std::move(r));
}

HbarSeries HbarSeries::truncated(int truncation) const {
  HbarSeries r(truncation);
  for (int q = 0; q <= truncation && q <= this->truncation(); ++q) r.c_[q] = c_[q];
  return r;
}

std::string HbarSeries::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int q = 0; q <= truncation(); ++q) {
    const Scalar& s = c_[q];
    if (s.is_zero()) continue;
    std::string body;
    bool negative = false;
    if (s.is_constant()) {
      Rational c = s.constant();
      negative = sgn(c) < 0;
      if (negative) c = -c;
      body = ncdg::to_string(c);
      if (q > 0 && c == 1) body.clear();
    } else {
      body = "(" + s.to_string() + ")";
    }
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    os << body;
    if (q > 0) {
      if (!body.empty()) os << "·";
      os << "ħ";
      if (q > 1) os << "^" << q;
    }
  }
  if (first) os << "0";
  return os.str();
}

HbarSeries series_add(const HbarSeries& a, const HbarSeries& b) { return a + b; }
HbarSeries series_negate(const HbarSeries& a) { return -a; }

HbarSeries series_scalar_multiple(const HbarSeries& a, const HbarSeries& b) {
  if (!a.is_constant()) throw std::invalid_argument("left factor must lie in R[[h]]");
  return cauchy_product(a, b);
}

HbarSeries cauchy_product(const HbarSeries& a, const HbarSeries& b) {
  require_same_order(a, b);
  int n = a.truncation();
  std::vector<Scalar> r(n + 1);
  for (int p = 0; p <= n; ++p) {
    if (a[p].is_zero()) continue;
    for (int q = 0; p + q <= n; ++q) {
      if (b[q].is_zero()) continue;
      r[p + q] = r[p + q] + a[p] * b[q];
    }
  }
  return HbarSeries(std::move(r));
}

ParitySplit parity_split(const HbarSeries& a) {
  int n = a.truncation();
  std::vector<Scalar> even(n + 1), odd(n + 1);
  for (int q = 0; q <= n; ++q) (q % 2 == 0 ? even : odd)[q] = a[q];
  return {HbarSeries(std::move(even)), HbarSeries(std::move(odd))};
}

Scalar coefficient(const HbarSeries& a, int q) { return a.coefficient(q); }

HbarSeries parity_flip(const HbarSeries& a) {
  std::vector<Scalar> r = a.coefficients();
  for (std::size_t q = 1; q < r.size(); q += 2) r[q] = -r[q];
  return HbarSeries(std::move(r));
}

}  // namespace ncdg
