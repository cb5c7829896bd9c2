#pragma once

#include <string>
#include <vector>

#include "ncdg/scalar.hpp"

namespace ncdg {

// a[0] + a[1] h + ... + a[N] h^N
class HbarSeries {
 public:
  HbarSeries() : c_(1) {}
  explicit HbarSeries(int truncation);
  explicit HbarSeries(std::vector<Scalar> coeffs);

  static HbarSeries constant(int truncation, const Scalar& s);
  static HbarSeries from_rationals(int truncation, const std::vector<Rational>& coeffs);
  // h^k * s
  static HbarSeries monomial(int truncation, int k, const Scalar& s);

  int truncation() const { return static_cast<int>(c_.size()) - 1; }
  const Scalar& coefficient(int q) const;
  const Scalar& operator[](int q) const { return c_[q]; }
  const std::vector<Scalar>& coefficients() const { return c_; }
  bool is_zero() const;
  // True when every coefficient is Constant.
  bool is_constant() const;

  HbarSeries operator-() const;
  friend HbarSeries operator+(const HbarSeries& a, const HbarSeries& b);
  friend HbarSeries operator-(const HbarSeries& a, const HbarSeries& b);
  friend bool operator==(const HbarSeries& a, const HbarSeries& b);
  friend bool operator!=(const HbarSeries& a, const HbarSeries& b) { return !(a == b); }
  HbarSeries& operator+=(const HbarSeries& b) { return *this = *this + b; }
  HbarSeries& operator-=(const HbarSeries& b) { return *this = *this - b; }

  HbarSeries scaled(const Rational& c) const;
  HbarSeries partial(int i) const;  // 0-based
  HbarSeries truncated(int truncation) const;

  std::string to_string() const;

 private:
  std::vector<Scalar> c_;
};

struct ParitySplit {
  HbarSeries even;
  HbarSeries odd;
};

HbarSeries series_add(const HbarSeries& a, const HbarSeries& b);
HbarSeries series_negate(const HbarSeries& a);
// a must have constant coefficients (an element of R[[h]]).
HbarSeries series_scalar_multiple(const HbarSeries& a, const HbarSeries& b);
// Product using the pointwise product of coefficients.
HbarSeries cauchy_product(const HbarSeries& a, const HbarSeries& b);
ParitySplit parity_split(const HbarSeries& a);
Scalar coefficient(const HbarSeries& a, int q);

// The h^q coefficient of a with the sign (-1)^q applied, i.e. a(-h).
HbarSeries parity_flip(const HbarSeries& a);

}  // namespace ncdg
