#pragma once

#include <optional>
#include <string>
#include <variant>

#include "ncdg/jet.hpp"
#include "ncdg/rational.hpp"

namespace ncdg {

// Either an exact constant (unbounded derivative budget) or a jet.
class Scalar {
 public:
  Scalar() : v_(Rational(0)) {}
  Scalar(Rational c) : v_(std::move(c)) {}
  Scalar(long c) : v_(Rational(c)) {}
  Scalar(int c) : v_(Rational(c)) {}
  Scalar(Jet j) : v_(std::move(j)) {}

  bool is_constant() const { return std::holds_alternative<Rational>(v_); }
  const Rational& constant() const { return std::get<Rational>(v_); }
  const Jet& jet() const { return std::get<Jet>(v_); }
  // nullopt means unbounded.
  std::optional<int> order() const;
  Rational value() const;
  bool is_zero() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend bool operator==(const Scalar& a, const Scalar& b);

  Scalar scaled(const Rational& c) const;
  Scalar partial(int i) const;
  Scalar derivative(const MultiIndex& alpha) const;
  Scalar reciprocal() const;
  Scalar truncated(int order) const;

  std::string to_string() const;

 private:
  std::variant<Rational, Jet> v_;
};

Scalar scalar_add(const Scalar& a, const Scalar& b);
Scalar scalar_mul(const Scalar& a, const Scalar& b);
// 1-based coordinate index.
Scalar scalar_partial(const Scalar& a, int i);

}  // namespace ncdg
