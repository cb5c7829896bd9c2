#include "ncdg/scalar.hpp"

#include "ncdg/errors.hpp"

namespace ncdg {

std::optional<int> Scalar::order() const {
  if (is_constant()) return std::nullopt;
  return jet().order();
}

Rational Scalar::value() const { return is_constant() ? constant() : jet().value(); }

bool Scalar::is_zero() const { return is_constant() ? sgn(constant()) == 0 : jet().is_zero(); }

Scalar Scalar::operator-() const {
  if (is_constant()) return Scalar(Rational(-constant()));
  return Scalar(-jet());
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_constant() && b.is_constant()) return Scalar(Rational(a.constant() + b.constant()));
  if (a.is_constant()) return sgn(a.constant()) == 0 ? b : Scalar(b.jet().plus_constant(a.constant()));
  if (b.is_constant()) return sgn(b.constant()) == 0 ? a : Scalar(a.jet().plus_constant(b.constant()));
  return Scalar(a.jet() + b.jet());
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  if (a.is_constant() && b.is_constant()) return Scalar(Rational(a.constant() - b.constant()));
  if (b.is_constant()) return sgn(b.constant()) == 0 ? a : Scalar(a.jet().plus_constant(-b.constant()));
  if (a.is_constant()) return Scalar((-b.jet()).plus_constant(a.constant()));
  return Scalar(a.jet() - b.jet());
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_constant() && b.is_constant()) return Scalar(Rational(a.constant() * b.constant()));
  if (a.is_constant()) return Scalar(b.jet().scaled(a.constant()));
  if (b.is_constant()) return Scalar(a.jet().scaled(b.constant()));
  return Scalar(a.jet() * b.jet());
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.is_constant() && b.is_constant()) return a.constant() == b.constant();
  return (a - b).is_zero();
}

Scalar Scalar::scaled(const Rational& c) const {
  if (is_constant()) return Scalar(Rational(constant() * c));
  return Scalar(jet().scaled(c));
}

Scalar Scalar::partial(int i) const {
  if (is_constant()) return Scalar(Rational(0));
  return Scalar(jet().partial(i));
}

Scalar Scalar::derivative(const MultiIndex& alpha) const {
  if (is_constant()) {
    for (int a : alpha)
      if (a != 0) return Scalar(Rational(0));
    return *this;
  }
  return Scalar(jet().derivative(alpha));
}

Scalar Scalar::reciprocal() const {
  if (is_constant()) {
    if (sgn(constant()) == 0) throw NotInvertible("reciprocal of zero");
    return Scalar(Rational(1 / constant()));
  }
  return Scalar(jet().reciprocal());
}

Scalar Scalar::truncated(int order) const {
  if (is_constant()) return *this;
  return Scalar(jet().truncated(order));
}

std::string Scalar::to_string() const {
  if (is_constant()) return ncdg::to_string(constant());
  return jet().to_string();
}

Scalar scalar_add(const Scalar& a, const Scalar& b) { return a + b; }
Scalar scalar_mul(const Scalar& a, const Scalar& b) { return a * b; }

Scalar scalar_partial(const Scalar& a, int i) {
  if (i < 1) throw ShapeMismatch("coordinate indices start at 1");
  if (!a.is_constant() && i > a.jet().num_vars()) throw ShapeMismatch("coordinate index out of range");
  return a.partial(i - 1);
}

}  // namespace ncdg
