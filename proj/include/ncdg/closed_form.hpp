#pragma once

#include <map>
#include <string>
#include <utility>

#include "ncdg/series.hpp"

namespace ncdg {

// Values a closed-form descriptor may reference. Angles are keyed by the
// index in theta<k> and hold (sin, cos) at the base point.
struct ClosedFormBindings {
  Rational lambda = 0;
  std::map<int, std::pair<Rational, Rational>> angles;
  std::map<std::string, Rational> symbols;
};

// cosh(lambda h) and sinh(lambda h) as exact series truncated at N.
HbarSeries cosh_series(const Rational& lambda, int N);
HbarSeries sinh_series(const Rational& lambda, int N);

// Expands a descriptor such as
//   "sin(theta1)^2*cosh(lambda*hbar)^2 - cos(theta1)^2*sinh(lambda*hbar)^2"
// into an h-series with rational coefficients. Grammar: sums, products,
// unary minus, integer powers, parentheses, integer or p/q literals, hbar,
// lambda, bound symbols, sin/cos(theta<k>) and cosh/sinh(lambda*hbar).
HbarSeries closed_form_oracle(const std::string& expression, const ClosedFormBindings& b, int N);

}  // namespace ncdg
