#pragma once

#include <vector>

#include "ncdg/jet.hpp"

namespace ncdg {

enum class ElementaryKind { sin, cos, sinh, cosh, exp, polynomial, derivative_table };

// t = sum_i coefficients[i] * x^i + offset
struct AffineArgument {
  std::vector<Rational> coefficients;
  Rational offset = 0;

  static AffineArgument coordinate(int dim, int i);
};

// For polynomial, `table` holds p_k of p(t) = sum p_k t^k. For
// derivative_table it holds f^(k)(t0) for k <= order. For the transcendental
// kinds a non-empty table overrides the closed form, which is only available
// when t0 = 0.
Jet jet_of_elementary(ElementaryKind kind, const AffineArgument& arg, const ChartPtr& chart,
                      int order, const std::vector<Rational>& table = {});

// f^(k)(t0) for k <= order, for sin or cos at an angle with sin = s, cos = c.
std::vector<Rational> trig_derivative_table(ElementaryKind kind, const Rational& s,
                                            const Rational& c, int order);

// sum_k taylor[k] * (t - t0)^k where taylor[k] = f^(k)(t0) / k!.
Jet compose_univariate(const std::vector<Rational>& taylor, const AffineArgument& arg,
                       const ChartPtr& chart, int order);

}  // namespace ncdg
