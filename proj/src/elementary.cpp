#include "ncdg/elementary.hpp"

#include "ncdg/errors.hpp"

namespace ncdg {

AffineArgument AffineArgument::coordinate(int dim, int i) {
  AffineArgument a;
  a.coefficients.assign(dim, Rational(0));
  a.coefficients.at(i) = 1;
  return a;
}

namespace {

Rational base_value(const AffineArgument& arg, const Chart& chart) {
  Rational t = arg.offset;
  for (int i = 0; i < chart.dim(); ++i) t += arg.coefficients[i] * chart.base_point()[i];
  return t;
}

std::vector<Rational> derivatives_at_zero(ElementaryKind kind, int order) {
  std::vector<Rational> d(order + 1);
  for (int k = 0; k <= order; ++k) {
    switch (kind) {
      case ElementaryKind::sin: {
        static const int cyc[4] = {0, 1, 0, -1};
        d[k] = cyc[k % 4];
        break;
      }
      case ElementaryKind::cos: {
        static const int cyc[4] = {1, 0, -1, 0};
        d[k] = cyc[k % 4];
        break;
      }
      case ElementaryKind::sinh:
        d[k] = k % 2;
        break;
      case ElementaryKind::cosh:
        d[k] = 1 - k % 2;
        break;
      case ElementaryKind::exp:
        d[k] = 1;
        break;
      default:
        throw UnsupportedForm("no closed-form derivative tower");
    }
  }
  return d;
}

}  // namespace

std::vector<Rational> trig_derivative_table(ElementaryKind kind, const Rational& s,
                                            const Rational& c, int order) {
  if (kind != ElementaryKind::sin && kind != ElementaryKind::cos)
    throw UnsupportedForm("trig table needs sin or cos");
  const Rational sin_cyc[4] = {s, c, -s, -c};
  int shift = kind == ElementaryKind::sin ? 0 : 1;
  std::vector<Rational> d(order + 1);
  for (int k = 0; k <= order; ++k) d[k] = sin_cyc[(k + shift) % 4];
  return d;
}

Jet compose_univariate(const std::vector<Rational>& taylor, const AffineArgument& arg,
                       const ChartPtr& chart, int order) {
  if (static_cast<int>(arg.coefficients.size()) != chart->dim())
    throw ShapeMismatch("affine argument length differs from chart dimension");
  std::vector<std::pair<MultiIndex, Rational>> lin;
  for (int i = 0; i < chart->dim(); ++i) {
    MultiIndex e(chart->dim(), 0);
    e[i] = 1;
    lin.emplace_back(e, arg.coefficients[i]);
  }
  Jet dt = Jet::from_terms(chart, order, lin);
  int top = std::min<int>(order, static_cast<int>(taylor.size()) - 1);
  Jet r = Jet::constant(chart, order, top >= 0 ? taylor[top] : Rational(0));
  for (int k = top - 1; k >= 0; --k) r = (r * dt).plus_constant(taylor[k]);
  return r;
}

Jet jet_of_elementary(ElementaryKind kind, const AffineArgument& arg, const ChartPtr& chart,
                      int order, const std::vector<Rational>& table) {
  if (order < 0) throw BudgetExhausted("negative jet order");
  Rational t0 = base_value(arg, *chart);
  std::vector<Rational> taylor(order + 1);
  if (kind == ElementaryKind::polynomial) {
    for (int k = 0; k <= order; ++k) {
      Rational ck = 0, pw = 1;
      for (std::size_t j = k; j < table.size(); ++j) {
        ck += table[j] * Rational(binomial(j, k)) * pw;
        pw *= t0;
      }
      taylor[k] = ck;
    }
    return compose_univariate(taylor, arg, chart, order);
  }
  std::vector<Rational> ders;
  if (!table.empty()) {
    if (static_cast<int>(table.size()) < order + 1)
      throw IrrationalBase("derivative table shorter than the jet order");
    ders.assign(table.begin(), table.begin() + order + 1);
  } else if (kind == ElementaryKind::derivative_table) {
    throw IrrationalBase("derivative_table kind needs a table");
  } else if (sgn(t0) != 0) {
    throw IrrationalBase("closed-form coefficients at t0 = " + to_string(t0) +
                         " are not rational; supply a derivative table");
  } else {
    ders = derivatives_at_zero(kind, order);
  }
  for (int k = 0; k <= order; ++k) taylor[k] = ders[k] * inverse_factorial(k);
  return compose_univariate(taylor, arg, chart, order);
}

}  // namespace ncdg
