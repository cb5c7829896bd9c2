#include "ncdg/random.hpp"

namespace ncdg {

int RandomSource::uniform(int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng_);
}

Rational RandomSource::rational(int max_num, int max_den) {
  Rational r(uniform(-max_num, max_num), uniform(1, max_den));
  r.canonicalize();
  return r;
}

Rational RandomSource::nonzero_rational(int max_num, int max_den) {
  Rational r;
  do r = rational(max_num, max_den);
  while (sgn(r) == 0);
  return r;
}

Jet RandomSource::jet(const ChartPtr& chart, int order) {
  auto basis = MonomialBasis::get(chart->dim(), order);
  std::vector<std::pair<MultiIndex, Rational>> terms;
  for (std::size_t i = 0; i < basis->count(order); ++i) {
    const auto* e = basis->exponents(i);
    terms.emplace_back(MultiIndex(e, e + chart->dim()), rational());
  }
  return Jet::from_terms(chart, order, terms);
}

HbarSeries RandomSource::jet_series(const ChartPtr& chart, int order, int truncation) {
  std::vector<Scalar> c;
  for (int q = 0; q <= truncation; ++q) c.emplace_back(jet(chart, order));
  return HbarSeries(std::move(c));
}

}  // namespace ncdg
