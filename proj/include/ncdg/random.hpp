#pragma once

#include <cstdint>
#include <random>

#include "ncdg/series.hpp"

namespace ncdg {

// Small rationals with numerators in [-5, 5] and denominators in [1, 4].
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

  Rational rational(int max_num = 5, int max_den = 4);
  Rational nonzero_rational(int max_num = 5, int max_den = 4);
  int uniform(int lo, int hi);
  // Dense jet with random Taylor coefficients.
  Jet jet(const ChartPtr& chart, int order);
  HbarSeries jet_series(const ChartPtr& chart, int order, int truncation);
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace ncdg
