#include "doctest.h"
#include "ncdg/errors.hpp"
#include "ncdg/random.hpp"
#include "ncdg/series.hpp"

using namespace ncdg;

namespace {

HbarSeries rs(int n, std::vector<Rational> c) { return HbarSeries::from_rationals(n, c); }

}  // namespace

TEST_SUITE("hbar-series") {
  TEST_CASE("module operations") {
    CHECK(rs(1, {1, 1}) + rs(1, {1, -1}) == rs(1, {2}));
    CHECK(series_negate(rs(3, {1, 1, 1, 1})) == rs(3, {-1, -1, -1, -1}));
    CHECK(series_scalar_multiple(rs(1, {0, 1}), rs(1, {1, 1})) == rs(1, {0, 1}));
    CHECK_THROWS_AS(rs(1, {1}) + rs(2, {1}), OrderMismatch);
  }

  TEST_CASE("parity split") {
    auto p = parity_split(rs(2, {1, 1, 1}));
    CHECK(p.even == rs(2, {1, 0, 1}));
    CHECK(p.odd == rs(2, {0, 1}));
    auto e = parity_split(rs(4, {3, 0, 2, 0, 5}));
    CHECK(e.even == rs(4, {3, 0, 2, 0, 5}));
    CHECK(e.odd.is_zero());
    RandomSource r(3);
    auto c = make_chart({Rational(1), Rational(2)});
    for (int t = 0; t < 10; ++t) {
      HbarSeries a = r.jet_series(c, 3, 5);
      auto s = parity_split(a);
      CHECK(s.even + s.odd == a);
      CHECK(parity_split(s.even).even == s.even);
      CHECK(parity_split(s.odd).even.is_zero());
    }
  }

  TEST_CASE("coefficient access") {
    CHECK(coefficient(rs(1, {1, 2}), 1) == Scalar(2));
    auto c = make_chart({Rational(3), Rational(0)});
    HbarSeries x = HbarSeries::monomial(2, 2, Scalar(Jet::coordinate(c, 3, 0)));
    CHECK(coefficient(x, 2).value() == 3);
    CHECK_THROWS_AS(coefficient(x, 3), OrderOutOfRange);
  }

  TEST_CASE("rendering") {
    CHECK(rs(5, {0, 0, -1, 3, -3, 1}).to_string() == "-ħ^2 + 3·ħ^3 - 3·ħ^4 + ħ^5");
    CHECK(rs(2, {Rational(1, 2), 1}).to_string() == "1/2 + ħ");
    CHECK(HbarSeries(3).to_string() == "0");
  }
}
