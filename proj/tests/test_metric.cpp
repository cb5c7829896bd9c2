#include "doctest.h"
#include "fixtures.hpp"
#include "ncdg/errors.hpp"

using namespace ncdg;
using namespace fixtures;

namespace {

StarProduct moyal2() { return StarProduct::moyal(ThetaMatrix::single(2, 0, 1, Rational(1))); }

}  // namespace

TEST_SUITE("nc-metric") {
  TEST_CASE("invertibility at the base point") {
    CHECK(check_invertible(NCMetric(diagonal_metric(2, geometric(6)), moyal2())));
    CHECK_FALSE(check_invertible(NCMetric(SeriesArray(2, 2, 3), moyal2())));
    SeriesArray eta = identity_matrix(4, 2);
    eta(0, 0) = HbarSeries::constant(2, Scalar(-1));
    CHECK(check_invertible(NCMetric(eta, StarProduct::moyal(ThetaMatrix::zero(4)))));
    CHECK_THROWS_AS(star_inverse(NCMetric(SeriesArray(2, 2, 3), moyal2())), NotInvertible);
  }

  TEST_CASE("constant examples") {
    auto inv1 = star_inverse(NCMetric(diagonal_metric(2, geometric(6)), moyal2()));
    CHECK(inv1.g == diagonal_metric(2, HbarSeries::from_rationals(6, {1, -1})));
    auto inv2 = star_inverse(NCMetric(diagonal_metric(2, alternating_even(6)), moyal2()));
    CHECK(inv2.g == diagonal_metric(2, HbarSeries::from_rationals(6, {1, 0, 1})));
    auto id = star_inverse(NCMetric(identity_matrix(3, 4), StarProduct::moyal(ThetaMatrix::zero(3))));
    CHECK(id.g == identity_matrix(3, 4));
  }

  TEST_CASE("random jet metric") {
    RandomSource rs(17);
    auto c = make_chart({Rational(1, 2), Rational(2, 3)});
    StarProduct s = StarProduct::moyal(ThetaMatrix::single(2, 0, 1, Rational(3, 2)));
    for (int t = 0; t < 3; ++t) {
      NCMetric g(random_metric(rs, c, 9, 4), s);
      InverseMetric h = star_inverse(g);
      SeriesArray id = identity_matrix(2, 4);
      // Direct products, entry by entry.
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          HbarSeries a = star_mul(g.g(i, 0), h.g(0, j), s) + star_mul(g.g(i, 1), h.g(1, j), s);
          HbarSeries b = star_mul(h.g(i, 0), g.g(0, j), s) + star_mul(h.g(i, 1), g.g(1, j), s);
          CHECK(a == id(i, j));
          CHECK(b == id(i, j));
        }
      CHECK(right_inverse_recursion(g) == left_inverse_recursion(g));
      InverseMetric back = star_inverse(NCMetric(h.g, s));
      CHECK(back.g == g.g);
    }
  }

  TEST_CASE("metric parity") {
    NCMetric ex1(diagonal_metric(2, geometric(6)), moyal2());
    CHECK(check_metric_parity(ex1.g).failed());
    NCMetric ex2(diagonal_metric(2, alternating_even(6)), moyal2());
    CHECK(check_metric_parity(ex2.g).passed());
    CHECK(check_inverse_parity(ex2, star_inverse(ex2)).passed());
    CHECK(check_inverse_parity(ex1, star_inverse(ex1)).status == CheckStatus::skipped);

    SeriesArray bad = identity_matrix(2, 3);
    bad(0, 1) = HbarSeries::from_rationals(3, {0, 1});
    bad(1, 0) = HbarSeries::from_rationals(3, {0, 1});
    auto r = check_metric_parity(bad);
    CHECK(r.failed());
  }

  TEST_CASE("parity lemmas on random parity metrics") {
    RandomSource rs(23);
    auto c = make_chart({Rational(1, 3), Rational(-1, 2)});
    StarProduct s = StarProduct::moyal(ThetaMatrix::single(2, 0, 1, Rational(2, 5)));
    for (int t = 0; t < 2; ++t) {
      NCMetric g(random_parity_metric(rs, c, 11, 4), s);
      InverseMetric h = star_inverse(g);
      CHECK(check_inverse_parity(g, h).passed());
      CHECK(check_gfg_lemma(g, h, {Scalar(rs.jet(c, 11))}).passed());
      CHECK(check_ugv_lemma(g, h, {{Scalar(rs.jet(c, 11)), Scalar(rs.jet(c, 11))}}).passed());
    }
    NCMetric g(random_metric(rs, c, 11, 3), s);
    CHECK(check_gfg_lemma(g, star_inverse(g), {Scalar(1)}).status == CheckStatus::skipped);
  }
}
