#include "doctest.h"
#include "fixtures.hpp"
#include "ncdg/errors.hpp"
#include "ncdg/random.hpp"
#include "ncdg/star_product.hpp"

using namespace ncdg;
using namespace fixtures;

namespace {

HbarSeries lift(int n, const Jet& j) { return HbarSeries::constant(n, Scalar(j)); }

}  // namespace

TEST_SUITE("star-product") {
  TEST_CASE("theta validation") {
    CHECK_THROWS_AS(ThetaMatrix({{1, 0}, {0, 0}}), ValidationError);
    CHECK_THROWS_AS(ThetaMatrix({{0, 1}, {1, 0}}), ValidationError);
    CHECK_NOTHROW(ThetaMatrix({{0, 2}, {-2, 0}}));
  }

  TEST_CASE("mu_0 is the pointwise product and mu_1 of coordinates") {
    auto c = make_chart({Rational(1, 2), Rational(3)});
    RandomSource rs(5);
    ThetaMatrix th = ThetaMatrix::single(2, 0, 1, Rational(7, 3));
    for (int t = 0; t < 5; ++t) {
      Jet u = rs.jet(c, 4), v = rs.jet(c, 4);
      CHECK(mu_q(Scalar(u), Scalar(v), 0, th) == Scalar(u * v));
    }
    Scalar x1(Jet::coordinate(c, 3, 0)), x2(Jet::coordinate(c, 3, 1));
    CHECK(mu_q(x1, x2, 1, th).value() == Rational(7, 3));
    CHECK(mu_q(x1, x2, 1, th) == Scalar(Rational(7, 3)));
  }

  TEST_CASE("mu parity and the index-sum form") {
    RandomSource rs(9);
    auto c = make_chart({Rational(0), Rational(1, 3), Rational(-1)});
    ThetaMatrix th({{0, 1, Rational(-2, 3)}, {-1, 0, 2}, {Rational(2, 3), -2, 0}});
    for (int t = 0; t < 20; ++t) {
      Scalar u(rs.jet(c, 6)), v(rs.jet(c, 6));
      for (int q = 0; q <= 2; ++q) {
        CHECK(mu_q(u, v, 2 * q, th) == mu_q(v, u, 2 * q, th));
        CHECK(mu_q(u, v, 2 * q + 1, th) == -mu_q(v, u, 2 * q + 1, th));
      }
      if (t < 3)
        for (int q = 0; q <= 3; ++q) CHECK(mu_q(u, v, q, th) == mu_q_index_sum(u, v, q, th));
    }
  }

  TEST_CASE("budget exhaustion") {
    auto c = make_chart({Rational(0), Rational(0)});
    ThetaMatrix th = ThetaMatrix::single(2, 0, 1, Rational(1));
    RandomSource rs(1);
    CHECK_THROWS_AS(mu_q(Scalar(rs.jet(c, 2)), Scalar(rs.jet(c, 4)), 3, th), BudgetExhausted);
  }

  TEST_CASE("coordinate commutator") {
    auto c = make_chart({Rational(2), Rational(-1), Rational(1, 2)});
    ThetaMatrix th({{0, 3, Rational(1, 2)}, {-3, 0, -1}, {Rational(-1, 2), 1, 0}});
    StarProduct s = StarProduct::moyal(th);
    const int n = 4;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        HbarSeries xi = lift(n, Jet::coordinate(c, 6, i)), xj = lift(n, Jet::coordinate(c, 6, j));
        HbarSeries comm = star_mul(xi, xj, s) - star_mul(xj, xi, s);
        CHECK(comm == HbarSeries::monomial(n, 1, Scalar(Rational(2) * th(i, j))));
      }
  }

  TEST_CASE("constant series multiply pointwise") {
    StarProduct s = StarProduct::moyal(ThetaMatrix::single(2, 0, 1, Rational(1)));
    HbarSeries geo = HbarSeries::from_rationals(6, {1, 1, 1, 1, 1, 1, 1});
    CHECK(star_mul(geo, HbarSeries::from_rationals(6, {1, -1}), s) ==
          HbarSeries::from_rationals(6, {1}));
  }

  TEST_CASE("Leibniz") {
    auto c = make_chart({Rational(1, 3), Rational(1, 5)});
    RandomSource rs(21);
    StarProduct s = StarProduct::moyal(ThetaMatrix::single(2, 0, 1, Rational(-3, 2)));
    std::vector<std::pair<HbarSeries, HbarSeries>> samples;
    for (int t = 0; t < 20; ++t)
      samples.emplace_back(rs.jet_series(c, 9, 4), rs.jet_series(c, 9, 4));
    CHECK(check_leibniz(s, samples).passed());

    std::vector<std::pair<HbarSeries, HbarSeries>> consts = {
        {HbarSeries::from_rationals(4, {1, 2}), HbarSeries::from_rationals(4, {3, 0, 1})}};
    CHECK(check_leibniz(s, consts).passed());

    MultiIndex e1{1, 0}, e2{0, 1};
    BidifferentialOperator b1(2, {{Scalar(Jet::coordinate(c, 9, 0)), e1, e2}});
    StarProduct g = StarProduct::general(2, {b1});
    auto r = check_leibniz(g, samples);
    CHECK(r.failed());
    CHECK(r.counterexample.size() > 0);
  }

  TEST_CASE("unitality is validated") {
    MultiIndex z{0, 0}, e1{1, 0};
    BidifferentialOperator bad(2, {{Scalar(1), z, e1}});
    CHECK_THROWS_AS(StarProduct::general(2, {bad}), ValidationError);
  }

  TEST_CASE("associativity") {
    RandomSource rs(33);
    auto c = make_chart({Rational(1, 2), Rational(-1, 3)});
    StarProduct s = StarProduct::moyal(ThetaMatrix::single(2, 0, 1, Rational(2)));
    std::vector<std::vector<HbarSeries>> triples;
    for (int t = 0; t < 10; ++t)
      triples.push_back({rs.jet_series(c, 11, 5), rs.jet_series(c, 11, 5),
                         rs.jet_series(c, 11, 5)});
    CHECK(check_associativity(s, triples).passed());
    CHECK(check_associativity(ordered_star(2, 5), triples).passed());

    auto r = check_associativity(broken_star(2, 5, Rational(1)), triples);
    REQUIRE(r.failed());
    int order = -1;
    for (auto& [k, v] : r.counterexample)
      if (k == "order") order = std::stoi(v);
    CHECK(order >= 0);
    CHECK(order <= 3);

    HbarSeries one = HbarSeries::constant(5, Scalar(1));
    std::vector<std::vector<HbarSeries>> unit = {{one, triples[0][0], triples[0][1]},
                                                 {triples[0][0], one, triples[0][1]}};
    CHECK(check_associativity(broken_star(2, 5, Rational(1)), unit).passed());
    CHECK(check_unitality(broken_star(2, 5, Rational(1)), {triples[0][0]}).passed());
  }

  TEST_CASE("Poisson bracket") {
    auto c = make_chart({Rational(1), Rational(2)});
    Rational lam(5, 7);
    StarProduct s = StarProduct::moyal(ThetaMatrix::single(2, 0, 1, lam));
    Scalar x1(Jet::coordinate(c, 3, 0)), x2(Jet::coordinate(c, 3, 1));
    CHECK(poisson_bracket(s, x1, x2) == Scalar(lam));
    RandomSource rs(4);
    for (int t = 0; t < 5; ++t) {
      Scalar u(rs.jet(c, 4)), v(rs.jet(c, 4));
      CHECK(poisson_bracket(s, u, u).is_zero());
      CHECK(poisson_bracket(s, u, v) == -poisson_bracket(s, v, u));
    }
  }
}
