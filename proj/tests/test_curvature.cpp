#include "doctest.h"
#include "fixtures.hpp"
#include "ncdg/curvature.hpp"
#include "ncdg/errors.hpp"
#include "oracles.hpp"

using namespace ncdg;
using namespace fixtures;

namespace {

HbarSeries series(std::vector<Rational> c) { return HbarSeries::from_rationals(6, c); }

struct Pipeline {
  Example e;
  CurvatureOperators ops;
  RiemannField riem;
  RicciBundle ricci;
};

Pipeline pipeline(int id) {
  Example e = example(id);
  CurvatureOperators ops = curvature_operators(e.conn, Side::left, e.g.star);
  RiemannField r = riemann(e.g, e.ginv, e.conn, ops);
  RicciBundle b = ricci_bundle(e.g, e.ginv, r);
  return {e, ops, r, b};
}

void check_riemann_table(const SeriesArray& r, const HbarSeries& v) {
  CHECK(r(0, 1, 0, 1) == v);
  CHECK(r(0, 1, 1, 0) == -v);
  CHECK(r(1, 0, 0, 1) == -v);
  CHECK(r(1, 0, 1, 0) == v);
  for (int l = 0; l < 2; ++l)
    for (int k = 0; k < 2; ++k)
      if (l == k) {
        CHECK(r(l, k, 0, 1).is_zero());
        CHECK(r(l, k, 1, 0).is_zero());
      }
  for (int l = 0; l < 2; ++l)
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i) CHECK(r(l, k, i, i).is_zero());
}

oracle::Poly to_poly(const Scalar& s, int n, int order) {
  if (s.is_constant()) return oracle::constant(n, order, s.constant());
  return oracle::from_jet(s.jet());
}

struct RandomCase {
  NCMetric g;
  InverseMetric ginv;
  ConnectionCoefficients conn;
  CurvatureOperators ops;
};

RandomCase random_case(RandomSource& rs, const ChartPtr& c, const StarProduct& s, int order,
                       int N) {
  NCMetric g(random_metric(rs, c, order, N), s);
  InverseMetric h = star_inverse(g);
  ConnectionCoefficients conn =
      canonical_connection(g, h, random_compatible_chiral(rs, g.g, c, order, false));
  CurvatureOperators ops = curvature_operators(conn, Side::left, s);
  return {g, h, conn, ops};
}

}  // namespace

TEST_SUITE("curvature") {
  TEST_CASE("example 1 curvature table") {
    Pipeline p = pipeline(1);
    check_riemann_table(p.riem.r, series({0, 0, -1, 1}));
    CHECK(p.riem.r_tilde == p.riem.r);
    HbarSeries low = series({0, 0, -1, 2, -1});
    HbarSeries up = series({0, 0, -1, 3, -3, 1});
    for (int i = 0; i < 2; ++i) {
      CHECK(p.ricci.ricci(i, i) == low);
      CHECK(p.ricci.theta(i, i) == low);
      CHECK(p.ricci.ricci_up(i, i) == up);
      CHECK(p.ricci.theta_up(i, i) == up);
      CHECK(p.ricci.ricci(i, 1 - i).is_zero());
      CHECK(p.ricci.theta(i, 1 - i).is_zero());
    }
    CHECK(p.ricci.scalar == up + up);
    CHECK(p.ricci.scalar_theta == p.ricci.scalar);
  }

  TEST_CASE("example 2 curvature table") {
    Pipeline p = pipeline(2);
    HbarSeries base = series({0, 0, Rational(3, 4), Rational(1, 4), Rational(3, 4), Rational(1, 4)});
    HbarSeries f = series({1, 0, 1});
    check_riemann_table(p.riem.r, -base);
    HbarSeries low = -cauchy_product(f, base);
    HbarSeries up = -cauchy_product(f, cauchy_product(f, base));
    for (int i = 0; i < 2; ++i) {
      CHECK(p.ricci.ricci(i, i) == low);
      CHECK(p.ricci.theta(i, i) == low);
      CHECK(p.ricci.ricci_up(i, i) == up);
      CHECK(p.ricci.theta_up(i, i) == up);
    }
  }

  TEST_CASE("operator components of example 1") {
    Example e = example(1);
    // (i,j,k) = (1,2,2), paired with the first basis vector through g_11 = 1/(1-h).
    auto v = curvature_operator_components(e.conn, 0, 1, 1, Side::left, e.g.star);
    HbarSeries paired = star_mul(v[0], e.g.g(0, 0), e.g.star) + star_mul(v[1], e.g.g(1, 0), e.g.star);
    CHECK(paired == series({0, 0, -1, 1}));
    CHECK(v[0] == series({0, 0, -1, 2, -1}));
    CurvatureOperators ops = curvature_operators(e.conn, Side::left, e.g.star);
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          auto w = curvature_operator_components(e.conn, i, j, k, Side::left, e.g.star);
          for (int m = 0; m < 2; ++m) CHECK(ops.c(k, i, j, m) == w[m]);
        }
  }

  TEST_CASE("bianchi identities on the examples") {
    for (int id : {1, 2}) {
      Pipeline p = pipeline(id);
      CHECK(first_bianchi_check(p.ops, "first-bianchi").passed());
      CurvatureDerivative d = curvature_covariant_derivative(p.e.g, p.e.ginv, p.e.conn, p.ops);
      CHECK(second_bianchi_check(d).passed());
      CHECK(contracted_bianchi_check(d).passed());
    }
  }

  TEST_CASE("equivalence reports on the examples") {
    Pipeline p1 = pipeline(1);
    auto r1 = ricci_equivalence_check(p1.e.g, p1.e.ups, p1.e.conn, p1.riem, p1.ricci);
    CHECK(r1.hypotheses.failed());
    CHECK(r1.ricci_equivalence.failed());
    Pipeline p2 = pipeline(2);
    auto r2 = ricci_equivalence_check(p2.e.g, p2.e.ups, p2.e.conn, p2.riem, p2.ricci);
    CHECK(r2.hypotheses.failed());
    CHECK(check_metric_parity(p2.e.g.g).passed());
    CHECK(check_chiral_parity(p2.e.ups).failed());
    CHECK(r2.ricci_equivalence.failed());
  }

  TEST_CASE("flat metric has zero curvature") {
    SeriesArray g = identity_matrix(3, 3);
    g(0, 2) = g(2, 0) = HbarSeries::from_rationals(3, {Rational(1, 3)});
    NCMetric m(g, StarProduct::moyal(ThetaMatrix::single(3, 0, 1, Rational(1))));
    InverseMetric h = star_inverse(m);
    auto conn = canonical_connection(m, h, ChiralCoefficients::zero(3, 3));
    auto ops = curvature_operators(conn, Side::left, m.star);
    RiemannField r = riemann(m, h, conn, ops);
    CHECK(r.r.is_zero());
    RicciBundle b = ricci_bundle(m, h, r);
    CHECK(b.scalar.is_zero());
    CurvatureDerivative d = curvature_covariant_derivative(m, h, conn, ops);
    CHECK(d.r.is_zero());
    CHECK(second_bianchi_check(d).passed());
    CHECK(contracted_bianchi_check(d).passed());
  }

  TEST_CASE("random jet metrics satisfy the first Bianchi identity") {
    RandomSource rs(71);
    auto c = make_chart({Rational(1, 2), Rational(-1, 3)});
    StarProduct s = StarProduct::moyal(ThetaMatrix::single(2, 0, 1, Rational(1, 3)));
    for (int t = 0; t < 10; ++t) {
      RandomCase rc = random_case(rs, c, s, 9, 3);
      CHECK(first_bianchi_check(rc.ops, "first-bianchi").passed());
      for (int k = 0; k < 2; ++k)
        for (int m = 0; m < 2; ++m) CHECK(rc.ops.c(k, 0, 1, m) == -rc.ops.c(k, 1, 0, m));
    }
  }

  TEST_CASE("random jet metrics: Riemann routes and second Bianchi") {
    RandomSource rs(73);
    auto c = make_chart({Rational(1, 5), Rational(2, 3)});
    StarProduct s = StarProduct::moyal(ThetaMatrix::single(2, 0, 1, Rational(1, 2)));
    for (int t = 0; t < 2; ++t) {
      RandomCase rc = random_case(rs, c, s, 9, 3);
      RiemannField r = riemann(rc.g, rc.ginv, rc.conn, rc.ops);
      RicciBundle b = ricci_bundle(rc.g, rc.ginv, r);
      CHECK(b.scalar == b.scalar_theta);
      CurvatureDerivative d = curvature_covariant_derivative(rc.g, rc.ginv, rc.conn, rc.ops);
      CHECK(second_bianchi_check(d).passed());
      CHECK(contracted_bianchi_check(d).passed());
    }
  }

  TEST_CASE("injected torsion breaks the first Bianchi identity") {
    // The cyclic sum vanishes identically in two dimensions, so this runs in three.
    auto c = make_chart({Rational(1, 2), Rational(1, 3), Rational(1, 5)});
    SeriesArray g = identity_matrix(3, 2);
    NCMetric m(g, StarProduct::moyal(ThetaMatrix::single(3, 0, 1, Rational(1))));
    auto conn = canonical_connection(m, star_inverse(m), ChiralCoefficients::zero(3, 2));
    CHECK(first_bianchi_check(curvature_operators(conn, Side::left, m.star), "first-bianchi").passed());
    conn.upper(0, 1, 2) += HbarSeries::monomial(2, 0, Scalar(Jet::coordinate(c, 4, 2)));
    auto r = first_bianchi_check(curvature_operators(conn, Side::left, m.star), "first-bianchi");
    CHECK(r.failed());
    CHECK_FALSE(r.counterexample.empty());
  }

  TEST_CASE("random three-dimensional metrics satisfy the first Bianchi identity") {
    RandomSource rs(97);
    auto c = make_chart({Rational(1, 2), Rational(-1, 3), Rational(2)});
    StarProduct s = StarProduct::moyal(ThetaMatrix::single(3, 0, 2, Rational(1, 3)));
    for (int t = 0; t < 2; ++t) {
      SeriesArray g(3, 2, 2);
      for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) g(i, j) = g(j, i) = rs.jet_series(c, 7, 2);
      for (int i = 0; i < 3; ++i) g(i, i) += HbarSeries::from_rationals(2, {10});
      NCMetric m(g, s);
      InverseMetric h = star_inverse(m);
      auto conn = canonical_connection(m, h, ChiralCoefficients::zero(3, 2));
      auto ops = curvature_operators(conn, Side::left, s);
      CHECK(first_bianchi_check(ops, "first-bianchi").passed());
      RiemannField r = riemann(m, h, conn, ops);
      CHECK(ricci_bundle(m, h, r).scalar.truncation() == 2);
    }
  }

  TEST_CASE("covariant derivative obeys the Leibniz rule") {
    Example e = example(1);
    RandomSource rs(79);
    auto c = make_chart({Rational(1, 3), Rational(1, 7)});
    HbarSeries f = rs.jet_series(c, 8, 6);
    VectorFieldCoefficients v{rs.jet_series(c, 8, 6), rs.jet_series(c, 8, 6)};
    for (int i = 0; i < 2; ++i) {
      VectorFieldCoefficients fv{star_mul(f, v[0], e.g.star), star_mul(f, v[1], e.g.star)};
      auto lhs = covariant_derivative_vector(e.conn, fv, i, Side::left, e.g.star);
      auto dv = covariant_derivative_vector(e.conn, v, i, Side::left, e.g.star);
      for (int k = 0; k < 2; ++k) {
        HbarSeries rhs = star_mul(f.partial(i), v[k], e.g.star) + star_mul(f, dv[k], e.g.star);
        CHECK(lhs[k] == rhs);
      }
    }
    // The basis vectors map to the connection coefficients.
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        VectorFieldCoefficients ej{HbarSeries(6), HbarSeries(6)};
        ej[j] = HbarSeries::from_rationals(6, {1});
        auto w = covariant_derivative_vector(e.conn, ej, i, Side::left, e.g.star);
        for (int k = 0; k < 2; ++k) CHECK(w[k] == e.conn.upper(i, j, k));
      }
  }

  TEST_CASE("covariant derivative of curvature is linear in the operators") {
    Pipeline p = pipeline(2);
    CurvatureOperators twice{p.ops.c + p.ops.c};
    auto d1 = curvature_covariant_derivative(p.e.g, p.e.ginv, p.e.conn, p.ops);
    auto d2 = curvature_covariant_derivative(p.e.g, p.e.ginv, p.e.conn, twice);
    CHECK(d2.vectors == d1.vectors + d1.vectors);
  }

  TEST_CASE("parity hypotheses imply the Ricci equivalence") {
    RandomSource rs(83);
    auto c = make_chart({Rational(1, 2), Rational(1, 4)});
    StarProduct s = StarProduct::moyal(ThetaMatrix::single(2, 0, 1, Rational(1)));
    for (int t = 0; t < 2; ++t) {
      NCMetric g(random_parity_metric(rs, c, 9, 3), s);
      InverseMetric h = star_inverse(g);
      ChiralCoefficients u = random_compatible_chiral(rs, g.g, c, 9, true);
      ConnectionCoefficients conn = canonical_connection(g, h, u);
      RiemannField r = riemann(g, h, conn);
      RicciBundle b = ricci_bundle(g, h, r);
      auto rep = ricci_equivalence_check(g, u, conn, r, b);
      CHECK(rep.hypotheses.passed());
      CHECK(rep.connection_parity.passed());
      CHECK(rep.riemann_parity.passed());
      CHECK(rep.ricci_equivalence.passed());
    }
  }

  TEST_CASE("classical layer matches the Levi-Civita curvature") {
    RandomSource rs(89);
    for (int n : {2, 3}) {
      std::vector<Rational> base;
      for (int i = 0; i < n; ++i) base.push_back(Rational(i + 1, 3));
      auto c = make_chart(base);
      const int order = 6;
      SeriesArray g(n, 2, 0);
      oracle::PolyMatrix pg(n, std::vector<oracle::Poly>(n));
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          Jet v = rs.jet(c, order);
          if (i == j) v = v.plus_constant(Rational(5));
          g(i, j) = g(j, i) = HbarSeries({Scalar(v)});
          pg[i][j] = pg[j][i] = oracle::from_jet(v);
        }
      NCMetric m(g, StarProduct::moyal(ThetaMatrix::zero(n)));
      InverseMetric h = star_inverse(m);
      auto conn = canonical_connection(m, h, ChiralCoefficients::zero(n, 0));
      RiemannField r = riemann(m, h, conn);
      auto ref = oracle::classical_riemann(pg);
      for (auto& [idx, poly] : ref) {
        const Scalar& got = r.r(idx[0], idx[1], idx[2], idx[3])[0];
        oracle::Poly diff = oracle::add(poly, to_poly(got, n, order), -1);
        bool zero = true;
        for (auto& [a, v] : diff.c)
          if (oracle::degree(a) <= diff.order && v != 0) zero = false;
        CHECK(zero);
      }
    }
  }
}
