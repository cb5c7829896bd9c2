#include <chrono>
#include <functional>
#include <iostream>
#include <string>

#include "fixtures.hpp"
#include "ncdg/appendix.hpp"
#include "ncdg/curvature.hpp"
#include "ncdg/runner.hpp"
#include "oracles.hpp"

using namespace ncdg;
using namespace fixtures;

namespace {

// Collects failed sub-checks so one line per criterion can name the first.
struct Verdict {
  bool ok = true;
  std::string first_failure;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) first_failure = what;
    ok = ok && cond;
  }
};

HbarSeries series(int N, const std::vector<Rational>& c) { return HbarSeries::from_rationals(N, c); }

// c * h^shift * (1 + sign h)^power through h^N.
HbarSeries binomial_series(int N, const Rational& c, int shift, int sign, int power) {
  std::vector<Rational> out(N + 1);
  for (int k = 0; k <= power && shift + k <= N; ++k) {
    Rational term = c * Rational(binomial(power, k));
    if (sign < 0 && k % 2 == 1) term = -term;
    out[shift + k] = term;
  }
  return series(N, out);
}

HbarSeries poly_product(const HbarSeries& a, const HbarSeries& b) { return cauchy_product(a, b); }

struct Curvature {
  RiemannField riem;
  RicciBundle ricci;
};

Curvature curvature_of(const Example& e) {
  RiemannField r = riemann(e.g, e.ginv, e.conn);
  return {r, ricci_bundle(e.g, e.ginv, r)};
}

void check_connection_table(Verdict& v, const Example& e, const HbarSeries& g222) {
  const int N = 6;
  HbarSeries p = series(N, {0, Rational(1, 2)}), m = series(N, {0, Rational(-1, 2)});
  const auto& G = e.conn.lower;
  const auto& T = e.conn.lower_tilde;
  // (i, j, k) -> Gamma_{i+1 j+1 k+1}; all entries except Gamma_222 are +-h/2.
  const HbarSeries want[2][2][2] = {{{p, m}, {m, m}}, {{m, m}, {m, g222}}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        v.require(G(i, j, k) == want[i][j][k], "Gamma" + index_label({i, j, k}));
        v.require(T(i, j, k) == -want[i][j][k], "Gamma~" + index_label({i, j, k}));
      }
}

void check_curvature_table(Verdict& v, const Curvature& c, const HbarSeries& r1212,
                           const HbarSeries& ricci, const HbarSeries& raised) {
  for (int l = 0; l < 2; ++l)
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          HbarSeries want(r1212.truncation());
          if (l != k && i != j) want = (l == i) ? r1212 : -r1212;
          v.require(c.riem.r(l, k, i, j) == want, "R" + index_label({l, k, i, j}));
        }
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      HbarSeries lo = i == j ? ricci : HbarSeries(ricci.truncation());
      HbarSeries up = i == j ? raised : HbarSeries(raised.truncation());
      v.require(c.ricci.ricci(i, j) == lo, "R_ij");
      v.require(c.ricci.theta(i, j) == lo, "Theta_ij");
      v.require(c.ricci.ricci_up(i, j) == up, "R^i_j");
      v.require(c.ricci.theta_up(i, j) == up, "Theta^i_j");
    }
}

Verdict criterion_1() {
  Verdict v;
  const int N = 6;
  Example e = example(1);
  HbarSeries inv = binomial_series(N, 1, 0, -1, 1);
  v.require(e.ginv.g(0, 0) == inv && e.ginv.g(1, 1) == inv && e.ginv.g(0, 1).is_zero() &&
                e.ginv.g(1, 0).is_zero(),
            "inverse metric");
  check_connection_table(v, e, series(N, {0, Rational(1, 2)}));
  check_curvature_table(v, curvature_of(e), binomial_series(N, -1, 2, -1, 1),
                        binomial_series(N, -1, 2, -1, 2), binomial_series(N, -1, 2, -1, 3));
  return v;
}

Verdict criterion_2() {
  Verdict v;
  const int N = 6;
  Example e = example(2);
  HbarSeries inv = series(N, {1, 0, 1});
  v.require(e.ginv.g(0, 0) == inv && e.ginv.g(1, 1) == inv && e.ginv.g(0, 1).is_zero() &&
                e.ginv.g(1, 0).is_zero(),
            "inverse metric");
  check_connection_table(v, e, series(N, {0, 0, Rational(1, 2)}));
  HbarSeries f = series(N, {0, 0, Rational(3, 4), Rational(1, 4), Rational(3, 4), Rational(1, 4)});
  HbarSeries s = series(N, {1, 0, 1});
  check_curvature_table(v, curvature_of(e), -f, -poly_product(s, f), -poly_product(s, poly_product(s, f)));
  return v;
}

RicciEquivalenceReport equivalence_of_embedding(const IsometricEmbedding& x, const ThetaMatrix& theta, int N) {
  StarProduct s = StarProduct::moyal(theta);
  NCMetric g = fluctuation_metric(x, s, N);
  InverseMetric h = star_inverse(g);
  EmbeddingGeometry geo = embedding_connection_and_chiral(x, g, h);
  ConnectionCoefficients conn = canonical_connection(g, h, geo.ups);
  RiemannField r = riemann(g, h, conn);
  return ricci_equivalence_check(g, geo.ups, conn, r, ricci_bundle(g, h, r));
}

Verdict criterion_3() {
  Verdict v;
  for (int id : {1, 2}) {
    Example e = example(id);
    Curvature c = curvature_of(e);
    auto rep = ricci_equivalence_check(e.g, e.ups, e.conn, c.riem, c.ricci);
    v.require(rep.hypotheses.failed(), "example " + std::to_string(id) + " hypotheses");
    v.require(rep.ricci_equivalence.failed(), "example " + std::to_string(id) + " relation");
  }
  const int N = 5, order = N + 6;
  RandomSource rs(2024);
  std::vector<std::pair<std::string, IsometricEmbedding>> xs = {
      {"identity", identity_embedding(2, order)},
      {"sphere", round_sphere(order)},
      {"graph-1", random_graph(rs, order)},
      {"graph-2", random_graph(rs, order)}};
  for (auto& [name, x] : xs) {
    auto rep = equivalence_of_embedding(x, ThetaMatrix::single(2, 0, 1, Rational(1, 2)), N);
    v.require(rep.hypotheses.passed() && rep.connection_parity.passed() && rep.riemann_parity.passed() &&
                  rep.ricci_equivalence.passed(),
              name);
  }
  return v;
}

Verdict criterion_4() {
  Verdict v;
  AppendixReport r = verify_appendix(8, 5, 42);
  v.require(r.checks.size() == 16 && r.passed() == 16, std::to_string(r.passed()) + "/16 identities");
  return v;
}

Verdict criterion_5() {
  Verdict v;
  const int N = 5;
  RandomSource rs(5);
  std::vector<std::vector<std::vector<Rational>>> thetas = {
      {{0, Rational(1, 2)}, {Rational(-1, 2), 0}},
      {{0, 1, -2}, {-1, 0, Rational(1, 3)}, {2, Rational(-1, 3), 0}}};
  for (auto& t : thetas) {
    int n = static_cast<int>(t.size());
    // Dense three-variable jets keep three orders of slack to bound the cost.
    const int order = N + (n == 2 ? 6 : 3);
    ThetaMatrix theta(t);
    StarProduct s = StarProduct::moyal(theta);
    std::vector<Rational> base;
    for (int i = 0; i < n; ++i) base.push_back(Rational(i + 1, 4));
    auto c = make_chart(base);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        HbarSeries xi = HbarSeries::constant(N, Scalar(Jet::coordinate(c, order, i)));
        HbarSeries xj = HbarSeries::constant(N, Scalar(Jet::coordinate(c, order, j)));
        HbarSeries d = star_mul(xi, xj, s) - star_mul(xj, xi, s) - series(N, {0, 2 * theta(i, j)});
        v.require(d.is_zero(), "commutator " + index_label({i, j}));
      }
    std::vector<std::pair<HbarSeries, HbarSeries>> pairs;
    std::vector<std::vector<HbarSeries>> triples;
    for (int k = 0; k < 20; ++k) {
      pairs.emplace_back(rs.jet_series(c, order, N), rs.jet_series(c, order, N));
      triples.push_back({rs.jet_series(c, order, N), rs.jet_series(c, order, N), rs.jet_series(c, order, N)});
    }
    v.require(check_leibniz(s, pairs).passed(), "Leibniz n=" + std::to_string(n));
    v.require(check_associativity(s, triples).passed(), "associativity n=" + std::to_string(n));
  }
  return v;
}

void bianchi_suite(Verdict& v, const NCMetric& g, const InverseMetric& h, const ConnectionCoefficients& conn,
                   const std::string& name) {
  CurvatureOperators ops = curvature_operators(conn, Side::left, g.star);
  CurvatureDerivative d = curvature_covariant_derivative(g, h, conn, ops);
  v.require(first_bianchi_check(ops).passed(), name + " first");
  v.require(second_bianchi_check(d).passed(), name + " second");
  v.require(contracted_bianchi_check(d).passed(), name + " contracted");
}

Verdict criterion_6() {
  Verdict v;
  for (int id : {1, 2}) {
    Example e = example(id);
    bianchi_suite(v, e.g, e.ginv, e.conn, "example " + std::to_string(id));
  }
  RandomSource rs(606);
  auto c = make_chart({Rational(1, 2), Rational(-1, 3)});
  StarProduct s = StarProduct::moyal(ThetaMatrix::single(2, 0, 1, Rational(2, 3)));
  const int N = 3, order = N + 6;
  for (int t = 0; t < 10; ++t) {
    NCMetric g(random_metric(rs, c, order, N), s);
    InverseMetric h = star_inverse(g);
    ConnectionCoefficients conn = canonical_connection(g, h, random_compatible_chiral(rs, g.g, c, order, false));
    bianchi_suite(v, g, h, conn, "random metric " + std::to_string(t + 1));
  }
  Report r = run_scenario(parse_scenario(*builtin_scenario("spherical-bianchi")));
  v.require(r.ok() && r.truncation == 3, "spherical scenario");
  return v;
}

Verdict criterion_7() {
  Verdict v;
  const int N = 3, order = N + 6;
  IsometricEmbedding x = round_sphere(order);
  StarProduct s = StarProduct::moyal(ThetaMatrix::single(2, 0, 1, Rational(1, 2)));
  NCMetric g = fluctuation_metric(x, s, N);
  InverseMetric h = star_inverse(g);
  EmbeddingGeometry geo = embedding_connection_and_chiral(x, g, h);
  RiemannField r = riemann(g, h, geo.conn);
  oracle::PolyMatrix g0(2, std::vector<oracle::Poly>(2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      oracle::Poly acc = oracle::constant(2, order - 1, 0);
      for (int a = 0; a < 3; ++a)
        acc = oracle::add(acc, oracle::mul(oracle::partial(oracle::from_jet(x.x[a].jet()), i),
                                           oracle::partial(oracle::from_jet(x.x[a].jet()), j)));
      g0[i][j] = acc;
    }
  auto G = oracle::classical_christoffel(g0);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int m = 0; m < 2; ++m)
        v.require(geo.conn.upper(i, j, m)[0].value() == oracle::value(G[i][j][m]),
                  "Gamma^" + std::to_string(m + 1) + index_label({i, j}));
  for (auto& [idx, poly] : oracle::classical_riemann(g0))
    v.require(r.r(idx[0], idx[1], idx[2], idx[3])[0].value() == oracle::value(poly), "R" + index_label(idx));
  return v;
}

Verdict criterion_8() {
  Verdict v;
  Report r = run_scenario(parse_scenario(*builtin_scenario("spherical-theorem")));
  v.require(r.truncation == 6, "truncation");
  for (auto& c : r.checks) v.require(c.status == CheckStatus::pass, c.id);
  v.require(r.checks.size() == 3, "check count");
  return v;
}

Verdict criterion_9() {
  Verdict v;
  Report r = run_scenario(parse_scenario(*builtin_scenario("quasi-moyal-crosscheck")));
  v.require(r.truncation == 4, "truncation");
  for (auto& c : r.checks) v.require(c.status == CheckStatus::pass, c.id);
  for (auto& c : r.checks)
    if (c.id == "quasi-crosscheck") v.require(c.parts.size() == 17, "cross-check coverage");
  Report bad = run_scenario(parse_scenario(*builtin_scenario("quasi-nonassociative")));
  for (auto& c : bad.checks)
    v.require(c.status == CheckStatus::fail && c.details.find("NonAssociative") != std::string::npos,
              "non-associative table " + c.id);
  return v;
}

Verdict criterion_10() {
  Verdict v;
  const int N = 5, order = N + 3;
  RandomSource rs(1010);
  auto c = make_chart({Rational(1, 3), Rational(3, 4)});
  StarProduct s = StarProduct::moyal(ThetaMatrix::single(2, 0, 1, Rational(-1, 2)));
  auto relations = [&](const NCMetric& g, const ChiralCoefficients& u) {
    InverseMetric h = star_inverse(g);
    ConnectionCoefficients conn = canonical_connection(g, h, u);
    RiemannField r = riemann(g, h, conn);
    RicciBundle b = ricci_bundle(g, h, r);
    return std::vector<bool>{connection_parity_relation(conn).passed(), riemann_parity_relation(r).passed(),
                             ricci_equivalence_relation(b).passed()};
  };
  int detected = 0;
  for (int t = 0; t < 10; ++t) {
    NCMetric g(random_parity_metric(rs, c, order, N), s);
    ChiralCoefficients u = random_compatible_chiral(rs, g.g, c, order, true);
    auto ok = relations(g, u);
    v.require(ok[0], "connection parity " + std::to_string(t + 1));
    v.require(ok[1], "riemann parity " + std::to_string(t + 1));
    v.require(ok[2], "ricci equivalence " + std::to_string(t + 1));
    // A symmetric h^1 term keeps the chirality compatible but breaks metric parity.
    SeriesArray bumped = g.g;
    HbarSeries bump = HbarSeries::monomial(N, 1, Scalar(rs.jet(c, order)));
    bumped(0, 1) += bump;
    bumped(1, 0) += bump;
    auto broken = relations(NCMetric(bumped, s), u);
    detected += !(broken[0] && broken[1] && broken[2]);
  }
  v.require(detected == 10, "perturbation detected " + std::to_string(detected) + "/10");
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"example 1 tables (N=6)", criterion_1},
      {"example 2 tables (N=6)", criterion_2},
      {"Ricci equivalence counterexamples and embeddings (N=5)", criterion_3},
      {"trigonometric Moyal identities (N=8, 5 points)", criterion_4},
      {"Moyal commutator, Leibniz and associativity (n=2,3; N=5)", criterion_5},
      {"first, second and contracted Bianchi identities", criterion_6},
      {"classical limit on the round sphere", criterion_7},
      {"spherical fluctuation closed forms (n=3, l=3, N=6)", criterion_8},
      {"quasi-connection cross-check and associativity gate (N=4)", criterion_9},
      {"parity cascade on random data (n=2, N=5)", criterion_10},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[k].second();
    } catch (const std::exception& e) {
      v.ok = false;
      v.first_failure = std::string("error: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !v.ok;
    std::cout << "criterion " << k + 1 << ": " << (v.ok ? "PASS" : "FAIL") << "  " << criteria[k].first;
    if (!v.ok) std::cout << "  [first failure: " << v.first_failure << "]";
    std::cout << "  (" << static_cast<int>(secs * 1000) << " ms)\n";
  }
  std::cout << (failed ? std::to_string(failed) + " criteria failed\n" : "all criteria pass\n");
  return failed ? 1 : 0;
}
