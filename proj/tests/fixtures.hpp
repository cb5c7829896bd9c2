#pragma once

#include <algorithm>
#include <map>

#include "ncdg/connection.hpp"
#include "ncdg/elementary.hpp"
#include "ncdg/embedding.hpp"
#include "ncdg/metric.hpp"
#include "ncdg/random.hpp"

namespace fixtures {

using namespace ncdg;

inline SeriesArray diagonal_metric(int n, const HbarSeries& d) {
  SeriesArray g(n, 2, d.truncation());
  for (int i = 0; i < n; ++i) g(i, i) = d;
  return g;
}

inline HbarSeries geometric(int N) {
  return HbarSeries::from_rationals(N, std::vector<Rational>(N + 1, Rational(1)));
}

inline HbarSeries alternating_even(int N) {
  std::vector<Rational> c(N + 1);
  for (int q = 0; 2 * q <= N; ++q) c[2 * q] = q % 2 == 0 ? 1 : -1;
  return HbarSeries::from_rationals(N, c);
}

// Random metric whose h^q layer is symmetric for even q and antisymmetric
// for odd q, with invertible order-0 part.
inline SeriesArray random_parity_metric(RandomSource& rs, const ChartPtr& c, int order, int N) {
  int n = c->dim();
  while (true) {
    SeriesArray g(n, 2, N);
    std::vector<std::vector<std::vector<Scalar>>> layers(
        N + 1, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n)));
    for (int q = 0; q <= N; ++q)
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          if (i == j && q % 2 == 1) continue;
          Scalar v(rs.jet(c, order));
          layers[q][i][j] = v;
          layers[q][j][i] = q % 2 == 0 ? v : -v;
        }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::vector<Scalar> s(N + 1);
        for (int q = 0; q <= N; ++q) s[q] = layers[q][i][j];
        g(i, j) = HbarSeries(s);
      }
    NCMetric probe(g, StarProduct::moyal(ThetaMatrix::zero(n)));
    if (check_invertible(probe)) return g;
  }
}

// Random metric with no structure beyond invertibility.
inline SeriesArray random_metric(RandomSource& rs, const ChartPtr& c, int order, int N) {
  int n = c->dim();
  while (true) {
    SeriesArray g(n, 2, N);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) = rs.jet_series(c, order, N);
    NCMetric probe(g, StarProduct::moyal(ThetaMatrix::zero(n)));
    if (check_invertible(probe)) return g;
  }
}

// Chiral coefficients admitting a canonical connection for a 2-dimensional
// metric: Upsilon_kij = (T_kij + T_ikj) / 3 + S_kij with T_kij = d_k(g_ij - g_ji)
// and S totally symmetric. With odd_only, S lives in odd orders, so the
// result satisfies the chiral parity condition when g satisfies the metric one.
inline ChiralCoefficients random_compatible_chiral(RandomSource& rs, const SeriesArray& g,
                                                   const ChartPtr& c, int order, bool odd_only) {
  int n = g.dim(), N = g.truncation();
  SeriesArray t(n, 3, N), u(n, 3, N);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) t(k, i, j) = (g(i, j) - g(j, i)).partial(k);
  // Totally symmetric part from sorted index triples.
  std::map<std::vector<int>, HbarSeries> sym;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::vector<int> key{k, i, j};
        std::sort(key.begin(), key.end());
        if (sym.count(key)) continue;
        std::vector<Scalar> cs(N + 1);
        for (int q = 0; q <= N; ++q)
          if (!odd_only || q % 2 == 1) cs[q] = Scalar(rs.jet(c, order));
        sym[key] = HbarSeries(cs);
      }
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::vector<int> key{k, i, j};
        std::sort(key.begin(), key.end());
        u(k, i, j) = (t(k, i, j) + t(i, k, j)).scaled(Rational(1, 3)) + sym[key];
      }
  return {u};
}

// Upsilon of the two constant examples; ups222 differs.
inline ChiralCoefficients example_chiral(int N, const HbarSeries& ups222) {
  HbarSeries h = HbarSeries::from_rationals(N, {0, 1});
  SeriesArray u(2, 3, N);
  u(0, 0, 0) = h;
  u(0, 1, 0) = u(1, 0, 0) = -h;
  u(1, 1, 0) = -h;
  u(0, 0, 1) = -h;
  u(0, 1, 1) = u(1, 0, 1) = -h;
  u(1, 1, 1) = ups222;
  return {u};
}

struct Example {
  NCMetric g;
  InverseMetric ginv;
  ChiralCoefficients ups;
  ConnectionCoefficients conn;
};

inline Example example(int id) {
  const int N = 6;
  StarProduct s = StarProduct::moyal(ThetaMatrix::single(2, 0, 1, Rational(1)));
  HbarSeries d = id == 1 ? geometric(N) : alternating_even(N);
  HbarSeries u222 = HbarSeries::from_rationals(N, id == 1 ? std::vector<Rational>{0, 1}
                                                          : std::vector<Rational>{0, 0, 1});
  NCMetric g(diagonal_metric(2, d), s);
  InverseMetric h = star_inverse(g);
  ChiralCoefficients u = example_chiral(N, u222);
  ConnectionCoefficients c = canonical_connection(g, h, u);
  return {g, h, u, c};
}

inline StarProduct broken_star(int dim, int truncation, const Rational& eps) {
  ThetaMatrix th = ThetaMatrix::single(dim, 0, 1, Rational(1));
  std::vector<BidifferentialOperator> ops;
  for (int q = 1; q <= truncation; ++q) {
    auto terms = moyal_operator(th, q).terms();
    if (q == 2) {
      MultiIndex e(dim, 0);
      e[0] = 1;
      terms.push_back({Scalar(eps), e, e});
    }
    ops.emplace_back(dim, terms);
  }
  return StarProduct::general(dim, ops);
}

inline StarProduct ordered_star(int dim, int truncation) {
  std::vector<std::vector<Rational>> a(dim, std::vector<Rational>(dim));
  a[0][1] = 1;
  a[1][0] = Rational(1, 2);
  a[0][0] = -1;
  std::vector<BidifferentialOperator> ops;
  for (int q = 1; q <= truncation; ++q) ops.push_back(exponential_operator(a, q));
  return StarProduct::general(dim, ops);
}

using Angle = std::pair<Rational, Rational>;

inline Jet trig(bool is_sin, int coord, const Angle& a, const ChartPtr& c, int order) {
  auto k = is_sin ? ElementaryKind::sin : ElementaryKind::cos;
  return jet_of_elementary(k, AffineArgument::coordinate(c->dim(), coord), c, order,
                           trig_derivative_table(k, a.first, a.second, order));
}

// Unit sphere in R^3 over (theta1, theta2).
inline IsometricEmbedding round_sphere(int order) {
  Angle a1{Rational(3, 5), Rational(4, 5)}, a2{Rational(5, 13), Rational(12, 13)};
  auto c = make_chart({Rational(0), Rational(0)});
  Jet s1 = trig(true, 0, a1, c, order), c1 = trig(false, 0, a1, c, order);
  Jet s2 = trig(true, 1, a2, c, order), c2 = trig(false, 1, a2, c, order);
  return IsometricEmbedding(c, {Scalar(s2 * s1), Scalar(s2 * c1), Scalar(c2)}, {1, 1, 1});
}

inline IsometricEmbedding identity_embedding(int n, int order) {
  std::vector<Rational> bp;
  for (int i = 0; i < n; ++i) bp.push_back(Rational(i + 1, 2));
  auto c = make_chart(bp);
  std::vector<Scalar> x;
  for (int i = 0; i < n; ++i) x.emplace_back(Jet::coordinate(c, order, i));
  return IsometricEmbedding(c, x, std::vector<int>(n, 1));
}

// Graph of a random polynomial over the plane, Lorentzian ambient signature.
inline IsometricEmbedding random_graph(RandomSource& rs, int order) {
  auto c = make_chart({Rational(1, 3), Rational(-1, 2)});
  Jet h = rs.jet(c, order);
  return IsometricEmbedding(
      c, {Scalar(h.scaled(Rational(1, 4))), Scalar(Jet::coordinate(c, order, 0)),
          Scalar(Jet::coordinate(c, order, 1))},
      {-1, 1, 1});
}

}  // namespace fixtures
