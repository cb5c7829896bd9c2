#include "ncdg/metric.hpp"

#include "ncdg/errors.hpp"

namespace ncdg {

NCMetric::NCMetric(SeriesArray g_, StarProduct star_) : g(std::move(g_)), star(std::move(star_)) {
  if (g.rank() != 2) throw ShapeMismatch("metric must be a matrix");
  if (star.dim() != g.dim()) throw ShapeMismatch("star product and metric dimensions differ");
}

namespace {

Rational determinant(std::vector<std::vector<Rational>> m) {
  int n = static_cast<int>(m.size());
  Rational det = 1;
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && sgn(m[p][c]) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int r = c + 1; r < n; ++r) {
      if (sgn(m[r][c]) == 0) continue;
      Rational f = m[r][c] / m[c][c];
      for (int k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

ScalarMatrix order_zero(const SeriesArray& g) {
  int n = g.dim();
  ScalarMatrix m(n, std::vector<Scalar>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = g(i, j)[0];
  return m;
}

HbarSeries star(const HbarSeries& a, const HbarSeries& b, const StarProduct& s) {
  return star_mul(a, b, s);
}

}  // namespace

bool check_invertible(const NCMetric& g) {
  int n = g.dim();
  std::vector<std::vector<Rational>> m(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m[i][j] = g.g(i, j)[0].value();
  return sgn(determinant(m)) != 0;
}

ScalarMatrix pointwise_inverse(const ScalarMatrix& m0) {
  int n = static_cast<int>(m0.size());
  ScalarMatrix a = m0;
  ScalarMatrix inv(n, std::vector<Scalar>(n));
  for (int i = 0; i < n; ++i) inv[i][i] = Scalar(1);
  for (int c = 0; c < n; ++c) {
    int p = c;
    while (p < n && sgn(a[p][c].value()) == 0) ++p;
    if (p == n) throw NotInvertible("order-0 metric is singular at the base point");
    std::swap(a[p], a[c]);
    std::swap(inv[p], inv[c]);
    Scalar r = a[c][c].reciprocal();
    for (int k = 0; k < n; ++k) {
      a[c][k] = a[c][k] * r;
      inv[c][k] = inv[c][k] * r;
    }
    for (int row = 0; row < n; ++row) {
      if (row == c || a[row][c].is_zero()) continue;
      Scalar f = a[row][c];
      for (int k = 0; k < n; ++k) {
        a[row][k] = a[row][k] - f * a[c][k];
        inv[row][k] = inv[row][k] - f * inv[c][k];
      }
    }
  }
  return inv;
}

SeriesArray right_inverse_recursion(const NCMetric& metric) {
  if (!check_invertible(metric)) throw NotInvertible("det g_{ij}[0] vanishes at the base point");
  const auto& g = metric.g;
  const auto& s = metric.star;
  int n = g.dim(), N = g.truncation();
  ScalarMatrix h0 = pointwise_inverse(order_zero(g));
  // h[q][l][j] = g^{lj}[q]
  std::vector<ScalarMatrix> h(N + 1, ScalarMatrix(n, std::vector<Scalar>(n)));
  h[0] = h0;
  for (int q = 1; q <= N; ++q) {
    // t[k][j] = sum_l sum_{r>=1} g_{kl}[r] g^{lj}[q-r] + sum_{r>=1,s} B_r(g_{kl}[s], g^{lj}[q-r-s])
    ScalarMatrix t(n, std::vector<Scalar>(n));
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        Scalar acc;
        for (int l = 0; l < n; ++l) {
          for (int r = 1; r <= q; ++r) {
            const Scalar& a = g(k, l)[r];
            if (!a.is_zero()) acc = acc + a * h[q - r][l][j];
          }
          for (int r = 1; r <= q; ++r)
            for (int sidx = 0; sidx <= q - r; ++sidx)
              acc = acc + s.apply(r, g(k, l)[sidx], h[q - r - sidx][l][j]);
        }
        t[k][j] = acc;
      }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Scalar acc;
        for (int k = 0; k < n; ++k)
          if (!h0[i][k].is_zero() && !t[k][j].is_zero()) acc = acc + h0[i][k] * t[k][j];
        h[q][i][j] = -acc;
      }
  }
  SeriesArray out(n, 2, N);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<Scalar> c(N + 1);
      for (int q = 0; q <= N; ++q) c[q] = h[q][i][j];
      out(i, j) = HbarSeries(std::move(c));
    }
  return out;
}

SeriesArray left_inverse_recursion(const NCMetric& metric) {
  if (!check_invertible(metric)) throw NotInvertible("det g_{ij}[0] vanishes at the base point");
  const auto& g = metric.g;
  const auto& s = metric.star;
  int n = g.dim(), N = g.truncation();
  ScalarMatrix h0 = pointwise_inverse(order_zero(g));
  std::vector<ScalarMatrix> h(N + 1, ScalarMatrix(n, std::vector<Scalar>(n)));
  h[0] = h0;
  for (int q = 1; q <= N; ++q) {
    // t[i][l] = sum_k sum_{r>=1} g^{ik}[q-r] g_{kl}[r] + sum B_r(g^{ik}[q-r-s], g_{kl}[s])
    ScalarMatrix t(n, std::vector<Scalar>(n));
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) {
        Scalar acc;
        for (int k = 0; k < n; ++k) {
          for (int r = 1; r <= q; ++r) {
            const Scalar& b = g(k, l)[r];
            if (!b.is_zero()) acc = acc + h[q - r][i][k] * b;
          }
          for (int r = 1; r <= q; ++r)
            for (int sidx = 0; sidx <= q - r; ++sidx)
              acc = acc + s.apply(r, h[q - r - sidx][i][k], g(k, l)[sidx]);
        }
        t[i][l] = acc;
      }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Scalar acc;
        for (int l = 0; l < n; ++l)
          if (!t[i][l].is_zero() && !h0[l][j].is_zero()) acc = acc + t[i][l] * h0[l][j];
        h[q][i][j] = -acc;
      }
  }
  SeriesArray out(n, 2, N);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<Scalar> c(N + 1);
      for (int q = 0; q <= N; ++q) c[q] = h[q][i][j];
      out(i, j) = HbarSeries(std::move(c));
    }
  return out;
}

SeriesArray star_matmul(const SeriesArray& a, const SeriesArray& b, const StarProduct& s) {
  int n = a.dim();
  SeriesArray r(n, 2, a.truncation());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      HbarSeries acc(a.truncation());
      for (int k = 0; k < n; ++k) acc += star(a(i, k), b(k, j), s);
      r(i, j) = acc;
    }
  return r;
}

SeriesArray identity_matrix(int n, int truncation) {
  SeriesArray r(n, 2, truncation);
  for (int i = 0; i < n; ++i) r(i, i) = HbarSeries::constant(truncation, Scalar(1));
  return r;
}

InverseMetric star_inverse(const NCMetric& g) {
  SeriesArray right = right_inverse_recursion(g);
  SeriesArray left = left_inverse_recursion(g);
  if (auto d = first_difference(right, left))
    throw InternalDisagreement("left and right inverse recursions differ at " +
                               index_label(d->indices) + " order " + std::to_string(d->order));
  SeriesArray id = identity_matrix(g.dim(), g.truncation());
  if (auto d = first_difference(star_matmul(g.g, right, g.star), id))
    throw InternalDisagreement("g * g^{-1} differs from the identity at " +
                               index_label(d->indices) + " order " + std::to_string(d->order));
  if (auto d = first_difference(star_matmul(right, g.g, g.star), id))
    throw InternalDisagreement("g^{-1} * g differs from the identity at " +
                               index_label(d->indices) + " order " + std::to_string(d->order));
  return InverseMetric{std::move(right)};
}

CheckResult check_metric_parity(const SeriesArray& g, const std::string& name) {
  int n = g.dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int q = first_difference(g(i, j), parity_flip(g(j, i)));
      if (q >= 0)
        return CheckResult::fail(name,
                                 q % 2 == 0 ? "even-order part is not symmetric"
                                            : "odd-order part is not antisymmetric",
                                 {{"indices", index_label({i, j})},
                                  {"order", std::to_string(q)},
                                  {"g_ij", g(i, j)[q].to_string()},
                                  {"g_ji", g(j, i)[q].to_string()}});
    }
  return CheckResult::pass(name);
}

CheckResult check_inverse_parity(const NCMetric& g, const InverseMetric& ginv) {
  if (!check_metric_parity(g.g).passed())
    return CheckResult::skipped("inverse-parity", "metric violates the parity condition");
  return check_metric_parity(ginv.g, "inverse-parity");
}

CheckResult check_gfg_lemma(const NCMetric& g, const InverseMetric& ginv,
                            const std::vector<Scalar>& samples) {
  const std::string name = "gfg-lemma";
  if (!check_metric_parity(g.g).passed())
    return CheckResult::skipped(name, "metric violates the parity condition");
  int n = g.dim(), N = g.truncation();
  for (std::size_t t = 0; t < samples.size(); ++t) {
    HbarSeries f = HbarSeries::constant(N, samples[t]);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        HbarSeries gf = star(ginv.g(i, j), f, g.star);
        HbarSeries fg = star(f, ginv.g(j, i), g.star);
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            HbarSeries lhs = star(gf, ginv.g(k, l), g.star);
            HbarSeries rhs = star(ginv.g(l, k), fg, g.star);
            int q = first_difference(lhs, parity_flip(rhs));
            if (q >= 0)
              return CheckResult::fail(name, "parity relation violated",
                                       {{"sample", std::to_string(t)},
                                        {"indices", index_label({i, j, k, l})},
                                        {"order", std::to_string(q)}});
          }
      }
  }
  return CheckResult::pass(name, std::to_string(samples.size()) + " samples");
}

CheckResult check_ugv_lemma(const NCMetric& g, const InverseMetric& ginv,
                            const std::vector<std::pair<Scalar, Scalar>>& samples) {
  const std::string name = "ugv-lemma";
  if (!check_metric_parity(g.g).passed())
    return CheckResult::skipped(name, "metric violates the parity condition");
  int n = g.dim(), N = g.truncation();
  for (std::size_t t = 0; t < samples.size(); ++t) {
    HbarSeries u = HbarSeries::constant(N, samples[t].first);
    HbarSeries v = HbarSeries::constant(N, samples[t].second);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        HbarSeries lhs = star_mul(u, ginv.g(i, j), v, g.star);
        HbarSeries rhs = star_mul(v, ginv.g(j, i), u, g.star);
        int q = first_difference(lhs, parity_flip(rhs));
        if (q >= 0)
          return CheckResult::fail(name, "parity relation violated",
                                   {{"sample", std::to_string(t)},
                                    {"indices", index_label({i, j})},
                                    {"order", std::to_string(q)}});
      }
  }
  return CheckResult::pass(name, std::to_string(samples.size()) + " samples");
}

}  // namespace ncdg
