#include "ncdg/quasi_connection.hpp"

#include "ncdg/errors.hpp"
#include "ncdg/random.hpp"

namespace ncdg {

HbarSeries eta_pair(const AmbientVector& y, const AmbientVector& z, const std::vector<int>& eta,
                    const StarProduct& s) {
  if (y.size() != z.size() || y.size() != eta.size())
    throw ShapeMismatch("ambient vectors differ in length");
  HbarSeries acc(y.empty() ? 0 : y[0].truncation());
  for (std::size_t a = 0; a < y.size(); ++a) {
    HbarSeries t = star_mul(y[a], z[a], s);
    acc += eta[a] == 1 ? t : -t;
  }
  return acc;
}

void require_associative(const StarProduct& s, const ChartPtr& chart, int order, int N,
                         std::uint64_t seed) {
  if (s.is_moyal()) return;
  RandomSource rs(seed);
  std::vector<std::vector<HbarSeries>> triples;
  for (int t = 0; t < 3; ++t) {
    std::vector<HbarSeries> tr;
    for (int k = 0; k < 3; ++k) tr.push_back(rs.jet_series(chart, order, N));
    triples.push_back(tr);
  }
  CheckResult r = check_associativity(s, triples);
  if (r.failed()) {
    std::string where;
    for (auto& [k, v] : r.counterexample)
      if (k == "order") where = " at order " + v;
    throw NonAssociative("star product is not associative" + where);
  }
}

StarMetric star_metric_from_embedding(const IsometricEmbedding& x, const StarProduct& s, int N) {
  int order = 0;
  for (auto& c : x.x)
    if (!c.is_constant()) order = std::max(order, c.jet().order());
  require_associative(s, x.chart, order, N);
  NCMetric g = fluctuation_metric(x, s, N);
  InverseMetric h = star_inverse(g);
  return {std::move(g), std::move(h)};
}

AmbientVector tangent_vector(const IsometricEmbedding& x, int i, int N) {
  AmbientVector v;
  for (auto& c : x.x) v.push_back(HbarSeries::constant(N, c.partial(i)));
  return v;
}

namespace {

int truncation_of(const VectorFieldCoefficients& a) {
  if (a.empty()) throw ShapeMismatch("empty coefficient list");
  return a[0].truncation();
}

AmbientVector combine(const IsometricEmbedding& x, const VectorFieldCoefficients& a,
                      const StarProduct& s, bool left) {
  if (static_cast<int>(a.size()) != x.dim()) throw ShapeMismatch("coefficient count differs from dimension");
  int N = truncation_of(a);
  AmbientVector y(x.codim(), HbarSeries(N));
  for (int i = 0; i < x.dim(); ++i) {
    if (a[i].is_zero()) continue;
    AmbientVector t = tangent_vector(x, i, N);
    for (int al = 0; al < x.codim(); ++al)
      y[al] += left ? star_mul(a[i], t[al], s) : star_mul(t[al], a[i], s);
  }
  return y;
}

}  // namespace

AmbientVector sigma(const IsometricEmbedding& x, const VectorFieldCoefficients& a,
                    const StarProduct& s) {
  return combine(x, a, s, true);
}

AmbientVector sigma_tilde(const IsometricEmbedding& x, const VectorFieldCoefficients& a,
                          const StarProduct& s) {
  return combine(x, a, s, false);
}

VectorFieldCoefficients sigma_tangential_coefficients(const AmbientVector& y,
                                                      const IsometricEmbedding& x,
                                                      const StarMetric& sg) {
  int n = x.dim(), N = sg.g.truncation();
  const StarProduct& s = sg.g.star;
  std::vector<HbarSeries> p(n);
  for (int j = 0; j < n; ++j) p[j] = eta_pair(y, tangent_vector(x, j, N), x.eta, s);
  VectorFieldCoefficients out(n, HbarSeries(N));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i] += star_mul(p[j], sg.ginv.g(j, i), s);
  return out;
}

VectorFieldCoefficients sigma_tilde_tangential_coefficients(const AmbientVector& y,
                                                            const IsometricEmbedding& x,
                                                            const StarMetric& sg) {
  int n = x.dim(), N = sg.g.truncation();
  const StarProduct& s = sg.g.star;
  std::vector<HbarSeries> p(n);
  for (int j = 0; j < n; ++j) p[j] = eta_pair(tangent_vector(x, j, N), y, x.eta, s);
  VectorFieldCoefficients out(n, HbarSeries(N));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i] += star_mul(sg.ginv.g(i, j), p[j], s);
  return out;
}

VectorFieldCoefficients quasi_covariant_derivative(const IsometricEmbedding& x,
                                                   const StarMetric& sg,
                                                   const VectorFieldCoefficients& v, int i,
                                                   Side side) {
  const StarProduct& s = sg.g.star;
  AmbientVector y = side == Side::left ? sigma(x, v, s) : sigma_tilde(x, v, s);
  for (auto& c : y) c = c.partial(i);
  return side == Side::left ? sigma_tangential_coefficients(y, x, sg)
                            : sigma_tilde_tangential_coefficients(y, x, sg);
}

QuasiConnection quasi_connection(const IsometricEmbedding& x, const StarMetric& sg) {
  int n = x.dim(), N = sg.g.truncation();
  QuasiConnection qc{SeriesArray(n, 3, N), SeriesArray(n, 3, N)};
  for (int j = 0; j < n; ++j) {
    VectorFieldCoefficients e(n, HbarSeries(N));
    e[j] = HbarSeries::constant(N, Scalar(1));
    for (int i = 0; i < n; ++i) {
      auto l = quasi_covariant_derivative(x, sg, e, i, Side::left);
      auto r = quasi_covariant_derivative(x, sg, e, i, Side::right);
      for (int k = 0; k < n; ++k) {
        qc.upper(i, j, k) = l[k];
        qc.upper_tilde(i, j, k) = r[k];
      }
    }
  }
  CheckResult t = check_quasi_torsion(qc);
  if (t.failed()) throw InternalDisagreement("embedding quasi-connection has torsion: " + t.details);
  return qc;
}

CheckResult check_quasi_torsion(const QuasiConnection& qc) {
  const std::string name = "quasi-torsion-free";
  int n = qc.upper.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        if (qc.upper(i, j, k) != qc.upper(j, i, k))
          return CheckResult::fail(name, "left coefficients not symmetric",
                                   {{"indices", index_label({i, j, k})}});
        if (qc.upper_tilde(i, j, k) != qc.upper_tilde(j, i, k))
          return CheckResult::fail(name, "right coefficients not symmetric",
                                   {{"indices", index_label({i, j, k})}});
      }
  return CheckResult::pass(name);
}

CurvatureOperators star_curvature_operators(const IsometricEmbedding& x, const StarMetric& sg,
                                            const QuasiConnection& qc, Side side) {
  int n = x.dim(), N = sg.g.truncation();
  const SeriesArray& up = side == Side::left ? qc.upper : qc.upper_tilde;
  // d(i, j, k) = *nabla_i (*nabla_j E_k)
  std::vector<std::vector<std::vector<VectorFieldCoefficients>>> d(
      n, std::vector<std::vector<VectorFieldCoefficients>>(n, std::vector<VectorFieldCoefficients>(n)));
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      VectorFieldCoefficients w(n);
      for (int m = 0; m < n; ++m) w[m] = up(j, k, m);
      for (int i = 0; i < n; ++i) {
        if (i == j) continue;
        d[i][j][k] = quasi_covariant_derivative(x, sg, w, i, side);
      }
    }
  SeriesArray c(n, 4, N);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int m = 0; m < n; ++m) {
          c(k, i, j, m) = d[i][j][k][m] - d[j][i][k][m];
          c(k, j, i, m) = -c(k, i, j, m);
        }
  return {std::move(c)};
}

StarCurvatureBundle star_curvature_bundle(const IsometricEmbedding& x, const StarMetric& sg,
                                          const QuasiConnection& qc) {
  CurvatureOperators lo = star_curvature_operators(x, sg, qc, Side::left);
  CurvatureOperators ro = star_curvature_operators(x, sg, qc, Side::right);
  SeriesArray r = riemann_from_operators(sg.g, lo);
  SeriesArray rt = right_riemann(sg.g, ro);
  RicciBundle left = ricci_bundle(sg.g, sg.ginv, RiemannField{r, r});
  RicciBundle right = ricci_bundle(sg.g, sg.ginv, RiemannField{rt, rt});
  return {std::move(lo), std::move(ro), std::move(r), std::move(rt), std::move(left),
          std::move(right)};
}

CheckResult first_bianchi_star_check(const CurvatureOperators& ops, const std::string& name) {
  return first_bianchi_check(ops, name);
}

}  // namespace ncdg
