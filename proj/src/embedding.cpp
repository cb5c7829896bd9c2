#include "ncdg/embedding.hpp"

#include "ncdg/elementary.hpp"
#include "ncdg/errors.hpp"

namespace ncdg {

IsometricEmbedding::IsometricEmbedding(ChartPtr c, std::vector<Scalar> xs, std::vector<int> e)
    : chart(std::move(c)), x(std::move(xs)), eta(std::move(e)) {
  if (x.size() != eta.size()) throw ShapeMismatch("embedding and signature lengths differ");
  if (codim() < dim()) throw ValidationError("embedding dimension is below the chart dimension");
  for (int v : eta)
    if (v != 1 && v != -1) throw ValidationError("signature entries must be +1 or -1");
}

std::vector<int> signature(int m, int p) {
  std::vector<int> eta(m, 1);
  for (int a = 0; a < p && a < m; ++a) eta[a] = -1;
  return eta;
}

NCMetric fluctuation_metric(const IsometricEmbedding& x, const StarProduct& s, int N) {
  int n = x.dim();
  if (s.dim() != n) throw ShapeMismatch("star product dimension differs from the chart");
  std::vector<std::vector<HbarSeries>> d(x.codim(), std::vector<HbarSeries>(n));
  for (int a = 0; a < x.codim(); ++a)
    for (int i = 0; i < n; ++i) d[a][i] = HbarSeries::constant(N, x.x[a].partial(i));
  SeriesArray g(n, 2, N);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      HbarSeries acc(N);
      for (int a = 0; a < x.codim(); ++a) {
        HbarSeries t = star_mul(d[a][i], d[a][j], s);
        acc += x.eta[a] == 1 ? t : -t;
      }
      g(i, j) = acc;
    }
  return NCMetric(std::move(g), s);
}

ScalarMatrix classical_pullback(const IsometricEmbedding& x) {
  int n = x.dim();
  ScalarMatrix g(n, std::vector<Scalar>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int a = 0; a < x.codim(); ++a) {
        Scalar t = x.x[a].partial(i) * x.x[a].partial(j);
        g[i][j] = x.eta[a] == 1 ? g[i][j] + t : g[i][j] - t;
      }
  return g;
}

EmbeddingGeometry embedding_connection_and_chiral(const IsometricEmbedding& x, const NCMetric& g,
                                                  const InverseMetric& ginv) {
  int n = x.dim(), N = g.truncation();
  if (g.dim() != n) throw ShapeMismatch("metric dimension differs from the chart");
  const StarProduct& s = g.star;
  SeriesArray lower(n, 3, N), lower_tilde(n, 3, N), ups(n, 3, N);
  for (int a = 0; a < x.codim(); ++a) {
    std::vector<HbarSeries> d1(n);
    for (int k = 0; k < n; ++k) d1[k] = HbarSeries::constant(N, x.x[a].partial(k));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        HbarSeries d2 = HbarSeries::constant(N, x.x[a].partial(i).partial(j));
        for (int k = 0; k < n; ++k) {
          HbarSeries l = star_mul(d2, d1[k], s), r = star_mul(d1[k], d2, s);
          if (x.eta[a] == -1) {
            l = -l;
            r = -r;
          }
          lower(i, j, k) += l;
          lower_tilde(i, j, k) += r;
          if (i != j) {
            lower(j, i, k) += l;
            lower_tilde(j, i, k) += r;
          }
        }
      }
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) ups(i, j, k) = lower(i, j, k) - lower_tilde(i, j, k);
  ConnectionCoefficients conn = connection_from_lowered(lower, lower_tilde, ginv, s);
  return {std::move(conn), ChiralCoefficients{std::move(ups)}};
}

void validate_spherical(const SphericalEmbeddingSpec& spec, const SphericalBase& base) {
  int n = spec.n, m = spec.m;
  if (n < 3) throw SpecViolation("spherical family needs n >= 3 so that l in [3, n] exists");
  if (spec.l < 3 || spec.l > n) throw SpecViolation("l must lie in [3, n]");
  if (spec.lambda == 0) throw SpecViolation("lambda must be nonzero");
  if (m < n) throw SpecViolation("m must be at least n");
  if (!(m - n + 1 > spec.p)) throw SpecViolation("need m - n + 1 > p");
  if (static_cast<int>(spec.outer.size()) != m - n)
    throw SpecViolation("expected m - n outer radial profiles");
  if (static_cast<int>(spec.inner.size()) != n - 2)
    throw SpecViolation("expected n - 2 inner radial profiles");
  if (static_cast<int>(base.angles.size()) != n - 1)
    throw SpecViolation("expected n - 1 angle values");
  for (auto& [s, c] : base.angles)
    if (s * s + c * c != 1) throw SpecViolation("angle values need sin^2 + cos^2 = 1");
}

ThetaMatrix spherical_theta(const SphericalEmbeddingSpec& spec) {
  return ThetaMatrix::single(spec.n, 1, spec.l - 1, spec.lambda);
}

namespace {

Jet profile_jet(const RadialProfile& f, const ChartPtr& c, int order) {
  auto kind = f.polynomial ? ElementaryKind::polynomial : ElementaryKind::derivative_table;
  return jet_of_elementary(kind, AffineArgument::coordinate(c->dim(), 0), c, order, f.data);
}

Jet trig_jet(bool is_sin, int coord, const std::pair<Rational, Rational>& sc, const ChartPtr& c,
             int order) {
  auto kind = is_sin ? ElementaryKind::sin : ElementaryKind::cos;
  return jet_of_elementary(kind, AffineArgument::coordinate(c->dim(), coord), c, order,
                           trig_derivative_table(kind, sc.first, sc.second, order));
}

std::string sin_t(int t) { return "sin(theta" + std::to_string(t) + ")"; }
std::string cos_t(int t) { return "cos(theta" + std::to_string(t) + ")"; }

}  // namespace

IsometricEmbedding spherical_embedding(const SphericalEmbeddingSpec& spec,
                                       const SphericalBase& base, int order) {
  validate_spherical(spec, base);
  int n = spec.n;
  // Angles enter through derivative tables; their chart coordinates are anchors.
  std::vector<Rational> bp(n, Rational(0));
  bp[0] = base.rho;
  ChartPtr c = make_chart(bp);
  std::vector<Jet> sn, cs;
  for (int t = 1; t < n; ++t) {
    sn.push_back(trig_jet(true, t, base.angles[t - 1], c, order));
    cs.push_back(trig_jet(false, t, base.angles[t - 1], c, order));
  }
  // prod_{t=from}^{n-1} sin theta_t
  auto sines = [&](int from) {
    Jet r = Jet::constant(c, order, 1);
    for (int t = from; t < n; ++t) r = r * sn[t - 1];
    return r;
  };
  std::vector<Scalar> x;
  for (auto& f : spec.outer) x.emplace_back(profile_jet(f, c, order));
  Jet f = profile_jet(spec.f, c, order);
  x.emplace_back(f * sines(1));
  x.emplace_back(f * sines(2) * cs[0]);
  for (int r = 2; r < n; ++r) x.emplace_back(profile_jet(spec.inner[r - 2], c, order) * sines(r + 1) * cs[r - 1]);
  return IsometricEmbedding(c, std::move(x), signature(spec.m, spec.p));
}

std::string spherical_closed_form(const SphericalEmbeddingSpec& spec, int i0, int j0) {
  const int n = spec.n, l = spec.l;
  const int i = i0 + 1, j = j0 + 1;
  const int a = l - 1;  // the angle paired with theta_1
  const std::string ch = "cosh(lambda*hbar)", sh = "sinh(lambda*hbar)";
  const std::string chsh = ch + "*" + sh;
  const std::string h1 = "(" + sin_t(a) + "^2*" + ch + "^2 - " + cos_t(a) + "^2*" + sh + "^2)";
  const std::string h2 = "(" + cos_t(a) + "^2*" + ch + "^2 - " + sin_t(a) + "^2*" + sh + "^2)";
  const std::string sca = sin_t(a) + "*" + cos_t(a);
  const std::string grow = "(1 + 2*" + sh + "^2)";
  // prod over theta_2..theta_{n-1}, skipping theta_{l-1}: sin^2, or the
  // replacement given for angles listed in `rep`.
  auto prefactor = [&](const std::vector<std::pair<int, std::string>>& rep) {
    std::string s = "1";
    for (int t = 2; t < n; ++t) {
      if (t == a) continue;
      std::string factor = sin_t(t) + "^2";
      for (auto& [u, r] : rep)
        if (u == t) factor = r;
      s += "*" + factor;
    }
    return s;
  };
  auto k_type = [&](int k) { return k > 2 && k != l; };
  auto sc = [&](int k) { return sin_t(k - 1) + "*" + cos_t(k - 1); };
  auto form = [&](int p, int q) -> std::string {
    // Returns the display for p <= q in the case ordering used below.
    if (p == 1 && q == 1) return "df^2*" + prefactor({}) + "*" + h1;
    if (p == 1 && q == 2) return "2*f*df*" + prefactor({}) + "*" + sca + "*" + chsh;
    if (p == 1 && q == l) return "f*df*" + prefactor({}) + "*" + sca + "*" + grow;
    if (p == 2 && q == 2) return "f^2*" + prefactor({}) + "*" + h1;
    if (p == 2 && q == l) return "f^2*" + prefactor({}) + "*(" + sin_t(a) + "^2 - " + cos_t(a) + "^2)*" + chsh;
    if (p == l && q == l) return "f^2*" + prefactor({}) + "*" + h2;
    if (p == 1 && k_type(q)) return "f*df*" + prefactor({{q - 1, sc(q)}}) + "*" + h1;
    if (p == 2 && k_type(q)) return "-2*f^2*" + prefactor({{q - 1, sc(q)}}) + "*" + sca + "*" + chsh;
    if (p == l && k_type(q)) return "f^2*" + prefactor({{q - 1, sc(q)}}) + "*" + sca + "*" + grow;
    if (k_type(p) && p == q) return "f^2*" + prefactor({{q - 1, cos_t(q - 1) + "^2"}}) + "*" + h1;
    return "f^2*" + prefactor({{p - 1, sc(p)}, {q - 1, sc(q)}}) + "*" + h1;
  };
  // Put the pair into the order the displays use: 1 before 2 before l before k.
  auto rank = [&](int k) { return k == 1 ? 0 : k == 2 ? 1 : k == l ? 2 : 3 + k; };
  int p = i, q = j;
  bool swapped = rank(p) > rank(q);
  if (swapped) std::swap(p, q);
  std::string s = form(p, q);
  bool anti = (p == 2 || q == 2) && p != q;
  if (swapped && anti) return "-(" + s + ")";
  return s;
}

CheckResult check_theta1_independence(const SeriesArray& a, const std::string& name) {
  for (std::size_t k = 0; k < a.size(); ++k) {
    const HbarSeries& s = a.at_flat(k);
    for (int q = 0; q <= s.truncation(); ++q) {
      const Scalar& v = s[q];
      if (v.is_constant() || v.jet().order() == 0) continue;
      if (!v.partial(1).is_zero())
        return CheckResult::fail(name, "entry depends on theta_1",
                                 {{"indices", index_label(a.indices(k))},
                                  {"order", std::to_string(q)}});
    }
  }
  return CheckResult::pass(name);
}

CheckResult check_spherical_transpose(const SeriesArray& g) {
  const std::string name = "spherical-transpose";
  int n = g.dim();
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      bool anti = i == 1 || j == 1;
      HbarSeries want = anti ? -g(j, i) : g(j, i);
      int q = first_difference(g(i, j), want);
      if (q >= 0)
        return CheckResult::fail(name, anti ? "g_2k != -g_k2" : "g_ij != g_ji",
                                 {{"indices", index_label({i, j})}, {"order", std::to_string(q)}});
    }
  return CheckResult::pass(name);
}

SphericalFluctuation spherical_fluctuation(const SphericalEmbeddingSpec& spec,
                                           const SphericalBase& base, int N, int order) {
  IsometricEmbedding x = spherical_embedding(spec, base, order);
  StarProduct s = StarProduct::moyal(spherical_theta(spec));
  NCMetric g = fluctuation_metric(x, s, N);
  int a0 = spec.m - spec.n;
  int n = spec.n;
  SeriesArray block(n, 2, N);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int b = 0; b < 2; ++b)
        block(i, j) += star_mul(HbarSeries::constant(N, x.x[a0 + b].partial(i)),
                                HbarSeries::constant(N, x.x[a0 + b].partial(j)), s);
  ClosedFormBindings bind;
  bind.lambda = spec.lambda;
  for (int t = 1; t < n; ++t) bind.angles[t] = base.angles[t - 1];
  Jet f = profile_jet(spec.f, x.chart, order);
  bind.symbols["f"] = f.value();
  bind.symbols["df"] = f.partial(0).value();

  std::vector<CheckResult> checks;
  CheckResult cf = CheckResult::pass("spherical-closed-form");
  for (int i = 0; i < n && cf.passed(); ++i)
    for (int j = 0; j < n && cf.passed(); ++j) {
      std::string expr = spherical_closed_form(spec, i, j);
      HbarSeries want = closed_form_oracle(expr, bind, N);
      for (int q = 0; q <= N; ++q) {
        Rational got = block(i, j)[q].value();
        if (got != want[q].value()) {
          cf = CheckResult::fail("spherical-closed-form", "block differs from the closed form",
                                 {{"indices", index_label({i, j})},
                                  {"order", std::to_string(q)},
                                  {"block", to_string(got)},
                                  {"closed_form", to_string(want[q].value())},
                                  {"expression", expr}});
          break;
        }
      }
    }
  checks.push_back(cf);
  checks.push_back(check_theta1_independence(g.g, "metric-theta1-independence"));
  checks.push_back(check_spherical_transpose(g.g));
  return {std::move(x), std::move(g), std::move(block), std::move(bind), std::move(checks)};
}

}  // namespace ncdg
