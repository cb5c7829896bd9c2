#include "ncdg/runner.hpp"

#include <functional>
#include <optional>
#include <regex>
#include <stdexcept>

#include "ncdg/appendix.hpp"
#include "ncdg/closed_form.hpp"
#include "ncdg/curvature.hpp"
#include "ncdg/errors.hpp"
#include "ncdg/quasi_connection.hpp"
#include "ncdg/random.hpp"

namespace ncdg {

namespace {

class StageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A pipeline stage built once; a failed build is remembered and rethrown.
template <typename T>
class Stage {
 public:
  template <typename F>
  const T& get(F&& build) {
    if (value_) return *value_;
    if (error_) throw StageError(*error_);
    try {
      value_.emplace(build());
    } catch (const std::exception& e) {
      error_ = e.what();
      throw StageError(*error_);
    }
    return *value_;
  }

 private:
  std::optional<T> value_;
  std::optional<std::string> error_;
};

CheckResult compare_arrays(const std::string& name, const SeriesArray& a, const SeriesArray& b) {
  auto d = first_difference(a, b);
  if (!d) return CheckResult::pass(name);
  return CheckResult::fail(name, "arrays differ",
                           {{"indices", index_label(d->indices)}, {"order", std::to_string(d->order)}});
}

CheckResult compare_series(const std::string& name, const HbarSeries& a, const HbarSeries& b) {
  int q = first_difference(a, b);
  if (q < 0) return CheckResult::pass(name);
  return CheckResult::fail(name, "series differ", {{"order", std::to_string(q)}});
}

CheckResult renamed(CheckResult c, const std::string& name) {
  c.name = name;
  return c;
}

struct QuantityKey {
  std::string family;
  std::vector<int> up, down;  // 0-based
};

QuantityKey parse_key(const std::string& key) {
  static const std::regex re(R"(^([A-Za-z]+)(?:\^([0-9]+))?(?:_([0-9]+))?$)");
  std::smatch m;
  if (!std::regex_match(key, m, re)) throw ValidationError("malformed quantity key '" + key + "'");
  QuantityKey k{m[1].str(), {}, {}};
  for (char c : m[2].str()) k.up.push_back(c - '1');
  for (char c : m[3].str()) k.down.push_back(c - '1');
  return k;
}

std::string digits_of(const std::vector<int>& idx) {
  std::string s;
  for (int i : idx) s += std::to_string(i + 1);
  return s;
}

class Pipeline {
 public:
  explicit Pipeline(const Scenario& s)
      : s_(s), N_(s.truncation), M_(effective_jet_order(s)), chart_(make_chart(s.base_point)) {}

  int jet_order() const { return M_; }
  const Scenario& scenario() const { return s_; }

  bool has_embedding() const {
    return s_.metric.kind == MetricSource::Kind::embedding ||
           s_.metric.kind == MetricSource::Kind::spherical;
  }
  bool is_spherical() const { return s_.metric.kind == MetricSource::Kind::spherical; }

  StarProduct build_star(const StarSpec& spec) const {
    if (spec.kind == StarSpec::Kind::moyal)
      return StarProduct::moyal(s_.theta ? *s_.theta : ThetaMatrix::zero(s_.dim));
    return StarProduct::general(s_.dim, spec.ops);
  }

  const StarProduct& star() {
    return star_.get([&] { return build_star(s_.star); });
  }

  const StarProduct& quasi_star() {
    return quasi_star_.get([&] { return build_star(s_.quasi_star ? *s_.quasi_star : s_.star); });
  }

  const SphericalFluctuation& spherical() {
    return spherical_.get([&] {
      if (!is_spherical()) throw SpecViolation("scenario has no spherical metric");
      return spherical_fluctuation(s_.metric.spherical.spec, s_.metric.spherical.base, N_, M_);
    });
  }

  const IsometricEmbedding& embedding() {
    return embedding_.get([&] {
      if (is_spherical()) return spherical().embedding;
      if (!has_embedding()) throw SpecViolation("scenario has no embedding");
      std::vector<Scalar> x;
      for (auto& comp : s_.metric.embedding.components) x.emplace_back(component_jet(comp));
      return IsometricEmbedding(chart_, x, s_.metric.embedding.eta);
    });
  }

  const NCMetric& metric() {
    return metric_.get([&]() -> NCMetric {
      switch (s_.metric.kind) {
        case MetricSource::Kind::none: throw SpecViolation("scenario has no metric");
        case MetricSource::Kind::constant_series: {
          SeriesArray g(s_.dim, 2, N_);
          for (int i = 0; i < s_.dim; ++i)
            for (int j = 0; j < s_.dim; ++j) g(i, j) = padded(s_.metric.entries[i][j]);
          return NCMetric(g, star());
        }
        case MetricSource::Kind::embedding: return fluctuation_metric(embedding(), star(), N_);
        case MetricSource::Kind::spherical: return spherical().g;
      }
      throw SpecViolation("unknown metric source");
    });
  }

  const InverseMetric& ginv() {
    return ginv_.get([&] { return star_inverse(metric()); });
  }

  const EmbeddingGeometry& geometry() {
    return geometry_.get([&] { return embedding_connection_and_chiral(embedding(), metric(), ginv()); });
  }

  const ChiralCoefficients& chiral() {
    return chiral_.get([&] {
      switch (s_.chiral.kind) {
        case ChiralSource::Kind::zero: return ChiralCoefficients::zero(s_.dim, N_);
        case ChiralSource::Kind::embedding: return geometry().ups;
        case ChiralSource::Kind::explicit_entries: {
          SeriesArray u(s_.dim, 3, N_);
          for (auto& [idx, c] : s_.chiral.entries) u.at(idx) = padded(c);
          return ChiralCoefficients{u};
        }
      }
      throw SpecViolation("unknown chiral source");
    });
  }

  const ConnectionCoefficients& connection() {
    return connection_.get([&] { return canonical_connection(metric(), ginv(), chiral()); });
  }

  const CurvatureOperators& left_ops() {
    return left_ops_.get([&] { return curvature_operators(connection(), Side::left, star()); });
  }

  const CurvatureOperators& right_ops() {
    return right_ops_.get([&] { return curvature_operators(connection(), Side::right, star()); });
  }

  const RiemannField& riemann_field() {
    return riemann_.get([&] { return riemann(metric(), ginv(), connection(), left_ops()); });
  }

  const RicciBundle& ricci() {
    return ricci_.get([&] { return ricci_bundle(metric(), ginv(), riemann_field()); });
  }

  const CurvatureDerivative& derivative() {
    return derivative_.get(
        [&] { return curvature_covariant_derivative(metric(), ginv(), connection(), left_ops()); });
  }

  const StarMetric& star_metric() {
    return star_metric_.get([&] { return star_metric_from_embedding(embedding(), quasi_star(), N_); });
  }

  const QuasiConnection& quasi() {
    return quasi_.get([&] { return quasi_connection(embedding(), star_metric()); });
  }

  const StarCurvatureBundle& quasi_bundle() {
    return quasi_bundle_.get([&] { return star_curvature_bundle(embedding(), star_metric(), quasi()); });
  }

  ClosedFormBindings bindings() {
    if (is_spherical()) return spherical().bindings;
    ClosedFormBindings b;
    if (s_.theta_shorthand) b.lambda = s_.theta_shorthand->first;
    return b;
  }

  HbarSeries quantity(const std::string& key) {
    QuantityKey k = parse_key(key);
    const auto& u = k.up;
    const auto& d = k.down;
    if (k.family == "g") return metric().g(d[0], d[1]);
    if (k.family == "ginv") return ginv().g(u[0], u[1]);
    if (k.family == "Ups") return chiral().ups(d[0], d[1], d[2]);
    if (k.family == "Gamma")
      return u.empty() ? connection().lower(d[0], d[1], d[2]) : connection().upper(d[0], d[1], u[0]);
    if (k.family == "GammaTilde")
      return u.empty() ? connection().lower_tilde(d[0], d[1], d[2])
                       : connection().upper_tilde(d[0], d[1], u[0]);
    if (k.family == "R")
      return d.empty() ? ricci().scalar : riemann_field().r(d[0], d[1], d[2], d[3]);
    if (k.family == "Ric") return u.empty() ? ricci().ricci(d[0], d[1]) : ricci().ricci_up(u[0], d[0]);
    if (k.family == "Theta") {
      if (d.empty()) return ricci().scalar_theta;
      return u.empty() ? ricci().theta(d[0], d[1]) : ricci().theta_up(u[0], d[0]);
    }
    throw ValidationError("unknown quantity '" + key + "'");
  }

  // Keys of the nonzero entries of a family, in index order.
  std::vector<std::string> family_keys(const std::string& family) {
    std::vector<std::string> keys;
    auto add = [&](const std::string& key) {
      if (!quantity(key).is_zero()) keys.push_back(key);
    };
    auto each = [&](int rank, const std::function<void(const std::vector<int>&)>& f) {
      SeriesArray shape(s_.dim, rank, 0);
      for (std::size_t k = 0; k < shape.size(); ++k) f(shape.indices(k));
    };
    if (family == "scalar") {
      add("R");
      add("Theta");
    } else if (family == "g" || family == "Ric" || family == "Theta") {
      each(2, [&](auto& i) { add(family + "_" + digits_of(i)); });
    } else if (family == "ginv") {
      each(2, [&](auto& i) { add("ginv^" + digits_of(i)); });
    } else if (family == "Ric^" || family == "Theta^") {
      each(2, [&](auto& i) { add(family + digits_of({i[0]}) + "_" + digits_of({i[1]})); });
    } else if (family == "Ups" || family == "Gamma" || family == "GammaTilde") {
      each(3, [&](auto& i) { add(family + "_" + digits_of(i)); });
    } else if (family == "Gamma^" || family == "GammaTilde^") {
      // (i, j, k) -> Gamma^k_ij
      each(3, [&](auto& i) { add(family + digits_of({i[2]}) + "_" + digits_of({i[0], i[1]})); });
    } else if (family == "R") {
      each(4, [&](auto& i) { add("R_" + digits_of(i)); });
    }
    return keys;
  }

 private:
  HbarSeries padded(const std::vector<Rational>& c) const {
    std::vector<Rational> v(N_ + 1);
    for (int q = 0; q <= N_ && q < static_cast<int>(c.size()); ++q) v[q] = c[q];
    return HbarSeries::from_rationals(N_, v);
  }

  Jet factor_jet(const FactorSpec& f) const {
    switch (f.kind) {
      case FactorSpec::Kind::constant: return Jet::constant(chart_, M_, f.value);
      case FactorSpec::Kind::coordinate: return Jet::coordinate(chart_, M_, f.index);
      case FactorSpec::Kind::elementary: {
        std::vector<Rational> table = f.table;
        if (f.angle) table = trig_derivative_table(f.function, f.angle->first, f.angle->second, M_);
        return jet_of_elementary(f.function, f.arg, chart_, M_, table);
      }
    }
    throw SpecViolation("unknown factor kind");
  }

  Jet component_jet(const ComponentSpec& c) const {
    Jet sum = Jet::constant(chart_, M_, Rational(0));
    for (auto& t : c.terms) {
      Jet p = Jet::constant(chart_, M_, t.coefficient);
      for (auto& f : t.factors) p = p * factor_jet(f);
      sum = sum + p;
    }
    return sum;
  }

  const Scenario& s_;
  int N_, M_;
  ChartPtr chart_;
  Stage<StarProduct> star_, quasi_star_;
  Stage<SphericalFluctuation> spherical_;
  Stage<IsometricEmbedding> embedding_;
  Stage<NCMetric> metric_;
  Stage<InverseMetric> ginv_;
  Stage<EmbeddingGeometry> geometry_;
  Stage<ChiralCoefficients> chiral_;
  Stage<ConnectionCoefficients> connection_;
  Stage<CurvatureOperators> left_ops_, right_ops_;
  Stage<RiemannField> riemann_;
  Stage<RicciBundle> ricci_;
  Stage<CurvatureDerivative> derivative_;
  Stage<StarMetric> star_metric_;
  Stage<QuasiConnection> quasi_;
  Stage<StarCurvatureBundle> quasi_bundle_;
};

std::vector<HbarSeries> random_series(RandomSource& rs, const ChartPtr& c, int order, int N, int count) {
  std::vector<HbarSeries> v;
  for (int k = 0; k < count; ++k) v.push_back(rs.jet_series(c, order, N));
  return v;
}

// h^0 geometry of the embedding from the pointwise first fundamental form.
std::vector<CheckResult> classical_limit(Pipeline& p) {
  const IsometricEmbedding& x = p.embedding();
  const ConnectionCoefficients& conn = p.connection();
  const RiemannField& riem = p.riemann_field();
  int n = x.dim();
  ScalarMatrix h = classical_pullback(x);
  ScalarMatrix hinv = pointwise_inverse(h);
  auto zero3 = [&] {
    return std::vector<std::vector<std::vector<Scalar>>>(n, std::vector<std::vector<Scalar>>(n, std::vector<Scalar>(n)));
  };
  auto low = zero3(), up = zero3();  // low[i][j][k] = Gamma_ijk, up[i][j][m] = Gamma^m_ij
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        low[i][j][k] = (h[j][k].partial(i) + h[i][k].partial(j) - h[i][j].partial(k)).scaled(Rational(1, 2));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) up[i][j][m] = up[i][j][m] + low[i][j][k] * hinv[k][m];

  CheckResult gamma = CheckResult::pass("classical-christoffel");
  for (int i = 0; i < n && gamma.passed(); ++i)
    for (int j = 0; j < n && gamma.passed(); ++j)
      for (int k = 0; k < n && gamma.passed(); ++k)
        if (!(conn.lower(i, j, k)[0] == low[i][j][k]))
          gamma = CheckResult::fail("classical-christoffel", "h^0 layer differs",
                                    {{"indices", index_label({i, j, k})}});

  CheckResult curv = CheckResult::pass("classical-riemann");
  for (int l = 0; l < n && curv.passed(); ++l)
    for (int k = 0; k < n && curv.passed(); ++k)
      for (int i = 0; i < n && curv.passed(); ++i)
        for (int j = 0; j < n && curv.passed(); ++j) {
          Scalar r;
          for (int m = 0; m < n; ++m) {
            Scalar rm = up[j][k][m].partial(i) - up[i][k][m].partial(j);
            for (int q = 0; q < n; ++q) rm = rm + up[j][k][q] * up[i][q][m] - up[i][k][q] * up[j][q][m];
            r = r + rm * h[m][l];
          }
          if (!(riem.r(l, k, i, j)[0] == r))
            curv = CheckResult::fail("classical-riemann", "h^0 layer differs",
                                     {{"indices", index_label({l, k, i, j})}});
        }
  return {gamma, curv};
}

std::vector<CheckResult> compare_values(Pipeline& p, const CheckRequest& req, int N) {
  std::vector<CheckResult> out;
  ClosedFormBindings b = p.bindings();
  for (auto& [key, expr] : req.expected) {
    HbarSeries got = p.quantity(key);
    HbarSeries want = closed_form_oracle(expr, b, N);
    CheckResult r = CheckResult::pass(key, got.is_constant() ? "exact" : "at the base point");
    for (int q = 0; q <= N; ++q) {
      Rational g = got[q].value(), w = want[q].value();
      if (g != w) {
        r = CheckResult::fail(key, "coefficient differs",
                              {{"quantity", key}, {"order", std::to_string(q)},
                               {"expected", to_string(w)}, {"actual", to_string(g)}});
        break;
      }
    }
    out.push_back(r);
  }
  return out;
}

std::vector<CheckResult> run_check(Pipeline& p, const CheckRequest& req) {
  const Scenario& s = p.scenario();
  const int N = s.truncation, M = p.jet_order();
  const std::string& id = req.id;
  auto skip = [&](const std::string& why) { return std::vector<CheckResult>{CheckResult::skipped(id, why)}; };
  auto one = [&](CheckResult c) { return std::vector<CheckResult>{renamed(std::move(c), id)}; };
  int samples = req.samples > 0 ? req.samples : 20;

  if (id == "metric-invertible") {
    return one(check_invertible(p.metric()) ? CheckResult::pass(id)
                                            : CheckResult::fail(id, "g_ij[0] is singular at the base point"));
  }
  if (id == "inverse-metric") {
    p.ginv();
    return one(CheckResult::pass(id, "both recursions agree and invert g"));
  }
  if (id == "metric-parity") return one(check_metric_parity(p.metric().g));
  if (id == "inverse-parity") return one(check_inverse_parity(p.metric(), p.ginv()));
  if (id == "chiral-parity") return one(check_chiral_parity(p.chiral()));
  if (id == "connection-compatibility") return one(check_compatibility(p.metric(), p.connection()));
  if (id == "torsion-chirality") return one(check_chirality_and_torsion(p.connection(), p.chiral()));
  if (id == "metric-parallel") return one(check_metric_parallel(p.metric(), p.ginv(), p.connection()));
  if (id == "connection-parity") return one(connection_parity_relation(p.connection()));
  if (id == "embedding-connection") {
    if (!p.has_embedding()) return skip("scenario has no embedding");
    const EmbeddingGeometry& geo = p.geometry();
    ConnectionCoefficients c = canonical_connection(p.metric(), p.ginv(), geo.ups);
    return {compare_arrays("lower", geo.conn.lower, c.lower),
            compare_arrays("lower-tilde", geo.conn.lower_tilde, c.lower_tilde),
            compare_arrays("upper", geo.conn.upper, c.upper),
            compare_arrays("upper-tilde", geo.conn.upper_tilde, c.upper_tilde)};
  }
  if (id == "riemann-routes") {
    p.riemann_field();
    return one(CheckResult::pass(id, "operator, Gamma, Gamma~ and right routes agree"));
  }
  if (id == "ricci-traces") {
    p.ricci();
    return one(CheckResult::pass(id, "R^j_j = Theta^i_i"));
  }
  if (id == "riemann-parity") return one(riemann_parity_relation(p.riemann_field()));
  if (id == "ricci-equivalence") {
    auto r = ricci_equivalence_check(p.metric(), p.chiral(), p.connection(), p.riemann_field(), p.ricci());
    return {r.ricci_equivalence, r.hypotheses, r.connection_parity, r.riemann_parity};
  }
  if (id == "parity-hypotheses") {
    auto r = ricci_equivalence_check(p.metric(), p.chiral(), p.connection(), p.riemann_field(), p.ricci());
    return one(r.hypotheses);
  }
  if (id == "first-bianchi") {
    return {first_bianchi_check(p.left_ops(), "left"), first_bianchi_check(p.right_ops(), "right")};
  }
  if (id == "second-bianchi") return one(second_bianchi_check(p.derivative()));
  if (id == "contracted-bianchi") return one(contracted_bianchi_check(p.derivative()));
  if (id == "classical-limit") {
    if (!p.has_embedding()) return skip("scenario has no embedding");
    return classical_limit(p);
  }
  if (id == "values") {
    if (req.expected.empty()) return skip("no expected values listed");
    return compare_values(p, req, N);
  }
  if (id == "moyal-commutator") {
    const StarProduct& st = p.star();
    if (!st.is_moyal()) return skip("star product is not Moyal");
    auto c = make_chart(s.base_point);
    CheckResult r = CheckResult::pass(id);
    for (int i = 0; i < s.dim && r.passed(); ++i)
      for (int j = 0; j < s.dim && r.passed(); ++j) {
        HbarSeries xi = HbarSeries::constant(N, Scalar(Jet::coordinate(c, M, i)));
        HbarSeries xj = HbarSeries::constant(N, Scalar(Jet::coordinate(c, M, j)));
        HbarSeries comm = star_mul(xi, xj, st) - star_mul(xj, xi, st);
        std::vector<Rational> want(N + 1);
        if (N >= 1) want[1] = 2 * st.theta()(i, j);
        for (int q = 0; q <= N; ++q)
          if (!(comm[q] == Scalar(want[q])))
            r = CheckResult::fail(id, "commutator differs from 2 h theta",
                                  {{"indices", index_label({i, j})}, {"order", std::to_string(q)}});
      }
    return one(r);
  }
  if (id == "leibniz" || id == "associativity" || id == "unitality") {
    RandomSource rs(s.seed);
    auto c = make_chart(s.base_point);
    const StarProduct& st = p.star();
    if (id == "leibniz") {
      std::vector<std::pair<HbarSeries, HbarSeries>> pairs;
      for (int k = 0; k < samples; ++k) pairs.emplace_back(rs.jet_series(c, M, N), rs.jet_series(c, M, N));
      return one(check_leibniz(st, pairs));
    }
    if (id == "associativity") {
      std::vector<std::vector<HbarSeries>> triples;
      for (int k = 0; k < samples; ++k) triples.push_back(random_series(rs, c, M, N, 3));
      return one(check_associativity(st, triples));
    }
    return one(check_unitality(st, random_series(rs, c, M, N, samples)));
  }
  if (id == "appendix-identities") {
    int order = req.order >= 0 ? req.order : N;
    int points = req.points > 0 ? req.points : 5;
    return verify_appendix(order, points, s.seed).checks;
  }
  if (id == "spherical-closed-form" || id == "spherical-transpose") {
    if (!p.is_spherical()) return skip("scenario has no spherical metric");
    for (auto& c : p.spherical().checks)
      if (c.name == id) return one(c);
    return one(check_spherical_transpose(p.metric().g));
  }
  if (id == "theta1-independence") {
    if (!p.is_spherical()) return skip("scenario has no spherical metric");
    std::vector<CheckResult> out;
    for (auto& c : p.spherical().checks)
      if (c.name == "metric-theta1-independence") out.push_back(c);
    out.push_back(check_theta1_independence(p.ginv().g, "inverse-theta1-independence"));
    out.push_back(check_theta1_independence(p.connection().lower, "gamma-theta1-independence"));
    out.push_back(check_theta1_independence(p.connection().lower_tilde, "gamma-tilde-theta1-independence"));
    return out;
  }
  if (id == "quasi-associativity") {
    if (!p.has_embedding()) return skip("scenario has no embedding");
    const StarProduct& st = p.quasi_star();
    try {
      require_associative(st, p.embedding().chart, M, N, s.seed);
    } catch (const NonAssociative& e) {
      return one(CheckResult::fail(id, e.what()));
    }
    return one(CheckResult::pass(id, st.is_moyal() ? "Moyal products are associative" : "sampled triples associate"));
  }
  if (id == "quasi-torsion") {
    if (!p.has_embedding()) return skip("scenario has no embedding");
    return one(check_quasi_torsion(p.quasi()));
  }
  if (id == "quasi-first-bianchi") {
    if (!p.has_embedding()) return skip("scenario has no embedding");
    const StarCurvatureBundle& b = p.quasi_bundle();
    return {first_bianchi_star_check(b.left_ops, "left"), first_bianchi_star_check(b.right_ops, "right")};
  }
  if (id == "quasi-crosscheck") {
    if (!p.has_embedding()) return skip("scenario has no embedding");
    if (!p.quasi_star().is_moyal() || !p.star().is_moyal()) return skip("needs the Moyal product on both sides");
    if (s.chiral.kind != ChiralSource::Kind::embedding) return skip("needs embedding-derived chirality");
    const StarCurvatureBundle& b = p.quasi_bundle();
    const RicciBundle& r = p.ricci();
    std::vector<CheckResult> out = {
        compare_arrays("metric", p.star_metric().g.g, p.metric().g),
        compare_arrays("gamma-upper", p.quasi().upper, p.connection().upper),
        compare_arrays("gamma-tilde-upper", p.quasi().upper_tilde, p.connection().upper_tilde),
        compare_arrays("riemann", b.r, p.riemann_field().r),
        compare_arrays("riemann-tilde", b.r_tilde, p.riemann_field().r_tilde)};
    for (auto [side, rb] : {std::pair<const char*, const RicciBundle*>{"left", &b.left}, {"right", &b.right}}) {
      std::string pre = side;
      out.push_back(compare_arrays(pre + "-ricci", rb->ricci, r.ricci));
      out.push_back(compare_arrays(pre + "-theta", rb->theta, r.theta));
      out.push_back(compare_arrays(pre + "-ricci-up", rb->ricci_up, r.ricci_up));
      out.push_back(compare_arrays(pre + "-theta-up", rb->theta_up, r.theta_up));
      out.push_back(compare_series(pre + "-scalar", rb->scalar, r.scalar));
      out.push_back(compare_series(pre + "-scalar-theta", rb->scalar_theta, r.scalar_theta));
    }
    return out;
  }
  throw ValidationError("unknown check '" + id + "'");
}

ReportCheck aggregate(const CheckRequest& req, std::vector<CheckResult> parts) {
  ReportCheck rc;
  rc.id = req.id;
  rc.expect = req.expect;
  int pass = 0, fail = 0;
  const CheckResult* first_fail = nullptr;
  for (auto& c : parts) {
    pass += c.passed();
    fail += c.failed();
    if (c.failed() && !first_fail) first_fail = &c;
  }
  rc.status = fail ? CheckStatus::fail : pass ? CheckStatus::pass : CheckStatus::skipped;
  if (parts.size() == 1) {
    rc.details = parts[0].details;
    rc.counterexample = parts[0].counterexample;
    if (parts[0].name == req.id) parts.clear();
  } else {
    rc.details = std::to_string(pass) + "/" + std::to_string(parts.size()) + " parts pass";
    if (first_fail) {
      rc.details += "; first failure " + first_fail->name + ": " + first_fail->details;
      rc.counterexample.emplace_back("part", first_fail->name);
      for (auto& kv : first_fail->counterexample) rc.counterexample.push_back(kv);
    }
  }
  rc.parts = std::move(parts);
  return rc;
}

ReportValue report_value(const std::string& key, const HbarSeries& s) {
  ReportValue v{key, {}, s.is_constant()};
  for (auto& c : s.coefficients()) v.coefficients.push_back(c.value());
  return v;
}

}  // namespace

Report run_scenario(const Scenario& s) {
  Pipeline p(s);
  Report r;
  r.scenario = s.name;
  r.truncation = s.truncation;
  r.jet_order = p.jet_order();
  r.seed = s.seed;
  for (auto& req : s.checks) {
    std::vector<CheckResult> parts;
    try {
      parts = run_check(p, req);
    } catch (const std::exception& e) {
      parts = {CheckResult::fail(req.id, std::string("error: ") + e.what())};
    }
    r.checks.push_back(aggregate(req, std::move(parts)));
  }
  try {
    for (auto& family : s.report_values)
      for (auto& key : p.family_keys(family)) r.values.push_back(report_value(key, p.quantity(key)));
  } catch (const std::exception& e) {
    ReportCheck rc;
    rc.id = "report-values";
    rc.status = CheckStatus::fail;
    rc.details = std::string("error: ") + e.what();
    r.checks.push_back(rc);
  }
  return r;
}

Report verify_appendix_report(int N, int points, std::uint64_t seed) {
  if (N < 0) throw ValidationError("order must be non-negative");
  if (points < 1) throw ValidationError("points must be positive");
  Scenario s;
  s.name = "appendix-a";
  s.dim = 2;
  s.truncation = N;
  s.jet_order = N;
  s.base_point = {Rational(0), Rational(0)};
  s.seed = seed;
  CheckRequest req;
  req.id = "appendix-identities";
  req.order = N;
  req.points = points;
  s.checks.push_back(req);
  return run_scenario(s);
}

}  // namespace ncdg
