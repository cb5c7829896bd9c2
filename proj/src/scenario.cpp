#include "ncdg/scenario.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "json.hpp"
#include "ncdg/errors.hpp"

namespace ncdg {

namespace {

using json = nlohmann::json;

const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + " must be an object");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + " is missing '" + key + "'");
  return *it;
}

Rational rational_of(const json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  throw ParseError(where + " must be a rational string or an integer");
}

int int_of(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw ParseError(where + " must be an integer");
  return j.get<int>();
}

std::string string_of(const json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + " must be a string");
  return j.get<std::string>();
}

const json& array_of(const json& j, const std::string& where) {
  if (!j.is_array()) throw ParseError(where + " must be an array");
  return j;
}

std::vector<Rational> rationals_of(const json& j, const std::string& where) {
  std::vector<Rational> out;
  for (auto& e : array_of(j, where)) out.push_back(rational_of(e, where));
  return out;
}

std::vector<std::vector<Rational>> matrix_of(const json& j, int n, const std::string& where) {
  std::vector<std::vector<Rational>> m;
  for (auto& row : array_of(j, where)) m.push_back(rationals_of(row, where));
  if (static_cast<int>(m.size()) != n) throw ValidationError(where + " must have " + std::to_string(n) + " rows");
  for (auto& row : m)
    if (static_cast<int>(row.size()) != n)
      throw ValidationError(where + " must have " + std::to_string(n) + " columns");
  return m;
}

MultiIndex multi_index_of(const json& j, int n, const std::string& where) {
  MultiIndex a;
  for (auto& e : array_of(j, where)) {
    int v = int_of(e, where);
    if (v < 0) throw ValidationError(where + " entries must be non-negative");
    a.push_back(v);
  }
  if (static_cast<int>(a.size()) != n) throw ValidationError(where + " must have length " + std::to_string(n));
  return a;
}

int coordinate_index(const json& j, int n, const std::string& where) {
  int i = int_of(j, where);
  if (i < 1 || i > n) throw ValidationError(where + " must lie in [1, " + std::to_string(n) + "]");
  return i - 1;
}

const std::map<std::string, ElementaryKind>& function_names() {
  static const std::map<std::string, ElementaryKind> m = {
      {"sin", ElementaryKind::sin},
      {"cos", ElementaryKind::cos},
      {"sinh", ElementaryKind::sinh},
      {"cosh", ElementaryKind::cosh},
      {"exp", ElementaryKind::exp},
      {"polynomial", ElementaryKind::polynomial},
      {"derivative_table", ElementaryKind::derivative_table}};
  return m;
}

FactorSpec parse_factor(const json& j, int n) {
  const std::string w = "embedding factor";
  FactorSpec f;
  if (!j.is_object()) throw ParseError(w + " must be an object");
  if (j.contains("constant")) {
    f.kind = FactorSpec::Kind::constant;
    f.value = rational_of(j["constant"], w);
    return f;
  }
  if (j.contains("coordinate")) {
    f.kind = FactorSpec::Kind::coordinate;
    f.index = coordinate_index(j["coordinate"], n, w);
    return f;
  }
  f.kind = FactorSpec::Kind::elementary;
  std::string name = string_of(field(j, "function", w), w + " function");
  auto it = function_names().find(name);
  if (it == function_names().end()) throw ValidationError("unknown function '" + name + "'");
  f.function = it->second;
  const json& arg = field(j, "arg", w);
  if (arg.is_number_integer()) {
    f.arg = AffineArgument::coordinate(n, coordinate_index(arg, n, w + " arg"));
  } else {
    f.arg.coefficients = rationals_of(field(arg, "coefficients", w + " arg"), w + " arg");
    if (static_cast<int>(f.arg.coefficients.size()) != n)
      throw ValidationError(w + " arg coefficients must have length " + std::to_string(n));
    if (arg.contains("offset")) f.arg.offset = rational_of(arg["offset"], w + " arg offset");
  }
  if (j.contains("table")) f.table = rationals_of(j["table"], w + " table");
  if (j.contains("angle")) {
    if (f.function != ElementaryKind::sin && f.function != ElementaryKind::cos)
      throw ValidationError("'angle' only applies to sin and cos");
    const json& a = j["angle"];
    Rational s = rational_of(field(a, "sin", w + " angle"), w + " angle");
    Rational c = rational_of(field(a, "cos", w + " angle"), w + " angle");
    if (s * s + c * c != 1) throw ValidationError("angle values need sin^2 + cos^2 = 1");
    f.angle = {s, c};
  }
  if ((f.function == ElementaryKind::polynomial || f.function == ElementaryKind::derivative_table) &&
      f.table.empty())
    throw ValidationError(name + " factor needs a non-empty 'table'");
  return f;
}

ComponentSpec parse_component(const json& j, int n) {
  ComponentSpec c;
  for (auto& t : array_of(field(j, "terms", "embedding component"), "terms")) {
    TermSpec term;
    if (t.contains("coefficient")) term.coefficient = rational_of(t["coefficient"], "term coefficient");
    for (auto& f : array_of(field(t, "factors", "term"), "factors")) term.factors.push_back(parse_factor(f, n));
    c.terms.push_back(std::move(term));
  }
  return c;
}

RadialProfile parse_profile(const json& j) {
  if (j.contains("polynomial")) return {true, rationals_of(j["polynomial"], "profile polynomial")};
  if (j.contains("derivatives")) return {false, rationals_of(j["derivatives"], "profile derivatives")};
  throw ParseError("radial profile needs 'polynomial' or 'derivatives'");
}

std::vector<BidifferentialTerm> parse_terms(const json& op, int n) {
  std::vector<BidifferentialTerm> terms;
  for (auto& t : array_of(op, "star operator")) {
    terms.push_back({Scalar(rational_of(field(t, "coefficient", "star term"), "star term")),
                     multi_index_of(field(t, "left", "star term"), n, "star term left"),
                     multi_index_of(field(t, "right", "star term"), n, "star term right")});
  }
  return terms;
}

StarSpec parse_star(const json& j, int n, int N) {
  StarSpec s;
  std::string kind = string_of(field(j, "kind", "star"), "star kind");
  if (kind == "moyal") {
    s.kind = StarSpec::Kind::moyal;
    return s;
  }
  if (kind == "exponential") {
    s.kind = StarSpec::Kind::exponential;
    s.matrix = matrix_of(field(j, "matrix", "star"), n, "star matrix");
    for (int q = 1; q <= N; ++q) s.ops.push_back(exponential_operator(s.matrix, q));
  } else if (kind == "general") {
    s.kind = StarSpec::Kind::general;
    for (auto& op : array_of(field(j, "operators", "star"), "star operators"))
      s.ops.emplace_back(n, parse_terms(op, n));
  } else {
    throw ValidationError("unknown star kind '" + kind + "'");
  }
  // Extra terms added to B_1, B_2, ... on top of the table above.
  if (j.contains("extra")) {
    const json& extra = array_of(j["extra"], "star extra");
    for (std::size_t q = 0; q < extra.size(); ++q) {
      auto terms = parse_terms(extra[q], n);
      if (terms.empty()) continue;
      if (q >= s.ops.size()) s.ops.resize(q + 1, BidifferentialOperator(n, {}));
      auto all = s.ops[q].terms();
      all.insert(all.end(), terms.begin(), terms.end());
      s.ops[q] = BidifferentialOperator(n, all);
    }
  }
  // Rejects terms that do not differentiate both arguments.
  StarProduct::general(n, s.ops);
  return s;
}

const std::set<std::string>& check_ids() {
  static const std::set<std::string> ids = [] {
    std::set<std::string> s;
    for (auto& c : check_catalogue()) s.insert(c.id);
    return s;
  }();
  return ids;
}

std::string series_expression(const std::vector<Rational>& c) {
  std::string e = "0";
  for (std::size_t q = 0; q < c.size(); ++q)
    if (c[q] != 0) e += " + (" + to_string(c[q]) + ")*hbar^" + std::to_string(q);
  return e;
}

// Index counts (upper, lower) accepted per quantity family.
const std::map<std::string, std::vector<std::pair<int, int>>>& key_shapes() {
  static const std::map<std::string, std::vector<std::pair<int, int>>> m = {
      {"g", {{0, 2}}},           {"ginv", {{2, 0}}},
      {"Ups", {{0, 3}}},         {"Gamma", {{0, 3}, {1, 2}}},
      {"GammaTilde", {{0, 3}, {1, 2}}},
      {"R", {{0, 4}, {0, 0}}},   {"Ric", {{0, 2}, {1, 1}}},
      {"Theta", {{0, 2}, {1, 1}, {0, 0}}}};
  return m;
}

void validate_value_key(const std::string& key, int n) {
  static const std::regex re(R"(^([A-Za-z]+)(?:\^([0-9]+))?(?:_([0-9]+))?$)");
  std::smatch m;
  if (!std::regex_match(key, m, re)) throw ValidationError("malformed quantity key '" + key + "'");
  auto it = key_shapes().find(m[1].str());
  if (it == key_shapes().end()) throw ValidationError("unknown quantity family in '" + key + "'");
  std::pair<int, int> shape{static_cast<int>(m[2].length()), static_cast<int>(m[3].length())};
  bool ok = false;
  for (auto& s : it->second) ok |= s == shape;
  if (!ok) throw ValidationError("wrong number of indices in '" + key + "'");
  for (char ch : m[2].str() + m[3].str())
    if (ch < '1' || ch - '0' > n) throw ValidationError("index out of range in '" + key + "'");
}

CheckRequest parse_check(const json& j, int n) {
  CheckRequest c;
  if (j.is_string()) {
    c.id = j.get<std::string>();
  } else {
    c.id = string_of(field(j, "id", "check"), "check id");
    if (j.contains("expect")) {
      std::string e = string_of(j["expect"], "check expect");
      if (e == "pass") c.expect = Expectation::pass;
      else if (e == "fail") c.expect = Expectation::fail;
      else throw ValidationError("expect must be 'pass' or 'fail'");
    }
    if (j.contains("expected")) {
      const json& ex = j["expected"];
      if (!ex.is_object()) throw ParseError("check 'expected' must be an object");
      for (auto& [key, v] : ex.items()) {
        validate_value_key(key, n);
        std::string expr = v.is_array() ? series_expression(rationals_of(v, key)) : string_of(v, key);
        c.expected.emplace_back(key, expr);
      }
    }
    if (j.contains("order")) c.order = int_of(j["order"], "check order");
    if (j.contains("points")) c.points = int_of(j["points"], "check points");
    if (j.contains("samples")) c.samples = int_of(j["samples"], "check samples");
  }
  if (!check_ids().count(c.id)) throw ValidationError("unknown check '" + c.id + "'");
  return c;
}

}  // namespace

const std::vector<CheckInfo>& check_catalogue() {
  static const std::vector<CheckInfo> c = {
      {"metric-invertible", "g_ij[0] is invertible at the base point"},
      {"inverse-metric", "left and right inverse recursions agree and invert g"},
      {"metric-parity", "g_ij[q] = (-1)^q g_ji[q]"},
      {"inverse-parity", "g^ij[q] = (-1)^q g^ji[q]"},
      {"chiral-parity", "Upsilon vanishes in even orders"},
      {"connection-compatibility", "Gamma_ijk + Gamma~_ikj = d_i g_jk"},
      {"torsion-chirality", "torsion free with Gamma - Gamma~ = Upsilon"},
      {"metric-parallel", "covariant derivatives of g and its inverse vanish"},
      {"connection-parity", "Gamma[q] = (-1)^q Gamma~[q]"},
      {"embedding-connection", "embedding connection equals the canonical one for its chirality"},
      {"riemann-routes", "curvature operators, both component formulas and the right curvature agree"},
      {"ricci-traces", "the two scalar curvatures agree"},
      {"riemann-parity", "R_lkij[q] = -(-1)^q R_klij[q]"},
      {"ricci-equivalence", "R_ij[q] = (-1)^q Theta_ji[q] and R^i_j[q] = (-1)^q Theta^i_j[q]"},
      {"parity-hypotheses", "metric and chiral parity conditions"},
      {"first-bianchi", "cyclic sum of [nabla_i, nabla_j] E_k vanishes, both sides"},
      {"second-bianchi", "cyclic sum of nabla_s R_lkij vanishes"},
      {"contracted-bianchi", "sum_s nabla_s (R^s_j + Theta^s_j) = nabla_j R"},
      {"classical-limit", "h^0 layers of Gamma and R match the classical embedding geometry"},
      {"values", "listed quantities equal their expected series exactly"},
      {"moyal-commutator", "[x^i, x^j] = 2 h theta^ij"},
      {"leibniz", "d_i (u * v) = d_i u * v + u * d_i v on random jets"},
      {"associativity", "(u * v) * w = u * (v * w) on random jets"},
      {"unitality", "1 * u = u * 1 = u on random jets"},
      {"appendix-identities", "Moyal products of trigonometric monomials"},
      {"spherical-closed-form", "fluctuation block matches its closed form"},
      {"theta1-independence", "metric, inverse and connection do not depend on theta_1"},
      {"spherical-transpose", "g_2k = -g_k2 for k != 2, other pairs symmetric"},
      {"quasi-associativity", "the quasi star product passes the associativity gate"},
      {"quasi-torsion", "quasi-connections are torsion free"},
      {"quasi-crosscheck", "Moyal quasi-connection geometry equals the canonical pipeline"},
      {"quasi-first-bianchi", "first Bianchi identity for the quasi-connections"},
  };
  return c;
}

const std::vector<std::string>& value_families() {
  static const std::vector<std::string> f = {"g",   "ginv", "Ups",  "Gamma",  "Gamma^", "GammaTilde",
                                             "GammaTilde^", "R", "Ric", "Ric^", "Theta", "Theta^",
                                             "scalar"};
  return f;
}

Scenario parse_scenario(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario is not valid JSON: ") + e.what());
  }
  try {
    Scenario s;
    s.name = string_of(field(j, "name", "scenario"), "name");
    if (j.contains("description")) s.description = string_of(j["description"], "description");
    const json& chart = field(j, "chart", "scenario");
    s.dim = int_of(field(chart, "dim", "chart"), "chart dim");
    if (s.dim < 1 || s.dim > 9) throw ValidationError("chart dim must lie in [1, 9]");
    if (chart.contains("coordinates")) {
      for (auto& c : array_of(chart["coordinates"], "coordinates")) s.coordinates.push_back(string_of(c, "coordinate"));
      if (static_cast<int>(s.coordinates.size()) != s.dim)
        throw ValidationError("coordinates must name every chart dimension");
    } else {
      for (int i = 1; i <= s.dim; ++i) s.coordinates.push_back("x" + std::to_string(i));
    }
    s.truncation = int_of(field(j, "truncation", "scenario"), "truncation");
    if (s.truncation < 0) throw ValidationError("truncation must be non-negative");
    if (j.contains("jet_order")) {
      s.jet_order = int_of(j["jet_order"], "jet_order");
      if (*s.jet_order < 0) throw ValidationError("jet_order must be non-negative");
    }
    if (j.contains("base_point")) {
      s.base_point = rationals_of(j["base_point"], "base_point");
      if (static_cast<int>(s.base_point.size()) != s.dim)
        throw ValidationError("base_point must have one entry per coordinate");
    } else {
      s.base_point.assign(s.dim, Rational(0));
    }
    if (j.contains("theta")) {
      const json& t = j["theta"];
      if (t.is_array()) {
        s.theta = ThetaMatrix(matrix_of(t, s.dim, "theta"));
      } else {
        Rational lambda = rational_of(field(t, "lambda", "theta"), "theta lambda");
        int l = int_of(field(t, "l", "theta"), "theta l");
        if (s.dim < 2 || l < 1 || l > s.dim || l == 2)
          throw ValidationError("theta shorthand needs l in [1, dim] with l != 2");
        s.theta_shorthand = {lambda, l};
        s.theta = ThetaMatrix::single(s.dim, 1, l - 1, lambda);
      }
    }
    if (j.contains("metric")) {
      const json& m = j["metric"];
      std::string src = string_of(field(m, "source", "metric"), "metric source");
      if (src == "none") {
        s.metric.kind = MetricSource::Kind::none;
      } else if (src == "constant_series") {
        s.metric.kind = MetricSource::Kind::constant_series;
        const json& rows = array_of(field(m, "entries", "metric"), "metric entries");
        for (auto& row : rows) {
          std::vector<std::vector<Rational>> r;
          for (auto& e : array_of(row, "metric row")) r.push_back(rationals_of(e, "metric entry"));
          if (static_cast<int>(r.size()) != s.dim) throw ValidationError("metric rows must have dim entries");
          s.metric.entries.push_back(std::move(r));
        }
        if (static_cast<int>(s.metric.entries.size()) != s.dim)
          throw ValidationError("metric must have dim rows");
      } else if (src == "embedding") {
        s.metric.kind = MetricSource::Kind::embedding;
        for (auto& c : array_of(field(m, "components", "metric"), "components"))
          s.metric.embedding.components.push_back(parse_component(c, s.dim));
        int codim = static_cast<int>(s.metric.embedding.components.size());
        if (m.contains("signature")) {
          for (auto& e : array_of(m["signature"], "signature")) s.metric.embedding.eta.push_back(int_of(e, "signature"));
        } else {
          s.metric.embedding.eta.assign(codim, 1);
        }
        if (static_cast<int>(s.metric.embedding.eta.size()) != codim)
          throw ValidationError("signature must have one entry per component");
        for (int e : s.metric.embedding.eta)
          if (e != 1 && e != -1) throw ValidationError("signature entries must be 1 or -1");
        if (codim < s.dim) throw ValidationError("embedding needs at least dim components");
      } else if (src == "spherical") {
        s.metric.kind = MetricSource::Kind::spherical;
        if (j.contains("star") && j["star"].value("kind", "") != "moyal")
          throw ValidationError("spherical metric needs the Moyal product");
        if (!s.theta_shorthand) throw ValidationError("spherical metric needs the theta shorthand {lambda, l}");
        auto& sp = s.metric.spherical.spec;
        sp.n = s.dim;
        sp.m = int_of(field(m, "m", "metric"), "metric m");
        sp.p = m.contains("p") ? int_of(m["p"], "metric p") : 0;
        sp.l = s.theta_shorthand->second;
        sp.lambda = s.theta_shorthand->first;
        sp.f = m.contains("f") ? parse_profile(m["f"]) : RadialProfile::identity();
        if (m.contains("outer")) {
          for (auto& p : array_of(m["outer"], "outer")) sp.outer.push_back(parse_profile(p));
        } else {
          sp.outer.assign(std::max(0, sp.m - sp.n), RadialProfile::identity());
        }
        if (m.contains("inner")) {
          for (auto& p : array_of(m["inner"], "inner")) sp.inner.push_back(parse_profile(p));
        } else {
          sp.inner.assign(std::max(0, sp.n - 2), RadialProfile::identity());
        }
        auto& base = s.metric.spherical.base;
        base.rho = rational_of(field(m, "rho", "metric"), "metric rho");
        for (auto& a : array_of(field(m, "angles", "metric"), "angles")) {
          auto v = rationals_of(a, "angle");
          if (v.size() != 2) throw ValidationError("angles are [sin, cos] pairs");
          base.angles.emplace_back(v[0], v[1]);
        }
        try {
          validate_spherical(sp, base);
        } catch (const SpecViolation& e) {
          throw ValidationError(e.what());
        }
      } else {
        throw ValidationError("unknown metric source '" + src + "'");
      }
    }
    if (j.contains("chiral")) {
      const json& c = j["chiral"];
      std::string src = string_of(field(c, "source", "chiral"), "chiral source");
      if (src == "zero") {
        s.chiral.kind = ChiralSource::Kind::zero;
      } else if (src == "embedding") {
        if (s.metric.kind != MetricSource::Kind::embedding && s.metric.kind != MetricSource::Kind::spherical)
          throw ValidationError("embedding-derived chirality needs an embedding metric");
        s.chiral.kind = ChiralSource::Kind::embedding;
      } else if (src == "explicit") {
        s.chiral.kind = ChiralSource::Kind::explicit_entries;
        for (auto& e : array_of(field(c, "entries", "chiral"), "chiral entries")) {
          std::vector<int> idx;
          for (auto& i : array_of(field(e, "index", "chiral entry"), "chiral index"))
            idx.push_back(coordinate_index(i, s.dim, "chiral index"));
          if (idx.size() != 3) throw ValidationError("chiral index must have three entries");
          s.chiral.entries[idx] = rationals_of(field(e, "series", "chiral entry"), "chiral series");
        }
      } else {
        throw ValidationError("unknown chiral source '" + src + "'");
      }
    }
    if (j.contains("star")) s.star = parse_star(j["star"], s.dim, s.truncation);
    if (j.contains("quasi")) s.quasi_star = parse_star(field(j["quasi"], "star", "quasi"), s.dim, s.truncation);
    if (j.contains("values")) {
      for (auto& v : array_of(j["values"], "values")) {
        std::string f = string_of(v, "values entry");
        if (std::find(value_families().begin(), value_families().end(), f) == value_families().end())
          throw ValidationError("unknown quantity family '" + f + "'");
        s.report_values.push_back(f);
      }
    }
    if (j.contains("checks"))
      for (auto& c : array_of(j["checks"], "checks")) s.checks.push_back(parse_check(c, s.dim));
    if (j.contains("seed")) {
      if (!j["seed"].is_number_unsigned()) throw ParseError("seed must be a non-negative integer");
      s.seed = j["seed"].get<std::uint64_t>();
    }
    return s;
  } catch (const json::exception& e) {
    throw ParseError(std::string("scenario has a malformed field: ") + e.what());
  }
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

std::optional<std::string> builtin_scenario(const std::string& name) {
  for (auto& [n, text] : builtin_scenarios())
    if (n == name) return text;
  return std::nullopt;
}

int default_jet_order(int truncation) {
  if (const char* env = std::getenv("NCDG_JET_ORDER")) {
    std::string v(env);
    if (v.empty() || v.find_first_not_of("0123456789") != std::string::npos)
      throw ValidationError("NCDG_JET_ORDER must be a non-negative integer");
    return std::stoi(v);
  }
  return truncation + 6;
}

int effective_jet_order(const Scenario& s) {
  return s.jet_order ? *s.jet_order : default_jet_order(s.truncation);
}

}  // namespace ncdg
