#include "ncdg/report.hpp"

#include <fstream>
#include <map>
#include <regex>
#include <sstream>

#include "json.hpp"
#include "ncdg/errors.hpp"

namespace ncdg {

namespace {

using json = nlohmann::json;

const char* const kSuper[] = {"⁰", "¹", "²", "³", "⁴", "⁵", "⁶", "⁷", "⁸", "⁹"};
const char* const kSub[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};

std::string digits(const std::string& s, const char* const* table) {
  std::string out;
  for (char c : s) out += table[c - '0'];
  return out;
}

std::string expect_name(Expectation e) { return e == Expectation::fail ? "fail" : "pass"; }

Expectation parse_expect(const std::string& s) {
  if (s == "pass") return Expectation::pass;
  if (s == "fail") return Expectation::fail;
  throw ParseError("unknown expectation '" + s + "'");
}

CheckStatus parse_status(const std::string& s) {
  if (s == "pass") return CheckStatus::pass;
  if (s == "fail") return CheckStatus::fail;
  if (s == "skipped") return CheckStatus::skipped;
  throw ParseError("unknown check status '" + s + "'");
}

json pairs_to_json(const std::vector<std::pair<std::string, std::string>>& v) {
  json a = json::array();
  for (auto& [k, x] : v) a.push_back(json::array({k, x}));
  return a;
}

std::vector<std::pair<std::string, std::string>> pairs_from_json(const json& a) {
  std::vector<std::pair<std::string, std::string>> v;
  for (auto& p : a) v.emplace_back(p.at(0).get<std::string>(), p.at(1).get<std::string>());
  return v;
}

json part_to_json(const CheckResult& c) {
  return {{"name", c.name},
          {"status", to_string(c.status)},
          {"details", c.details},
          {"counterexample", pairs_to_json(c.counterexample)}};
}

CheckResult part_from_json(const json& j) {
  return {j.at("name").get<std::string>(), parse_status(j.at("status").get<std::string>()),
          j.at("details").get<std::string>(), pairs_from_json(j.at("counterexample"))};
}

std::string escape_cell(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else if (c == '\n') out += ' ';
    else out += c;
  }
  return out;
}

}  // namespace

std::string ReportCheck::outcome() const {
  if (status == CheckStatus::skipped) return "skipped";
  bool failed = status == CheckStatus::fail;
  if (expect == Expectation::fail) return failed ? "EXPECTED" : "UNEXPECTED-PASS";
  return failed ? "fail" : "pass";
}

bool ReportCheck::ok() const {
  std::string o = outcome();
  return o != "fail" && o != "UNEXPECTED-PASS";
}

bool Report::ok() const {
  for (auto& c : checks)
    if (!c.ok()) return false;
  return true;
}

std::string pretty_series(const std::vector<Rational>& c) {
  std::string out;
  for (std::size_t q = 0; q < c.size(); ++q) {
    if (c[q] == 0) continue;
    Rational a = abs(c[q]);
    bool negative = sgn(c[q]) < 0;
    if (out.empty())
      out += negative ? "−" : "";
    else
      out += negative ? " − " : " + ";
    std::string coeff = to_string(a);
    if (q == 0) {
      out += coeff;
      continue;
    }
    if (a != 1) out += a.get_den() == 1 ? coeff : coeff + "·";
    out += "ħ";
    if (q > 1) out += digits(std::to_string(q), kSuper);
  }
  return out.empty() ? "0" : out;
}

std::string pretty_name(const std::string& key) {
  static const std::regex re(R"(^([A-Za-z]+)(?:\^([0-9]+))?(?:_([0-9]+))?$)");
  static const std::map<std::string, std::string> symbol = {
      {"g", "g"},     {"ginv", "g"},        {"Ups", "Υ"}, {"Gamma", "Γ"},
      {"GammaTilde", "Γ̃"}, {"R", "R"},      {"Ric", "R"}, {"Theta", "Θ"}};
  std::smatch m;
  if (!std::regex_match(key, m, re)) return key;
  auto it = symbol.find(m[1].str());
  if (it == symbol.end()) return key;
  return it->second + digits(m[2].str(), kSuper) + digits(m[3].str(), kSub);
}

std::string report_to_json(const Report& r) {
  json checks = json::array();
  int failed = 0, expected = 0, skipped = 0;
  for (auto& c : r.checks) {
    json parts = json::array();
    for (auto& p : c.parts) parts.push_back(part_to_json(p));
    std::string o = c.outcome();
    failed += !c.ok();
    expected += o == "EXPECTED";
    skipped += o == "skipped";
    checks.push_back({{"id", c.id},
                      {"expect", expect_name(c.expect)},
                      {"status", to_string(c.status)},
                      {"outcome", o},
                      {"details", c.details},
                      {"counterexample", pairs_to_json(c.counterexample)},
                      {"parts", parts}});
  }
  json values = json::array();
  for (auto& v : r.values) {
    json coeffs = json::array();
    for (auto& c : v.coefficients) coeffs.push_back(to_string(c));
    values.push_back({{"name", v.name},
                      {"exact", v.exact},
                      {"coefficients", coeffs},
                      {"series", pretty_series(v.coefficients)}});
  }
  json j = {{"scenario", r.scenario},
            {"environment", {{"truncation", r.truncation}, {"jet_order", r.jet_order}, {"seed", r.seed}}},
            {"summary",
             {{"ok", r.ok()},
              {"checks", r.checks.size()},
              {"failed", failed},
              {"expected_failures", expected},
              {"skipped", skipped}}},
            {"checks", checks},
            {"values", values}};
  return j.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
  try {
    json j = json::parse(text);
    Report r;
    r.scenario = j.at("scenario").get<std::string>();
    const json& env = j.at("environment");
    r.truncation = env.at("truncation").get<int>();
    r.jet_order = env.at("jet_order").get<int>();
    r.seed = env.at("seed").get<std::uint64_t>();
    for (auto& c : j.at("checks")) {
      ReportCheck rc;
      rc.id = c.at("id").get<std::string>();
      rc.expect = parse_expect(c.at("expect").get<std::string>());
      rc.status = parse_status(c.at("status").get<std::string>());
      rc.details = c.at("details").get<std::string>();
      rc.counterexample = pairs_from_json(c.at("counterexample"));
      for (auto& p : c.at("parts")) rc.parts.push_back(part_from_json(p));
      r.checks.push_back(std::move(rc));
    }
    for (auto& v : j.at("values")) {
      ReportValue rv;
      rv.name = v.at("name").get<std::string>();
      rv.exact = v.at("exact").get<bool>();
      for (auto& c : v.at("coefficients")) rv.coefficients.push_back(parse_rational(c.get<std::string>()));
      r.values.push_back(std::move(rv));
    }
    return r;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
}

std::string report_to_markdown(const Report& r) {
  std::ostringstream os;
  os << "# " << r.scenario << "\n\n";
  os << "| truncation | jet order | seed |\n|---|---|---|\n";
  os << "| " << r.truncation << " | " << r.jet_order << " | " << r.seed << " |\n\n";
  os << "## Checks\n\n";
  if (r.checks.empty()) {
    os << "No checks requested.\n";
  } else {
    os << "| check | expect | status | outcome | details |\n|---|---|---|---|---|\n";
    for (auto& c : r.checks)
      os << "| " << c.id << " | " << expect_name(c.expect) << " | " << to_string(c.status) << " | "
         << c.outcome() << " | " << escape_cell(c.details) << " |\n";
    for (auto& c : r.checks) {
      if (c.counterexample.empty()) continue;
      os << "\n### " << c.id << " counterexample\n\n| field | value |\n|---|---|\n";
      for (auto& [k, v] : c.counterexample) os << "| " << escape_cell(k) << " | " << escape_cell(v) << " |\n";
    }
  }
  if (!r.values.empty()) {
    os << "\n## Values\n\n| quantity | at |\n|---|---|\n";
    for (auto& v : r.values)
      os << "| " << pretty_name(v.name) << " = " << pretty_series(v.coefficients) << " | "
         << (v.exact ? "constant" : "base point") << " |\n";
  }
  os << "\n**Result:** " << (r.ok() ? "pass" : "fail") << "\n";
  return os.str();
}

std::string render(const Report& r, ReportFormat f) {
  return f == ReportFormat::json ? report_to_json(r) : report_to_markdown(r);
}

void emit_report(const Report& r, ReportFormat f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IOError("cannot open '" + path + "' for writing");
  out << render(r, f);
  if (!out) throw IOError("failed writing '" + path + "'");
}

}  // namespace ncdg
