#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncdg/check.hpp"
#include "ncdg/rational.hpp"
#include "ncdg/scenario.hpp"

namespace ncdg {

struct ReportCheck {
  std::string id;
  Expectation expect = Expectation::pass;
  CheckStatus status = CheckStatus::pass;
  std::string details;
  std::vector<std::pair<std::string, std::string>> counterexample;
  std::vector<CheckResult> parts;

  // "pass", "fail", "skipped", "EXPECTED" or "UNEXPECTED-PASS".
  std::string outcome() const;
  bool ok() const;
  friend bool operator==(const ReportCheck&, const ReportCheck&) = default;
};

// A series whose coefficients are taken at the base point. `exact` is false
// when some coefficient is a jet, i.e. a function rather than a constant.
struct ReportValue {
  std::string name;
  std::vector<Rational> coefficients;
  bool exact = true;

  friend bool operator==(const ReportValue&, const ReportValue&) = default;
};

struct Report {
  std::string scenario;
  int truncation = 0;
  int jet_order = 0;
  std::uint64_t seed = 0;
  std::vector<ReportCheck> checks;
  std::vector<ReportValue> values;

  bool ok() const;
  int exit_code() const { return ok() ? 0 : 1; }
  friend bool operator==(const Report&, const Report&) = default;
};

enum class ReportFormat { json, markdown };

std::string report_to_json(const Report& r);
// Throws ParseError.
Report report_from_json(const std::string& text);
std::string report_to_markdown(const Report& r);
std::string render(const Report& r, ReportFormat f);
// Writes to `path`; throws IOError.
void emit_report(const Report& r, ReportFormat f, const std::string& path);

// "-h^2 + 3h^3" with unicode minus and superscripts, e.g. "−ħ² + 3ħ³".
std::string pretty_series(const std::vector<Rational>& coefficients);
// "Ric^1_1" -> "R¹₁", "Gamma_112" -> "Γ₁₁₂".
std::string pretty_name(const std::string& key);

}  // namespace ncdg
