#pragma once

#include <string>
#include <utility>
#include <vector>

namespace ncdg {

enum class CheckStatus { pass, fail, skipped };

std::string to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::string details;
  std::vector<std::pair<std::string, std::string>> counterexample;

  bool passed() const { return status == CheckStatus::pass; }
  bool failed() const { return status == CheckStatus::fail; }
  friend bool operator==(const CheckResult&, const CheckResult&) = default;

  static CheckResult pass(std::string name, std::string details = {});
  static CheckResult fail(std::string name, std::string details,
                          std::vector<std::pair<std::string, std::string>> counterexample = {});
  static CheckResult skipped(std::string name, std::string details);
};

// 1-based rendering of a 0-based index tuple, e.g. "(1,2,2)".
std::string index_label(const std::vector<int>& zero_based);

}  // namespace ncdg
