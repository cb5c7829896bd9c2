#include "ncdg/check.hpp"

namespace ncdg {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "unknown";
}

CheckResult CheckResult::pass(std::string name, std::string details) {
  return {std::move(name), CheckStatus::pass, std::move(details), {}};
}

CheckResult CheckResult::fail(std::string name, std::string details,
                              std::vector<std::pair<std::string, std::string>> counterexample) {
  return {std::move(name), CheckStatus::fail, std::move(details), std::move(counterexample)};
}

CheckResult CheckResult::skipped(std::string name, std::string details) {
  return {std::move(name), CheckStatus::skipped, std::move(details), {}};
}

std::string index_label(const std::vector<int>& zero_based) {
  std::string s = "(";
  for (std::size_t k = 0; k < zero_based.size(); ++k) {
    if (k) s += ",";
    s += std::to_string(zero_based[k] + 1);
  }
  return s + ")";
}

}  // namespace ncdg
