#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ncdg/check.hpp"

namespace ncdg {

// trig(theta1) * trig(theta2) with trig in {sin, cos}.
struct TrigMonomial {
  bool sin1 = true;
  bool sin2 = true;

  std::string to_string() const;
};

// (left) * (right) = closed_form under the Moyal product with
// theta^{12} = lambda on coordinates (theta1, theta2).
struct TrigIdentity {
  std::string label;
  TrigMonomial left, right;
  std::string closed_form;
};

const std::vector<TrigIdentity>& trig_identities();

struct AppendixReport {
  std::vector<CheckResult> checks;
  int passed() const;
};

// Checks every identity order by order through N at `points` random base
// points with rational (sin, cos) pairs and random nonzero lambda.
AppendixReport verify_appendix(int N, int points, std::uint64_t seed,
                               const std::vector<TrigIdentity>& table = trig_identities());

}  // namespace ncdg
