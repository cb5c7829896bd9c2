#pragma once

#include <cstdint>

#include "ncdg/report.hpp"
#include "ncdg/scenario.hpp"

namespace ncdg {

// Runs the requested checks in declared order. Pipeline stages are built on
// demand; a stage that throws fails every check depending on it.
Report run_scenario(const Scenario& s);

// The trigonometric identity table as a report with one check per identity.
Report verify_appendix_report(int N, int points, std::uint64_t seed);

}  // namespace ncdg
