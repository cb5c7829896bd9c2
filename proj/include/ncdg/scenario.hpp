#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ncdg/elementary.hpp"
#include "ncdg/embedding.hpp"
#include "ncdg/star_product.hpp"

namespace ncdg {

// One factor of an embedding component term.
struct FactorSpec {
  enum class Kind { constant, coordinate, elementary } kind = Kind::constant;
  Rational value = 0;                   // constant
  int index = 0;                        // coordinate, 0-based
  ElementaryKind function = ElementaryKind::polynomial;
  AffineArgument arg;
  std::vector<Rational> table;          // polynomial coefficients or derivative table
  std::optional<std::pair<Rational, Rational>> angle;  // (sin, cos) of sin/cos arguments
};

struct TermSpec {
  Rational coefficient = 1;
  std::vector<FactorSpec> factors;
};

// sum of terms
struct ComponentSpec {
  std::vector<TermSpec> terms;
};

struct EmbeddingSpec {
  std::vector<ComponentSpec> components;
  std::vector<int> eta;
};

struct SphericalSource {
  SphericalEmbeddingSpec spec;
  SphericalBase base;
};

struct MetricSource {
  enum class Kind { none, constant_series, embedding, spherical } kind = Kind::none;
  // constant_series: entries[i][j] is the series g_ij, coefficient q at index q.
  std::vector<std::vector<std::vector<Rational>>> entries;
  EmbeddingSpec embedding;
  SphericalSource spherical;
};

struct ChiralSource {
  enum class Kind { zero, explicit_entries, embedding } kind = Kind::zero;
  // 0-based (i, j, k) -> coefficients of Upsilon_ijk
  std::map<std::vector<int>, std::vector<Rational>> entries;
};

struct StarSpec {
  enum class Kind { moyal, general, exponential } kind = Kind::moyal;
  std::vector<BidifferentialOperator> ops;      // general: B_1, B_2, ...
  std::vector<std::vector<Rational>> matrix;    // exponential: a^{ij}
};

enum class Expectation { pass, fail };

struct CheckRequest {
  std::string id;
  Expectation expect = Expectation::pass;
  // values: expected series by quantity key, as coefficient lists or expressions
  std::vector<std::pair<std::string, std::string>> expected;
  int order = -1;   // appendix-identities
  int points = -1;  // appendix-identities
  int samples = -1; // random property checks
};

struct Scenario {
  std::string name;
  std::string description;
  int dim = 0;
  std::vector<std::string> coordinates;
  int truncation = 0;
  std::optional<int> jet_order;
  std::vector<Rational> base_point;
  std::optional<ThetaMatrix> theta;
  // lambda and 1-based l of the shorthand theta^{2l} = -theta^{l2} = lambda
  std::optional<std::pair<Rational, int>> theta_shorthand;
  MetricSource metric;
  ChiralSource chiral;
  StarSpec star;
  std::optional<StarSpec> quasi_star;
  std::vector<std::string> report_values;
  std::vector<CheckRequest> checks;
  std::uint64_t seed = 0;
};

struct CheckInfo {
  std::string id;
  std::string summary;
};

// Every check identifier a scenario may request.
const std::vector<CheckInfo>& check_catalogue();
// Quantity families accepted in "values".
const std::vector<std::string>& value_families();

// Throws ParseError on malformed JSON or wrong field types and
// ValidationError on invariant violations.
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::string& path);

// Name and JSON text of each scenario shipped with the binary.
const std::vector<std::pair<std::string, std::string>>& builtin_scenarios();
std::optional<std::string> builtin_scenario(const std::string& name);

// N + 6, or NCDG_JET_ORDER when set; the scenario field takes precedence.
int default_jet_order(int truncation);
int effective_jet_order(const Scenario& s);

}  // namespace ncdg
