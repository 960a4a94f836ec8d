#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sublinear/ambiguity.hpp"
#include "sublinear/family.hpp"
#include "sublinear/lattice_dp.hpp"
#include "sublinear/report.hpp"
#include "sublinear/test_function.hpp"

namespace sublinear {

// Kernel policy used by `simulate`: the robust argmax policy for the
// configured function, or one fixed generator at every state.
struct PolicySpec {
  enum class Kind { kRobust, kConstant };
  Kind kind = Kind::kRobust;
  std::size_t generator = 0;
};

// Validated run configuration. Every key is optional at parse time;
// subcommands require the ones they use (CONFIG error naming the key).
struct RunConfig {
  std::optional<AmbiguitySet> set;
  std::optional<ParametricFamily> family;
  std::optional<TestFunction> function;
  std::vector<std::size_t> horizons;
  std::optional<PathEvent> event;
  std::optional<double> alpha;
  std::optional<double> c;
  std::optional<double> eps;
  std::uint64_t seed = 0;
  std::size_t paths = 10'000;
  std::size_t state_budget = 50'000'000;
  std::size_t enumeration_budget = 1'000'000;
  std::optional<std::string> out;
  std::vector<double> lambdas;
  std::vector<std::size_t> ms;
  std::optional<std::size_t> n_max;
  PolicySpec policy;
  unsigned threads = 1;
};

// Unknown keys are rejected. Errors are CONFIG, except set validation errors,
// which keep their own code and are prefixed with the key path.
RunConfig parse_config(const Json& doc);
RunConfig load_config(const std::filesystem::path& path);

TestFunction parse_function(const Json& node);
Json function_to_json(const TestFunction& f);

}  // namespace sublinear
