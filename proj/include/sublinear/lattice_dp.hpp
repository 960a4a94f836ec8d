#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sublinear/ambiguity.hpp"
#include "sublinear/test_function.hpp"

namespace sublinear {

enum class Side { kUpper, kLower };

// Whether the terminal function sees the average S_n / n or the raw sum S_n
// (moment computations).
enum class Scaling { kAverage, kSum };

struct DpOptions {
  // Total number of (level, state) entries across the whole induction.
  std::size_t state_budget = 50'000'000;
  Scaling scaling = Scaling::kAverage;
  // Worker threads used inside a level; results do not depend on this.
  unsigned threads = 1;
  bool keep_tables = false;
};

// Closed grammar of path events whose capacities the DP can evaluate exactly.
struct PathEvent {
  enum class Kind {
    kFinalAbsGe,         // |S_n| >= a
    kFinalGt,            // S_n > a
    kFinalLt,            // S_n < a
    kMaxPartialAbsGe,    // max_{1<=k<=n} |S_k| >= a
    kMaxIncrementAbsGe,  // max_{1<=k<=n} |X_k| >= a
    kTailSumAbsGe,       // |S_n - S_k| >= a, k = from_index
  };

  Kind kind = Kind::kFinalAbsGe;
  double threshold = 0.0;
  std::size_t from_index = 0;
  // Evaluate the complementary event instead.
  bool complement = false;

  static PathEvent final_abs_ge(double a) { return {Kind::kFinalAbsGe, a}; }
  static PathEvent final_gt(double a) { return {Kind::kFinalGt, a}; }
  static PathEvent final_lt(double a) { return {Kind::kFinalLt, a}; }
  static PathEvent max_partial_abs_ge(double a) { return {Kind::kMaxPartialAbsGe, a}; }
  static PathEvent max_increment_abs_ge(double a) {
    return {Kind::kMaxIncrementAbsGe, a};
  }
  static PathEvent tail_sum_abs_ge(double a, std::size_t k) {
    return {Kind::kTailSumAbsGe, a, k};
  }

  PathEvent complemented() const {
    PathEvent e = *this;
    e.complement = !complement;
    return e;
  }

  std::string describe() const;
};

std::string_view to_string(PathEvent::Kind kind);
std::optional<PathEvent::Kind> parse_event_kind(std::string_view name);

// Dense index range of DP states at one level: coordinates [lo, hi], times an
// optional boolean trigger flag.
struct StateLayout {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  int flags = 1;

  std::size_t width() const { return static_cast<std::size_t>(hi - lo + 1); }
  std::size_t size() const { return width() * static_cast<std::size_t>(flags); }
  bool contains(std::int64_t coord, bool flag) const {
    return coord >= lo && coord <= hi && (!flag || flags == 2);
  }
  std::size_t index(std::int64_t coord, bool flag) const {
    return (flag ? width() : 0) + static_cast<std::size_t>(coord - lo);
  }

  friend bool operator==(const StateLayout&, const StateLayout&) = default;
};

struct ValueTable {
  std::size_t level = 0;
  StateLayout layout;
  std::vector<double> values;

  double at(std::int64_t coord, bool flag = false) const {
    return values[layout.index(coord, flag)];
  }
};

// Markov kernel selection: for each step k = 1..n and each state at level
// k - 1, the index of the generator that draws X_k.
class KernelPolicy {
 public:
  static constexpr std::uint32_t kUnset = 0xffffffffu;

  struct Level {
    StateLayout layout;
    std::vector<std::uint32_t> choice;
  };

  KernelPolicy() = default;
  explicit KernelPolicy(std::vector<Level> levels) : levels_(std::move(levels)) {}

  // Policy that always draws from `generator`, covering every sum state.
  static KernelPolicy constant(const AmbiguitySet& set, std::size_t n,
                               std::size_t generator);

  std::size_t horizon() const noexcept { return levels_.size(); }
  const Level& level(std::size_t step) const { return levels_.at(step - 1); }
  Level& level(std::size_t step) { return levels_.at(step - 1); }

  std::optional<std::size_t> choice(std::size_t step, std::int64_t coord,
                                    bool flag = false) const;

 private:
  std::vector<Level> levels_;
};

struct RobustResult {
  double value = 0.0;
  KernelPolicy policy;
  std::size_t state_count = 0;
  std::vector<ValueTable> tables;  // levels 0..n, only with keep_tables
};

// Backward induction u_n(s) = f(s/n), u_{k-1}(s) = max_g sum_j w_j u_k(s + x_j)
// (min for Side::kLower). Returns u_0(0) and the argmax policy.
RobustResult robust_value(const AmbiguitySet& set, std::size_t n, const TestFunction& f,
                          const DpOptions& options = {}, Side side = Side::kUpper);

// Upper (V) or lower (v) capacity of a path event.
double capacity(const AmbiguitySet& set, std::size_t n, const PathEvent& event,
                Side side, const DpOptions& options = {});
RobustResult capacity_result(const AmbiguitySet& set, std::size_t n,
                             const PathEvent& event, Side side,
                             const DpOptions& options = {});

// Linear expectation under the single measure induced by `policy`.
double policy_value(const AmbiguitySet& set, const KernelPolicy& policy, std::size_t n,
                    const TestFunction& f, const DpOptions& options = {});
double policy_capacity(const AmbiguitySet& set, const KernelPolicy& policy,
                       std::size_t n, const PathEvent& event,
                       const DpOptions& options = {});

// Single-step upper tail capacity V(|X_1| >= a).
double tail_capacity(const AmbiguitySet& set, double threshold);

}  // namespace sublinear
