#include "sublinear/lattice_dp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <thread>

#include "sublinear/error.hpp"

namespace sublinear {
namespace {

// Threshold a/step in lattice units, snapped to the nearest integer when it
// is within rounding noise of one.
double lattice_units(const LatticeSpec& lattice, double a) {
  const double q = a / lattice.step;
  const double r = std::round(q);
  if (std::fabs(q - r) <= 1e-9 * std::max(1.0, std::fabs(q))) return r;
  return q;
}

constexpr double kCoordLimit = 4e15;

// Smallest integer c with c >= a (in lattice units).
std::int64_t ceil_bound(const LatticeSpec& lattice, double a) {
  return static_cast<std::int64_t>(
      std::clamp(std::ceil(lattice_units(lattice, a)), -kCoordLimit, kCoordLimit));
}

// Smallest integer c with c > a.
std::int64_t strict_lower_bound(const LatticeSpec& lattice, double a) {
  return static_cast<std::int64_t>(
      std::clamp(std::floor(lattice_units(lattice, a)) + 1.0, -kCoordLimit, kCoordLimit));
}

std::int64_t iabs(std::int64_t v) { return v < 0 ? -v : v; }

// The DP state is a tracked coordinate (a partial sum of the increments drawn
// after step `accumulate_from`) plus an optional sticky trigger flag.
struct StateModel {
  enum class Trigger { kNone, kPartialAbs, kIncrementAbs };

  std::size_t n = 0;
  std::int64_t min_step = 0;
  std::int64_t max_step = 0;
  std::size_t accumulate_from = 0;
  Trigger trigger = Trigger::kNone;
  std::int64_t trigger_bound = 0;
  std::function<double(std::int64_t, bool)> terminal;

  int flags() const { return trigger == Trigger::kNone ? 1 : 2; }

  StateLayout layout(std::size_t level) const {
    const auto m = static_cast<std::int64_t>(level > accumulate_from ? level - accumulate_from : 0);
    return {m * min_step, m * max_step, flags()};
  }

  std::pair<std::int64_t, bool> next(std::size_t step, std::int64_t coord, bool flag,
                                     std::int64_t x) const {
    const std::int64_t c = step > accumulate_from ? coord + x : coord;
    bool f = flag;
    if (trigger == Trigger::kPartialAbs && iabs(c) >= trigger_bound) f = true;
    if (trigger == Trigger::kIncrementAbs && iabs(x) >= trigger_bound) f = true;
    return {c, f};
  }
};

StateModel function_model(const AmbiguitySet& set, std::size_t n, const TestFunction& f,
                          Scaling scaling) {
  StateModel m;
  m.n = n;
  m.min_step = set.min_coord();
  m.max_step = set.max_coord();
  const double step = set.lattice().step;
  const double scale = scaling == Scaling::kAverage ? static_cast<double>(n) : 1.0;
  m.terminal = [f, step, scale](std::int64_t coord, bool) {
    const double v = f(static_cast<double>(coord) * step / scale);
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kUnboundedEval, f.describe() + " is not finite on the lattice");
    }
    return v;
  };
  return m;
}

StateModel event_model(const AmbiguitySet& set, std::size_t n, const PathEvent& event) {
  StateModel m;
  m.n = n;
  m.min_step = set.min_coord();
  m.max_step = set.max_coord();
  const LatticeSpec& lattice = set.lattice();
  const bool flip = event.complement;
  const double a = event.threshold;
  if (!std::isfinite(a)) {
    throw Error(ErrorCode::kUnsupportedEvent, "event threshold must be finite");
  }
  auto indicator = [flip](bool hit) { return (hit != flip) ? 1.0 : 0.0; };

  switch (event.kind) {
    case PathEvent::Kind::kFinalAbsGe:
    case PathEvent::Kind::kTailSumAbsGe: {
      if (event.kind == PathEvent::Kind::kTailSumAbsGe) {
        if (event.from_index > n) {
          throw Error(ErrorCode::kUnsupportedEvent,
                      "event.from_index exceeds the horizon");
        }
        m.accumulate_from = event.from_index;
      }
      const std::int64_t bound = ceil_bound(lattice, a);
      m.terminal = [=](std::int64_t c, bool) { return indicator(iabs(c) >= bound); };
      break;
    }
    case PathEvent::Kind::kFinalGt: {
      const std::int64_t bound = strict_lower_bound(lattice, a);
      m.terminal = [=](std::int64_t c, bool) { return indicator(c >= bound); };
      break;
    }
    case PathEvent::Kind::kFinalLt: {
      const std::int64_t bound = ceil_bound(lattice, a);
      m.terminal = [=](std::int64_t c, bool) { return indicator(c < bound); };
      break;
    }
    case PathEvent::Kind::kMaxPartialAbsGe:
      m.trigger = StateModel::Trigger::kPartialAbs;
      m.trigger_bound = ceil_bound(lattice, a);
      m.terminal = [=](std::int64_t, bool flag) { return indicator(flag); };
      break;
    case PathEvent::Kind::kMaxIncrementAbsGe:
      // The sum is irrelevant: keep a single coordinate per level.
      m.accumulate_from = n;
      m.trigger = StateModel::Trigger::kIncrementAbs;
      m.trigger_bound = ceil_bound(lattice, a);
      m.terminal = [=](std::int64_t, bool flag) { return indicator(flag); };
      break;
  }
  return m;
}

enum class Mode { kMax, kMin, kPolicy };

template <class Fn>
void parallel_for(std::size_t size, unsigned threads, Fn&& fn) {
  constexpr std::size_t kMinChunk = 4096;
  const std::size_t workers =
      std::min<std::size_t>(threads == 0 ? 1 : threads, (size + kMinChunk - 1) / kMinChunk);
  if (workers <= 1) {
    fn(std::size_t{0}, size);
    return;
  }
  const std::size_t chunk = (size + workers - 1) / workers;
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(size, begin + chunk);
    pool.emplace_back([&, w, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  pool.clear();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

RobustResult run(const AmbiguitySet& set, const StateModel& model, Mode mode,
                 const KernelPolicy* policy, const DpOptions& options) {
  const std::size_t n = model.n;

  std::size_t total = 0;
  for (std::size_t level = 0; level <= n; ++level) {
    total += model.layout(level).size();
    if (total > options.state_budget) {
      throw Error(ErrorCode::kStateBudgetExceeded,
                  "horizon " + std::to_string(n) + " needs more than " +
                      std::to_string(options.state_budget) + " states (budgets.states)");
    }
  }

  // Forward reachability under a fixed policy.
  std::vector<std::vector<char>> reachable;
  if (mode == Mode::kPolicy) {
    if (policy->horizon() != n) {
      throw Error(ErrorCode::kPolicyGap, "policy horizon " +
                                             std::to_string(policy->horizon()) +
                                             " differs from n = " + std::to_string(n));
    }
    reachable.resize(n + 1);
    reachable[0].assign(model.layout(0).size(), 0);
    reachable[0][model.layout(0).index(0, false)] = 1;
    for (std::size_t step = 1; step <= n; ++step) {
      const StateLayout cur = model.layout(step - 1);
      const StateLayout nxt = model.layout(step);
      reachable[step].assign(nxt.size(), 0);
      for (std::size_t i = 0; i < cur.size(); ++i) {
        if (!reachable[step - 1][i]) continue;
        const bool flag = i >= cur.width();
        const std::int64_t coord = cur.lo + static_cast<std::int64_t>(i % cur.width());
        const auto g = policy->choice(step, coord, flag);
        if (!g || *g >= set.size()) {
          throw Error(ErrorCode::kPolicyGap, "no generator designated at step " +
                                                 std::to_string(step) + ", state " +
                                                 std::to_string(coord) +
                                                 (flag ? " (triggered)" : ""));
        }
        for (const Atom& atom : set.generator(*g).atoms()) {
          const auto [c, f] = model.next(step, coord, flag, atom.coord);
          reachable[step][nxt.index(c, f)] = 1;
        }
      }
    }
  }

  RobustResult result;
  result.state_count = total;

  StateLayout next_layout = model.layout(n);
  std::vector<double> next(next_layout.size());
  for (std::size_t i = 0; i < next.size(); ++i) {
    if (mode == Mode::kPolicy && !reachable[n][i]) continue;
    const bool flag = i >= next_layout.width();
    const std::int64_t coord = next_layout.lo + static_cast<std::int64_t>(i % next_layout.width());
    next[i] = model.terminal(coord, flag);
  }
  if (options.keep_tables) result.tables.push_back({n, next_layout, next});

  std::vector<KernelPolicy::Level> levels(n);
  for (std::size_t step = n; step >= 1; --step) {
    const StateLayout cur_layout = model.layout(step - 1);
    std::vector<double> cur(cur_layout.size(), 0.0);
    std::vector<std::uint32_t> choice(cur_layout.size(), KernelPolicy::kUnset);

    parallel_for(cur_layout.size(), options.threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        if (mode == Mode::kPolicy && !reachable[step - 1][i]) continue;
        const bool flag = i >= cur_layout.width();
        const std::int64_t coord =
            cur_layout.lo + static_cast<std::int64_t>(i % cur_layout.width());
        auto expect = [&](std::size_t g) {
          double sum = 0.0;
          for (const Atom& atom : set.generator(g).atoms()) {
            const auto [c, f] = model.next(step, coord, flag, atom.coord);
            sum += atom.weight * next[next_layout.index(c, f)];
          }
          return sum;
        };
        if (mode == Mode::kPolicy) {
          const std::size_t g = *policy->choice(step, coord, flag);
          cur[i] = expect(g);
          choice[i] = static_cast<std::uint32_t>(g);
          continue;
        }
        double best = expect(0);
        std::uint32_t arg = 0;
        for (std::size_t g = 1; g < set.size(); ++g) {
          const double v = expect(g);
          if (mode == Mode::kMax ? v > best : v < best) {
            best = v;
            arg = static_cast<std::uint32_t>(g);
          }
        }
        cur[i] = best;
        choice[i] = arg;
      }
    });

    levels[step - 1] = {cur_layout, std::move(choice)};
    next = std::move(cur);
    next_layout = cur_layout;
    if (options.keep_tables) result.tables.push_back({step - 1, next_layout, next});
  }
  std::reverse(result.tables.begin(), result.tables.end());

  result.value = next[next_layout.index(0, false)];
  result.policy = KernelPolicy(std::move(levels));
  return result;
}

void require_horizon(std::size_t n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "horizon n must be >= 1");
}

void require_function(const TestFunction& f, const DpOptions& options) {
  if (options.scaling == Scaling::kAverage && !f.bounded()) {
    throw Error(ErrorCode::kUnboundedFunction,
                f.describe() + " is unbounded; use sum scaling for moment computations");
  }
}

}  // namespace

std::string_view to_string(PathEvent::Kind kind) {
  switch (kind) {
    case PathEvent::Kind::kFinalAbsGe: return "FINAL_ABS_GE";
    case PathEvent::Kind::kFinalGt: return "FINAL_GT";
    case PathEvent::Kind::kFinalLt: return "FINAL_LT";
    case PathEvent::Kind::kMaxPartialAbsGe: return "MAX_PARTIAL_ABS_GE";
    case PathEvent::Kind::kMaxIncrementAbsGe: return "MAX_INCREMENT_ABS_GE";
    case PathEvent::Kind::kTailSumAbsGe: return "TAIL_SUM_ABS_GE";
  }
  return "?";
}

std::optional<PathEvent::Kind> parse_event_kind(std::string_view name) {
  for (auto k : {PathEvent::Kind::kFinalAbsGe, PathEvent::Kind::kFinalGt,
                 PathEvent::Kind::kFinalLt, PathEvent::Kind::kMaxPartialAbsGe,
                 PathEvent::Kind::kMaxIncrementAbsGe, PathEvent::Kind::kTailSumAbsGe}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

std::string PathEvent::describe() const {
  std::ostringstream os;
  if (complement) os << "NOT ";
  os << to_string(kind) << '(' << threshold;
  if (kind == Kind::kTailSumAbsGe) os << ", from " << from_index;
  os << ')';
  return os.str();
}

KernelPolicy KernelPolicy::constant(const AmbiguitySet& set, std::size_t n,
                                    std::size_t generator) {
  if (generator >= set.size()) {
    throw Error(ErrorCode::kInvalidArgument, "generator index out of range");
  }
  std::vector<Level> levels;
  levels.reserve(n);
  for (std::size_t step = 1; step <= n; ++step) {
    const auto m = static_cast<std::int64_t>(step - 1);
    StateLayout layout{m * set.min_coord(), m * set.max_coord(), 1};
    levels.push_back({layout, std::vector<std::uint32_t>(
                                  layout.size(), static_cast<std::uint32_t>(generator))});
  }
  return KernelPolicy(std::move(levels));
}

std::optional<std::size_t> KernelPolicy::choice(std::size_t step, std::int64_t coord,
                                                bool flag) const {
  if (step < 1 || step > levels_.size()) return std::nullopt;
  const Level& lv = levels_[step - 1];
  if (!lv.layout.contains(coord, flag)) return std::nullopt;
  const std::uint32_t g = lv.choice[lv.layout.index(coord, flag)];
  if (g == kUnset) return std::nullopt;
  return g;
}

RobustResult robust_value(const AmbiguitySet& set, std::size_t n, const TestFunction& f,
                          const DpOptions& options, Side side) {
  require_horizon(n);
  require_function(f, options);
  return run(set, function_model(set, n, f, options.scaling),
             side == Side::kUpper ? Mode::kMax : Mode::kMin, nullptr, options);
}

RobustResult capacity_result(const AmbiguitySet& set, std::size_t n,
                             const PathEvent& event, Side side, const DpOptions& options) {
  return run(set, event_model(set, n, event),
             side == Side::kUpper ? Mode::kMax : Mode::kMin, nullptr, options);
}

double capacity(const AmbiguitySet& set, std::size_t n, const PathEvent& event, Side side,
                const DpOptions& options) {
  return capacity_result(set, n, event, side, options).value;
}

double policy_value(const AmbiguitySet& set, const KernelPolicy& policy, std::size_t n,
                    const TestFunction& f, const DpOptions& options) {
  require_horizon(n);
  require_function(f, options);
  return run(set, function_model(set, n, f, options.scaling), Mode::kPolicy, &policy,
             options)
      .value;
}

double policy_capacity(const AmbiguitySet& set, const KernelPolicy& policy, std::size_t n,
                       const PathEvent& event, const DpOptions& options) {
  return run(set, event_model(set, n, event), Mode::kPolicy, &policy, options).value;
}

double tail_capacity(const AmbiguitySet& set, double threshold) {
  const std::int64_t bound = ceil_bound(set.lattice(), threshold);
  double best = 0.0;
  for (const auto& g : set.generators()) {
    double mass = 0.0;
    for (const Atom& atom : g.atoms()) {
      if (iabs(atom.coord) >= bound) mass += atom.weight;
    }
    best = std::max(best, mass);
  }
  return best;
}

}  // namespace sublinear
