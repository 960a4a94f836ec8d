#include "sublinear/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "sublinear/error.hpp"

namespace sublinear::oracle {
namespace {

struct IndexedAtom {
  std::uint32_t value_index;
  double weight;
};

// Generators re-expressed over the union of supports.
struct Support {
  std::vector<double> values;
  std::vector<std::vector<IndexedAtom>> generators;

  explicit Support(const AmbiguitySet& set) {
    std::vector<std::int64_t> coords;
    for (const auto& g : set.generators()) {
      for (const Atom& a : g.atoms()) coords.push_back(a.coord);
    }
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    for (std::int64_t c : coords) values.push_back(set.lattice().point(c));
    for (const auto& g : set.generators()) {
      std::vector<IndexedAtom> atoms;
      for (const Atom& a : g.atoms()) {
        const auto it = std::lower_bound(coords.begin(), coords.end(), a.coord);
        atoms.push_back({static_cast<std::uint32_t>(it - coords.begin()), a.weight});
      }
      generators.push_back(std::move(atoms));
    }
  }
};

class Budget {
 public:
  explicit Budget(std::size_t limit) : limit_(limit) {}
  void charge() {
    if (++used_ > limit_) {
      throw Error(ErrorCode::kEnumerationBudgetExceeded,
                  "oracle expansion exceeds " + std::to_string(limit_) +
                      " (budgets.enumeration)");
    }
  }

 private:
  std::size_t limit_;
  std::size_t used_ = 0;
};

using LeafFn = std::function<double(const std::vector<double>&)>;

// Expectimax over the full history tree: choices at distinct histories are
// independent, so the optimum over all selections decomposes node by node.
double expand(const Support& support, std::size_t n, const LeafFn& leaf, Side side,
              Budget& budget, std::vector<double>& path) {
  if (path.size() == n) return leaf(path);
  double best = 0.0;
  for (std::size_t g = 0; g < support.generators.size(); ++g) {
    budget.charge();
    double sum = 0.0;
    for (const IndexedAtom& a : support.generators[g]) {
      path.push_back(support.values[a.value_index]);
      sum += a.weight * expand(support, n, leaf, side, budget, path);
      path.pop_back();
    }
    if (g == 0 || (side == Side::kUpper ? sum > best : sum < best)) best = sum;
  }
  return best;
}

LeafFn function_leaf(const TestFunction& f, std::size_t n, Scaling scaling) {
  const double scale = scaling == Scaling::kAverage ? static_cast<double>(n) : 1.0;
  return [f, scale](const std::vector<double>& path) {
    double s = 0.0;
    for (double x : path) s += x;
    return f(s / scale);
  };
}

void require_inputs(std::size_t n, const TestFunction& f, Scaling scaling) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "horizon n must be >= 1");
  if (scaling == Scaling::kAverage && !f.bounded()) {
    throw Error(ErrorCode::kUnboundedFunction, f.describe() + " is unbounded");
  }
}

}  // namespace

bool event_occurs(const PathEvent& event, const std::vector<double>& increments) {
  const double a = event.threshold;
  bool hit = false;
  double s = 0.0;
  switch (event.kind) {
    case PathEvent::Kind::kFinalAbsGe:
    case PathEvent::Kind::kFinalGt:
    case PathEvent::Kind::kFinalLt:
      for (double x : increments) s += x;
      hit = event.kind == PathEvent::Kind::kFinalAbsGe ? std::fabs(s) >= a
            : event.kind == PathEvent::Kind::kFinalGt  ? s > a
                                                       : s < a;
      break;
    case PathEvent::Kind::kMaxPartialAbsGe:
      for (double x : increments) {
        s += x;
        hit = hit || std::fabs(s) >= a;
      }
      break;
    case PathEvent::Kind::kMaxIncrementAbsGe:
      for (double x : increments) hit = hit || std::fabs(x) >= a;
      break;
    case PathEvent::Kind::kTailSumAbsGe:
      for (std::size_t i = event.from_index; i < increments.size(); ++i) s += increments[i];
      hit = std::fabs(s) >= a;
      break;
  }
  return hit != event.complement;
}

double brute_force_value(const AmbiguitySet& set, std::size_t n, const TestFunction& f,
                         const OracleOptions& options, Side side) {
  require_inputs(n, f, options.scaling);
  const Support support(set);
  Budget budget(options.enumeration_budget);
  std::vector<double> path;
  return expand(support, n, function_leaf(f, n, options.scaling), side, budget, path);
}

double brute_force_capacity(const AmbiguitySet& set, std::size_t n, const PathEvent& event,
                            Side side, const OracleOptions& options) {
  const Support support(set);
  Budget budget(options.enumeration_budget);
  std::vector<double> path;
  const LeafFn leaf = [&event](const std::vector<double>& p) {
    return event_occurs(event, p) ? 1.0 : 0.0;
  };
  return expand(support, n, leaf, side, budget, path);
}

double selection_value(const AmbiguitySet& set, std::size_t n, const TestFunction& f,
                       const KernelSelection& selection, const OracleOptions& options) {
  require_inputs(n, f, options.scaling);
  if (selection.kernels.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "selection must define n kernels");
  }
  const Support support(set);
  const LeafFn leaf = function_leaf(f, n, options.scaling);
  History history;
  std::vector<double> path;
  double total = 0.0;
  std::function<void(double)> walk = [&](double prob) {
    if (path.size() == n) {
      total += prob * leaf(path);
      return;
    }
    const auto& kernel = selection.kernels[path.size()];
    const auto it = kernel.find(history);
    if (it == kernel.end() || it->second >= support.generators.size()) {
      throw Error(ErrorCode::kPolicyGap, "selection has no kernel for a reachable history");
    }
    for (const IndexedAtom& a : support.generators[it->second]) {
      history.push_back(a.value_index);
      path.push_back(support.values[a.value_index]);
      walk(prob * a.weight);
      path.pop_back();
      history.pop_back();
    }
  };
  walk(1.0);
  return total;
}

double enumerate_selections_value(const AmbiguitySet& set, std::size_t n,
                                  const TestFunction& f, const OracleOptions& options) {
  require_inputs(n, f, options.scaling);
  const Support support(set);
  const std::size_t values = support.values.size();
  const std::size_t gens = support.generators.size();

  // Every history of length 0..n-1 over the union support.
  std::vector<History> histories{History{}};
  std::vector<std::size_t> level_begin{0};
  for (std::size_t len = 1; len < n; ++len) {
    level_begin.push_back(histories.size());
    const std::size_t prev_begin = level_begin[len - 1];
    const std::size_t prev_end = histories.size();
    for (std::size_t h = prev_begin; h < prev_end; ++h) {
      for (std::uint32_t v = 0; v < values; ++v) {
        History ext = histories[h];
        ext.push_back(v);
        histories.push_back(std::move(ext));
      }
      if (histories.size() > options.enumeration_budget) break;
    }
    if (histories.size() > options.enumeration_budget) break;
  }

  double count = 1.0;
  for (std::size_t i = 0; i < histories.size() && count <= 1e18; ++i) {
    count *= static_cast<double>(gens);
  }
  if (count > static_cast<double>(options.enumeration_budget)) {
    throw Error(ErrorCode::kEnumerationBudgetExceeded,
                "selection count exceeds " + std::to_string(options.enumeration_budget) +
                    " (budgets.enumeration)");
  }

  std::vector<std::uint32_t> digits(histories.size(), 0);
  KernelSelection selection;
  selection.kernels.resize(n);
  double best = 0.0;
  bool first = true;
  while (true) {
    for (auto& k : selection.kernels) k.clear();
    for (std::size_t h = 0; h < histories.size(); ++h) {
      selection.kernels[histories[h].size()][histories[h]] = digits[h];
    }
    const double v = selection_value(set, n, f, selection, options);
    if (first || v > best) best = v;
    first = false;

    std::size_t pos = 0;
    while (pos < digits.size() && ++digits[pos] == gens) digits[pos++] = 0;
    if (pos == digits.size()) break;
  }
  return best;
}

}  // namespace sublinear::oracle
