#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "sublinear/ambiguity.hpp"
#include "sublinear/lattice_dp.hpp"
#include "sublinear/test_function.hpp"

namespace support {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng_); }
  double real(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(integer(0, static_cast<int>(v.size()) - 1))];
  }

 private:
  std::mt19937_64 eng_;
};

// Weights are multiples of 1/16, so they sum to one exactly.
inline sublinear::DiscreteDistribution random_distribution(Rng& rng, int max_atoms, int span) {
  const int k = rng.integer(1, max_atoms);
  std::set<int> coords;
  while (static_cast<int>(coords.size()) < k) coords.insert(rng.integer(-span, span));
  std::vector<int> parts(coords.size(), 1);
  for (int left = 16 - static_cast<int>(coords.size()); left > 0; --left) {
    ++parts[static_cast<std::size_t>(rng.integer(0, static_cast<int>(parts.size()) - 1))];
  }
  std::vector<std::pair<std::int64_t, double>> atoms;
  std::size_t i = 0;
  for (int c : coords) atoms.emplace_back(c, parts[i++] / 16.0);
  return sublinear::make_distribution(std::move(atoms));
}

inline sublinear::AmbiguitySet random_set(Rng& rng, int max_generators = 3, int max_atoms = 3,
                                          int span = 3) {
  std::vector<sublinear::DiscreteDistribution> gens;
  const int g = rng.integer(1, max_generators);
  for (int i = 0; i < g; ++i) gens.push_back(random_distribution(rng, max_atoms, span));
  return sublinear::make_ambiguity_set(sublinear::LatticeSpec{}, std::move(gens));
}

// Piecewise-linear function with 2..max_points breakpoints in [lo, hi].
inline sublinear::TestFunction random_pl(Rng& rng, double lo, double hi, int max_points = 4) {
  const int k = rng.integer(2, max_points);
  std::set<double> xs;
  while (static_cast<int>(xs.size()) < k) xs.insert(rng.real(lo, hi));
  std::vector<sublinear::Breakpoint> bps;
  for (double x : xs) bps.push_back({x, rng.real(-1.0, 1.0)});
  return sublinear::TestFunction::piecewise_linear(std::move(bps));
}

// Event of any grammar kind; thresholds include non-lattice values.
inline sublinear::PathEvent random_event(Rng& rng, std::size_t n, double scale) {
  using K = sublinear::PathEvent::Kind;
  static const std::vector<K> kinds{K::kFinalAbsGe,      K::kFinalGt,
                                    K::kFinalLt,         K::kMaxPartialAbsGe,
                                    K::kMaxIncrementAbsGe, K::kTailSumAbsGe};
  sublinear::PathEvent e;
  e.kind = rng.pick(kinds);
  e.threshold = std::round(rng.real(-scale, scale) * 2.0) / 2.0;
  if (e.kind == K::kFinalAbsGe || e.kind == K::kMaxPartialAbsGe ||
      e.kind == K::kMaxIncrementAbsGe || e.kind == K::kTailSumAbsGe) {
    e.threshold = std::fabs(e.threshold);
  }
  if (e.kind == K::kTailSumAbsGe) e.from_index = static_cast<std::size_t>(rng.integer(0, static_cast<int>(n)));
  e.complement = rng.integer(0, 3) == 0;
  return e;
}

}  // namespace support
