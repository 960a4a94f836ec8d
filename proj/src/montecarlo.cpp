#include "sublinear/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "sublinear/error.hpp"

namespace sublinear {
namespace {

void check_config(const SimConfig& c) {
  if (c.n < 1) throw Error(ErrorCode::kInvalidArgument, "horizon n must be >= 1");
  if (c.paths < 1) throw Error(ErrorCode::kInvalidArgument, "paths must be >= 1");
  if (c.policy.horizon() < c.n) {
    throw Error(ErrorCode::kPolicyGap, "policy horizon " + std::to_string(c.policy.horizon()) +
                                           " < n = " + std::to_string(c.n));
  }
}

// Uniform in [0, 1) from the top 53 bits.
double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Terminal sum S_n of path `index`. The engine is seeded from (seed, index)
// alone, so a path does not depend on which thread draws it.
double draw_sum(const SimConfig& c, std::size_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(c.seed), static_cast<std::uint32_t>(c.seed >> 32),
                    static_cast<std::uint32_t>(index),
                    static_cast<std::uint32_t>(static_cast<std::uint64_t>(index) >> 32)};
  std::mt19937_64 rng(seq);
  std::int64_t coord = 0;
  for (std::size_t step = 1; step <= c.n; ++step) {
    const auto g = c.policy.choice(step, coord);
    if (!g) {
      throw Error(ErrorCode::kPolicyGap, "no kernel at step " + std::to_string(step) +
                                             ", coordinate " + std::to_string(coord));
    }
    const auto& atoms = c.set.generator(*g).atoms();
    const double u = uniform01(rng);
    double acc = 0.0;
    std::size_t pick = atoms.size() - 1;
    for (std::size_t j = 0; j < atoms.size(); ++j) {
      acc += atoms[j].weight;
      if (u < acc) {
        pick = j;
        break;
      }
    }
    coord += atoms[pick].coord;
  }
  return c.set.lattice().point(coord);
}

// Per-path terminal averages S_n / n, in path order.
std::vector<double> draw_averages(const SimConfig& c) {
  check_config(c);
  std::vector<double> out(c.paths);
  const double nd = static_cast<double>(c.n);
  const unsigned workers =
      std::max(1u, std::min<unsigned>(c.threads, static_cast<unsigned>(c.paths)));
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w; i < c.paths; i += workers) out[i] = draw_sum(c, i) / nd;
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace

SimResult simulate(const SimConfig& config, const TestFunction& f) {
  const std::vector<double> avg = draw_averages(config);
  const double m = static_cast<double>(avg.size());
  // Deviations from the first sample, so constant samples average exactly.
  const double pivot = f(avg.front());
  double sum = 0.0;
  for (double a : avg) sum += f(a) - pivot;
  const double shift = sum / m;
  double ss = 0.0;
  for (double a : avg) {
    const double d = f(a) - pivot - shift;
    ss += d * d;
  }
  SimResult r;
  r.estimate = pivot + shift;
  r.paths = avg.size();
  r.stderr_ = avg.size() > 1 ? std::sqrt(ss / (m - 1.0)) / std::sqrt(m) : 0.0;
  if (!std::isfinite(r.estimate) || !std::isfinite(r.stderr_)) {
    throw Error(ErrorCode::kUnboundedEval, f.describe() + " produced a non-finite sample");
  }
  return r;
}

double deviation_frequency(const SimConfig& config, double mu, double eps) {
  const std::vector<double> avg = draw_averages(config);
  std::size_t hits = 0;
  for (double a : avg) {
    if (std::fabs(a - mu) > eps) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(avg.size());
}

}  // namespace sublinear
