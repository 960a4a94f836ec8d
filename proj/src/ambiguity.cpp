#include "sublinear/ambiguity.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "sublinear/error.hpp"

namespace sublinear {
namespace {

// Sorts, coalesces and checks one generator given in lattice coordinates.
std::vector<Atom> normalize_atoms(const std::vector<std::pair<std::int64_t, double>>& raw,
                                  std::size_t index) {
  const std::string where = "generators[" + std::to_string(index) + "]";
  std::map<std::int64_t, double> merged;
  for (const auto& [coord, weight] : raw) {
    if (!std::isfinite(weight)) {
      throw Error(ErrorCode::kWeightSum, where + ": weight is not finite");
    }
    if (weight < 0.0) {
      throw Error(ErrorCode::kNegativeWeight,
                  where + ": negative weight " + std::to_string(weight));
    }
    merged[coord] += weight;
  }
  if (merged.empty()) {
    throw Error(ErrorCode::kWeightSum, where + ": no atoms");
  }
  double total = 0.0;
  std::vector<Atom> atoms;
  atoms.reserve(merged.size());
  for (const auto& [coord, weight] : merged) {
    total += weight;
    atoms.push_back({coord, weight});
  }
  if (std::fabs(total - 1.0) > kWeightSumTolerance) {
    std::ostringstream os;
    os.precision(15);
    os << where << ": weights sum to " << total << ", expected 1";
    throw Error(ErrorCode::kWeightSum, os.str());
  }
  return atoms;
}

}  // namespace

std::int64_t lattice_coordinate(const LatticeSpec& lattice, double point) {
  if (!std::isfinite(point)) {
    throw Error(ErrorCode::kOffLattice, "point is not finite");
  }
  const double q = point / lattice.step;
  const double r = std::round(q);
  if (std::fabs(q - r) > 1e-9 * std::max(1.0, std::fabs(q)) || std::fabs(r) > 9e15) {
    std::ostringstream os;
    os.precision(15);
    os << "point " << point << " is not a multiple of step " << lattice.step;
    throw Error(ErrorCode::kOffLattice, os.str());
  }
  return static_cast<std::int64_t>(r);
}

AmbiguitySet make_ambiguity_set(LatticeSpec lattice,
                                std::vector<DiscreteDistribution> generators) {
  if (generators.empty()) {
    throw Error(ErrorCode::kEmptySet, "ambiguity set has no generators");
  }
  AmbiguitySet set;
  set.lattice_ = lattice;
  set.min_coord_ = generators.front().min_coord();
  set.max_coord_ = generators.front().max_coord();
  for (const auto& g : generators) {
    set.min_coord_ = std::min(set.min_coord_, g.min_coord());
    set.max_coord_ = std::max(set.max_coord_, g.max_coord());
  }
  set.generators_ = std::move(generators);
  return set;
}

AmbiguitySet validate_ambiguity_set(const RawAmbiguitySet& raw) {
  if (!std::isfinite(raw.step) || !(raw.step > 0.0)) {
    throw Error(ErrorCode::kBadLattice, "lattice.step must be positive");
  }
  if (raw.generators.empty()) {
    throw Error(ErrorCode::kEmptySet, "generators: ambiguity set has no generators");
  }
  const LatticeSpec lattice{raw.step};
  std::vector<DiscreteDistribution> generators;
  generators.reserve(raw.generators.size());
  for (std::size_t i = 0; i < raw.generators.size(); ++i) {
    std::vector<std::pair<std::int64_t, double>> coords;
    coords.reserve(raw.generators[i].size());
    for (const auto& [point, weight] : raw.generators[i]) {
      try {
        coords.emplace_back(lattice_coordinate(lattice, point), weight);
      } catch (const Error& e) {
        throw Error(e.code(), "generators[" + std::to_string(i) + "]: " + e.detail());
      }
    }
    generators.emplace_back(lattice, normalize_atoms(coords, i));
  }
  return make_ambiguity_set(lattice, std::move(generators));
}

DiscreteDistribution point_mass(std::int64_t coord, LatticeSpec lattice) {
  return DiscreteDistribution(lattice, {{coord, 1.0}});
}

DiscreteDistribution make_distribution(std::vector<std::pair<std::int64_t, double>> atoms,
                                       LatticeSpec lattice) {
  return DiscreteDistribution(lattice, normalize_atoms(atoms, 0));
}

std::string AmbiguitySet::describe() const {
  std::ostringstream os;
  os << "step=" << lattice_.step << " {";
  for (std::size_t g = 0; g < generators_.size(); ++g) {
    if (g) os << "; ";
    const auto& d = generators_[g];
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (j) os << ' ';
      os << d.point(j) << ':' << d.atoms()[j].weight;
    }
  }
  os << '}';
  return os.str();
}

double linear_expect(const DiscreteDistribution& dist, const TestFunction& f) {
  double sum = 0.0;
  for (std::size_t j = 0; j < dist.size(); ++j) {
    const double value = f(dist.point(j));
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::kUnboundedEval,
                  f.describe() + " is not finite at " + std::to_string(dist.point(j)));
    }
    sum += dist.atoms()[j].weight * value;
  }
  return sum;
}

SublinearValue sublinear_expect(const AmbiguitySet& set, const TestFunction& f) {
  SublinearValue out{0.0, 0.0, 0, 0};
  for (std::size_t g = 0; g < set.size(); ++g) {
    const double e = linear_expect(set.generator(g), f);
    if (g == 0 || e > out.upper) {
      out.upper = e;
      out.argmax_upper = g;
    }
    if (g == 0 || e < out.lower) {
      out.lower = e;
      out.argmin_lower = g;
    }
  }
  return out;
}

}  // namespace sublinear
