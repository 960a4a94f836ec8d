#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "sublinear/test_function.hpp"

namespace sublinear {

inline constexpr double kWeightSumTolerance = 1e-12;

// Lattice with spacing `step`; a coordinate c denotes the point c * step.
struct LatticeSpec {
  double step = 1.0;

  double point(std::int64_t coord) const { return static_cast<double>(coord) * step; }
};

struct Atom {
  std::int64_t coord;  // lattice coordinate
  double weight;
};

// Finite-support probability measure on a lattice. Atoms are strictly
// increasing in coordinate and weights sum to one.
class DiscreteDistribution {
 public:
  DiscreteDistribution() = default;
  DiscreteDistribution(LatticeSpec lattice, std::vector<Atom> atoms)
      : lattice_(lattice), atoms_(std::move(atoms)) {}

  const LatticeSpec& lattice() const noexcept { return lattice_; }
  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  double point(std::size_t i) const { return lattice_.point(atoms_[i].coord); }
  std::int64_t min_coord() const { return atoms_.front().coord; }
  std::int64_t max_coord() const { return atoms_.back().coord; }

 private:
  LatticeSpec lattice_;
  std::vector<Atom> atoms_;
};

// Finitely generated ambiguity set: the convex hull of `generators`. The
// upper expectation of any function over the hull is attained at a generator.
class AmbiguitySet {
 public:
  const LatticeSpec& lattice() const noexcept { return lattice_; }
  const std::vector<DiscreteDistribution>& generators() const noexcept {
    return generators_;
  }
  const DiscreteDistribution& generator(std::size_t i) const { return generators_[i]; }
  std::size_t size() const noexcept { return generators_.size(); }

  std::int64_t min_coord() const noexcept { return min_coord_; }
  std::int64_t max_coord() const noexcept { return max_coord_; }

  std::string describe() const;

 private:
  friend AmbiguitySet make_ambiguity_set(LatticeSpec, std::vector<DiscreteDistribution>);

  LatticeSpec lattice_;
  std::vector<DiscreteDistribution> generators_;
  std::int64_t min_coord_ = 0;
  std::int64_t max_coord_ = 0;
};

// Unvalidated description: a lattice step and, per generator, (point, weight) pairs.
struct RawAmbiguitySet {
  double step = 1.0;
  std::vector<std::vector<std::pair<double, double>>> generators;
};

// Checks and normalizes a raw description: atoms are sorted, duplicate points
// coalesced. Throws Error with NEGATIVE_WEIGHT, WEIGHT_SUM, OFF_LATTICE,
// EMPTY_SET or BAD_LATTICE; messages name the offending generator index.
AmbiguitySet validate_ambiguity_set(const RawAmbiguitySet& raw);

// Assembles an already-checked set. Generators must share `lattice`.
AmbiguitySet make_ambiguity_set(LatticeSpec lattice,
                                std::vector<DiscreteDistribution> generators);

// Snaps a real point to its lattice coordinate; OFF_LATTICE when not within
// 1e-9 (relative) of a lattice point.
std::int64_t lattice_coordinate(const LatticeSpec& lattice, double point);

struct SublinearValue {
  double upper;  // E[phi(X)]
  double lower;  // -E[-phi(X)]
  std::size_t argmax_upper;
  std::size_t argmin_lower;
};

// Sum of w_j f(x_j) in increasing point order. UNBOUNDED_EVAL when an
// evaluation is not finite.
double linear_expect(const DiscreteDistribution& dist, const TestFunction& f);

// Max and min of linear_expect over generators, lowest index on ties.
SublinearValue sublinear_expect(const AmbiguitySet& set, const TestFunction& f);

// Convenience constructors for common generators on the unit lattice.
DiscreteDistribution point_mass(std::int64_t coord, LatticeSpec lattice = {});
DiscreteDistribution make_distribution(
    std::vector<std::pair<std::int64_t, double>> atoms, LatticeSpec lattice = {});

}  // namespace sublinear
