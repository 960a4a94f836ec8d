#include "sublinear/family.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "sublinear/error.hpp"

namespace sublinear {

double Rational::times(std::int64_t n) const {
  const auto scaled = static_cast<__int128>(n) * num;
  return static_cast<double>(static_cast<long double>(scaled) / static_cast<long double>(den));
}

ParametricFamily::ParametricFamily(Name name, std::size_t truncation)
    : name_(name), truncation_(truncation) {
  if (truncation < 1 || truncation > kMaxTruncation) {
    throw Error(ErrorCode::kInvalidArgument,
                "family.truncation must be in [1, " + std::to_string(kMaxTruncation) + "]");
  }
}

RationalDistribution ParametricFamily::exact_generator(std::size_t index) const {
  if (index < 1 || index > truncation_) {
    throw Error(ErrorCode::kInvalidArgument, "family index out of range");
  }
  const auto n = static_cast<std::int64_t>(index);
  RationalDistribution d;
  if (name_ == Name::kExm3) {
    if (n == 1) {
      d.atoms.push_back({1, 1});
    } else {
      d.denominator = n * n * n;
      d.atoms.push_back({1, d.denominator - n});
      for (std::int64_t k = 1; k <= n; ++k) d.atoms.push_back({k * n, 1});
    }
  } else {
    d.denominator = n;
    if (n > 1) d.atoms.push_back({0, n - 1});
    d.atoms.push_back({n, 1});
  }
  std::int64_t total = 0;
  for (const auto& a : d.atoms) total += a.numerator;
  if (total != d.denominator) {
    throw Error(ErrorCode::kWeightSum, describe() + ": index " + std::to_string(index) +
                                           " weights do not sum to one");
  }
  return d;
}

DiscreteDistribution ParametricFamily::generator(std::size_t index) const {
  const RationalDistribution exact = exact_generator(index);
  std::vector<Atom> atoms;
  atoms.reserve(exact.atoms.size());
  for (const auto& a : exact.atoms) {
    atoms.push_back({a.point, static_cast<double>(a.numerator) /
                                  static_cast<double>(exact.denominator)});
  }
  return DiscreteDistribution(LatticeSpec{1.0}, std::move(atoms));
}

double ParametricFamily::expect(std::size_t index, const TestFunction& f) const {
  // Sums numerator * f(x) and divides once by the common denominator.
  double sum = 0.0;
  double den = 0.0;
  const auto tail_from = f.constant_right_tail_from();
  if (name_ != Name::kExm3 || index < 2 || !tail_from) {
    const RationalDistribution d = exact_generator(index);
    for (const RationalAtom& a : d.atoms) {
      sum += static_cast<double>(a.numerator) * f(static_cast<double>(a.point));
    }
    den = static_cast<double>(d.denominator);
  } else {
    const auto n = static_cast<std::int64_t>(index);
    // Atoms k*n with k*n < t are evaluated one by one; the rest share f(t).
    const double t = *tail_from;
    std::int64_t explicit_count = 0;
    if (t > static_cast<double>(n)) {
      explicit_count = std::min<std::int64_t>(
          n, static_cast<std::int64_t>(std::ceil(t / static_cast<double>(n))) - 1);
      while (explicit_count > 0 && static_cast<double>(explicit_count * n) >= t) {
        --explicit_count;
      }
    }
    sum = static_cast<double>(n * n * n - n) * f(1.0);
    for (std::int64_t k = 1; k <= explicit_count; ++k) sum += f(static_cast<double>(k * n));
    sum += static_cast<double>(n - explicit_count) * f(t);
    den = static_cast<double>(n * n * n);
  }
  if (!std::isfinite(sum)) {
    throw Error(ErrorCode::kUnboundedEval,
                f.describe() + " is not finite under generator " + std::to_string(index));
  }
  return sum / den;
}

Rational ParametricFamily::tail_mass(std::size_t index, double a) const {
  if (index < 1 || index > truncation_) {
    throw Error(ErrorCode::kInvalidArgument, "family index out of range");
  }
  const auto n = static_cast<std::int64_t>(index);
  if (name_ == Name::kHeavy) {
    std::int64_t mass = 0;
    if (n > 1 && a <= 0.0) mass += n - 1;
    if (static_cast<double>(n) >= a) mass += 1;
    return {mass, n};
  }
  if (n == 1) return {1.0 >= a ? 1 : 0, 1};
  const std::int64_t den = n * n * n;
  std::int64_t mass = 1.0 >= a ? den - n : 0;
  // Atoms k*n, k = 1..n, with k*n >= a.
  std::int64_t first_k = 1;
  if (a > static_cast<double>(n)) {
    first_k = static_cast<std::int64_t>(std::ceil(a / static_cast<double>(n)));
    while (first_k > 1 && static_cast<double>((first_k - 1) * n) >= a) --first_k;
    while (static_cast<double>(first_k * n) < a) ++first_k;
  }
  if (first_k <= n) mass += n - first_k + 1;
  return {mass, den};
}

double ParametricFamily::excluded_tail_bound(double a) const {
  const double first = static_cast<double>(truncation_) + 1.0;
  if (name_ == Name::kHeavy) {
    if (a <= 0.0) return 1.0;
    return 1.0 / std::max(first, std::ceil(a));
  }
  if (a <= 1.0) return 1.0;
  // Each excluded index j carries at most n * j^-3 = j^-2 off the atom at 1.
  return 1.0 / (first * first);
}

std::string ParametricFamily::describe() const {
  std::ostringstream os;
  os << to_string(name_) << "(truncation=" << truncation_ << ')';
  return os.str();
}

std::string_view to_string(ParametricFamily::Name name) {
  return name == ParametricFamily::Name::kExm3 ? "EXM3" : "HEAVY";
}

std::optional<ParametricFamily::Name> parse_family_name(std::string_view name) {
  if (name == "EXM3" || name == "exm3") return ParametricFamily::Name::kExm3;
  if (name == "HEAVY" || name == "heavy") return ParametricFamily::Name::kHeavy;
  return std::nullopt;
}

FamilyExpectation family_expect(const ParametricFamily& family, const TestFunction& f) {
  constexpr std::size_t kWindow = 10;
  FamilyExpectation out;
  std::size_t trailing_increases = 0;
  for (std::size_t i = 1; i <= family.truncation(); ++i) {
    const double e = family.expect(i, f);
    if (i == 1 || e > out.value) {
      out.value = e;
      out.argmax = i;
      ++trailing_increases;
    } else {
      trailing_increases = 0;
    }
    if (i == 1 || e < out.lower) {
      out.lower = e;
      out.argmin = i;
    }
  }
  if (family.truncation() >= kWindow && trailing_increases >= kWindow) {
    throw Error(ErrorCode::kTruncationTooSmall,
                family.describe() + ": sup of " + f.describe() +
                    " still increasing at the truncation boundary");
  }

  std::ostringstream note;
  if (family.name() == ParametricFamily::Name::kHeavy &&
      f.kind() == TestFunction::Kind::kIdentity) {
    note << "every HEAVY generator has mean 1; the sup is index-independent";
  } else if (family.name() == ParametricFamily::Name::kExm3 &&
             f.kind() == TestFunction::Kind::kExcessAbs) {
    note << "EXM3 maximizer for (|x|-lambda)^+ sits near index 4*lambda = "
         << 4.0 * f.param(0) << "; observed argmax " << out.argmax;
  } else {
    note << "max over indices 1.." << family.truncation() << " attained at " << out.argmax;
  }
  out.tail_note = note.str();
  return out;
}

Rational family_tail_capacity(const ParametricFamily& family, double a) {
  Rational best{0, 1};
  for (std::size_t i = 1; i <= family.truncation(); ++i) {
    const Rational r = family.tail_mass(i, a);
    if (best < r) best = r;
  }
  return best;
}

}  // namespace sublinear
