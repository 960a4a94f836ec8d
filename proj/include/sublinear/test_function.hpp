#pragma once

#include <optional>
#include <string>
#include <vector>

namespace sublinear {

// Lipschitz surrogate for n * 1{|x| >= n}:
//   psi_n(x) = sup_y { n 1{|y| >= n} - n |y - x| } = n min(1, max(0, |x| - (n - 1))).
double psi(int n, double x);

struct Breakpoint {
  double x;
  double value;
};

// A scalar function phi applied to the (normalized) partial sum. Piecewise
// linear functions extend as constants beyond their first and last
// breakpoints, so they are bounded. Builtins cover the truncations and
// moment functions used by the law-of-large-numbers machinery.
class TestFunction {
 public:
  enum class Kind {
    kPiecewiseLinear,
    kAbs,            // |x|
    kSquare,         // x^2
    kIdentity,       // x
    kClamp,          // (-n v x) ^ n
    kClampedSquare,  // ((-n v x) ^ n)^2
    kTent,           // max(0, 1 - |x - center| / halfwidth)
    kPsi,            // psi_n
    kExcessAbs,      // (|x| - lambda)^+
  };

  static TestFunction piecewise_linear(std::vector<Breakpoint> breakpoints);
  static TestFunction constant(double c);
  static TestFunction abs();
  static TestFunction square();
  static TestFunction identity();
  static TestFunction clamp(double n);
  static TestFunction clamped_square(double n);
  static TestFunction tent(double center, double halfwidth);
  static TestFunction psi(int n);
  static TestFunction excess_abs(double lambda);

  double operator()(double x) const;

  Kind kind() const noexcept { return kind_; }
  bool bounded() const noexcept;
  bool is_piecewise_linear() const noexcept {
    return kind_ == Kind::kPiecewiseLinear;
  }

  // Points where the function may change slope; together with interval
  // endpoints they locate the maximum of the function on any interval.
  std::vector<double> kinks() const;

  // Point t beyond which the function is constant on [t, inf), if any.
  std::optional<double> constant_right_tail_from() const;

  const std::vector<Breakpoint>& breakpoints() const noexcept {
    return breakpoints_;
  }
  double param(int i) const noexcept { return params_[i]; }

  std::string describe() const;

  // Exact arithmetic on piecewise-linear functions (InvalidArgument otherwise).
  TestFunction negated() const;
  TestFunction scaled(double factor) const;
  friend TestFunction operator+(const TestFunction& f, const TestFunction& g);

 private:
  TestFunction(Kind kind, double p0 = 0.0, double p1 = 0.0)
      : kind_(kind), params_{p0, p1} {}

  Kind kind_;
  double params_[2];
  std::vector<Breakpoint> breakpoints_;
};

}  // namespace sublinear
