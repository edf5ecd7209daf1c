#pragma once

// Catalog of closed-form scalar functions: forcing terms a(t), kernels
// f(t,s,x) and majorants m(t,s). Every kernel family knows its own majorant
// and its monotonicity, so the hypotheses can be audited in closed form.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace uqie {

class Kernel;
struct ManufacturedForcing;

// ---------------------------------------------------------------- t -> R

namespace forcing {

struct Constant {
  double c = 0.0;
  bool operator==(const Constant&) const = default;
};

// c0 + c1 t
struct Affine {
  double c0 = 0.0;
  double c1 = 0.0;
  bool operator==(const Affine&) const = default;
};

// c0 + c1 t + c2 t^2
struct Quadratic {
  double c0 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  bool operator==(const Quadratic&) const = default;
};

// c exp(rate t)
struct Exponential {
  double c = 0.0;
  double rate = 0.0;
  bool operator==(const Exponential&) const = default;
};

// c0 + c1 sin(omega t)
struct Sine {
  double c0 = 0.0;
  double c1 = 0.0;
  double omega = 1.0;
  bool operator==(const Sine&) const = default;
};

struct Manufactured {
  std::shared_ptr<const ManufacturedForcing> data;
  bool operator==(const Manufactured& other) const;
};

}  // namespace forcing

class TimeFunction {
 public:
  using Family = std::variant<forcing::Constant, forcing::Affine, forcing::Quadratic,
                              forcing::Exponential, forcing::Sine, forcing::Manufactured>;

  TimeFunction() : family_(forcing::Constant{0.0}) {}
  explicit TimeFunction(Family family) : family_(std::move(family)) {}

  static TimeFunction constant(double c) { return TimeFunction(forcing::Constant{c}); }
  static TimeFunction affine(double c0, double c1) { return TimeFunction(forcing::Affine{c0, c1}); }
  static TimeFunction quadratic(double c0, double c1, double c2) {
    return TimeFunction(forcing::Quadratic{c0, c1, c2});
  }
  static TimeFunction exponential(double c, double rate) {
    return TimeFunction(forcing::Exponential{c, rate});
  }
  static TimeFunction sine(double c0, double c1, double omega) {
    return TimeFunction(forcing::Sine{c0, c1, omega});
  }

  // Unchecked evaluation.
  double operator()(double t) const;

  const Family& family() const { return family_; }
  std::string_view family_name() const;
  bool is_manufactured() const { return std::holds_alternative<forcing::Manufactured>(family_); }

  bool operator==(const TimeFunction& other) const { return family_ == other.family_; }

 private:
  Family family_;
};

// ---------------------------------------------------------------- (t,s,x) -> R+

namespace kernel {

struct Zero {
  bool operator==(const Zero&) const = default;
};

// c1 + c2 x. The cap is the x_max used for the majorant c1 + c2 cap; an empty
// cap means "auto" and is resolved from the bounds of the problem.
struct AffineState {
  double c1 = 0.0;
  double c2 = 0.0;
  std::optional<double> cap;
  bool operator==(const AffineState&) const = default;
};

// w0 exp(-w1 s) (x + mu) / (x + kappa). Independent of t. Nondecreasing in x
// iff mu <= kappa; bounded by w0 exp(-w1 s) max(1, mu / kappa).
struct ConstantInT {
  double w0 = 0.0;
  double w1 = 0.0;
  double kappa = 1.0;
  double mu = 0.0;
  bool operator==(const ConstantInT&) const = default;
};

// k0 (1 + k1 t) exp(-k2 s) (c1 + c2 x), cap as for AffineState.
struct SeparableProduct {
  double k0 = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
  double c1 = 0.0;
  double c2 = 0.0;
  std::optional<double> cap;
  bool operator==(const SeparableProduct&) const = default;
};

// base + eps; for eps < 0 the value is clamped at 0.
struct Perturbed {
  std::shared_ptr<const Kernel> base;
  double eps = 0.0;
  bool operator==(const Perturbed& other) const;
};

}  // namespace kernel

class Kernel {
 public:
  using Family = std::variant<kernel::Zero, kernel::AffineState, kernel::ConstantInT,
                              kernel::SeparableProduct, kernel::Perturbed>;

  Kernel() : family_(kernel::Zero{}) {}
  // Throws DomainError on parameters outside the family's admissible range.
  explicit Kernel(Family family);

  static Kernel zero() { return Kernel(kernel::Zero{}); }
  static Kernel affine_state(double c1, double c2, std::optional<double> cap = std::nullopt) {
    return Kernel(kernel::AffineState{c1, c2, cap});
  }
  static Kernel constant_in_t(double w0, double w1, double kappa, double mu = 0.0) {
    return Kernel(kernel::ConstantInT{w0, w1, kappa, mu});
  }
  static Kernel separable(double k0, double k1, double k2, double c1, double c2,
                          std::optional<double> cap = std::nullopt) {
    return Kernel(kernel::SeparableProduct{k0, k1, k2, c1, c2, cap});
  }
  static Kernel perturbed(const Kernel& base, double eps);

  // Unchecked evaluation; see eval_kernel for the checked form.
  double operator()(double t, double s, double x) const;

  // Closed-form x-free bound m(t,s) >= |f(t,s,x)| for 0 < x <= cap.
  double majorant(double t, double s) const;

  // sup over 0 < x <= cap of |f(t2,s,x) - f(t1,s,x)|.
  double t_variation(double t1, double t2, double s) const;

  bool nondecreasing_in_x() const;
  bool nonincreasing_in_t() const;
  bool has_auto_cap() const;
  // Smallest declared cap of an x-dependent family; +inf when there is none.
  double smallest_cap() const;
  // Copy with every auto cap replaced by `cap`.
  Kernel with_auto_cap(double cap) const;
  // Smallest value of 1 + k1 t over [0, T]; +inf when the family has no t factor.
  double min_t_factor(double horizon) const;

  const Family& family() const { return family_; }
  std::string_view family_name() const;

  bool operator==(const Kernel& other) const { return family_ == other.family_; }

 private:
  Family family_;
};

// ---------------------------------------------------------------- (t,s) -> R+

namespace majorant {

// Use the closed form the kernel declares.
struct Declared {
  bool operator==(const Declared&) const = default;
};

struct Constant {
  double c = 0.0;
  bool operator==(const Constant&) const = default;
};

}  // namespace majorant

class Majorant {
 public:
  using Family = std::variant<majorant::Declared, majorant::Constant>;

  Majorant() = default;
  explicit Majorant(Family family) : family_(family) {}
  static Majorant declared() { return Majorant(majorant::Declared{}); }
  static Majorant constant(double c) { return Majorant(majorant::Constant{c}); }

  double operator()(const Kernel& k, double t, double s) const;

  const Family& family() const { return family_; }
  bool is_declared() const { return std::holds_alternative<majorant::Declared>(family_); }

  bool operator==(const Majorant&) const = default;

 private:
  Family family_ = majorant::Declared{};
};

// Data behind forcing::Manufactured: a(t) = x*(t) - I1(t) I2(t), where I_i is
// a composite trapezoid with oracle_n panels over [0, t].
struct ManufacturedForcing {
  TimeFunction x_star;
  Kernel f1;
  Kernel f2;
  int oracle_n = 4096;

  double product_at(double t) const;
  bool operator==(const ManufacturedForcing&) const = default;
};

}  // namespace uqie
