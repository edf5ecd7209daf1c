#include "uqie/functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "uqie/error.hpp"

namespace uqie {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double cap_or_inf(const std::optional<double>& cap) { return cap ? *cap : kInf; }

// c1 + c2 * cap without producing NaN for c2 == 0 and an infinite cap.
double affine_at_cap(double c1, double c2, const std::optional<double>& cap) {
  if (c2 == 0.0) return c1;
  return c1 + c2 * cap_or_inf(cap);
}

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

void check_cap(const std::optional<double>& cap) {
  if (cap) require(std::isfinite(*cap) && *cap > 0.0, "kernel cap must be finite and positive");
}

}  // namespace

bool forcing::Manufactured::operator==(const Manufactured& other) const {
  if (data == other.data) return true;
  if (!data || !other.data) return false;
  return *data == *other.data;
}

bool kernel::Perturbed::operator==(const Perturbed& other) const {
  if (eps != other.eps) return false;
  if (base == other.base) return true;
  if (!base || !other.base) return false;
  return *base == *other.base;
}

double TimeFunction::operator()(double t) const {
  return std::visit(
      overloaded{
          [](const forcing::Constant& f) { return f.c; },
          [t](const forcing::Affine& f) { return f.c0 + f.c1 * t; },
          [t](const forcing::Quadratic& f) { return f.c0 + (f.c1 + f.c2 * t) * t; },
          [t](const forcing::Exponential& f) { return f.c * std::exp(f.rate * t); },
          [t](const forcing::Sine& f) { return f.c0 + f.c1 * std::sin(f.omega * t); },
          [t](const forcing::Manufactured& f) {
            return f.data->x_star(t) - f.data->product_at(t);
          },
      },
      family_);
}

std::string_view TimeFunction::family_name() const {
  return std::visit(overloaded{
                        [](const forcing::Constant&) { return "constant"; },
                        [](const forcing::Affine&) { return "affine"; },
                        [](const forcing::Quadratic&) { return "quadratic"; },
                        [](const forcing::Exponential&) { return "exponential"; },
                        [](const forcing::Sine&) { return "sine"; },
                        [](const forcing::Manufactured&) { return "manufactured"; },
                    },
                    family_);
}

Kernel::Kernel(Family family) : family_(std::move(family)) {
  std::visit(overloaded{
                 [](const kernel::Zero&) {},
                 [](const kernel::AffineState& k) {
                   require(k.c1 >= 0.0 && k.c2 >= 0.0, "affine_state needs c1 >= 0 and c2 >= 0");
                   check_cap(k.cap);
                 },
                 [](const kernel::ConstantInT& k) {
                   require(k.w0 >= 0.0, "constant_in_t needs w0 >= 0");
                   require(std::isfinite(k.w1), "constant_in_t needs finite w1");
                   require(k.kappa > 0.0 && k.mu >= 0.0, "constant_in_t needs kappa > 0, mu >= 0");
                 },
                 [](const kernel::SeparableProduct& k) {
                   require(k.k0 >= 0.0, "separable needs k0 >= 0");
                   require(std::isfinite(k.k1) && std::isfinite(k.k2), "separable needs finite k1, k2");
                   require(k.c1 >= 0.0 && k.c2 >= 0.0, "separable needs c1 >= 0 and c2 >= 0");
                   check_cap(k.cap);
                 },
                 [](const kernel::Perturbed& k) {
                   require(k.base != nullptr, "perturbed kernel needs a base");
                   require(std::isfinite(k.eps), "perturbation must be finite");
                 },
             },
             family_);
}

Kernel Kernel::perturbed(const Kernel& base, double eps) {
  return Kernel(kernel::Perturbed{std::make_shared<const Kernel>(base), eps});
}

double Kernel::operator()(double t, double s, double x) const {
  return std::visit(
      overloaded{
          [](const kernel::Zero&) { return 0.0; },
          [x](const kernel::AffineState& k) { return k.c1 + k.c2 * x; },
          [s, x](const kernel::ConstantInT& k) {
            return k.w0 * std::exp(-k.w1 * s) * (x + k.mu) / (x + k.kappa);
          },
          [t, s, x](const kernel::SeparableProduct& k) {
            return k.k0 * (1.0 + k.k1 * t) * std::exp(-k.k2 * s) * (k.c1 + k.c2 * x);
          },
          [t, s, x](const kernel::Perturbed& k) {
            const double v = (*k.base)(t, s, x) + k.eps;
            return k.eps < 0.0 ? std::max(v, 0.0) : v;
          },
      },
      family_);
}

double Kernel::majorant(double t, double s) const {
  return std::visit(
      overloaded{
          [](const kernel::Zero&) { return 0.0; },
          [](const kernel::AffineState& k) { return affine_at_cap(k.c1, k.c2, k.cap); },
          [s](const kernel::ConstantInT& k) {
            return k.w0 * std::exp(-k.w1 * s) * std::max(1.0, k.mu / k.kappa);
          },
          [t, s](const kernel::SeparableProduct& k) {
            const double w = k.k0 * std::abs(1.0 + k.k1 * t) * std::exp(-k.k2 * s);
            return w == 0.0 ? 0.0 : w * affine_at_cap(k.c1, k.c2, k.cap);
          },
          [t, s](const kernel::Perturbed& k) {
            const double m = k.base->majorant(t, s);
            return k.eps > 0.0 ? m + k.eps : m;
          },
      },
      family_);
}

double Kernel::t_variation(double t1, double t2, double s) const {
  return std::visit(
      overloaded{
          [](const kernel::Zero&) { return 0.0; },
          [](const kernel::AffineState&) { return 0.0; },
          [](const kernel::ConstantInT&) { return 0.0; },
          [t1, t2, s](const kernel::SeparableProduct& k) {
            const double dk = k.k0 * std::abs(k.k1) * std::abs(t2 - t1) * std::exp(-k.k2 * s);
            return dk == 0.0 ? 0.0 : dk * affine_at_cap(k.c1, k.c2, k.cap);
          },
          [t1, t2, s](const kernel::Perturbed& k) { return k.base->t_variation(t1, t2, s); },
      },
      family_);
}

bool Kernel::nondecreasing_in_x() const {
  return std::visit(overloaded{
                        [](const kernel::Zero&) { return true; },
                        [](const kernel::AffineState& k) { return k.c2 >= 0.0; },
                        [](const kernel::ConstantInT& k) { return k.mu <= k.kappa; },
                        [](const kernel::SeparableProduct& k) { return k.c2 >= 0.0; },
                        [](const kernel::Perturbed& k) { return k.base->nondecreasing_in_x(); },
                    },
                    family_);
}

bool Kernel::nonincreasing_in_t() const {
  return std::visit(overloaded{
                        [](const kernel::SeparableProduct& k) {
                          return k.k1 <= 0.0 || k.k0 == 0.0 || (k.c1 == 0.0 && k.c2 == 0.0);
                        },
                        [](const kernel::Perturbed& k) { return k.base->nonincreasing_in_t(); },
                        [](const auto&) { return true; },
                    },
                    family_);
}

bool Kernel::has_auto_cap() const {
  return std::visit(overloaded{
                        [](const kernel::AffineState& k) { return !k.cap && k.c2 != 0.0; },
                        [](const kernel::SeparableProduct& k) { return !k.cap && k.c2 != 0.0; },
                        [](const kernel::Perturbed& k) { return k.base->has_auto_cap(); },
                        [](const auto&) { return false; },
                    },
                    family_);
}

double Kernel::smallest_cap() const {
  return std::visit(overloaded{
                        [](const kernel::AffineState& k) { return k.c2 != 0.0 ? cap_or_inf(k.cap) : kInf; },
                        [](const kernel::SeparableProduct& k) {
                          return k.c2 != 0.0 ? cap_or_inf(k.cap) : kInf;
                        },
                        [](const kernel::Perturbed& k) { return k.base->smallest_cap(); },
                        [](const auto&) { return kInf; },
                    },
                    family_);
}

Kernel Kernel::with_auto_cap(double cap) const {
  return std::visit(overloaded{
                        [cap](kernel::AffineState k) {
                          if (!k.cap) k.cap = cap;
                          return Kernel(k);
                        },
                        [cap](kernel::SeparableProduct k) {
                          if (!k.cap) k.cap = cap;
                          return Kernel(k);
                        },
                        [cap](const kernel::Perturbed& k) {
                          return Kernel::perturbed(k.base->with_auto_cap(cap), k.eps);
                        },
                        [this](const auto&) { return *this; },
                    },
                    family_);
}

double Kernel::min_t_factor(double horizon) const {
  return std::visit(overloaded{
                        [horizon](const kernel::SeparableProduct& k) {
                          return std::min(1.0, 1.0 + k.k1 * horizon);
                        },
                        [horizon](const kernel::Perturbed& k) {
                          return k.base->min_t_factor(horizon);
                        },
                        [](const auto&) { return kInf; },
                    },
                    family_);
}

std::string_view Kernel::family_name() const {
  return std::visit(overloaded{
                        [](const kernel::Zero&) { return "zero"; },
                        [](const kernel::AffineState&) { return "affine_state"; },
                        [](const kernel::ConstantInT&) { return "constant_in_t"; },
                        [](const kernel::SeparableProduct&) { return "separable"; },
                        [](const kernel::Perturbed&) { return "perturbed"; },
                    },
                    family_);
}

double Majorant::operator()(const Kernel& k, double t, double s) const {
  return std::visit(overloaded{
                        [&](const majorant::Declared&) { return k.majorant(t, s); },
                        [](const majorant::Constant& m) { return m.c; },
                    },
                    family_);
}

double ManufacturedForcing::product_at(double t) const {
  if (t <= 0.0) return 0.0;
  const double h = t / oracle_n;
  auto integral = [&](const Kernel& f) {
    double sum = 0.5 * (f(t, 0.0, x_star(0.0)) + f(t, t, x_star(t)));
    for (int j = 1; j < oracle_n; ++j) {
      const double s = j * t / oracle_n;
      sum += f(t, s, x_star(s));
    }
    return h * sum;
  };
  return integral(f1) * integral(f2);
}

}  // namespace uqie
