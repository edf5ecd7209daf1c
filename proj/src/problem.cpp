#include "uqie/problem.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "uqie/error.hpp"

namespace uqie {

Problem::Problem(TimeFunction forcing, Kernel f1, Kernel f2, double horizon, Majorant m1,
                 Majorant m2)
    : forcing_(std::move(forcing)),
      f1_(std::move(f1)),
      f2_(std::move(f2)),
      horizon_(horizon),
      m1_(m1),
      m2_(m2) {
  if (!(horizon_ > 0.0) || !std::isfinite(horizon_)) {
    throw DomainError("horizon T must be positive and finite");
  }
  if (f1_.min_t_factor(horizon_) < 0.0 || f2_.min_t_factor(horizon_) < 0.0) {
    throw DomainError("separable kernel factor 1 + k1 t must stay nonnegative on [0, T]");
  }
  for (const Majorant* m : {&m1_, &m2_}) {
    if (const auto* c = std::get_if<majorant::Constant>(&m->family())) {
      if (!(c->c >= 0.0)) throw DomainError("constant majorant must be nonnegative");
    }
  }
}

Problem Problem::with_auto_caps(double cap) const {
  Problem p = *this;
  p.f1_ = f1_.with_auto_cap(cap);
  p.f2_ = f2_.with_auto_cap(cap);
  return p;
}

Problem Problem::with_kernels(Kernel f1, Kernel f2) const {
  return Problem(forcing_, std::move(f1), std::move(f2), horizon_, m1_, m2_);
}

Problem Problem::with_majorants(Majorant m1, Majorant m2) const {
  return Problem(forcing_, f1_, f2_, horizon_, m1, m2);
}

ForcingCheck check_forcing(const Problem& p, int samples) {
  ForcingCheck out;
  out.min_value = p.forcing()(0.0);
  for (int i = 0; i <= samples - 1; ++i) {
    const double t = i == samples - 1 ? p.horizon() : i * p.horizon() / (samples - 1);
    const double a = p.forcing()(t);
    if (a < out.min_value) {
      out.min_value = a;
      out.min_at = t;
    }
  }
  out.nonnegative = out.min_value >= 0.0;
  out.positive = out.min_value > 0.0;
  return out;
}

double eval_forcing(const Problem& p, double t) {
  if (!(t >= 0.0 && t <= p.horizon())) throw DomainError("forcing evaluated outside [0, T]");
  const double a = p.forcing()(t);
  if (!std::isfinite(a)) throw EvaluationError("forcing is not finite");
  return a;
}

double eval_kernel(const Kernel& k, double t, double s, double x, double horizon) {
  if (!(0.0 <= s && s <= t && t <= horizon)) {
    throw DomainError("kernel needs 0 <= s <= t <= T");
  }
  if (!(x >= 0.0)) throw DomainError("kernel state argument must be nonnegative");
  const double v = k(t, s, x);
  if (!std::isfinite(v)) throw EvaluationError("kernel value is not finite");
  return v;
}

Problem make_manufactured(const TimeFunction& x_star, const Kernel& f1, const Kernel& f2,
                          double horizon, int oracle_n) {
  if (oracle_n < 1024) throw DomainError("manufactured oracle needs at least 1024 panels");
  auto data = std::make_shared<ManufacturedForcing>(ManufacturedForcing{x_star, f1, f2, oracle_n});
  Problem p(TimeFunction(forcing::Manufactured{data}), f1, f2, horizon);

  std::vector<double> xs(oracle_n + 1);
  std::vector<double> a(oracle_n + 1);
#pragma omp parallel for schedule(dynamic, 64)
  for (int k = 0; k <= oracle_n; ++k) {
    const double t = k == oracle_n ? horizon : k * horizon / oracle_n;
    xs[k] = x_star(t);
    a[k] = xs[k] - data->product_at(t);
  }
  for (int k = 0; k <= oracle_n; ++k) {
    const double t = k == oracle_n ? horizon : k * horizon / oracle_n;
    if (!(xs[k] > 0.0)) throw DomainError("manufactured solution must be positive on [0, T]");
    if (!std::isfinite(a[k])) throw EvaluationError("manufactured forcing is not finite");
    if (a[k] < 0.0) {
      std::ostringstream msg;
      msg << "manufactured forcing a(" << t << ") = " << a[k] << " < 0";
      throw NonPositiveForcing(msg.str(), t, a[k]);
    }
  }
  return p;
}

}  // namespace uqie
