#pragma once

#include <string>

#include "uqie/functions.hpp"

namespace uqie {

// x(t) = a(t) + int_0^t f1(t,s,x(s)) ds * int_0^t f2(t,s,x(s)) ds on [0, T].
class Problem {
 public:
  // Throws DomainError when horizon <= 0 or a separable kernel's t factor
  // turns negative on [0, horizon].
  Problem(TimeFunction forcing, Kernel f1, Kernel f2, double horizon,
          Majorant m1 = Majorant::declared(), Majorant m2 = Majorant::declared());

  const TimeFunction& forcing() const { return forcing_; }
  const Kernel& f1() const { return f1_; }
  const Kernel& f2() const { return f2_; }
  const Kernel& kernel(int which) const { return which == 1 ? f1_ : f2_; }
  const Majorant& m1() const { return m1_; }
  const Majorant& m2() const { return m2_; }
  double horizon() const { return horizon_; }

  double majorant(int which, double t, double s) const {
    return which == 1 ? m1_(f1_, t, s) : m2_(f2_, t, s);
  }

  bool has_auto_caps() const { return f1_.has_auto_cap() || f2_.has_auto_cap(); }
  Problem with_auto_caps(double cap) const;
  Problem with_kernels(Kernel f1, Kernel f2) const;
  Problem with_majorants(Majorant m1, Majorant m2) const;

  bool operator==(const Problem&) const = default;

 private:
  TimeFunction forcing_;
  Kernel f1_;
  Kernel f2_;
  double horizon_;
  Majorant m1_;
  Majorant m2_;
};

struct ForcingCheck {
  bool nonnegative = true;  // a(t) >= 0 at every sample
  bool positive = true;     // min a > 0; solutions are strictly positive only then
  double min_value = 0.0;
  double min_at = 0.0;
};

// Samples a(t) at `samples` equispaced points of [0, T].
ForcingCheck check_forcing(const Problem& p, int samples = 257);

// a(t); DomainError outside [0, T], EvaluationError when not finite.
double eval_forcing(const Problem& p, double t);

// f(t,s,x) with 0 <= s <= t <= horizon and x >= 0. x == 0 is accepted.
double eval_kernel(const Kernel& k, double t, double s, double x, double horizon);

// Builds a problem whose exact solution is x_star up to the oracle
// quadrature error. Throws NonPositiveForcing if a(t) < 0 at an oracle node
// and DomainError when x_star <= 0 there or oracle_n < 1024.
Problem make_manufactured(const TimeFunction& x_star, const Kernel& f1, const Kernel& f2,
                          double horizon, int oracle_n = 4096);

// Stable text fingerprint used to tie certificates to a problem.
std::string fingerprint(const Problem& p);

}  // namespace uqie
