#pragma once

// Numerical audit of the standing assumptions: a(t) >= 0 continuous,
// f_i Caratheodory with |f_i| <= m_i and int_0^t m_i <= M_i, plus the
// monotonicity properties the comparison and extremal results rely on.
// Also computes r = a_sup + M1 M2, the radius of S = {0 < x <= r}.

#include <cstddef>
#include <vector>

#include "uqie/grid.hpp"
#include "uqie/problem.hpp"

namespace uqie {

struct Bounds {
  double a_sup = 0.0;
  double M1 = 0.0;
  double M2 = 0.0;
  double r = 0.0;

  bool operator==(const Bounds&) const = default;
};

// a_sup = max_i |a(t_i)|, M_i = max_i trapezoid of m_i(t_i, .) over [0, t_i],
// r = a_sup + M1 M2. Majorants are used as declared (auto caps give r = inf).
Bounds compute_bounds(const Problem& p, const Grid& grid);

struct CapResolution {
  Problem problem;     // auto caps replaced by the final cap
  Bounds bounds;       // bounds of `problem`
  double cap = 0.0;    // final auto cap, 0 when the problem had none
  int passes = 0;      // bound evaluations performed, at most 8
  bool converged = true;  // r moved by < 1e-9 or the upper cap was verified
  bool self_consistent = true;  // r <= every cap, so f_i <= m_i holds on S
};

// Fixed-point pass for auto caps: start at cap = a_sup, then cap <- r and
// recompute, at most 5 evaluations or until r moves by less than 1e-9. When
// the last r still exceeds its cap, up to three more evaluations try upper
// caps extrapolated from the shrinking changes and keep the first with
// r(cap) <= cap.
CapResolution resolve_caps(const Problem& p, const Grid& grid);

struct Lattice {
  int nt = 33;
  int ns = 33;
  int nx = 9;
  double x_max = 1.0;
};

// 33 x 33 x 9 over [0,T]^2 x (0, r]; only s <= t is sampled.
Lattice default_lattice(double r);

struct AuditTolerances {
  double majorant_rel = 1e-9;
  double monotone_slack = 1e-12;
  double continuity_tol = 1e-6;
  std::size_t max_recorded = 32;
};

struct MajorantViolation {
  int kernel = 1;
  double t = 0.0;
  double s = 0.0;
  double x = 0.0;
  double f = 0.0;
  double m = 0.0;
};

struct ContinuityViolation {
  int kernel = 1;
  double t = 0.0;
  double s = 0.0;
  double x = 0.0;
  double jump = 0.0;
};

struct AuditReport {
  bool caratheodory_ok = true;
  std::vector<MajorantViolation> majorant_violations;  // first max_recorded
  std::size_t majorant_violation_count = 0;
  bool continuity_ok = true;
  std::vector<ContinuityViolation> continuity_violations;
  bool nonincreasing_in_t_ok = true;
  bool nondecreasing_in_x_ok = true;
  bool forcing_nonnegative = true;
  bool forcing_positive = true;
  double x_max = 0.0;
  std::size_t kernel_samples = 0;
  std::size_t t_pairs = 0;
  std::size_t x_pairs = 0;

  // Assumptions (I) and (II) hold on the lattice.
  bool assumptions_ok() const {
    return caratheodory_ok && continuity_ok && forcing_nonnegative;
  }
};

// |f_i| <= m_i at every lattice point plus a bisection jump test in x.
AuditReport audit_caratheodory(const Problem& p, const Lattice& lattice,
                               const AuditTolerances& tol = {});

// Fills only nonincreasing_in_t_ok, nondecreasing_in_x_ok and the pair counts.
AuditReport audit_monotonicity(const Problem& p, const Lattice& lattice,
                               const AuditTolerances& tol = {});

// Both audits plus the forcing sign check.
AuditReport audit_problem(const Problem& p, const Lattice& lattice, const AuditTolerances& tol = {});

// min over the lattice of f_which.
double kernel_infimum(const Problem& p, int which, const Lattice& lattice);

// Uniform bound and discrete modulus of continuity of Fx for a given x:
// sup Fx <= r and, for adjacent nodes,
//   |Fx(t_{i+1}) - Fx(t_i)| <= |a(t_{i+1}) - a(t_i)| + M2 d1 + M1 d2 + slack,
// where d_k = panel integral of max(m_k(t_i, .), m_k(t_{i+1}, .)) plus the
// t-variation of f_k over [0, t_i].
struct CompactnessAudit {
  bool bounded_ok = true;
  double sup_image = 0.0;
  bool equicontinuous_ok = true;
  std::size_t worst_node = 0;
  double worst_excess = 0.0;  // max of lhs - rhs, negative when ok
  double slack = 0.0;
};

CompactnessAudit audit_compactness(const Problem& p, const GridFunction& x, const Bounds& bounds);

}  // namespace uqie
