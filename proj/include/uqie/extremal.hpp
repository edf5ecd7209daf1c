#pragma once

// Maximal and minimal solutions as limits eps -> 0 of the solutions of the
// problems with kernels f_i + eps (maximal) and f_i - eps (minimal).

#include <cstddef>
#include <vector>

#include "uqie/grid.hpp"
#include "uqie/hypotheses.hpp"
#include "uqie/operator.hpp"
#include "uqie/problem.hpp"

namespace uqie {

enum class Sign { Plus, Minus };

const char* to_string(Sign s);

// eps_k = eps0 rho^k, k = 0..count-1.
struct EpsilonSchedule {
  double eps0 = 0.1;
  double rho = 0.5;
  int count = 6;

  // DomainError unless eps0 > 0, 0 < rho < 1 and count >= 2.
  void validate() const;
  std::vector<double> values() const;
  bool operator==(const EpsilonSchedule&) const = default;
};

struct PerturbedProblem {
  Problem problem;
  bool negative_kernel = false;  // f_i - eps dips below 0 somewhere on the lattice
};

// Kernels become Perturbed(f_i, +eps) or Perturbed(f_i, -eps); eps == 0
// returns p unchanged.
// The clamping flag is evaluated on `lattice`; the overload without one uses
// the default lattice up to r on a 64-panel grid.
PerturbedProblem perturb_problem(const Problem& p, double eps, Sign sign, const Lattice& lattice);
PerturbedProblem perturb_problem(const Problem& p, double eps, Sign sign);

struct FamilyOptions {
  double ordering_slack = 1e-8;
  bool warm_start = true;
  // Skip the nondecreasing-in-x audit precondition.
  bool assume_monotone = false;
};

struct EpsilonFamily {
  EpsilonSchedule schedule;
  Sign sign = Sign::Plus;
  std::vector<double> eps;
  std::vector<SolveResult> solutions;
  GridFunction extremal_estimate;  // quadratic extrapolation to eps = 0 (count >= 3)
  GridFunction linear_estimate;    // two-point linear extrapolation from the last two members
  bool ordering_ok = false;
  bool negative_kernel = false;
};

// Two-point linear extrapolation x_l + (x_l - x_p) eps_l / (eps_p - eps_l).
GridFunction linear_extrapolation(const GridFunction& x_prev, double eps_prev, const GridFunction& x_last,
                                  double eps_last);

// Lagrange quadratic through three (eps, x) members evaluated at eps = 0.
GridFunction quadratic_extrapolation(const std::vector<const GridFunction*>& xs,
                                     const std::vector<double>& eps);

// PreconditionUnmet when kernels fail the nondecreasing-in-x audit;
// FamilySolveFailed(k) when member k does not converge.
EpsilonFamily solve_family(const Problem& p, const Grid& grid, const EpsilonSchedule& sched, Sign sign,
                           const SolverConfig& cfg = {}, const FamilyOptions& opts = {});

struct SandwichVerdict {
  bool holds = true;
  std::size_t worst_node = 0;
  double worst_violation = 0.0;  // largest of n - slack - x and x - q - slack
};

// n(t_i) - slack <= x(t_i) <= q(t_i) + slack at every node.
SandwichVerdict sandwich_check(const GridFunction& x, const GridFunction& q, const GridFunction& n,
                               double slack);
// PreconditionUnmet unless x converged.
SandwichVerdict sandwich_check(const SolveResult& x, const GridFunction& q, const GridFunction& n,
                               double slack);

}  // namespace uqie
