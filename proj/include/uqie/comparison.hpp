#pragma once

// Sub/supersolution certificates and the ordering they imply for kernels
// nondecreasing in x: a strict subsolution stays below a supersolution for
// every t > 0.

#include <cstddef>
#include <optional>
#include <string>

#include "uqie/grid.hpp"
#include "uqie/problem.hpp"

namespace uqie {

enum class Role { Subsolution, Supersolution };

const char* to_string(Role r);

struct ComparisonTolerances {
  double slack_tol = 1e-9;      // margin tolerance for a (non-strict) certificate
  double strict_margin = 1e-8;  // |margin| beyond this at every t_i > 0 is strict

  // 10x and 100x the solver tolerance.
  static ComparisonTolerances from_solver_tol(double tol) { return {10.0 * tol, 100.0 * tol}; }
};

struct SolutionRole {
  Role role = Role::Subsolution;
  bool strict = false;
  GridFunction function;
  GridFunction margin;  // function - F(function)
  std::string problem_id;
};

// RoleViolated (with the worst node) when `expected` does not hold.
SolutionRole certify_role(const Problem& p, const GridFunction& g, Role expected,
                          const ComparisonTolerances& tol = {});

struct OrderingVerdict {
  bool holds = true;
  // First node with t > 0 where sub >= super.
  std::optional<std::size_t> first_crossing;
};

// PreconditionUnmet when the roles are mislabelled, certified on different
// problems or grids, kernels are not nondecreasing in x, or neither is strict.
OrderingVerdict check_ordering(const SolutionRole& sub, const SolutionRole& super,
                               bool kernels_nondecreasing_in_x);

}  // namespace uqie
