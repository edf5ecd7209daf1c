#include "uqie/extremal.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <sstream>

#include "uqie/error.hpp"

namespace uqie {

const char* to_string(Sign s) { return s == Sign::Plus ? "+" : "-"; }

void EpsilonSchedule::validate() const {
  if (!(eps0 > 0.0) || !std::isfinite(eps0)) throw DomainError("eps0 must be positive");
  if (!(rho > 0.0 && rho < 1.0)) throw DomainError("decay ratio rho must lie in (0, 1)");
  if (count < 2) throw DomainError("schedule needs count >= 2");
}

std::vector<double> EpsilonSchedule::values() const {
  std::vector<double> eps(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) eps[static_cast<std::size_t>(k)] = eps0 * std::pow(rho, k);
  return eps;
}

PerturbedProblem perturb_problem(const Problem& p, double eps, Sign sign, const Lattice& lattice) {
  if (!(eps >= 0.0)) throw DomainError("perturbation eps must be nonnegative");
  if (eps == 0.0) return {p, false};
  const double signed_eps = sign == Sign::Plus ? eps : -eps;

  PerturbedProblem out{p.with_kernels(Kernel::perturbed(p.f1(), signed_eps),
                                      Kernel::perturbed(p.f2(), signed_eps)),
                       false};
  if (sign == Sign::Plus) {
    auto shift = [eps](const Majorant& m) {
      if (const auto* c = std::get_if<majorant::Constant>(&m.family())) return Majorant::constant(c->c + eps);
      return m;
    };
    out.problem = out.problem.with_majorants(shift(p.m1()), shift(p.m2()));
  } else {
    out.negative_kernel = eps > kernel_infimum(p, 1, lattice) || eps > kernel_infimum(p, 2, lattice);
  }
  return out;
}

PerturbedProblem perturb_problem(const Problem& p, double eps, Sign sign) {
  const double r = resolve_caps(p, Grid(p.horizon(), 64)).bounds.r;
  return perturb_problem(p, eps, sign, default_lattice(r));
}

GridFunction linear_extrapolation(const GridFunction& x_prev, double eps_prev, const GridFunction& x_last,
                                  double eps_last) {
  const double w = eps_last / (eps_prev - eps_last);
  std::vector<double> v(x_last.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = x_last[i] + (x_last[i] - x_prev[i]) * w;
  return GridFunction(x_last.grid(), std::move(v));
}

GridFunction quadratic_extrapolation(const std::vector<const GridFunction*>& xs,
                                     const std::vector<double>& eps) {
  if (xs.size() != 3 || eps.size() != 3) throw DomainError("quadratic extrapolation needs three members");
  const double e0 = eps[0], e1 = eps[1], e2 = eps[2];
  const double l0 = e1 * e2 / ((e0 - e1) * (e0 - e2));
  const double l1 = e0 * e2 / ((e1 - e0) * (e1 - e2));
  const double l2 = e0 * e1 / ((e2 - e0) * (e2 - e1));
  std::vector<double> v(xs[2]->size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = l0 * (*xs[0])[i] + l1 * (*xs[1])[i] + l2 * (*xs[2])[i];
  return GridFunction(xs[2]->grid(), std::move(v));
}

EpsilonFamily solve_family(const Problem& p, const Grid& grid, const EpsilonSchedule& sched, Sign sign,
                           const SolverConfig& cfg, const FamilyOptions& opts) {
  sched.validate();
  cfg.validate();
  const double r = resolve_caps(p, grid).bounds.r;
  const Lattice lattice = default_lattice(r);
  if (!opts.assume_monotone && !audit_monotonicity(p, lattice).nondecreasing_in_x_ok) {
    throw PreconditionUnmet("extremal construction needs kernels nondecreasing in x");
  }

  EpsilonFamily fam{sched, sign, sched.values(), {}, GridFunction(grid), GridFunction(grid), true, false};
  const std::size_t count = fam.eps.size();
  std::vector<PerturbedProblem> problems;
  problems.reserve(count);
  for (double e : fam.eps) {
    problems.push_back(perturb_problem(p, e, sign, lattice));
    fam.negative_kernel = fam.negative_kernel || problems.back().negative_kernel;
  }

  auto failed = [&](std::size_t k, const SolveResult& res) {
    std::ostringstream msg;
    msg << "family member " << k << " (eps = " << fam.eps[k] << ") " << to_string(res.status)
        << " after " << res.iterations << " iterations";
    return FamilySolveFailed(msg.str(), k);
  };

  if (opts.warm_start) {
    SolverConfig member_cfg = cfg;
    for (std::size_t k = 0; k < count; ++k) {
      SolveResult res = picard_solve(problems[k].problem, grid, member_cfg);
      if (res.status != SolveStatus::Converged) throw failed(k, res);
      member_cfg.x0 = initial::Given{res.x};
      fam.solutions.push_back(std::move(res));
    }
  } else {
    std::vector<SolveResult> results(count, SolveResult(GridFunction{grid}));
    std::vector<std::exception_ptr> errors(count);
    SolverConfig member_cfg = cfg;
    member_cfg.parallel = false;
    const auto n = static_cast<long>(count);
#pragma omp parallel for schedule(dynamic, 1)
    for (long k = 0; k < n; ++k) {
      const auto idx = static_cast<std::size_t>(k);
      try {
        results[idx] = picard_solve(problems[idx].problem, grid, member_cfg);
      } catch (...) {
        errors[idx] = std::current_exception();
      }
    }
    for (std::size_t k = 0; k < count; ++k) {
      if (errors[k]) std::rethrow_exception(errors[k]);
      if (results[k].status != SolveStatus::Converged) throw failed(k, results[k]);
    }
    fam.solutions = std::move(results);
  }

  for (std::size_t k = 0; k + 1 < count; ++k) {
    const GridFunction& larger_eps = fam.solutions[k].x;
    const GridFunction& smaller_eps = fam.solutions[k + 1].x;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const bool ok = sign == Sign::Plus ? smaller_eps[i] <= larger_eps[i] + opts.ordering_slack
                                         : smaller_eps[i] >= larger_eps[i] - opts.ordering_slack;
      if (!ok) fam.ordering_ok = false;
    }
  }

  const GridFunction& x_prev = fam.solutions[count - 2].x;
  const GridFunction& x_last = fam.solutions[count - 1].x;
  fam.linear_estimate = linear_extrapolation(x_prev, fam.eps[count - 2], x_last, fam.eps[count - 1]);
  if (count >= 3) {
    fam.extremal_estimate = quadratic_extrapolation(
        {&fam.solutions[count - 3].x, &x_prev, &x_last},
        {fam.eps[count - 3], fam.eps[count - 2], fam.eps[count - 1]});
  } else {
    fam.extremal_estimate = fam.linear_estimate;
  }
  return fam;
}

SandwichVerdict sandwich_check(const GridFunction& x, const GridFunction& q, const GridFunction& n,
                               double slack) {
  if (!(x.grid() == q.grid()) || !(x.grid() == n.grid())) {
    throw DomainError("sandwich functions live on different grids");
  }
  SandwichVerdict v;
  v.worst_violation = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double over = std::max(x[i] - q[i], n[i] - x[i]) - slack;
    if (over > v.worst_violation) {
      v.worst_violation = over;
      v.worst_node = i;
    }
  }
  v.holds = !(v.worst_violation > 0.0);
  return v;
}

SandwichVerdict sandwich_check(const SolveResult& x, const GridFunction& q, const GridFunction& n,
                               double slack) {
  if (x.status != SolveStatus::Converged) throw PreconditionUnmet("sandwich check needs a converged solution");
  return sandwich_check(x.x, q, n, slack);
}

}  // namespace uqie
