#include "uqie/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "uqie/error.hpp"
#include "uqie/kernels.hpp"

namespace uqie {

namespace {

void check_state(const Problem& p, const GridFunction& x) {
  if (x.grid().horizon() != p.horizon()) throw DomainError("grid horizon differs from problem horizon");
  for (double v : x.values()) {
    if (v < 0.0) throw DomainError("operator applied to a state with negative values");
  }
}

GridFunction apply_checked(const Problem& p, const GridFunction& x, bool use_parallel) {
  check_state(p, x);
  const Grid& grid = x.grid();
  const GridFunction a =
      use_parallel ? parallel::sample_forcing(p, grid) : serial::sample_forcing(p, grid);
  std::vector<double> out(grid.size());
  if (use_parallel) {
    parallel::apply_operator(p, grid, a.values(), x.values(), out);
  } else {
    serial::apply_operator(p, grid, a.values(), x.values(), out);
  }
  for (double v : out) {
    if (!std::isfinite(v)) throw EvaluationError("operator value is not finite");
  }
  return GridFunction(grid, std::move(out));
}

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(), [](double e) { return std::isfinite(e); });
}

}  // namespace

void SolverConfig::validate() const {
  if (!(tol > 0.0)) throw DomainError("solver tol must be positive");
  if (max_iter < 1) throw DomainError("solver max_iter must be >= 1");
  if (!(damping > 0.0 && damping <= 1.0)) throw DomainError("solver damping must lie in (0, 1]");
  if (max_halvings < 0) throw DomainError("solver max_halvings must be >= 0");
}

const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Converged:
      return "converged";
    case SolveStatus::MaxIterations:
      return "max_iterations";
    case SolveStatus::Diverged:
      return "diverged";
  }
  return "unknown";
}

GridFunction apply_F(const Problem& p, const GridFunction& x) { return apply_checked(p, x, true); }

GridFunction serial::apply_F(const Problem& p, const GridFunction& x) {
  return apply_checked(p, x, false);
}

double residual(const Problem& p, const GridFunction& x) { return sup_distance(x, apply_F(p, x)); }

SolveResult picard_solve(const Problem& p, const Grid& grid, const SolverConfig& cfg) {
  cfg.validate();
  if (grid.horizon() != p.horizon()) throw DomainError("grid horizon differs from problem horizon");

  const GridFunction a =
      cfg.parallel ? parallel::sample_forcing(p, grid) : serial::sample_forcing(p, grid);
  for (double v : a.values()) {
    if (v < 0.0) throw DomainError("forcing is negative on the grid");
  }

  SolveResult res(GridFunction{grid});
  res.bounds = resolve_caps(p, grid).bounds;
  const double blowup = 10.0 * res.bounds.r;

  std::vector<double> x;
  if (std::holds_alternative<initial::Forcing>(cfg.x0)) {
    x.assign(a.values().begin(), a.values().end());
  } else if (const auto* c = std::get_if<initial::Constant>(&cfg.x0)) {
    x.assign(grid.size(), c->c);
  } else {
    const auto& given = std::get<initial::Given>(cfg.x0).x;
    if (!(given.grid() == grid)) throw DomainError("initial guess lives on a different grid");
    x.assign(given.values().begin(), given.values().end());
  }
  for (double v : x) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("initial guess must be finite and nonnegative");
  }

  double theta = cfg.damping;
  std::vector<double> fx(grid.size());
  std::vector<double> next(grid.size());
  res.status = SolveStatus::MaxIterations;

  while (res.iterations < cfg.max_iter) {
    if (cfg.parallel) {
      parallel::apply_operator(p, grid, a.values(), x, fx);
    } else {
      serial::apply_operator(p, grid, a.values(), x, fx);
    }
    ++res.iterations;

    double r = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) r = std::max(r, std::abs(x[i] - fx[i]));
    if (std::isnan(r)) r = std::numeric_limits<double>::infinity();
    res.residual_history.push_back(r);
    if (r <= cfg.tol) {
      res.status = SolveStatus::Converged;
      break;
    }

    double sup = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      next[i] = theta == 1.0 ? fx[i] : (1.0 - theta) * x[i] + theta * fx[i];
      sup = std::max(sup, std::abs(next[i]));
    }
    const bool blown = !all_finite(next) || sup > blowup || std::any_of(next.begin(), next.end(), [](double v) {
                         return v < 0.0;
                       });
    if (blown) {
      if (res.halvings >= cfg.max_halvings) {
        res.status = SolveStatus::Diverged;
        break;
      }
      theta *= 0.5;
      ++res.halvings;
      continue;
    }
    x.swap(next);
  }

  res.damping = theta;
  res.x = GridFunction(grid, x);
  const double r = res.bounds.r;
  res.bounds_respected = std::all_of(x.begin(), x.end(), [&](double v) { return v > 0.0 && v <= r + cfg.tol; });
  return res;
}

}  // namespace uqie
