#include "uqie/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

#include "uqie/error.hpp"
#include "uqie/extremal.hpp"
#include "uqie/hypotheses.hpp"

namespace uqie {

std::vector<CorpusEntry> manufactured_corpus() {
  struct Recipe {
    const char* id;
    TimeFunction x_star;
    Kernel f1;
    Kernel f2;
    double horizon;
  };
  const std::vector<Recipe> recipes = {
      {"unit_affine", TimeFunction::constant(1.0), Kernel::affine_state(0.0, 0.5, 2.0),
       Kernel::affine_state(0.0, 0.5, 2.0), 1.0},
      {"linear_mixed", TimeFunction::affine(1.0, 0.5), Kernel::affine_state(0.2, 0.3),
       Kernel::constant_in_t(0.4, 1.0, 1.0), 1.0},
      {"sine_saturating", TimeFunction::sine(1.0, 0.25, 2.0), Kernel::constant_in_t(0.5, 1.0, 1.0),
       Kernel::affine_state(0.1, 0.2), 1.0},
      {"exp_separable", TimeFunction::exponential(1.0, 0.3), Kernel::separable(0.4, -0.3, 0.5, 0.2, 0.5),
       Kernel::separable(0.4, -0.3, 0.5, 0.2, 0.5), 1.0},
      {"quadratic_long", TimeFunction::quadratic(1.0, 0.2, -0.1), Kernel::separable(0.3, 0.0, 1.0, 0.0, 1.0),
       Kernel::constant_in_t(0.6, 0.5, 2.0, 0.5), 2.0},
      {"constant_two", TimeFunction::constant(2.0), Kernel::constant_in_t(0.3, 0.0, 0.5),
       Kernel::affine_state(0.05, 0.1), 1.5},
      {"decaying", TimeFunction::exponential(1.0, -1.0), Kernel::constant_in_t(0.4, 2.0, 1.0, 0.2),
       Kernel::constant_in_t(0.4, 2.0, 1.0, 0.2), 1.0},
      {"t_free_affine", TimeFunction::affine(1.0, 1.0), Kernel::constant_in_t(0.5, 0.3, 1.0),
       Kernel::constant_in_t(0.2, 0.0, 0.5, 0.1), 1.0},
  };
  std::vector<CorpusEntry> corpus;
  corpus.reserve(recipes.size());
  for (const Recipe& r : recipes) {
    corpus.push_back({r.id, r.x_star, make_manufactured(r.x_star, r.f1, r.f2, r.horizon, 2048)});
  }
  return corpus;
}

Problem random_catalog_problem(std::mt19937_64& rng) {
  auto uniform = [&rng](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  auto pick = [&rng](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };

  const double horizon = uniform(0.5, 1.5);

  // Draws are sequenced one statement at a time so the stream does not depend
  // on argument evaluation order.
  TimeFunction forcing;
  switch (pick(4)) {
    case 0:
      forcing = TimeFunction::constant(uniform(0.5, 1.5));
      break;
    case 1: {
      const double c0 = uniform(0.5, 1.5);
      const double c1 = uniform(-0.5 * c0 / horizon, 0.5);  // a(T) >= c0 / 2
      forcing = TimeFunction::affine(c0, c1);
      break;
    }
    case 2: {
      const double c = uniform(0.5, 1.5);
      const double rate = uniform(-0.5, 0.3);
      forcing = TimeFunction::exponential(c, rate);
      break;
    }
    default: {
      const double c0 = uniform(0.8, 1.5);
      const double c1 = uniform(0.0, 0.3);
      const double omega = uniform(0.5, 3.0);
      forcing = TimeFunction::sine(c0, c1, omega);
      break;
    }
  }

  auto affine = [&]() {
    const double c1 = uniform(0.0, 0.3);
    const double c2 = uniform(0.0, 0.4);
    return Kernel::affine_state(c1, c2);
  };
  auto kernel = [&]() {
    switch (pick(4)) {
      case 0:
        return pick(3) == 0 ? Kernel::zero() : affine();
      case 1:
        return affine();
      case 2: {
        const double kappa = uniform(0.5, 2.0);
        const double w0 = uniform(0.0, 0.6);
        const double w1 = uniform(0.0, 1.5);
        const double mu = uniform(0.0, kappa);
        return Kernel::constant_in_t(w0, w1, kappa, mu);
      }
      default: {
        const double k0 = uniform(0.0, 0.5);
        const double k1 = uniform(-0.5 / horizon, 0.0);
        const double k2 = uniform(0.0, 1.0);
        const double c1 = uniform(0.0, 0.3);
        const double c2 = uniform(0.0, 0.4);
        return Kernel::separable(k0, k1, k2, c1, c2);
      }
    }
  };
  Kernel f1 = kernel();
  Kernel f2 = kernel();
  return Problem(forcing, f1, f2, horizon);
}

std::vector<CorpusOutcome> run_corpus(const std::vector<CorpusEntry>& corpus, int grid_n,
                                      const SolverConfig& cfg, double error_tol) {
  std::vector<CorpusOutcome> out(corpus.size());
  std::vector<std::exception_ptr> errors(corpus.size());
  SolverConfig member_cfg = cfg;
  member_cfg.parallel = false;
  const auto n = static_cast<long>(corpus.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long k = 0; k < n; ++k) {
    const auto idx = static_cast<std::size_t>(k);
    try {
      const CorpusEntry& e = corpus[idx];
      const Grid grid(e.problem.horizon(), grid_n);
      const SolveResult res = picard_solve(e.problem, grid, member_cfg);
      const GridFunction exact = GridFunction::sample(grid, e.x_star);
      CorpusOutcome& o = out[idx];
      o.id = e.id;
      o.status = res.status;
      o.iterations = res.iterations;
      o.residual = res.final_residual();
      o.sup_error = sup_distance(res.x, exact);
      o.pass = res.status == SolveStatus::Converged && o.sup_error <= error_tol;
    } catch (...) {
      errors[idx] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

namespace {

GridFunction scaled(const GridFunction& x, double factor) {
  std::vector<double> v(x.values().begin(), x.values().end());
  for (double& e : v) e *= factor;
  return GridFunction(x.grid(), std::move(v));
}

}  // namespace

LemmaSummary run_lemma_harness(std::uint64_t seed, const LemmaOptions& opts, const SolverConfig& cfg) {
  std::mt19937_64 rng(seed);
  LemmaSummary summary;
  const ComparisonTolerances tol = ComparisonTolerances::from_solver_tol(cfg.tol);

  while (summary.problems < opts.problems) {
    const Problem p = random_catalog_problem(rng);
    const Grid grid(p.horizon(), opts.grid_n);
    const double r = resolve_caps(p, grid).bounds.r;
    if (!audit_monotonicity(p, default_lattice(r)).nondecreasing_in_x_ok) {
      ++summary.rejected_problems;
      continue;
    }
    const SolveResult plain = picard_solve(p, grid, cfg);
    const SolveResult plus = picard_solve(perturb_problem(p, opts.eps, Sign::Plus).problem, grid, cfg);
    const SolveResult minus = picard_solve(perturb_problem(p, opts.eps, Sign::Minus).problem, grid, cfg);
    if (plain.status != SolveStatus::Converged || plus.status != SolveStatus::Converged ||
        minus.status != SolveStatus::Converged) {
      ++summary.rejected_problems;
      continue;
    }
    const std::size_t id = summary.problems++;

    struct Candidate {
      const char* name;
      GridFunction sub;
      GridFunction super;
    };
    const Candidate candidates[] = {
        {"scaled_down/eps_plus", scaled(plain.x, 1.0 - opts.delta), plus.x},
        {"eps_minus/eps_plus", minus.x, plus.x},
        {"scaled_down/scaled_up", scaled(plain.x, 1.0 - opts.delta), scaled(plain.x, 1.0 + opts.delta)},
    };
    for (const Candidate& c : candidates) {
      LemmaPair pair;
      pair.problem = id;
      pair.construction = c.name;
      try {
        const SolutionRole sub = certify_role(p, c.sub, Role::Subsolution, tol);
        const SolutionRole super = certify_role(p, c.super, Role::Supersolution, tol);
        const OrderingVerdict v = check_ordering(sub, super, true);
        pair.certified = true;
        pair.holds = v.holds;
        if (v.first_crossing) pair.first_crossing = *v.first_crossing;
      } catch (const RoleViolated& e) {
        pair.note = e.what();
      } catch (const PreconditionUnmet& e) {
        pair.note = e.what();
      }
      if (pair.certified) {
        ++summary.certified_pairs;
        if (!pair.holds) ++summary.counterexamples;
      }
      summary.pairs.push_back(std::move(pair));
    }
  }
  return summary;
}

}  // namespace uqie
