#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "uqie/catalog.hpp"
#include "uqie/error.hpp"
#include "uqie/hypotheses.hpp"
#include "uqie/kernels.hpp"
#include "uqie/operator.hpp"

using namespace uqie;

namespace {

GridFunction constant_on(const Grid& g, double c) {
  return GridFunction::sample(g, [c](double) { return c; });
}

Problem unit_zero(double T = 1.0) {
  return Problem(TimeFunction::constant(1.0), Kernel::zero(), Kernel::zero(), T);
}

}  // namespace

TEST_CASE("apply_F examples") {
  const Grid g(1.0, 10);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  const GridFunction any = GridFunction::sample(g, [&](double) { return u(rng); });
  const GridFunction F0 = apply_F(unit_zero(), any);
  for (double v : F0.values()) CHECK(v == 1.0);

  const Kernel half = Kernel::affine_state(0.0, 0.5);
  const Problem man = make_manufactured(TimeFunction::constant(1.0), half, half, 1.0, 1024);
  const GridFunction Fx = apply_F(man, constant_on(g, 1.0));
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double t = g.node(i);
    CHECK(Fx[i] == doctest::Approx(1.0 - t * t / 4.0 + (t / 2) * (t / 2)).epsilon(1e-14));
    CHECK(Fx[i] == doctest::Approx(1.0).epsilon(1e-14));
  }

  const Kernel one = Kernel::affine_state(0.0, 1.0);
  const Problem p(TimeFunction::constant(1.0), one, one, 1.0);
  const GridFunction F2 = apply_F(p, constant_on(g, 1.0));
  CHECK(F2[10] == 2.0);
  CHECK(F2[0] == 1.0);
}

TEST_CASE("residual examples") {
  const Grid g(1.0, 10);
  CHECK(residual(unit_zero(), constant_on(g, 2.0)) == 1.0);

  const Kernel half = Kernel::affine_state(0.0, 0.5);
  const Problem man = make_manufactured(TimeFunction::constant(1.0), half, half, 1.0, 1024);
  CHECK(residual(man, constant_on(g, 1.0)) <= 1e-12);

  // F applied to a fixed point of zero kernels
  const GridFunction x = apply_F(unit_zero(), constant_on(g, 3.0));
  CHECK(residual(unit_zero(), x) <= 1e-12);

  CHECK_THROWS_AS(residual(unit_zero(2.0), constant_on(g, 1.0)), DomainError);
}

TEST_CASE("solver config validation") {
  SolverConfig c;
  CHECK_NOTHROW(c.validate());
  c.tol = 0.0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = {};
  c.max_iter = 0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = {};
  c.damping = 1.5;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.damping = 0.0;
  CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("picard_solve: zero kernels converge in one iteration") {
  const Grid g(1.0, 50);
  // From x0 = a one application confirms the fixed point; from a constant
  // the first application lands on it and the second confirms it.
  for (const auto& [x0, max_iters] : {std::pair{InitialGuess(initial::Forcing{}), 1},
                                      std::pair{InitialGuess(initial::Constant{3.0}), 2}}) {
    SolverConfig cfg;
    cfg.x0 = x0;
    const SolveResult r = picard_solve(unit_zero(), g, cfg);
    CHECK(r.status == SolveStatus::Converged);
    CHECK(r.iterations <= max_iters);
    CHECK(r.final_residual() == 0.0);
    for (double v : r.x.values()) CHECK(v == 1.0);
    CHECK(r.bounds_respected);
  }
}

TEST_CASE("picard_solve: manufactured x* = 1") {
  const Kernel half = Kernel::affine_state(0.0, 0.5, 2.0);
  const Problem man = make_manufactured(TimeFunction::constant(1.0), half, half, 1.0, 1024);
  SolverConfig cfg;
  cfg.tol = 1e-10;
  const SolveResult r = picard_solve(man, Grid(1.0, 100), cfg);
  REQUIRE(r.status == SolveStatus::Converged);
  double err = 0.0;
  for (double v : r.x.values()) err = std::max(err, std::abs(v - 1.0));
  CHECK(err <= 1e-8);
  CHECK(r.final_residual() <= cfg.tol);
  CHECK(r.residual_history.size() == static_cast<std::size_t>(r.iterations));
}

TEST_CASE("picard_solve: quarter-affine kernels match the closed form") {
  // x = 1 + (y / 4)^2 with y' = x gives y = 4 tan(t / 4) and x = sec^2(t / 4).
  const Kernel q = Kernel::affine_state(0.0, 0.25);
  const Problem p(TimeFunction::constant(1.0), q, q, 1.0);
  SolverConfig cfg;
  cfg.tol = 1e-12;
  std::vector<double> errs;
  for (int n : {200, 400, 800}) {
    const Grid g(1.0, n);
    const SolveResult r = picard_solve(p, g, cfg);
    REQUIRE(r.status == SolveStatus::Converged);
    double err = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double c = std::cos(g.node(i) / 4.0);
      err = std::max(err, std::abs(r.x[i] - 1.0 / (c * c)));
      CHECK(r.x[i] >= 1.0);
      CHECK(r.x[i] <= r.bounds.r);
    }
    CHECK(r.bounds_respected);
    errs.push_back(err);
  }
  CHECK(errs[0] <= 1e-5);
  CHECK(std::log2(errs[0] / errs[2]) / 2.0 >= 1.8);
}

TEST_CASE("picard_solve: damping and initial guess reach the same fixed point") {
  const Kernel q = Kernel::affine_state(0.1, 0.25);
  const Problem p(TimeFunction::affine(1.0, 0.5), q, Kernel::constant_in_t(0.5, 1.0, 1.0), 1.0);
  const Grid g(1.0, 100);
  SolverConfig a;
  a.tol = 1e-12;
  SolverConfig b = a;
  b.damping = 0.5;
  b.x0 = initial::Constant{0.5};
  const SolveResult ra = picard_solve(p, g, a);
  const SolveResult rb = picard_solve(p, g, b);
  REQUIRE(ra.status == SolveStatus::Converged);
  REQUIRE(rb.status == SolveStatus::Converged);
  CHECK(sup_distance(ra.x, rb.x) <= 1e-10);
  CHECK(rb.iterations > ra.iterations);
}

TEST_CASE("picard_solve: blow-up is not reported as converged") {
  const Kernel big = Kernel::affine_state(1.0, 3.0);
  const Problem p(TimeFunction::constant(1.0), big, big, 2.0);
  SolverConfig cfg;
  cfg.max_iter = 200;
  const SolveResult r = picard_solve(p, Grid(2.0, 40), cfg);
  CHECK(r.status != SolveStatus::Converged);
}

TEST_CASE("serial and parallel solves agree") {
  std::mt19937_64 rng(8);
  for (int k = 0; k < 5; ++k) {
    const Problem p = random_catalog_problem(rng);
    const Grid g(p.horizon(), 80);
    SolverConfig a;
    SolverConfig b;
    b.parallel = false;
    const SolveResult ra = picard_solve(p, g, a);
    const SolveResult rb = picard_solve(p, g, b);
    CHECK(ra.x == rb.x);
    CHECK(ra.residual_history == rb.residual_history);
  }
}

TEST_CASE("invariant ball: F maps 0 < x <= r into [a_min, r]") {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const Problem p0 = random_catalog_problem(rng);
    const Grid g(p0.horizon(), 20 + static_cast<int>(rng() % 60));
    const CapResolution res = resolve_caps(p0, g);
    if (!res.self_consistent || !std::isfinite(res.bounds.r)) continue;
    const Problem& p = res.problem;
    const double r = res.bounds.r;
    const GridFunction a = serial::sample_forcing(p, g);
    double a_min = a[0];
    for (double v : a.values()) a_min = std::min(a_min, v);
    for (int draw = 0; draw < 5; ++draw) {
      const GridFunction x = GridFunction::sample(g, [&](double) { return r * (1e-6 + (1 - 1e-6) * u(rng)); });
      const GridFunction Fx = apply_F(p, x);
      for (double v : Fx.values()) {
        CHECK(v >= a_min);
        CHECK(v <= r * (1 + 1e-12));
      }
    }
    ++checked;
  }
  CHECK(checked >= 20);
}

TEST_CASE("monotone kernels give a monotone operator") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 40; ++trial) {
    const Problem p0 = random_catalog_problem(rng);
    const Problem p = resolve_caps(p0, Grid(p0.horizon(), 16)).problem;
    REQUIRE(p.f1().nondecreasing_in_x());
    REQUIRE(p.f2().nondecreasing_in_x());
    const Grid g(p.horizon(), 40);
    const GridFunction x = GridFunction::sample(g, [&](double) { return 2.0 * u(rng); });
    GridFunction y = x;
    for (double& v : y.values()) v += u(rng);
    const GridFunction Fx = apply_F(p, x);
    const GridFunction Fy = apply_F(p, y);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(Fx[i] <= Fy[i]);
  }
}
