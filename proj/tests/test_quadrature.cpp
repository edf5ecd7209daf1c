#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "uqie/error.hpp"
#include "uqie/quadrature.hpp"

using namespace uqie;

TEST_CASE("grid nodes") {
  const Grid g(1.0, 10);
  CHECK(g.size() == 11);
  CHECK(g.node(0) == 0.0);
  CHECK(g.node(10) == 1.0);
  for (double T : {0.3, 1.7, 2.0, 3.14159, 1e-3}) {
    for (int n : {2, 3, 7, 10, 99, 400, 1023}) CHECK(Grid(T, n).node(n) == T);
  }
  CHECK_THROWS_AS(Grid(1.0, 1), DomainError);
  CHECK_THROWS_AS(Grid(0.0, 10), DomainError);
  CHECK_THROWS_AS(GridFunction(g, std::vector<double>(10, 1.0)), DomainError);
  CHECK_THROWS_AS(GridFunction(g, std::vector<double>(11, NAN)), DomainError);
}

TEST_CASE("prefix_integral examples") {
  const Grid g(1.0, 10);
  const GridFunction one = GridFunction::sample(g, [](double) { return 1.0; });
  const GridFunction P1 = prefix_integral(one);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(P1[i] == g.node(i));

  // Trapezoid error for s^2 on [0,1] is h^2 (f'(1) - f'(0)) / 12, exact for quadratics.
  const GridFunction sq = GridFunction::sample(g, [](double s) { return s * s; });
  const double h = 0.1;
  const double expected = 1.0 / 3.0 + h * h * 2.0 / 12.0;
  CHECK(prefix_integral(sq)[10] == doctest::Approx(expected).epsilon(1e-14));
  CHECK(prefix_integral(sq)[10] == doctest::Approx(0.335).epsilon(1e-14));
  CHECK(prefix_integral(sq)[10] == doctest::Approx(oracle::trapezoid([](double s) { return s * s; }, 0, 1, 10)).epsilon(1e-14));

  const GridFunction P0 = prefix_integral(GridFunction(g));
  for (double v : P0.values()) CHECK(v == 0.0);
}

TEST_CASE("prefix_integral at the last node of g = 1 is T") {
  for (double T : {0.3, 1.0, 1.7, 2.5, 10.0}) {
    for (int n : {2, 3, 10, 37, 400}) {
      const Grid g(T, n);
      const GridFunction one = GridFunction::sample(g, [](double) { return 1.0; });
      CHECK(prefix_integral(one)[n] == T);
    }
  }
}

TEST_CASE("prefix_integral is linear and monotone on nonnegative data") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 200);
    const Grid g(0.5 + (u(rng) + 1.0), n);
    std::vector<double> a(g.size()), b(g.size()), c(g.size()), nn(g.size());
    const double alpha = u(rng), beta = u(rng);
    for (std::size_t i = 0; i < g.size(); ++i) {
      a[i] = u(rng);
      b[i] = u(rng);
      c[i] = alpha * a[i] + beta * b[i];
      nn[i] = std::abs(u(rng));
    }
    const GridFunction Pa = prefix_integral(GridFunction(g, a));
    const GridFunction Pb = prefix_integral(GridFunction(g, b));
    const GridFunction Pc = prefix_integral(GridFunction(g, c));
    const GridFunction Pn = prefix_integral(GridFunction(g, nn));
    double worst = 0.0;
    bool monotone = true;
    for (std::size_t i = 0; i < g.size(); ++i) {
      worst = std::max(worst, std::abs(Pc[i] - (alpha * Pa[i] + beta * Pb[i])));
      if (i > 0 && Pn[i] < Pn[i - 1]) monotone = false;
    }
    CHECK(worst <= 1e-13 * g.horizon() * n);
    CHECK(monotone);
  }
}

TEST_CASE("kernel_prefix_integral examples") {
  const Grid g(1.0, 10);
  const GridFunction one = GridFunction::sample(g, [](double) { return 1.0; });
  const Problem zero(TimeFunction::constant(1.0), Kernel::zero(), Kernel::zero(), 1.0);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(kernel_prefix_integral(zero, 1, one, i) == 0.0);

  const Kernel half = Kernel::affine_state(0.0, 0.5);
  const Problem p(TimeFunction::constant(1.0), half, Kernel::separable(1.0, -0.5, 1.0, 1.0, 1.0), 1.0);
  CHECK(kernel_prefix_integral(p, 1, one, 10) == 0.5);
  CHECK(kernel_prefix_integral(p, 1, one, 0) == 0.0);
  CHECK(kernel_prefix_integral(p, 2, one, 0) == 0.0);

  // Against a direct trapezoid of the closed-form integrand.
  const GridFunction x = GridFunction::sample(g, [](double s) { return 1.0 + s; });
  for (std::size_t i = 1; i < g.size(); ++i) {
    const double t = g.node(i);
    const double direct = oracle::trapezoid(
        [&](double s) { return (1.0 - 0.5 * t) * std::exp(-s) * (2.0 + s); }, 0.0, t, static_cast<int>(i));
    CHECK(kernel_prefix_integral(p, 2, x, i) == doctest::Approx(direct).epsilon(1e-13));
  }

  CHECK_THROWS_AS(kernel_prefix_integral(p, 1, one, 11), DomainError);
  CHECK_THROWS_AS(kernel_prefix_integral(p, 1, GridFunction::sample(g, [](double) { return -1.0; }), 5),
                  DomainError);
}

TEST_CASE("convergence_order") {
  const std::vector<int> ns = {10, 20, 40, 80};
  const OrderEstimate sq = convergence_order([](double s) { return s * s; }, {0.0, 1.0}, ns);
  CHECK_FALSE(sq.exact);
  CHECK(sq.order == doctest::Approx(2.0).epsilon(0.05));

  const OrderEstimate ex = convergence_order([](double s) { return std::exp(s); }, {0.0, 1.0}, ns, std::exp(1.0) - 1.0);
  CHECK(ex.order == doctest::Approx(2.0).epsilon(0.05));

  // The default reference agrees with the closed form to well below the coarse errors.
  const OrderEstimate ex_default = convergence_order([](double s) { return std::exp(s); }, {0.0, 1.0}, ns);
  CHECK(ex_default.order == doctest::Approx(ex.order).epsilon(1e-3));

  const OrderEstimate c = convergence_order([](double) { return 3.5; }, {0.0, 1.0}, ns);
  CHECK(c.exact);

  const std::vector<int> bad = {10, 10, 20};
  CHECK_THROWS_AS(convergence_order([](double s) { return s; }, {0.0, 1.0}, bad), DomainError);
  const std::vector<int> two = {10, 20};
  CHECK_THROWS_AS(convergence_order([](double s) { return s; }, {0.0, 1.0}, two), DomainError);
}

TEST_CASE("log_log_slope recovers a power law") {
  const std::vector<double> x = {1.0, 2.0, 4.0, 8.0};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, 1.7));
  CHECK(log_log_slope(x, y) == doctest::Approx(1.7).epsilon(1e-12));
}
