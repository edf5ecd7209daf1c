#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "uqie/grid.hpp"
#include "uqie/problem.hpp"

namespace uqie {

// P_0 = 0, P_i = h (g_0/2 + g_1 + ... + g_{i-1} + g_i/2).
GridFunction prefix_integral(const GridFunction& g);

// Trapezoid of s -> f_which(t_i, s, x(s)) over s_0..s_i; 0 when i == 0.
// DomainError if i > n or x has a negative node value.
double kernel_prefix_integral(const Problem& p, int which, const GridFunction& x, std::size_t i);

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

struct OrderEstimate {
  double order = 0.0;  // meaningless when exact
  bool exact = false;  // every error below the round-off floor
  std::vector<double> steps;
  std::vector<double> errors;
};

// Observed order of the composite trapezoid on `interval` as the least-squares
// slope of log(error) against log(h). The reference defaults to a trapezoid
// with 10^6 panels. Needs >= 3 strictly increasing panel counts.
OrderEstimate convergence_order(const std::function<double(double)>& g, Interval interval,
                                std::span<const int> panel_counts,
                                std::optional<double> reference = std::nullopt);

// Least-squares slope of log(y) against log(x).
double log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace uqie
