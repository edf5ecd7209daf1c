#pragma once

// O(n^2) discrete-operator kernels. `serial` is the reference; `parallel`
// splits the node loop with OpenMP and produces bit-identical results since
// every node's sum is accumulated in the same order.

#include <cstddef>
#include <span>

#include "uqie/grid.hpp"
#include "uqie/problem.hpp"

namespace uqie {

namespace detail {

// Composite trapezoid of s -> f(t_i, s, x(s)) over nodes s_0..s_i.
inline double row_integral(const Kernel& f, const Grid& grid, std::span<const double> x,
                           std::size_t i) {
  if (i == 0) return 0.0;
  const double t = grid.node(i);
  double sum = 0.5 * (f(t, 0.0, x[0]) + f(t, t, x[i]));
  for (std::size_t j = 1; j < i; ++j) sum += f(t, grid.node(j), x[j]);
  return sum / grid.panels() * grid.horizon();
}

// Composite trapezoid of s -> m(t_i, s) over nodes s_0..s_i.
inline double majorant_row_integral(const Problem& p, int which, const Grid& grid, std::size_t i) {
  if (i == 0) return 0.0;
  const double t = grid.node(i);
  double sum = 0.5 * (p.majorant(which, t, 0.0) + p.majorant(which, t, t));
  for (std::size_t j = 1; j < i; ++j) sum += p.majorant(which, t, grid.node(j));
  return sum / grid.panels() * grid.horizon();
}

}  // namespace detail

namespace serial {

// out_i = forcing_i + I1_i * I2_i.
void apply_operator(const Problem& p, const Grid& grid, std::span<const double> forcing,
                    std::span<const double> x, std::span<double> out);

// max_i of the trapezoid prefix integral of m_which(t_i, .).
double majorant_bound(const Problem& p, int which, const Grid& grid);

GridFunction sample_forcing(const Problem& p, const Grid& grid);

}  // namespace serial

namespace parallel {

void apply_operator(const Problem& p, const Grid& grid, std::span<const double> forcing,
                    std::span<const double> x, std::span<double> out);

double majorant_bound(const Problem& p, int which, const Grid& grid);

GridFunction sample_forcing(const Problem& p, const Grid& grid);

}  // namespace parallel

}  // namespace uqie
