#include <algorithm>

#include "uqie/kernels.hpp"

namespace uqie::parallel {

void apply_operator(const Problem& p, const Grid& grid, std::span<const double> forcing,
                    std::span<const double> x, std::span<double> out) {
  const auto n = static_cast<long>(grid.size());
  // Row i costs O(i); dynamic scheduling balances the triangle.
#pragma omp parallel for schedule(dynamic, 16)
  for (long i = 0; i < n; ++i) {
    const auto row = static_cast<std::size_t>(i);
    const double i1 = detail::row_integral(p.f1(), grid, x, row);
    const double i2 = detail::row_integral(p.f2(), grid, x, row);
    out[row] = forcing[row] + i1 * i2;
  }
}

double majorant_bound(const Problem& p, int which, const Grid& grid) {
  const auto n = static_cast<long>(grid.size());
  double bound = 0.0;
#pragma omp parallel for schedule(dynamic, 16) reduction(max : bound)
  for (long i = 0; i < n; ++i) {
    bound = std::max(bound, detail::majorant_row_integral(p, which, grid, static_cast<std::size_t>(i)));
  }
  return bound;
}

}  // namespace uqie::parallel

namespace uqie::parallel {

GridFunction sample_forcing(const Problem& p, const Grid& grid) {
  std::vector<double> a(grid.size());
  const auto n = static_cast<long>(a.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < n; ++i) {
    a[static_cast<std::size_t>(i)] = p.forcing()(grid.node(static_cast<std::size_t>(i)));
  }
  return GridFunction(grid, std::move(a));
}

}  // namespace uqie::parallel
