#include <algorithm>

#include "uqie/kernels.hpp"

namespace uqie::serial {

void apply_operator(const Problem& p, const Grid& grid, std::span<const double> forcing,
                    std::span<const double> x, std::span<double> out) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double i1 = detail::row_integral(p.f1(), grid, x, i);
    const double i2 = detail::row_integral(p.f2(), grid, x, i);
    out[i] = forcing[i] + i1 * i2;
  }
}

double majorant_bound(const Problem& p, int which, const Grid& grid) {
  double bound = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    bound = std::max(bound, detail::majorant_row_integral(p, which, grid, i));
  }
  return bound;
}

}  // namespace uqie::serial

namespace uqie::serial {

GridFunction sample_forcing(const Problem& p, const Grid& grid) {
  std::vector<double> a(grid.size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = p.forcing()(grid.node(i));
  return GridFunction(grid, std::move(a));
}

}  // namespace uqie::serial
