#include "uqie/quadrature.hpp"

#include <algorithm>
#include <cmath>

#include "uqie/error.hpp"
#include "uqie/kernels.hpp"

namespace uqie {

namespace {

double trapezoid(const std::function<double(double)>& g, Interval iv, int panels) {
  const double h = (iv.hi - iv.lo) / panels;
  double sum = 0.5 * (g(iv.lo) + g(iv.hi));
  for (int j = 1; j < panels; ++j) sum += g(iv.lo + j * (iv.hi - iv.lo) / panels);
  return h * sum;
}

}  // namespace

GridFunction prefix_integral(const GridFunction& g) {
  const Grid& grid = g.grid();
  std::vector<double> out(g.size(), 0.0);
  // Running sum of interior nodes so P_i matches the closed formula term by term.
  double interior = 0.0;
  for (std::size_t i = 1; i < g.size(); ++i) {
    out[i] = (0.5 * g[0] + interior + 0.5 * g[i]) / grid.panels() * grid.horizon();
    interior += g[i];
  }
  return GridFunction(grid, std::move(out));
}

double kernel_prefix_integral(const Problem& p, int which, const GridFunction& x, std::size_t i) {
  if (i >= x.size()) throw DomainError("node index out of range");
  if (which != 1 && which != 2) throw DomainError("kernel index must be 1 or 2");
  for (std::size_t j = 0; j <= i; ++j) {
    if (x[j] < 0.0) throw DomainError("state must be nonnegative at quadrature nodes");
  }
  const double v = detail::row_integral(p.kernel(which), x.grid(), x.values(), i);
  if (!std::isfinite(v)) throw EvaluationError("kernel integral is not finite");
  return v;
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double lx = std::log(x[k]);
    const double ly = std::log(y[k]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

OrderEstimate convergence_order(const std::function<double(double)>& g, Interval interval,
                                std::span<const int> panel_counts, std::optional<double> reference) {
  if (panel_counts.size() < 3) throw DomainError("convergence_order needs >= 3 panel counts");
  for (std::size_t k = 1; k < panel_counts.size(); ++k) {
    if (panel_counts[k] <= panel_counts[k - 1]) {
      throw DomainError("panel counts must be strictly increasing");
    }
  }
  const double exact = reference ? *reference : trapezoid(g, interval, 1'000'000);
  OrderEstimate out;
  double scale = std::abs(exact);
  for (int n : panel_counts) {
    out.steps.push_back((interval.hi - interval.lo) / n);
    out.errors.push_back(std::abs(trapezoid(g, interval, n) - exact));
  }
  const double floor = 1e-13 * std::max(1.0, scale);
  out.exact = std::all_of(out.errors.begin(), out.errors.end(), [&](double e) { return e <= floor; });
  if (!out.exact) out.order = log_log_slope(out.steps, out.errors);
  return out;
}

}  // namespace uqie
