#include "uqie/grid.hpp"

#include <cmath>

#include "uqie/error.hpp"

namespace uqie {

Grid::Grid(double horizon, int panels) : horizon_(horizon), panels_(panels) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("grid horizon must be positive");
  if (panels < 2) throw DomainError("grid needs at least 2 panels");
}

std::vector<double> Grid::nodes() const {
  std::vector<double> t(size());
  for (std::size_t i = 0; i < t.size(); ++i) t[i] = node(i);
  return t;
}

GridFunction::GridFunction(Grid grid) : grid_(grid), values_(grid.size(), 0.0) {}

GridFunction::GridFunction(Grid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw DomainError("grid function length must be n + 1");
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("grid function values must be finite");
  }
}

double sup_distance(const GridFunction& f, const GridFunction& g) {
  if (!(f.grid() == g.grid())) throw DomainError("grid functions live on different grids");
  double d = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) d = std::max(d, std::abs(f[i] - g[i]));
  return d;
}

double sup_norm(const GridFunction& f) {
  double d = 0.0;
  for (double v : f.values()) d = std::max(d, std::abs(v));
  return d;
}

}  // namespace uqie
