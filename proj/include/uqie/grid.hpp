#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace uqie {

// Uniform grid t_i = (i / n) T, i = 0..n; t_n == T exactly.
class Grid {
 public:
  // DomainError unless horizon > 0 and panels >= 2.
  Grid(double horizon, int panels);

  double horizon() const { return horizon_; }
  int panels() const { return panels_; }
  std::size_t size() const { return static_cast<std::size_t>(panels_) + 1; }
  double step() const { return horizon_ / panels_; }
  double node(std::size_t i) const {
    return static_cast<double>(i) / panels_ * horizon_;
  }
  std::vector<double> nodes() const;

  bool operator==(const Grid&) const = default;

 private:
  double horizon_;
  int panels_;
};

class GridFunction {
 public:
  // Zero function on `grid`.
  explicit GridFunction(Grid grid);
  // DomainError when values.size() != grid.size() or a value is not finite.
  GridFunction(Grid grid, std::vector<double> values);

  template <class F>
  static GridFunction sample(const Grid& grid, F&& f) {
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.node(i));
    return GridFunction(grid, std::move(v));
  }

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  bool operator==(const GridFunction&) const = default;

 private:
  Grid grid_;
  std::vector<double> values_;
};

// max_i |f_i - g_i|; grids must match.
double sup_distance(const GridFunction& f, const GridFunction& g);
double sup_norm(const GridFunction& f);

}  // namespace uqie
