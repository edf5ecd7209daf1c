#pragma once

#include <variant>
#include <vector>

#include "uqie/grid.hpp"
#include "uqie/hypotheses.hpp"
#include "uqie/problem.hpp"

namespace uqie {

namespace initial {
struct Forcing {
  bool operator==(const Forcing&) const = default;
};
struct Constant {
  double c = 1.0;
  bool operator==(const Constant&) const = default;
};
struct Given {
  GridFunction x;
  bool operator==(const Given&) const = default;
};
}  // namespace initial

using InitialGuess = std::variant<initial::Forcing, initial::Constant, initial::Given>;

struct SolverConfig {
  double tol = 1e-10;
  int max_iter = 500;
  double damping = 1.0;  // theta in (0, 1]
  InitialGuess x0 = initial::Forcing{};
  int max_halvings = 6;
  bool parallel = true;

  // DomainError when tol <= 0, max_iter < 1 or damping outside (0, 1].
  void validate() const;
  bool operator==(const SolverConfig&) const = default;
};

enum class SolveStatus { Converged, MaxIterations, Diverged };

const char* to_string(SolveStatus s);

struct SolveResult {
  explicit SolveResult(GridFunction initial) : x(std::move(initial)) {}

  GridFunction x;
  std::vector<double> residual_history;
  int iterations = 0;  // operator applications
  SolveStatus status = SolveStatus::MaxIterations;
  bool bounds_respected = false;  // 0 < x_i <= r + tol at every node
  Bounds bounds;
  double damping = 1.0;  // final theta
  int halvings = 0;

  double final_residual() const { return residual_history.empty() ? 0.0 : residual_history.back(); }
};

// (Fx)(t_i) = a(t_i) + I1(t_i) I2(t_i). Uses the OpenMP kernel.
GridFunction apply_F(const Problem& p, const GridFunction& x);

namespace serial {
GridFunction apply_F(const Problem& p, const GridFunction& x);
}

// max_i |x_i - (Fx)_i|.
double residual(const Problem& p, const GridFunction& x);

// Damped Picard x <- (1 - theta) x + theta F(x). A non-finite iterate or
// sup|x| > 10 r halves theta and restarts from the last finite iterate, at
// most max_halvings times; after that the status is Diverged.
SolveResult picard_solve(const Problem& p, const Grid& grid, const SolverConfig& cfg = {});

}  // namespace uqie
