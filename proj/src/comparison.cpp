#include "uqie/comparison.hpp"

#include <sstream>

#include "uqie/error.hpp"
#include "uqie/operator.hpp"

namespace uqie {

const char* to_string(Role r) { return r == Role::Subsolution ? "subsolution" : "supersolution"; }

SolutionRole certify_role(const Problem& p, const GridFunction& g, Role expected,
                          const ComparisonTolerances& tol) {
  const GridFunction fg = apply_F(p, g);
  std::vector<double> margin(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) margin[i] = g[i] - fg[i];

  // Orient so that the expected role always reads "signed <= slack".
  const double sign = expected == Role::Subsolution ? 1.0 : -1.0;
  std::size_t worst = 0;
  bool holds = true;
  bool strict = true;
  for (std::size_t i = 0; i < margin.size(); ++i) {
    const double m = sign * margin[i];
    if (m > sign * margin[worst]) worst = i;
    if (m > tol.slack_tol) holds = false;
    if (i > 0 && m > -tol.strict_margin) strict = false;
  }
  if (!holds) {
    std::ostringstream msg;
    msg << "not a " << to_string(expected) << ": margin " << margin[worst] << " at node " << worst
        << " (t = " << g.grid().node(worst) << ")";
    throw RoleViolated(msg.str(), worst, margin[worst]);
  }
  return SolutionRole{expected, strict, g, GridFunction(g.grid(), std::move(margin)), fingerprint(p)};
}

OrderingVerdict check_ordering(const SolutionRole& sub, const SolutionRole& super,
                               bool kernels_nondecreasing_in_x) {
  if (sub.role != Role::Subsolution || super.role != Role::Supersolution) {
    throw PreconditionUnmet("ordering needs a subsolution and a supersolution");
  }
  if (sub.problem_id != super.problem_id) {
    throw PreconditionUnmet("roles were certified against different problems");
  }
  if (!(sub.function.grid() == super.function.grid())) {
    throw PreconditionUnmet("roles live on different grids");
  }
  if (!kernels_nondecreasing_in_x) {
    throw PreconditionUnmet("kernels are not audited nondecreasing in x");
  }
  if (!sub.strict && !super.strict) {
    throw PreconditionUnmet("at least one of the roles must be strict");
  }
  OrderingVerdict v;
  for (std::size_t i = 1; i < sub.function.size(); ++i) {
    if (!(sub.function[i] < super.function[i])) {
      v.holds = false;
      v.first_crossing = i;
      break;
    }
  }
  return v;
}

}  // namespace uqie
