#include "uqie/hypotheses.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "uqie/kernels.hpp"

namespace uqie {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double lattice_point(int k, int count, double hi) {
  return k == count - 1 ? hi : k * hi / (count - 1);
}

// x samples k x_max / nx, k = 1..nx: inside (0, x_max].
double lattice_x(int k, const Lattice& l) { return k == l.nx ? l.x_max : k * l.x_max / l.nx; }

double a_sup_on(const Problem& p, const Grid& grid) {
  const GridFunction a = parallel::sample_forcing(p, grid);
  return sup_norm(a);
}

Bounds bounds_with(const Problem& p, const Grid& grid, double a_sup) {
  Bounds b;
  b.a_sup = a_sup;
  b.M1 = parallel::majorant_bound(p, 1, grid);
  b.M2 = parallel::majorant_bound(p, 2, grid);
  b.r = b.a_sup + ((b.M1 == 0.0 || b.M2 == 0.0) ? 0.0 : b.M1 * b.M2);
  return b;
}

// Largest |f(x_hi) - f(x_lo)| left after repeatedly halving [x_lo, x_hi]
// towards the half with the larger change; stays O(jump) only at a jump.
double residual_jump(const Kernel& f, double t, double s, double lo, double hi) {
  double flo = f(t, s, lo);
  double fhi = f(t, s, hi);
  for (int step = 0; step < 40; ++step) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(t, s, mid);
    if (std::abs(fmid - flo) >= std::abs(fhi - fmid)) {
      hi = mid;
      fhi = fmid;
    } else {
      lo = mid;
      flo = fmid;
    }
  }
  return std::abs(fhi - flo);
}

}  // namespace

Bounds compute_bounds(const Problem& p, const Grid& grid) {
  return bounds_with(p, grid, a_sup_on(p, grid));
}

CapResolution resolve_caps(const Problem& p, const Grid& grid) {
  const double a_sup = a_sup_on(p, grid);
  auto consistent = [](const Problem& q, const Bounds& b) {
    const double cap = std::min(q.f1().smallest_cap(), q.f2().smallest_cap());
    return b.r <= cap + 1e-9 * std::max(1.0, cap);
  };

  if (!p.has_auto_caps()) {
    Bounds b = bounds_with(p, grid, a_sup);
    const bool ok = consistent(p, b);
    return CapResolution{p, b, 0.0, 1, true, ok};
  }

  double cap = a_sup > 0.0 ? a_sup : 1.0;
  Problem q = p.with_auto_caps(cap);
  Bounds b = bounds_with(q, grid, a_sup);
  int passes = 1;
  bool converged = false;
  double prev_change = std::numeric_limits<double>::quiet_NaN();
  double change = std::numeric_limits<double>::quiet_NaN();
  while (passes < 5) {
    const double next_cap = b.r;
    Problem q_next = p.with_auto_caps(next_cap);
    Bounds b_next = bounds_with(q_next, grid, a_sup);
    ++passes;
    prev_change = change;
    change = std::abs(b_next.r - b.r);
    cap = next_cap;
    q = std::move(q_next);
    b = b_next;
    if (change < 1e-9) {
      converged = true;
      break;
    }
  }

  // The passes climb to the fixed point from below, so the last r sits just
  // above the cap it was computed with. Cap at an upper estimate from the
  // geometric tail of the changes and keep it once r(cap) <= cap; the tail
  // is underestimated when r(c) is convex, hence the growing multipliers.
  if (b.r > cap && std::isfinite(b.r)) {
    double tail = 0.0;
    if (!converged) {
      const double ratio = change / prev_change;
      tail = ratio > 0.0 && ratio < 1.0 ? change * ratio / (1.0 - ratio) : kInf;
    }
    for (double mult : {2.0, 8.0, 32.0}) {
      const double upper = (b.r + mult * tail) * (1.0 + 1e-8);
      if (!std::isfinite(upper)) break;
      Problem q_up = p.with_auto_caps(upper);
      const Bounds b_up = bounds_with(q_up, grid, a_sup);
      ++passes;
      if (b_up.r <= upper) {
        q = std::move(q_up);
        b = b_up;
        cap = upper;
        converged = true;
        break;
      }
      if (tail == 0.0) break;
    }
  }
  const bool ok = consistent(q, b);
  return CapResolution{std::move(q), b, cap, passes, converged, ok};
}

Lattice default_lattice(double r) {
  Lattice l;
  l.x_max = r;
  return l;
}

AuditReport audit_caratheodory(const Problem& p, const Lattice& lattice, const AuditTolerances& tol) {
  AuditReport rep;
  rep.x_max = lattice.x_max;
  const double T = p.horizon();
  for (int which = 1; which <= 2; ++which) {
    const Kernel& f = p.kernel(which);
    for (int it = 0; it < lattice.nt; ++it) {
      const double t = lattice_point(it, lattice.nt, T);
      for (int is = 0; is < lattice.ns; ++is) {
        const double s = lattice_point(is, lattice.ns, T);
        if (s > t) break;
        const double m = p.majorant(which, t, s);
        for (int ix = 1; ix <= lattice.nx; ++ix) {
          const double x = lattice_x(ix, lattice);
          const double v = f(t, s, x);
          ++rep.kernel_samples;
          if (!(std::abs(v) <= m + tol.majorant_rel * std::max(1.0, std::abs(m)))) {
            ++rep.majorant_violation_count;
            if (rep.majorant_violations.size() < tol.max_recorded) {
              rep.majorant_violations.push_back({which, t, s, x, v, m});
            }
          }
          if (ix < lattice.nx) {
            const double jump = residual_jump(f, t, s, x, lattice_x(ix + 1, lattice));
            if (jump > tol.continuity_tol && rep.continuity_violations.size() < tol.max_recorded) {
              rep.continuity_violations.push_back({which, t, s, x, jump});
            }
          }
        }
      }
    }
  }
  rep.caratheodory_ok = rep.majorant_violation_count == 0;
  rep.continuity_ok = rep.continuity_violations.empty();
  return rep;
}

AuditReport audit_monotonicity(const Problem& p, const Lattice& lattice, const AuditTolerances& tol) {
  AuditReport rep;
  rep.x_max = lattice.x_max;
  const double T = p.horizon();
  for (int which = 1; which <= 2; ++which) {
    const Kernel& f = p.kernel(which);
    for (int is = 0; is < lattice.ns; ++is) {
      const double s = lattice_point(is, lattice.ns, T);
      for (int it = 0; it < lattice.nt; ++it) {
        const double t = lattice_point(it, lattice.nt, T);
        if (s > t) continue;
        for (int ix = 1; ix <= lattice.nx; ++ix) {
          const double x = lattice_x(ix, lattice);
          const double v = f(t, s, x);
          for (int jt = it + 1; jt < lattice.nt; ++jt) {
            ++rep.t_pairs;
            if (f(lattice_point(jt, lattice.nt, T), s, x) > v + tol.monotone_slack) {
              rep.nonincreasing_in_t_ok = false;
            }
          }
          for (int jx = ix + 1; jx <= lattice.nx; ++jx) {
            ++rep.x_pairs;
            if (f(t, s, lattice_x(jx, lattice)) < v - tol.monotone_slack) {
              rep.nondecreasing_in_x_ok = false;
            }
          }
        }
      }
    }
  }
  return rep;
}

AuditReport audit_problem(const Problem& p, const Lattice& lattice, const AuditTolerances& tol) {
  AuditReport rep = audit_caratheodory(p, lattice, tol);
  const AuditReport mono = audit_monotonicity(p, lattice, tol);
  rep.nonincreasing_in_t_ok = mono.nonincreasing_in_t_ok;
  rep.nondecreasing_in_x_ok = mono.nondecreasing_in_x_ok;
  rep.t_pairs = mono.t_pairs;
  rep.x_pairs = mono.x_pairs;
  const ForcingCheck fc = check_forcing(p);
  rep.forcing_nonnegative = fc.nonnegative;
  rep.forcing_positive = fc.positive;
  return rep;
}

double kernel_infimum(const Problem& p, int which, const Lattice& lattice) {
  const Kernel& f = p.kernel(which);
  const double T = p.horizon();
  double inf = kInf;
  for (int it = 0; it < lattice.nt; ++it) {
    const double t = lattice_point(it, lattice.nt, T);
    for (int is = 0; is < lattice.ns; ++is) {
      const double s = lattice_point(is, lattice.ns, T);
      if (s > t) break;
      for (int ix = 1; ix <= lattice.nx; ++ix) inf = std::min(inf, f(t, s, lattice_x(ix, lattice)));
    }
  }
  return inf;
}

CompactnessAudit audit_compactness(const Problem& p, const GridFunction& x, const Bounds& bounds) {
  const Grid& grid = x.grid();
  const GridFunction a = parallel::sample_forcing(p, grid);
  std::vector<double> fx(grid.size());
  parallel::apply_operator(p, grid, a.values(), x.values(), fx);

  CompactnessAudit out;
  out.sup_image = *std::max_element(fx.begin(), fx.end(), [](double l, double r) {
    return std::abs(l) < std::abs(r);
  });
  out.sup_image = std::abs(out.sup_image);
  out.bounded_ok = out.sup_image <= bounds.r + 1e-12 * std::max(1.0, bounds.r);

  const double h = grid.step();
  // Round-off allowance plus 4 h^2 times the largest second difference of the
  // majorants along s (per h^2).
  double second = 0.0;
  for (int which = 1; which <= 2; ++which) {
    for (std::size_t i = 2; i < grid.size(); ++i) {
      const double t = grid.node(i);
      for (std::size_t j = 1; j < i; ++j) {
        const double d2 = p.majorant(which, t, grid.node(j + 1)) - 2.0 * p.majorant(which, t, grid.node(j)) +
                          p.majorant(which, t, grid.node(j - 1));
        if (std::isfinite(d2)) second = std::max(second, std::abs(d2) / (h * h));
      }
    }
  }
  const double scale = std::max({1.0, bounds.r, out.sup_image});
  out.slack = 4.0 * h * h * second + 1e-12 * scale;

  out.worst_excess = -kInf;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double t0 = grid.node(i);
    const double t1 = grid.node(i + 1);
    double d[2] = {0.0, 0.0};
    for (int which = 1; which <= 2; ++which) {
      const double m_lo = std::max(p.majorant(which, t0, t0), p.majorant(which, t1, t0));
      const double m_hi = std::max(p.majorant(which, t0, t1), p.majorant(which, t1, t1));
      double panel = 0.5 * h * (m_lo + m_hi);
      double tvar = 0.0;
      for (std::size_t j = 0; j <= i; ++j) {
        const double w = (j == 0 || j == i) ? 0.5 * h : h;
        if (i == 0) break;
        tvar += w * p.kernel(which).t_variation(t0, t1, grid.node(j));
      }
      d[which - 1] = panel + tvar;
    }
    const double lhs = std::abs(fx[i + 1] - fx[i]);
    const double rhs = std::abs(a[i + 1] - a[i]) + bounds.M2 * d[0] + bounds.M1 * d[1] + out.slack;
    const double excess = lhs - rhs;
    if (excess > out.worst_excess) {
      out.worst_excess = excess;
      out.worst_node = i;
    }
  }
  out.equicontinuous_ok = !(out.worst_excess > 0.0);
  return out;
}

}  // namespace uqie
