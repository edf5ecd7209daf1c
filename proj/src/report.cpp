#include "uqie/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "uqie/error.hpp"

namespace uqie {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json to_json(const Bounds& b) {
  return Json{{"a_sup", b.a_sup}, {"M1", b.M1}, {"M2", b.M2}, {"r", b.r}};
}

Json to_json(const CapResolution& c) {
  return Json{{"bounds", to_json(c.bounds)},
              {"cap", c.cap},
              {"passes", c.passes},
              {"converged", c.converged},
              {"self_consistent", c.self_consistent}};
}

Json to_json(const AuditReport& a) {
  Json violations = Json::array();
  for (const auto& v : a.majorant_violations) {
    violations.push_back(Json{{"kernel", v.kernel}, {"t", v.t}, {"s", v.s}, {"x", v.x}, {"f", v.f}, {"m", v.m}});
  }
  Json jumps = Json::array();
  for (const auto& v : a.continuity_violations) {
    jumps.push_back(Json{{"kernel", v.kernel}, {"t", v.t}, {"s", v.s}, {"x", v.x}, {"jump", v.jump}});
  }
  return Json{{"assumptions_ok", a.assumptions_ok()},
              {"caratheodory_ok", a.caratheodory_ok},
              {"majorant_violation_count", a.majorant_violation_count},
              {"majorant_violations", violations},
              {"continuity_ok", a.continuity_ok},
              {"continuity_violations", jumps},
              {"nonincreasing_in_t_ok", a.nonincreasing_in_t_ok},
              {"nondecreasing_in_x_ok", a.nondecreasing_in_x_ok},
              {"forcing_nonnegative", a.forcing_nonnegative},
              {"forcing_positive", a.forcing_positive},
              {"x_max", a.x_max},
              {"sample_counts", Json{{"kernel", a.kernel_samples}, {"t_pairs", a.t_pairs}, {"x_pairs", a.x_pairs}}}};
}

Json to_json(const CompactnessAudit& c) {
  return Json{{"bounded_ok", c.bounded_ok},
              {"sup_image", c.sup_image},
              {"equicontinuous_ok", c.equicontinuous_ok},
              {"worst_node", c.worst_node},
              {"worst_excess", c.worst_excess},
              {"slack", c.slack}};
}

Json to_json(const SolveResult& r) {
  return Json{{"status", to_string(r.status)},
              {"iterations", r.iterations},
              {"final_residual", r.final_residual()},
              {"bounds_respected", r.bounds_respected},
              {"bounds", to_json(r.bounds)},
              {"damping", r.damping},
              {"halvings", r.halvings},
              {"residual_history", r.residual_history}};
}

Json to_json(const OrderingVerdict& v) {
  Json j{{"holds", v.holds}};
  j["first_crossing"] = v.first_crossing ? Json(*v.first_crossing) : Json(nullptr);
  return j;
}

Json to_json(const SandwichVerdict& v) {
  return Json{{"holds", v.holds}, {"worst_node", v.worst_node}, {"worst_violation", v.worst_violation}};
}

Json to_json(const EpsilonFamily& f) {
  Json members = Json::array();
  for (std::size_t k = 0; k < f.solutions.size(); ++k) {
    members.push_back(Json{{"eps", f.eps[k]},
                           {"status", to_string(f.solutions[k].status)},
                           {"iterations", f.solutions[k].iterations},
                           {"final_residual", f.solutions[k].final_residual()}});
  }
  return Json{{"sign", to_string(f.sign)},
              {"eps0", f.schedule.eps0},
              {"rho", f.schedule.rho},
              {"count", f.schedule.count},
              {"ordering_ok", f.ordering_ok},
              {"negative_kernel", f.negative_kernel},
              {"members", members}};
}

Json to_json(const CorpusOutcome& o) {
  return Json{{"id", o.id},
              {"status", to_string(o.status)},
              {"iterations", o.iterations},
              {"sup_error", o.sup_error},
              {"residual", o.residual},
              {"pass", o.pass}};
}

Json to_json(const LemmaSummary& s) {
  return Json{{"pass", s.pass()},
              {"problems", s.problems},
              {"rejected_problems", s.rejected_problems},
              {"pairs", s.pairs.size()},
              {"certified_pairs", s.certified_pairs},
              {"counterexamples", s.counterexamples}};
}

std::string to_csv(const std::vector<std::string>& headers, const std::vector<const GridFunction*>& columns) {
  if (columns.empty() || headers.size() != columns.size() + 1) throw DomainError("csv header/column mismatch");
  const Grid& grid = columns.front()->grid();
  std::ostringstream out;
  for (std::size_t c = 0; c < headers.size(); ++c) out << (c ? "," : "") << headers[c];
  out << "\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    out << format_double(grid.node(i));
    for (const GridFunction* col : columns) out << "," << format_double((*col)[i]);
    out << "\n";
  }
  return out.str();
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace uqie
