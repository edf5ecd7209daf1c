#include "uqie/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "uqie/catalog.hpp"
#include "uqie/error.hpp"
#include "uqie/extremal.hpp"
#include "uqie/hypotheses.hpp"
#include "uqie/report.hpp"

namespace uqie {

namespace {

namespace fs = std::filesystem;

Json header(const RunConfig& cfg) {
  return Json{{"schema", kReportSchema}, {"mode", to_string(cfg.mode)}, {"grid_n", cfg.grid_n}, {"seed", cfg.seed}};
}

void write_report(const RunConfig& cfg, const Json& report) {
  write_text(fs::path(cfg.output_dir) / "report.json", report.dump(2) + "\n");
}

int solve_mode(const RunConfig& cfg, std::ostream& log) {
  const Problem p = cfg.problem->build();
  const Grid grid(p.horizon(), cfg.grid_n);
  const CapResolution caps = resolve_caps(p, grid);
  const AuditReport audit = audit_problem(caps.problem, default_lattice(caps.bounds.r));
  const SolveResult res = picard_solve(p, grid, cfg.solver);

  Json report = header(cfg);
  report["caps"] = to_json(caps);
  report["audit"] = to_json(audit);
  report["solve"] = to_json(res);
  if (res.status == SolveStatus::Converged) {
    report["compactness"] = to_json(audit_compactness(caps.problem, res.x, caps.bounds));
  }
  write_text(fs::path(cfg.output_dir) / "solution.csv", to_csv({"t", "x"}, {&res.x}));
  write_report(cfg, report);

  log << "solve: " << to_string(res.status) << " after " << res.iterations << " iterations, residual "
      << res.final_residual() << ", r = " << res.bounds.r << "\n";
  if (res.status != SolveStatus::Converged) return kExitFailedVerdict;
  if (!res.bounds_respected) {
    log << "solution leaves the set 0 < x <= r\n";
    return kExitFailedVerdict;
  }
  return kExitOk;
}

int audit_mode(const RunConfig& cfg, std::ostream& log) {
  const Problem p = cfg.problem->build();
  const Grid grid(p.horizon(), cfg.grid_n);
  const CapResolution caps = resolve_caps(p, grid);
  const AuditReport audit = audit_problem(caps.problem, default_lattice(caps.bounds.r));

  Json report = header(cfg);
  report["caps"] = to_json(caps);
  report["audit"] = to_json(audit);
  write_report(cfg, report);

  log << "audit: " << audit.kernel_samples << " kernel samples, " << audit.majorant_violation_count
      << " majorant violations\n";
  for (const auto& v : audit.majorant_violations) {
    log << "  |f" << v.kernel << "(" << v.t << ", " << v.s << ", " << v.x << ")| = " << v.f << " > m = " << v.m
        << "\n";
  }
  if (!audit.continuity_ok) log << "  " << audit.continuity_violations.size() << " jumps in x\n";
  if (!audit.forcing_nonnegative) log << "  forcing is negative somewhere on [0, T]\n";
  return audit.assumptions_ok() ? kExitOk : kExitFailedVerdict;
}

int extremal_mode(const RunConfig& cfg, std::ostream& log) {
  const Problem p = cfg.problem->build();
  const Grid grid(p.horizon(), cfg.grid_n);
  const SolveResult plain = picard_solve(p, grid, cfg.solver);
  Json report = header(cfg);
  report["solve"] = to_json(plain);
  if (plain.status != SolveStatus::Converged) {
    write_report(cfg, report);
    log << "extremal: plain solve " << to_string(plain.status) << "\n";
    return kExitFailedVerdict;
  }

  FamilyOptions opts;
  opts.warm_start = cfg.extremal.warm_start;
  const auto& sched = cfg.extremal.schedule;
  const double eps_last = sched.values().back();
  const double slack = 10.0 * cfg.solver.tol + eps_last * eps_last;

  bool ok = true;
  GridFunction q = plain.x;
  GridFunction n = plain.x;
  Json families = Json::array();
  for (Sign sign : {Sign::Plus, Sign::Minus}) {
    if (cfg.extremal.sign == SignChoice::Plus && sign == Sign::Minus) continue;
    if (cfg.extremal.sign == SignChoice::Minus && sign == Sign::Plus) continue;
    std::optional<EpsilonFamily> solved;
    try {
      solved = solve_family(p, grid, sched, sign, cfg.solver, opts);
    } catch (const FamilySolveFailed& e) {
      log << "extremal: " << e.what() << "\n";
      report["families"] = families;
      write_report(cfg, report);
      return kExitFailedVerdict;
    }
    const EpsilonFamily& fam = *solved;
    std::vector<std::string> headers{"t", "x"};
    std::vector<const GridFunction*> cols{&plain.x};
    for (std::size_t k = 0; k < fam.solutions.size(); ++k) {
      headers.push_back("x_eps_" + std::to_string(k));
      cols.push_back(&fam.solutions[k].x);
    }
    headers.push_back("x_extrapolated");
    cols.push_back(&fam.extremal_estimate);
    headers.push_back("x_linear");
    cols.push_back(&fam.linear_estimate);
    const char* name = sign == Sign::Plus ? "family_plus.csv" : "family_minus.csv";
    write_text(fs::path(cfg.output_dir) / name, to_csv(headers, cols));

    families.push_back(to_json(fam));
    if (!fam.ordering_ok) {
      log << "extremal: sign " << to_string(sign) << " family is not monotone in eps\n";
      ok = false;
    }
    (sign == Sign::Plus ? q : n) = fam.extremal_estimate;
  }
  const SandwichVerdict verdict = sandwich_check(plain, q, n, slack);
  report["families"] = families;
  report["sandwich"] = to_json(verdict);
  report["sandwich"]["slack"] = slack;
  write_report(cfg, report);
  if (!verdict.holds) {
    log << "extremal: sandwich violated at node " << verdict.worst_node << " (t = " << grid.node(verdict.worst_node)
        << ") by " << verdict.worst_violation << "\n";
    ok = false;
  }
  log << "extremal: " << (ok ? "all verdicts pass" : "failed") << "\n";
  return ok ? kExitOk : kExitFailedVerdict;
}

int lemma_mode(const RunConfig& cfg, std::ostream& log) {
  LemmaOptions opts;
  opts.problems = static_cast<std::size_t>(cfg.lemma.problems);
  opts.grid_n = cfg.grid_n;
  opts.delta = cfg.lemma.delta;
  opts.eps = cfg.lemma.eps;
  const LemmaSummary summary = run_lemma_harness(cfg.seed, opts, cfg.solver);

  std::ostringstream csv;
  csv << "problem,construction,certified,holds,first_crossing\n";
  for (const LemmaPair& pr : summary.pairs) {
    csv << pr.problem << "," << pr.construction << "," << pr.certified << "," << pr.holds << ","
        << pr.first_crossing << "\n";
  }
  write_text(fs::path(cfg.output_dir) / "lemma.csv", csv.str());
  Json report = header(cfg);
  report["lemma"] = to_json(summary);
  write_report(cfg, report);

  log << "lemma: " << summary.problems << " problems, " << summary.certified_pairs << " certified pairs, "
      << summary.counterexamples << " counterexamples\n";
  for (const LemmaPair& pr : summary.pairs) {
    if (pr.certified && !pr.holds) {
      log << "  counterexample: problem " << pr.problem << " " << pr.construction << " crosses at node "
          << pr.first_crossing << "\n";
    }
  }
  return summary.pass() ? kExitOk : kExitFailedVerdict;
}

int corpus_mode(const RunConfig& cfg, std::ostream& log) {
  const auto corpus = manufactured_corpus();
  const auto outcomes = run_corpus(corpus, cfg.grid_n, cfg.solver);

  std::ostringstream csv;
  csv << "id,status,iterations,sup_error,residual,pass\n";
  Json rows = Json::array();
  bool ok = true;
  log << std::left << std::setw(18) << "id" << std::setw(16) << "status" << std::setw(8) << "iters"
      << std::setw(14) << "sup_error" << "pass\n";
  for (const CorpusOutcome& o : outcomes) {
    csv << o.id << "," << to_string(o.status) << "," << o.iterations << "," << format_double(o.sup_error) << ","
        << format_double(o.residual) << "," << (o.pass ? 1 : 0) << "\n";
    rows.push_back(to_json(o));
    log << std::left << std::setw(18) << o.id << std::setw(16) << to_string(o.status) << std::setw(8)
        << o.iterations << std::setw(14) << std::scientific << std::setprecision(3) << o.sup_error
        << std::defaultfloat << (o.pass ? "yes" : "NO") << "\n";
    ok = ok && o.pass;
  }
  write_text(fs::path(cfg.output_dir) / "corpus.csv", csv.str());
  Json report = header(cfg);
  report["corpus"] = rows;
  report["pass"] = ok;
  write_report(cfg, report);
  return ok ? kExitOk : kExitFailedVerdict;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& log) {
  switch (cfg.mode) {
    case Mode::Solve:
      return solve_mode(cfg, log);
    case Mode::Audit:
      return audit_mode(cfg, log);
    case Mode::Extremal:
      return extremal_mode(cfg, log);
    case Mode::Lemma:
      return lemma_mode(cfg, log);
    case Mode::Corpus:
      return corpus_mode(cfg, log);
  }
  return kExitConfigError;
}

int run_cli(int argc, char** argv, std::ostream& log, std::ostream& err) {
  CLI::App app{"Solver and hypothesis auditor for Urysohn quadratic integral equations"};
  std::string config_path;
  std::string mode;
  std::optional<int> grid_n;
  std::optional<double> tol;
  std::optional<double> eps0;
  std::optional<double> rho;
  std::optional<int> count;
  std::string sign;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  app.add_option("--config", config_path, "YAML run configuration");
  app.add_option("--mode", mode, "solve | audit | extremal | lemma | corpus");
  app.add_option("--grid-n", grid_n, "number of grid panels");
  app.add_option("--tol", tol, "sup-norm residual tolerance");
  app.add_option("--eps0", eps0, "first perturbation of the eps schedule");
  app.add_option("--rho", rho, "decay ratio of the eps schedule");
  app.add_option("--count", count, "number of eps values");
  app.add_option("--sign", sign, "+ | - | both");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "seed for randomized modes");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    log << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitConfigError;
  }

  RunConfig cfg;
  if (!config_path.empty()) {
    std::ifstream in(config_path);
    if (!in) {
      err << "cannot read config " << config_path << "\n";
      return kExitConfigError;
    }
    std::stringstream text;
    text << in.rdbuf();
    ConfigResult parsed = parse_config(text.str());
    if (!parsed.ok()) {
      err << format_errors(parsed.errors);
      return kExitConfigError;
    }
    cfg = *parsed.config;
  } else if (mode.empty()) {
    err << "either --config or --mode is required\n";
    return kExitConfigError;
  }

  if (!mode.empty()) {
    const std::string text = "schema: " + std::string(kConfigSchema) + "\nmode: " + mode + "\n";
    ConfigResult probe = parse_config(text);
    const bool mode_ok = probe.ok() || std::none_of(probe.errors.begin(), probe.errors.end(),
                                                    [](const FieldError& e) { return e.field == "mode"; });
    if (!mode_ok) {
      err << "--mode: unknown mode '" << mode << "'\n";
      return kExitConfigError;
    }
    for (Mode m : {Mode::Solve, Mode::Audit, Mode::Extremal, Mode::Lemma, Mode::Corpus}) {
      if (mode == to_string(m)) cfg.mode = m;
    }
  }
  if (grid_n) cfg.grid_n = *grid_n;
  if (tol) cfg.solver.tol = *tol;
  if (eps0) cfg.extremal.schedule.eps0 = *eps0;
  if (rho) cfg.extremal.schedule.rho = *rho;
  if (count) cfg.extremal.schedule.count = *count;
  if (!sign.empty()) {
    if (sign == "+" || sign == "plus") {
      cfg.extremal.sign = SignChoice::Plus;
    } else if (sign == "-" || sign == "minus") {
      cfg.extremal.sign = SignChoice::Minus;
    } else if (sign == "both") {
      cfg.extremal.sign = SignChoice::Both;
    } else {
      err << "--sign: expected +, - or both\n";
      return kExitConfigError;
    }
  }
  if (!out_dir.empty()) cfg.output_dir = out_dir;
  if (seed) cfg.seed = *seed;

  if (const auto errors = validate_config(cfg); !errors.empty()) {
    err << format_errors(errors);
    return kExitConfigError;
  }
  try {
    return run(cfg, log);
  } catch (const NonPositiveForcing& e) {
    err << "problem: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailedVerdict;
  }
}

}  // namespace uqie
