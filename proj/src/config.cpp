#include "uqie/config.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "uqie/error.hpp"

namespace uqie {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// ------------------------------------------------------------------ reading

class Reader {
 public:
  std::vector<FieldError> errors;

  void fail(const YAML::Node& at, const std::string& field, const std::string& message) {
    FieldError e;
    if (at.IsDefined() && !at.Mark().is_null()) {
      e.line = at.Mark().line + 1;
      e.column = at.Mark().column + 1;
    }
    e.field = field;
    e.message = message;
    errors.push_back(std::move(e));
  }

  bool expect_map(const YAML::Node& node, const std::string& field) {
    if (!node.IsMap()) {
      fail(node, field, "expected a mapping");
      return false;
    }
    return true;
  }

  void allow_keys(const YAML::Node& node, const std::string& field, std::initializer_list<const char*> keys) {
    const std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& kv : node) {
      const auto key = kv.first.as<std::string>();
      if (!allowed.count(key)) fail(kv.first, join(field, key), "unknown key");
    }
  }

  static std::string join(const std::string& parent, const std::string& key) {
    return parent.empty() ? key : parent + "." + key;
  }

  std::optional<double> number(const YAML::Node& node, const std::string& field) {
    try {
      const double v = node.as<double>();
      if (!std::isfinite(v)) {
        fail(node, field, "must be finite");
        return std::nullopt;
      }
      return v;
    } catch (const YAML::Exception&) {
      fail(node, field, "expected a number");
      return std::nullopt;
    }
  }

  // Required numeric parameter of a map.
  double param(const YAML::Node& map, const std::string& field, const char* key) {
    const YAML::Node n = map[key];
    if (!n) {
      fail(map, join(field, key), "missing required parameter");
      return 0.0;
    }
    return number(n, join(field, key)).value_or(0.0);
  }

  double param_or(const YAML::Node& map, const std::string& field, const char* key, double fallback) {
    const YAML::Node n = map[key];
    if (!n) return fallback;
    return number(n, join(field, key)).value_or(fallback);
  }

  std::optional<long long> integer(const YAML::Node& node, const std::string& field) {
    try {
      return node.as<long long>();
    } catch (const YAML::Exception&) {
      fail(node, field, "expected an integer");
      return std::nullopt;
    }
  }

  std::optional<std::uint64_t> unsigned_integer(const YAML::Node& node, const std::string& field) {
    try {
      const std::string raw = node.as<std::string>();
      if (!raw.empty() && raw[0] == '-') {
        fail(node, field, "must be >= 0");
        return std::nullopt;
      }
      return node.as<std::uint64_t>();
    } catch (const YAML::Exception&) {
      fail(node, field, "expected a nonnegative integer");
      return std::nullopt;
    }
  }

  std::optional<std::string> text(const YAML::Node& node, const std::string& field) {
    if (!node.IsScalar()) {
      fail(node, field, "expected a string");
      return std::nullopt;
    }
    return node.as<std::string>();
  }

  std::optional<bool> boolean(const YAML::Node& node, const std::string& field) {
    try {
      return node.as<bool>();
    } catch (const YAML::Exception&) {
      fail(node, field, "expected true or false");
      return std::nullopt;
    }
  }

  std::optional<double> cap(const YAML::Node& map, const std::string& field) {
    const YAML::Node n = map["cap"];
    if (!n || (n.IsScalar() && n.as<std::string>() == "auto")) return std::nullopt;
    return number(n, join(field, "cap"));
  }

  std::optional<TimeFunction> time_function(const YAML::Node& node, const std::string& field) {
    if (!expect_map(node, field)) return std::nullopt;
    const auto family = node["family"] ? text(node["family"], join(field, "family")) : std::nullopt;
    if (!family) {
      if (!node["family"]) fail(node, join(field, "family"), "missing family");
      return std::nullopt;
    }
    const std::size_t before = errors.size();
    std::optional<TimeFunction> out;
    if (*family == "constant") {
      allow_keys(node, field, {"family", "c"});
      out = TimeFunction::constant(param(node, field, "c"));
    } else if (*family == "affine") {
      allow_keys(node, field, {"family", "c0", "c1"});
      out = TimeFunction::affine(param(node, field, "c0"), param(node, field, "c1"));
    } else if (*family == "quadratic") {
      allow_keys(node, field, {"family", "c0", "c1", "c2"});
      const double c0 = param(node, field, "c0");
      const double c1 = param(node, field, "c1");
      out = TimeFunction::quadratic(c0, c1, param(node, field, "c2"));
    } else if (*family == "exponential") {
      allow_keys(node, field, {"family", "c", "rate"});
      const double c = param(node, field, "c");
      out = TimeFunction::exponential(c, param(node, field, "rate"));
    } else if (*family == "sine") {
      allow_keys(node, field, {"family", "c0", "c1", "omega"});
      const double c0 = param(node, field, "c0");
      const double c1 = param(node, field, "c1");
      out = TimeFunction::sine(c0, c1, param(node, field, "omega"));
    } else {
      fail(node["family"], join(field, "family"),
           "unknown forcing family '" + *family + "' (constant, affine, quadratic, exponential, sine)");
    }
    if (errors.size() != before) return std::nullopt;
    return out;
  }

  std::optional<Kernel> kernel(const YAML::Node& node, const std::string& field) {
    if (!expect_map(node, field)) return std::nullopt;
    const auto family = node["family"] ? text(node["family"], join(field, "family")) : std::nullopt;
    if (!family) {
      if (!node["family"]) fail(node, join(field, "family"), "missing family");
      return std::nullopt;
    }
    const std::size_t before = errors.size();
    Kernel::Family fam;
    if (*family == "zero") {
      allow_keys(node, field, {"family"});
      fam = kernel::Zero{};
    } else if (*family == "affine_state") {
      allow_keys(node, field, {"family", "c1", "c2", "cap"});
      kernel::AffineState k;
      k.c1 = param(node, field, "c1");
      k.c2 = param(node, field, "c2");
      k.cap = cap(node, field);
      fam = k;
    } else if (*family == "constant_in_t") {
      allow_keys(node, field, {"family", "w0", "w1", "kappa", "mu"});
      kernel::ConstantInT k;
      k.w0 = param(node, field, "w0");
      k.w1 = param(node, field, "w1");
      k.kappa = param(node, field, "kappa");
      k.mu = param_or(node, field, "mu", 0.0);
      fam = k;
    } else if (*family == "separable") {
      allow_keys(node, field, {"family", "k0", "k1", "k2", "c1", "c2", "cap"});
      kernel::SeparableProduct k;
      k.k0 = param(node, field, "k0");
      k.k1 = param(node, field, "k1");
      k.k2 = param(node, field, "k2");
      k.c1 = param(node, field, "c1");
      k.c2 = param(node, field, "c2");
      k.cap = cap(node, field);
      fam = k;
    } else if (*family == "perturbed") {
      allow_keys(node, field, {"family", "base", "eps"});
      const double eps = param(node, field, "eps");
      std::optional<Kernel> base;
      if (!node["base"]) {
        fail(node, join(field, "base"), "missing base kernel");
      } else {
        base = kernel(node["base"], join(field, "base"));
      }
      if (base) fam = kernel::Perturbed{std::make_shared<const Kernel>(*base), eps};
    } else {
      fail(node["family"], join(field, "family"),
           "unknown kernel family '" + *family + "' (zero, affine_state, constant_in_t, separable, perturbed)");
    }
    if (errors.size() != before) return std::nullopt;
    try {
      return Kernel(fam);
    } catch (const DomainError& e) {
      fail(node, field, e.what());
      return std::nullopt;
    }
  }

  std::optional<Majorant> majorant(const YAML::Node& node, const std::string& field) {
    if (!expect_map(node, field)) return std::nullopt;
    const auto family = node["family"] ? text(node["family"], join(field, "family")) : std::nullopt;
    if (!family) {
      if (!node["family"]) fail(node, join(field, "family"), "missing family");
      return std::nullopt;
    }
    if (*family == "declared") {
      allow_keys(node, field, {"family"});
      return Majorant::declared();
    }
    if (*family == "constant") {
      allow_keys(node, field, {"family", "c"});
      const double c = param(node, field, "c");
      if (!(c >= 0.0)) {
        fail(node, join(field, "c"), "constant majorant must be >= 0");
        return std::nullopt;
      }
      return Majorant::constant(c);
    }
    fail(node["family"], join(field, "family"), "unknown majorant family '" + *family + "' (declared, constant)");
    return std::nullopt;
  }
};

std::optional<Mode> mode_from(const std::string& s) {
  if (s == "solve") return Mode::Solve;
  if (s == "audit") return Mode::Audit;
  if (s == "extremal") return Mode::Extremal;
  if (s == "lemma") return Mode::Lemma;
  if (s == "corpus") return Mode::Corpus;
  return std::nullopt;
}

std::optional<SignChoice> sign_from(const std::string& s) {
  if (s == "+" || s == "plus") return SignChoice::Plus;
  if (s == "-" || s == "minus") return SignChoice::Minus;
  if (s == "both") return SignChoice::Both;
  return std::nullopt;
}

const char* sign_name(SignChoice s) {
  switch (s) {
    case SignChoice::Plus:
      return "+";
    case SignChoice::Minus:
      return "-";
    case SignChoice::Both:
      return "both";
  }
  return "both";
}

// ------------------------------------------------------------------ writing

void emit(YAML::Emitter& out, const TimeFunction& f);
void emit(YAML::Emitter& out, const Kernel& k);

void emit_cap(YAML::Emitter& out, const std::optional<double>& cap) {
  out << YAML::Key << "cap";
  if (cap) {
    out << YAML::Value << *cap;
  } else {
    out << YAML::Value << "auto";
  }
}

void emit(YAML::Emitter& out, const TimeFunction& f) {
  out << YAML::Flow << YAML::BeginMap << YAML::Key << "family" << YAML::Value << std::string(f.family_name());
  std::visit(overloaded{
                 [&](const forcing::Constant& c) { out << YAML::Key << "c" << YAML::Value << c.c; },
                 [&](const forcing::Affine& c) {
                   out << YAML::Key << "c0" << YAML::Value << c.c0 << YAML::Key << "c1" << YAML::Value << c.c1;
                 },
                 [&](const forcing::Quadratic& c) {
                   out << YAML::Key << "c0" << YAML::Value << c.c0 << YAML::Key << "c1" << YAML::Value << c.c1
                       << YAML::Key << "c2" << YAML::Value << c.c2;
                 },
                 [&](const forcing::Exponential& c) {
                   out << YAML::Key << "c" << YAML::Value << c.c << YAML::Key << "rate" << YAML::Value << c.rate;
                 },
                 [&](const forcing::Sine& c) {
                   out << YAML::Key << "c0" << YAML::Value << c.c0 << YAML::Key << "c1" << YAML::Value << c.c1
                       << YAML::Key << "omega" << YAML::Value << c.omega;
                 },
                 [&](const forcing::Manufactured& m) {
                   out << YAML::Key << "x_star" << YAML::Value;
                   emit(out, m.data->x_star);
                   out << YAML::Key << "f1" << YAML::Value;
                   emit(out, m.data->f1);
                   out << YAML::Key << "f2" << YAML::Value;
                   emit(out, m.data->f2);
                   out << YAML::Key << "oracle_n" << YAML::Value << m.data->oracle_n;
                 },
             },
             f.family());
  out << YAML::EndMap;
}

void emit(YAML::Emitter& out, const Kernel& k) {
  out << YAML::Flow << YAML::BeginMap << YAML::Key << "family" << YAML::Value << std::string(k.family_name());
  std::visit(overloaded{
                 [&](const kernel::Zero&) {},
                 [&](const kernel::AffineState& a) {
                   out << YAML::Key << "c1" << YAML::Value << a.c1 << YAML::Key << "c2" << YAML::Value << a.c2;
                   emit_cap(out, a.cap);
                 },
                 [&](const kernel::ConstantInT& c) {
                   out << YAML::Key << "w0" << YAML::Value << c.w0 << YAML::Key << "w1" << YAML::Value << c.w1
                       << YAML::Key << "kappa" << YAML::Value << c.kappa << YAML::Key << "mu" << YAML::Value
                       << c.mu;
                 },
                 [&](const kernel::SeparableProduct& s) {
                   out << YAML::Key << "k0" << YAML::Value << s.k0 << YAML::Key << "k1" << YAML::Value << s.k1
                       << YAML::Key << "k2" << YAML::Value << s.k2 << YAML::Key << "c1" << YAML::Value << s.c1
                       << YAML::Key << "c2" << YAML::Value << s.c2;
                   emit_cap(out, s.cap);
                 },
                 [&](const kernel::Perturbed& p) {
                   out << YAML::Key << "eps" << YAML::Value << p.eps << YAML::Key << "base" << YAML::Value;
                   emit(out, *p.base);
                 },
             },
             k.family());
  out << YAML::EndMap;
}

void emit(YAML::Emitter& out, const Majorant& m) {
  out << YAML::Flow << YAML::BeginMap;
  if (const auto* c = std::get_if<majorant::Constant>(&m.family())) {
    out << YAML::Key << "family" << YAML::Value << "constant" << YAML::Key << "c" << YAML::Value << c->c;
  } else {
    out << YAML::Key << "family" << YAML::Value << "declared";
  }
  out << YAML::EndMap;
}

void configure(YAML::Emitter& out) {
  out.SetDoublePrecision(17);
  out.SetFloatPrecision(9);
}

}  // namespace

const char* to_string(Mode m) {
  switch (m) {
    case Mode::Solve:
      return "solve";
    case Mode::Audit:
      return "audit";
    case Mode::Extremal:
      return "extremal";
    case Mode::Lemma:
      return "lemma";
    case Mode::Corpus:
      return "corpus";
  }
  return "solve";
}

Problem ProblemSpec::build() const {
  if (manufactured) {
    Problem p = make_manufactured(manufactured->x_star, f1, f2, horizon, manufactured->oracle_n);
    return p.with_majorants(m1, m2);
  }
  return Problem(forcing.value_or(TimeFunction::constant(0.0)), f1, f2, horizon, m1, m2);
}

std::string format_errors(const std::vector<FieldError>& errors) {
  std::ostringstream out;
  for (const FieldError& e : errors) {
    out << "config";
    if (e.line > 0) out << ":" << e.line << ":" << e.column;
    out << ": " << (e.field.empty() ? "<root>" : e.field) << ": " << e.message << "\n";
  }
  return out.str();
}

std::vector<FieldError> validate_config(const RunConfig& cfg) {
  std::vector<FieldError> errs;
  auto add = [&errs](const char* field, const std::string& msg) { errs.push_back({0, 0, field, msg}); };
  if (cfg.grid_n < 2) add("grid_n", "must be >= 2");
  if (!(cfg.solver.tol > 0.0)) add("solver.tol", "must be > 0");
  if (cfg.solver.max_iter < 1) add("solver.max_iter", "must be >= 1");
  if (!(cfg.solver.damping > 0.0 && cfg.solver.damping <= 1.0)) add("solver.damping", "must lie in (0, 1]");
  if (cfg.solver.max_halvings < 0) add("solver.max_halvings", "must be >= 0");
  if (!(cfg.extremal.schedule.eps0 > 0.0)) add("extremal.eps0", "must be > 0");
  if (!(cfg.extremal.schedule.rho > 0.0 && cfg.extremal.schedule.rho < 1.0)) {
    add("extremal.rho", "decay ratio must lie in (0, 1)");
  }
  if (cfg.extremal.schedule.count < 2) add("extremal.count", "must be >= 2");
  if (cfg.lemma.problems < 1) add("lemma.problems", "must be >= 1");
  if (!(cfg.lemma.delta > 0.0 && cfg.lemma.delta < 1.0)) add("lemma.delta", "must lie in (0, 1)");
  if (!(cfg.lemma.eps > 0.0)) add("lemma.eps", "must be > 0");
  if (cfg.output_dir.empty()) add("output_dir", "must not be empty");
  const bool needs_problem = cfg.mode == Mode::Solve || cfg.mode == Mode::Audit || cfg.mode == Mode::Extremal;
  if (needs_problem && !cfg.problem) add("problem", std::string("required for mode ") + to_string(cfg.mode));
  if (cfg.problem) {
    const ProblemSpec& ps = *cfg.problem;
    if (!(ps.horizon > 0.0)) add("problem.horizon", "must be > 0");
    if (ps.forcing.has_value() == ps.manufactured.has_value()) {
      add("problem", "exactly one of forcing and manufactured is required");
    }
    if (ps.manufactured && ps.manufactured->oracle_n < 1024) add("problem.manufactured.oracle_n", "must be >= 1024");
    if (ps.horizon > 0.0) {
      try {
        Problem(TimeFunction::constant(0.0), ps.f1, ps.f2, ps.horizon, ps.m1, ps.m2);
      } catch (const DomainError& e) {
        add("problem", e.what());
      }
    }
  }
  if (const auto* g = std::get_if<initial::Given>(&cfg.solver.x0)) {
    if (!cfg.problem) {
      add("solver.x0", "given initial guess needs a problem");
    } else if (g->x.size() != static_cast<std::size_t>(cfg.grid_n) + 1) {
      add("solver.x0", "given initial guess needs grid_n + 1 values");
    }
  }
  return errs;
}

ConfigResult parse_config(const std::string& text) {
  ConfigResult result;
  Reader rd;
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    result.errors.push_back({e.mark.line + 1, e.mark.column + 1, "", e.msg});
    return result;
  }
  if (!root.IsMap()) {
    result.errors.push_back({1, 1, "", "config must be a mapping"});
    return result;
  }
  rd.allow_keys(root, "", {"schema", "mode", "problem", "grid_n", "solver", "extremal", "lemma", "output_dir", "seed"});

  RunConfig cfg;
  if (!root["schema"]) {
    rd.fail(root, "schema", std::string("missing schema key (expected ") + kConfigSchema + ")");
  } else if (auto s = rd.text(root["schema"], "schema"); s && *s != kConfigSchema) {
    rd.fail(root["schema"], "schema", "unsupported schema '" + *s + "' (expected " + kConfigSchema + ")");
  }
  if (!root["mode"]) {
    rd.fail(root, "mode", "missing mode");
  } else if (auto m = rd.text(root["mode"], "mode")) {
    if (auto mode = mode_from(*m)) {
      cfg.mode = *mode;
    } else {
      rd.fail(root["mode"], "mode", "unknown mode '" + *m + "' (solve, audit, extremal, lemma, corpus)");
    }
  }
  if (root["grid_n"]) {
    if (auto n = rd.integer(root["grid_n"], "grid_n")) {
      if (*n < 2) {
        rd.fail(root["grid_n"], "grid_n", "must be >= 2");
      } else {
        cfg.grid_n = static_cast<int>(*n);
      }
    }
  }
  if (root["seed"]) {
    if (auto n = rd.unsigned_integer(root["seed"], "seed")) cfg.seed = *n;
  }
  if (root["output_dir"]) {
    if (auto s = rd.text(root["output_dir"], "output_dir")) cfg.output_dir = *s;
  }

  std::optional<std::vector<double>> given_x0;
  if (const YAML::Node s = root["solver"]; s && rd.expect_map(s, "solver")) {
    rd.allow_keys(s, "solver", {"tol", "max_iter", "damping", "max_halvings", "x0", "parallel"});
    cfg.solver.tol = rd.param_or(s, "solver", "tol", cfg.solver.tol);
    if (!(cfg.solver.tol > 0.0)) rd.fail(s["tol"], "solver.tol", "must be > 0");
    if (s["max_iter"]) {
      if (auto n = rd.integer(s["max_iter"], "solver.max_iter")) {
        if (*n < 1) rd.fail(s["max_iter"], "solver.max_iter", "must be >= 1");
        cfg.solver.max_iter = static_cast<int>(*n);
      }
    }
    if (s["max_halvings"]) {
      if (auto n = rd.integer(s["max_halvings"], "solver.max_halvings")) {
        if (*n < 0) rd.fail(s["max_halvings"], "solver.max_halvings", "must be >= 0");
        cfg.solver.max_halvings = static_cast<int>(*n);
      }
    }
    cfg.solver.damping = rd.param_or(s, "solver", "damping", cfg.solver.damping);
    if (!(cfg.solver.damping > 0.0 && cfg.solver.damping <= 1.0)) {
      rd.fail(s["damping"], "solver.damping", "must lie in (0, 1]");
    }
    if (s["parallel"]) {
      if (auto b = rd.boolean(s["parallel"], "solver.parallel")) cfg.solver.parallel = *b;
    }
    if (const YAML::Node x0 = s["x0"]) {
      if (x0.IsScalar() && x0.as<std::string>() == "forcing") {
        cfg.solver.x0 = initial::Forcing{};
      } else if (x0.IsMap() && x0.size() == 1 && x0["constant"]) {
        if (auto c = rd.number(x0["constant"], "solver.x0.constant")) {
          if (*c <= 0.0) rd.fail(x0["constant"], "solver.x0.constant", "must be > 0");
          cfg.solver.x0 = initial::Constant{*c};
        }
      } else if (x0.IsMap() && x0.size() == 1 && x0["given"] && x0["given"].IsSequence()) {
        std::vector<double> v;
        for (const auto& e : x0["given"]) v.push_back(rd.number(e, "solver.x0.given").value_or(0.0));
        given_x0 = std::move(v);
      } else {
        rd.fail(x0, "solver.x0", "expected forcing, {constant: c} or {given: [...]}");
      }
    }
  }

  if (const YAML::Node e = root["extremal"]; e && rd.expect_map(e, "extremal")) {
    rd.allow_keys(e, "extremal", {"eps0", "rho", "count", "sign", "warm_start"});
    auto& sched = cfg.extremal.schedule;
    sched.eps0 = rd.param_or(e, "extremal", "eps0", sched.eps0);
    if (!(sched.eps0 > 0.0)) rd.fail(e["eps0"], "extremal.eps0", "must be > 0");
    sched.rho = rd.param_or(e, "extremal", "rho", sched.rho);
    if (!(sched.rho > 0.0 && sched.rho < 1.0)) rd.fail(e["rho"], "extremal.rho", "decay ratio must lie in (0, 1)");
    if (e["count"]) {
      if (auto n = rd.integer(e["count"], "extremal.count")) {
        if (*n < 2) rd.fail(e["count"], "extremal.count", "must be >= 2");
        sched.count = static_cast<int>(*n);
      }
    }
    if (e["sign"]) {
      if (auto s = rd.text(e["sign"], "extremal.sign")) {
        if (auto sign = sign_from(*s)) {
          cfg.extremal.sign = *sign;
        } else {
          rd.fail(e["sign"], "extremal.sign", "expected +, - or both");
        }
      }
    }
    if (e["warm_start"]) {
      if (auto b = rd.boolean(e["warm_start"], "extremal.warm_start")) cfg.extremal.warm_start = *b;
    }
  }

  if (const YAML::Node l = root["lemma"]; l && rd.expect_map(l, "lemma")) {
    rd.allow_keys(l, "lemma", {"problems", "delta", "eps"});
    if (l["problems"]) {
      if (auto n = rd.integer(l["problems"], "lemma.problems")) {
        if (*n < 1) rd.fail(l["problems"], "lemma.problems", "must be >= 1");
        cfg.lemma.problems = static_cast<int>(*n);
      }
    }
    cfg.lemma.delta = rd.param_or(l, "lemma", "delta", cfg.lemma.delta);
    if (!(cfg.lemma.delta > 0.0 && cfg.lemma.delta < 1.0)) rd.fail(l["delta"], "lemma.delta", "must lie in (0, 1)");
    cfg.lemma.eps = rd.param_or(l, "lemma", "eps", cfg.lemma.eps);
    if (!(cfg.lemma.eps > 0.0)) rd.fail(l["eps"], "lemma.eps", "must be > 0");
  }

  if (const YAML::Node p = root["problem"]; p && rd.expect_map(p, "problem")) {
    rd.allow_keys(p, "problem", {"horizon", "forcing", "manufactured", "f1", "f2", "m1", "m2"});
    ProblemSpec ps;
    const std::size_t before = rd.errors.size();
    if (!p["horizon"]) {
      rd.fail(p, "problem.horizon", "missing required parameter");
    } else if (auto h = rd.number(p["horizon"], "problem.horizon")) {
      if (*h <= 0.0) rd.fail(p["horizon"], "problem.horizon", "must be > 0");
      ps.horizon = *h;
    }
    if (p["forcing"] && p["manufactured"]) {
      rd.fail(p["manufactured"], "problem.manufactured", "give either forcing or manufactured, not both");
    } else if (p["forcing"]) {
      ps.forcing = rd.time_function(p["forcing"], "problem.forcing");
    } else if (const YAML::Node m = p["manufactured"]) {
      if (rd.expect_map(m, "problem.manufactured")) {
        rd.allow_keys(m, "problem.manufactured", {"x_star", "oracle_n"});
        ManufacturedSpec ms;
        if (!m["x_star"]) {
          rd.fail(m, "problem.manufactured.x_star", "missing x_star");
        } else if (auto xs = rd.time_function(m["x_star"], "problem.manufactured.x_star")) {
          ms.x_star = *xs;
        }
        if (m["oracle_n"]) {
          if (auto n = rd.integer(m["oracle_n"], "problem.manufactured.oracle_n")) {
            if (*n < 1024) rd.fail(m["oracle_n"], "problem.manufactured.oracle_n", "must be >= 1024");
            ms.oracle_n = static_cast<int>(*n);
          }
        }
        ps.manufactured = ms;
      }
    } else {
      rd.fail(p, "problem.forcing", "missing forcing (or manufactured)");
    }
    for (const char* key : {"f1", "f2"}) {
      const std::string field = std::string("problem.") + key;
      if (!p[key]) {
        rd.fail(p, field, "missing kernel");
      } else if (auto k = rd.kernel(p[key], field)) {
        (key[1] == '1' ? ps.f1 : ps.f2) = *k;
      }
    }
    for (const char* key : {"m1", "m2"}) {
      if (!p[key]) continue;
      if (auto m = rd.majorant(p[key], std::string("problem.") + key)) (key[1] == '1' ? ps.m1 : ps.m2) = *m;
    }
    if (rd.errors.size() == before) cfg.problem = ps;
  }

  if (given_x0) {
    if (!cfg.problem) {
      rd.fail(root["solver"]["x0"], "solver.x0", "given initial guess needs a problem");
    } else if (given_x0->size() != static_cast<std::size_t>(cfg.grid_n) + 1) {
      rd.fail(root["solver"]["x0"], "solver.x0", "given initial guess needs grid_n + 1 values");
    } else {
      cfg.solver.x0 = initial::Given{GridFunction(Grid(cfg.problem->horizon, cfg.grid_n), *given_x0)};
    }
  }

  if (rd.errors.empty()) {
    for (FieldError& e : validate_config(cfg)) rd.errors.push_back(std::move(e));
  }
  result.errors = std::move(rd.errors);
  if (result.errors.empty()) result.config = std::move(cfg);
  return result;
}

std::string serialize_config(const RunConfig& cfg) {
  YAML::Emitter out;
  configure(out);
  out << YAML::BeginMap;
  out << YAML::Key << "schema" << YAML::Value << kConfigSchema;
  out << YAML::Key << "mode" << YAML::Value << to_string(cfg.mode);
  out << YAML::Key << "grid_n" << YAML::Value << cfg.grid_n;
  out << YAML::Key << "seed" << YAML::Value << cfg.seed;
  out << YAML::Key << "output_dir" << YAML::Value << YAML::DoubleQuoted << cfg.output_dir;
  if (cfg.problem) {
    const ProblemSpec& ps = *cfg.problem;
    out << YAML::Key << "problem" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "horizon" << YAML::Value << ps.horizon;
    if (ps.manufactured) {
      out << YAML::Key << "manufactured" << YAML::Value << YAML::BeginMap;
      out << YAML::Key << "x_star" << YAML::Value;
      emit(out, ps.manufactured->x_star);
      out << YAML::Key << "oracle_n" << YAML::Value << ps.manufactured->oracle_n;
      out << YAML::EndMap;
    } else if (ps.forcing) {
      out << YAML::Key << "forcing" << YAML::Value;
      emit(out, *ps.forcing);
    }
    out << YAML::Key << "f1" << YAML::Value;
    emit(out, ps.f1);
    out << YAML::Key << "f2" << YAML::Value;
    emit(out, ps.f2);
    out << YAML::Key << "m1" << YAML::Value;
    emit(out, ps.m1);
    out << YAML::Key << "m2" << YAML::Value;
    emit(out, ps.m2);
    out << YAML::EndMap;
  }
  out << YAML::Key << "solver" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "tol" << YAML::Value << cfg.solver.tol;
  out << YAML::Key << "max_iter" << YAML::Value << cfg.solver.max_iter;
  out << YAML::Key << "damping" << YAML::Value << cfg.solver.damping;
  out << YAML::Key << "max_halvings" << YAML::Value << cfg.solver.max_halvings;
  out << YAML::Key << "parallel" << YAML::Value << cfg.solver.parallel;
  out << YAML::Key << "x0" << YAML::Value;
  std::visit(overloaded{
                 [&](const initial::Forcing&) { out << "forcing"; },
                 [&](const initial::Constant& c) {
                   out << YAML::Flow << YAML::BeginMap << YAML::Key << "constant" << YAML::Value << c.c
                       << YAML::EndMap;
                 },
                 [&](const initial::Given& g) {
                   out << YAML::Flow << YAML::BeginMap << YAML::Key << "given" << YAML::Value << YAML::BeginSeq;
                   for (double v : g.x.values()) out << v;
                   out << YAML::EndSeq << YAML::EndMap;
                 },
             },
             cfg.solver.x0);
  out << YAML::EndMap;
  out << YAML::Key << "extremal" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "eps0" << YAML::Value << cfg.extremal.schedule.eps0;
  out << YAML::Key << "rho" << YAML::Value << cfg.extremal.schedule.rho;
  out << YAML::Key << "count" << YAML::Value << cfg.extremal.schedule.count;
  out << YAML::Key << "sign" << YAML::Value << YAML::DoubleQuoted << sign_name(cfg.extremal.sign);
  out << YAML::Key << "warm_start" << YAML::Value << cfg.extremal.warm_start;
  out << YAML::EndMap;
  out << YAML::Key << "lemma" << YAML::Value << YAML::BeginMap;
  out << YAML::Key << "problems" << YAML::Value << cfg.lemma.problems;
  out << YAML::Key << "delta" << YAML::Value << cfg.lemma.delta;
  out << YAML::Key << "eps" << YAML::Value << cfg.lemma.eps;
  out << YAML::EndMap;
  out << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

std::string serialize_problem(const Problem& p) {
  YAML::Emitter out;
  configure(out);
  out << YAML::BeginMap;
  out << YAML::Key << "horizon" << YAML::Value << p.horizon();
  out << YAML::Key << "forcing" << YAML::Value;
  emit(out, p.forcing());
  out << YAML::Key << "f1" << YAML::Value;
  emit(out, p.f1());
  out << YAML::Key << "f2" << YAML::Value;
  emit(out, p.f2());
  out << YAML::Key << "m1" << YAML::Value;
  emit(out, p.m1());
  out << YAML::Key << "m2" << YAML::Value;
  emit(out, p.m2());
  out << YAML::EndMap;
  return out.c_str();
}

std::string fingerprint(const Problem& p) { return serialize_problem(p); }

}  // namespace uqie
