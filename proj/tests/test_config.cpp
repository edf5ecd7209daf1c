#include <doctest.h>

#include <random>
#include <string>

#include "uqie/config.hpp"

using namespace uqie;

namespace {

const char* kMinimal = R"(schema: uqie/1
mode: solve
grid_n: 10
problem:
  horizon: 1
  forcing: {family: constant, c: 1}
  f1: {family: zero}
  f2: {family: zero}
)";

bool has_error(const ConfigResult& r, const std::string& field, const std::string& fragment) {
  for (const FieldError& e : r.errors) {
    if (e.field == field && e.message.find(fragment) != std::string::npos) return true;
  }
  return false;
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
  text.replace(text.find(from), from.size(), to);
  return text;
}

}  // namespace

TEST_CASE("minimal valid config") {
  const ConfigResult r = parse_config(kMinimal);
  REQUIRE(r.ok());
  const RunConfig& c = *r.config;
  CHECK(c.mode == Mode::Solve);
  CHECK(c.grid_n == 10);
  REQUIRE(c.problem.has_value());
  CHECK(c.problem->horizon == 1.0);
  CHECK(c.problem->forcing == TimeFunction::constant(1.0));
  CHECK(c.problem->f1 == Kernel::zero());
  CHECK(c.problem->build() == Problem(TimeFunction::constant(1.0), Kernel::zero(), Kernel::zero(), 1.0));
  CHECK(c.solver == SolverConfig{});
}

TEST_CASE("field errors") {
  const ConfigResult g = parse_config(replace(kMinimal, "grid_n: 10", "grid_n: 1"));
  CHECK_FALSE(g.ok());
  CHECK(has_error(g, "grid_n", ">= 2"));
  REQUIRE_FALSE(g.errors.empty());
  CHECK(g.errors[0].line == 3);

  const ConfigResult rho = parse_config(std::string(kMinimal) + "extremal: {rho: 1.2}\n");
  CHECK_FALSE(rho.ok());
  CHECK(has_error(rho, "extremal.rho", "(0, 1)"));

  const ConfigResult typo = parse_config(replace(kMinimal, "grid_n: 10", "grid_m: 10"));
  CHECK_FALSE(typo.ok());
  CHECK(has_error(typo, "grid_m", "unknown key"));
  CHECK(typo.errors[0].line == 3);
  CHECK(typo.errors[0].column == 1);

  const ConfigResult nested = parse_config(replace(kMinimal, "c: 1}", "c: 1, slope: 2}"));
  CHECK(has_error(nested, "problem.forcing.slope", "unknown key"));

  CHECK(has_error(parse_config(replace(kMinimal, "schema: uqie/1", "schema: uqie/0")), "schema", "unsupported"));
  CHECK(has_error(parse_config(replace(kMinimal, "mode: solve", "mode: fly")), "mode", "unknown mode"));
  CHECK(has_error(parse_config(replace(kMinimal, "{family: zero}\n  f2", "{family: wobble}\n  f2")), "problem.f1.family",
                  "unknown kernel family"));
  CHECK_FALSE(parse_config("schema: [").ok());
  CHECK_FALSE(parse_config("- a\n- b\n").ok());

  const ConfigResult missing = parse_config("schema: uqie/1\nmode: solve\n");
  CHECK_FALSE(missing.ok());

  const std::string text = format_errors(g.errors);
  CHECK(text.find("config:3:") != std::string::npos);
  CHECK(text.find("grid_n") != std::string::npos);
}

TEST_CASE("kernel families and manufactured forcing parse") {
  const std::string text = R"(schema: uqie/1
mode: extremal
grid_n: 50
problem:
  horizon: 2
  manufactured:
    x_star: {family: affine, c0: 1, c1: 0.5}
    oracle_n: 1024
  f1: {family: affine_state, c1: 0.1, c2: 0.3, cap: auto}
  f2:
    family: perturbed
    eps: 0.05
    base: {family: separable, k0: 1, k1: -0.2, k2: 0.5, c1: 0.2, c2: 0.3, cap: 4}
  m1: {family: declared}
  m2: {family: constant, c: 3}
solver: {tol: 1.0e-9, damping: 0.5, x0: {constant: 2}}
extremal: {eps0: 0.2, rho: 0.25, count: 4, sign: minus, warm_start: false}
seed: 7
output_dir: out/x
)";
  const ConfigResult r = parse_config(text);
  REQUIRE_MESSAGE(r.ok(), format_errors(r.errors));
  const RunConfig& c = *r.config;
  CHECK(c.mode == Mode::Extremal);
  CHECK(c.problem->f1 == Kernel::affine_state(0.1, 0.3));
  CHECK(c.problem->f2 == Kernel::perturbed(Kernel::separable(1, -0.2, 0.5, 0.2, 0.3, 4.0), 0.05));
  CHECK(c.problem->m2 == Majorant::constant(3.0));
  REQUIRE(c.problem->manufactured.has_value());
  CHECK(c.problem->manufactured->oracle_n == 1024);
  CHECK(c.solver.damping == 0.5);
  CHECK(std::get<initial::Constant>(c.solver.x0).c == 2.0);
  CHECK(c.extremal.schedule == EpsilonSchedule{0.2, 0.25, 4});
  CHECK(c.extremal.sign == SignChoice::Minus);
  CHECK_FALSE(c.extremal.warm_start);
  CHECK(c.seed == 7u);
  CHECK(c.output_dir == "out/x");
  const Problem p = c.problem->build();
  CHECK(p.forcing().is_manufactured());
  CHECK(parse_config(serialize_config(c)).config == c);
}

namespace {

// Hand-rolled generator of random valid run configs.
struct ConfigGen {
  std::mt19937_64 rng;
  double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

  std::optional<double> cap() {
    if (integer(0, 1)) return std::nullopt;
    return real(0.5, 5.0);
  }

  Kernel kernel(int depth = 0) {
    switch (integer(0, depth > 0 ? 3 : 4)) {
      case 0:
        return Kernel::zero();
      case 1:
        return Kernel::affine_state(real(0, 1), real(0, 1), cap());
      case 2:
        return Kernel::constant_in_t(real(0, 1), real(-1, 2), real(0.1, 2), real(0, 2));
      case 3:
        return Kernel::separable(real(0, 1), real(-0.5, 1), real(-1, 1), real(0, 1), real(0, 1), cap());
      default:
        return Kernel::perturbed(kernel(depth + 1), real(-0.2, 0.2));
    }
  }

  TimeFunction forcing() {
    switch (integer(0, 4)) {
      case 0:
        return TimeFunction::constant(real(0.5, 2));
      case 1:
        return TimeFunction::affine(real(1, 2), real(-0.5, 0.5));
      case 2:
        return TimeFunction::quadratic(real(1, 2), real(-0.2, 0.2), real(-0.1, 0.1));
      case 3:
        return TimeFunction::exponential(real(0.5, 2), real(-1, 1));
      default:
        return TimeFunction::sine(real(1, 2), real(-0.5, 0.5), real(0.1, 5));
    }
  }

  Majorant majorant() { return integer(0, 1) ? Majorant::declared() : Majorant::constant(real(0, 3)); }

  RunConfig config() {
    RunConfig c;
    c.mode = static_cast<Mode>(integer(0, 4));
    c.grid_n = integer(2, 1000);
    c.seed = rng();
    c.output_dir = "out/run" + std::to_string(integer(0, 99));
    c.solver.tol = real(1e-14, 1e-6);
    c.solver.max_iter = integer(1, 1000);
    c.solver.damping = real(0.01, 1.0);
    c.solver.max_halvings = integer(0, 10);
    c.solver.parallel = integer(0, 1);
    if (integer(0, 1)) c.solver.x0 = initial::Constant{real(0.1, 3)};
    c.extremal.schedule = {real(1e-4, 0.5), real(0.05, 0.95), integer(2, 10)};
    c.extremal.sign = static_cast<SignChoice>(integer(0, 2));
    c.extremal.warm_start = integer(0, 1);
    c.lemma = {integer(1, 500), real(0.01, 0.5), real(0.01, 0.5)};
    if (c.mode != Mode::Lemma && c.mode != Mode::Corpus) {
      ProblemSpec ps;
      ps.horizon = real(0.1, 3.0);
      if (integer(0, 3) == 0) {
        ps.manufactured = ManufacturedSpec{TimeFunction::affine(real(0.5, 2), real(0, 1)), integer(1024, 5000)};
      } else {
        ps.forcing = forcing();
      }
      ps.f1 = kernel();
      ps.f2 = kernel();
      ps.m1 = majorant();
      ps.m2 = majorant();
      c.problem = ps;
      if (integer(0, 3) == 0) {
        const Grid g(ps.horizon, c.grid_n);
        c.solver.x0 = initial::Given{GridFunction::sample(g, [&](double) { return real(0.1, 2); })};
      }
    }
    return c;
  }
};

}  // namespace

TEST_CASE("serialize then parse is the identity") {
  ConfigGen gen{std::mt19937_64(61)};
  for (int trial = 0; trial < 300; ++trial) {
    const RunConfig c = gen.config();
    const std::string text = serialize_config(c);
    const ConfigResult r = parse_config(text);
    REQUIRE_MESSAGE(r.ok(), format_errors(r.errors) << text);
    CHECK(*r.config == c);
    CHECK(serialize_config(*r.config) == text);
  }
}

TEST_CASE("validate_config") {
  RunConfig c = *parse_config(kMinimal).config;
  CHECK(validate_config(c).empty());
  c.grid_n = 1;
  c.extremal.schedule.rho = 1.5;
  const auto errs = validate_config(c);
  CHECK(errs.size() == 2);
  c = *parse_config(kMinimal).config;
  c.problem.reset();
  CHECK_FALSE(validate_config(c).empty());
}

TEST_CASE("seed accepts the full unsigned range") {
  const std::string base = "schema: uqie/1\nmode: lemma\nseed: ";
  const ConfigResult big = parse_config(base + "18446744073709551615\n");
  REQUIRE(big.ok());
  CHECK(big.config->seed == 18446744073709551615ull);
  CHECK(has_error(parse_config(base + "-3\n"), "seed", ">= 0"));
  CHECK_FALSE(parse_config(base + "1.5\n").ok());
}
