#pragma once

// Run configuration: a YAML document with a versioned `schema` key. Kernels
// and forcing terms are named catalog families with a parameter map, e.g.
//
//   schema: uqie/1
//   mode: solve
//   grid_n: 100
//   problem:
//     horizon: 1
//     forcing: {family: constant, c: 1}
//     f1: {family: affine_state, c1: 0, c2: 0.5, cap: auto}
//     f2: {family: zero}
//
// Unknown keys are errors.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "uqie/extremal.hpp"
#include "uqie/operator.hpp"
#include "uqie/problem.hpp"

namespace uqie {

inline constexpr const char* kConfigSchema = "uqie/1";

enum class Mode { Solve, Audit, Extremal, Lemma, Corpus };

const char* to_string(Mode m);

struct ManufacturedSpec {
  TimeFunction x_star;
  int oracle_n = 4096;
  bool operator==(const ManufacturedSpec&) const = default;
};

struct ProblemSpec {
  double horizon = 1.0;
  // Exactly one of forcing / manufactured is set.
  std::optional<TimeFunction> forcing;
  std::optional<ManufacturedSpec> manufactured;
  Kernel f1;
  Kernel f2;
  Majorant m1;
  Majorant m2;

  Problem build() const;
  bool operator==(const ProblemSpec&) const = default;
};

enum class SignChoice { Plus, Minus, Both };

struct ExtremalSpec {
  EpsilonSchedule schedule;
  SignChoice sign = SignChoice::Both;
  bool warm_start = true;
  bool operator==(const ExtremalSpec&) const = default;
};

struct LemmaSpec {
  int problems = 200;
  double delta = 0.05;
  double eps = 0.1;
  bool operator==(const LemmaSpec&) const = default;
};

struct RunConfig {
  Mode mode = Mode::Solve;
  std::optional<ProblemSpec> problem;  // required for solve, audit, extremal
  int grid_n = 400;
  SolverConfig solver;
  ExtremalSpec extremal;
  LemmaSpec lemma;
  std::string output_dir = "out";
  std::uint64_t seed = 0;

  bool operator==(const RunConfig&) const = default;
};

struct FieldError {
  int line = 0;  // 1-based; 0 when not tied to a position
  int column = 0;
  std::string field;
  std::string message;
};

struct ConfigResult {
  std::optional<RunConfig> config;
  std::vector<FieldError> errors;

  bool ok() const { return config.has_value(); }
};

std::string format_errors(const std::vector<FieldError>& errors);

ConfigResult parse_config(const std::string& text);

// Re-validates an in-memory config (e.g. after CLI overrides).
std::vector<FieldError> validate_config(const RunConfig& cfg);

// Canonical YAML; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& cfg);

// Canonical YAML of a built problem.
std::string serialize_problem(const Problem& p);

}  // namespace uqie
