#pragma once

// Shipped manufactured-solution corpus and a seeded generator of random
// catalog problems.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "uqie/comparison.hpp"
#include "uqie/operator.hpp"
#include "uqie/problem.hpp"

namespace uqie {

struct CorpusEntry {
  std::string id;
  TimeFunction x_star;
  Problem problem;
};

// Eight manufactured problems, oracle_n = 2048. The first is x* = 1 with
// f1 = f2 = 0.5 x on [0, 1], i.e. a(t) = 1 - t^2 / 4.
std::vector<CorpusEntry> manufactured_corpus();

// Random forcing in the positive cone and kernels nondecreasing in x with
// auto caps. Deterministic for a given engine state.
Problem random_catalog_problem(std::mt19937_64& rng);

struct CorpusOutcome {
  std::string id;
  SolveStatus status = SolveStatus::MaxIterations;
  int iterations = 0;
  double sup_error = 0.0;
  double residual = 0.0;
  bool pass = false;
};

// Solves every corpus problem on `grid_n` panels and compares with x*.
// Problems run concurrently; results keep corpus order.
std::vector<CorpusOutcome> run_corpus(const std::vector<CorpusEntry>& corpus, int grid_n,
                                      const SolverConfig& cfg, double error_tol = 1e-6);

struct LemmaPair {
  std::size_t problem = 0;
  std::string construction;  // which sub/super pair
  bool certified = false;
  bool holds = false;
  std::size_t first_crossing = 0;
  std::string note;
};

struct LemmaSummary {
  std::size_t problems = 0;
  std::size_t rejected_problems = 0;  // failed the nondecreasing-in-x audit or did not converge
  std::size_t certified_pairs = 0;
  std::size_t counterexamples = 0;
  std::vector<LemmaPair> pairs;

  bool pass() const { return counterexamples == 0 && certified_pairs > 0; }
};

struct LemmaOptions {
  std::size_t problems = 200;
  int grid_n = 100;
  double delta = 0.05;  // sub = (1 - delta) x, super = (1 + delta) x
  double eps = 0.1;     // sub = x_{-eps}, super = x_{+eps}
};

// Falsification harness for the comparison lemma over seeded random problems.
LemmaSummary run_lemma_harness(std::uint64_t seed, const LemmaOptions& opts, const SolverConfig& cfg);

}  // namespace uqie
