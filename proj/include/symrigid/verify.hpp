#pragma once

#include "symrigid/forced.hpp"
#include "symrigid/transfer.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace symrigid {

struct SuiteOptions {
  int trials = 0;  // 0 picks the suite default
  std::uint64_t seed = 1;
  double tol = 1e-9;
  int threads = 0;  // 0 = hardware concurrency
};

struct SuiteResult {
  std::string suite;
  int cases = 0;
  int failures = 0;
  std::vector<std::string> messages;  // first failures, in trial order
  std::string summary;
  double seconds = 0.0;
  bool ok() const { return cases > 0 && failures == 0; }
};

std::vector<std::string> suite_names();
// Throws InvalidArgument for an unknown suite.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt = {});

// Per-trial generator, independent of the thread that runs the trial.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t trial);

// Random gain graph without identity loops or edges that lift to the same edge.
GainGraph random_gain_graph(const SymmetryGroup& group, int vertices, int edges, std::mt19937_64& rng);

// Connected Z2-gain graphs with 1..max_vertices vertices and at most two edges
// per vertex, one per switching-and-relabeling class. Loops carry the
// non-identity gain; at most one edge per (pair, gain).
std::vector<GainGraph> enumerate_z2_gain_graphs(int max_vertices);

struct CuratedCase {
  std::string name;
  SymmetricGraph sg;
};
// (2,3)-tight graphs (plus one overbraced one) with mirror, half-turn and
// three-fold actions covering both outcomes of the fixed-element counts.
std::vector<CuratedCase> isostatic_corpus();

// Realization of K4 minus an edge with half-turn symmetry at small integers.
struct Fixture {
  EuclideanFramework fw;
  SymmetricGraph sg;
};
Fixture k4_minus_edge_fixture();

}  // namespace symrigid
