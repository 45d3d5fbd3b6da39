#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pseudochain/blackbox.hpp"
#include "pseudochain/dynamics.hpp"
#include "pseudochain/tomography.hpp"
#include "pseudochain/topology.hpp"

namespace pseudochain {

/// Predicted two-excitation moment difference of a block-size pattern:
/// 2 (prod J^2) sum_i binom(N-1, i-1)^2 (N_i - 1)/N_i.
double pattern_difference_value(const std::vector<int>& pattern,
                                const std::vector<double>& couplings);

struct CandidateTable {
  std::vector<std::pair<std::vector<int>, double>> entries;
};

/// All block-size patterns with singleton ends and interior sizes up to
/// size_bound, mapped to their predicted moment differences.
CandidateTable build_candidate_table(const ModelChainSpec& model, int size_bound);

/// Patterns whose predicted value does not exceed the measured one, closest
/// first. The finite-time estimate bounds the asymptotic value because the
/// next series term carries the opposite sign.
std::vector<std::pair<std::vector<int>, double>> select_candidates(
    const CandidateTable& table, double measured);

struct TwoExcitationFit {
  double coefficient = 0.0;   // leading term of the return-probability gap
  double uncertainty = 0.0;
  int order = 0;              // 2N-2 for an N-site model
  double moment_difference = 0.0;  // coefficient mapped back to the moment gap
};

struct TwoExcitationOptions {
  int grid_points = 96;
  double window_scale = 0.6;  // window = window_scale / max|J|
};

/// Fits an even polynomial to measured-minus-simulated return probabilities
/// on a small-time window and reads off the order-(2N-2) coefficient.
TwoExcitationFit two_excitation_difference(BlackBoxChain& box,
                                           const ModelChainSpec& model,
                                           const TwoExcitationOptions& = {});

/// Closed forms for the leading coefficients of the correlator differences
/// when every block before `block_index` is a single spin. Calibrated
/// against the exact traces; signs alternate with the block index.
double predicted_odd_difference(int block_index, int size, double intra,
                                const ModelChainSpec& model);
double predicted_even_difference(int block_index, int size, double intra,
                                 const ModelChainSpec& model);

struct MixedProbeResult {
  bool signal = false;
  int onset_block = 0;   // 1-based block index i
  int onset_order = 0;
  double c_odd = 0.0;    // difference coefficient at order 2i-1
  double c_even = 0.0;   // difference coefficient at order 2i
  double unc_odd = 0.0;
  double unc_even = 0.0;
};

struct MixedProbeOptions {
  int max_order = 0;          // 0: use 2N+2 for an N-site model
  double onset_rel_tol = 1e-8;
  int sampled_grid_points = 256;
  double sampled_window_scale = 0.3;
  int bootstrap_rounds = 48;
};

/// First order at which the measured correlator coefficients leave the
/// reference set, with the two leading difference coefficients. The
/// reference is the string-series prediction of `model`.
MixedProbeResult mixed_probe(BlackBoxChain& box, const ModelChainSpec& model,
                             const MixedProbeOptions& = {});

/// Same probe against explicit reference coefficient sets (used when the
/// running estimate already holds recovered blocks).
MixedProbeResult mixed_probe_against(const SeriesCoefficients& measured_y,
                                     const SeriesCoefficients& measured_x,
                                     const SeriesCoefficients& reference_y,
                                     const SeriesCoefficients& reference_x,
                                     double onset_rel_tol = 1e-8);

struct StructureHypothesis {
  int block_index = 0;  // 1-based
  int size = 0;
  double intra_coupling = 0.0;
  double residual_odd = 0.0;
  double residual_even = 0.0;
  double score = 0.0;  // combined relative residual, smaller is better
};

struct SolveBlockOptions {
  double accept_rel_tol = 1e-5;
  int series_max_order = 0;  // 0: derive from the onset order
  /// Blocks already recovered before the probe block; singletons by default.
  PseudoChainSpec current_estimate;
};

/// Candidate (size, intra-coupling) pairs for the block at `block_index`.
/// |K| follows from the odd coefficient; both signs are scored by exact
/// simulation of the candidate spec against the measured coefficients, with
/// positive couplings preferred on ties.
std::vector<StructureHypothesis> solve_block(double c_odd, double c_even,
                                             const ModelChainSpec& model,
                                             int block_index, int size_bound,
                                             const SolveBlockOptions& = {});

struct IterationRecord {
  int iteration = 0;
  MixedProbeResult probe;
  std::vector<StructureHypothesis> hypotheses;
  StructureHypothesis chosen;
};

enum class InferenceStatus {
  Converged,
  Ambiguous,
  NoConsistentSolution,
};

struct InferenceReport {
  InferenceStatus status = InferenceStatus::Converged;
  ModelChainSpec tomography_model;
  PseudoChainSpec final_estimate;
  std::vector<IterationRecord> iterations;
  TwoExcitationFit verification;
  double verification_predicted = 0.0;
  bool verification_passed = false;
  std::vector<std::string> notes;
};

struct IterateOptions {
  int size_bound = 4;
  int max_iterations = 8;
  double solve_rel_tol = 1e-5;
  double verify_rel_tol = 1e-3;
  TomographyOptions tomography;
};

/// Full pipeline: tomography, repeated mixed-state probes with block
/// splicing, and the final two-excitation verification pass.
InferenceReport iterate_structure(BlackBoxChain& box, const IterateOptions& = {});

std::string report_to_json(const InferenceReport& report);

}  // namespace pseudochain
