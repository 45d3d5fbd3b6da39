#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "pseudochain/dynamics.hpp"
#include "pseudochain/topology.hpp"

namespace pseudochain {

class BlackBoxChain;

/// A chain with one block possibly holding a residual excitation in a state
/// decoupled from end-to-end transport. `occupancy` is the probability that
/// the residual excitation is present.
struct TrapScenario {
  PseudoChainSpec spec;
  int trapped_block = -1;          // 0-based, block size >= 2
  Eigen::VectorXd trapped_state;   // one-excitation vector over all M sites
  double occupancy = 1.0;
};

/// Orthonormal one-excitation states supported on the block and orthogonal to
/// its symmetric combination; they carry no amplitude into the rest of the
/// chain under the Hamiltonian.
std::vector<Eigen::VectorXd> dark_states(const PseudoChainSpec& spec, int block);

struct FlipSplit {
  double escape_weight;   // weight on the symmetric, chain-coupled component
  double trapped_weight;  // weight left on the dark components
};

/// Decomposition of a single-site excitation inside a block.
FlipSplit flip_decomposition(const PseudoChainSpec& spec, int block, int member);

TrapScenario make_scenario(const PseudoChainSpec& spec, int block,
                           double occupancy, std::uint64_t dark_seed = 0);

void validate(const TrapScenario& scenario);

/// Probability that the last site holds an excitation at time t, given an
/// excitation injected at site 1, for the trapped branch (residual excitation
/// present, evolved in the two-excitation sector).
TimeSeries trapped_transfer_probability(const TrapScenario& scenario,
                                        const std::vector<double>& times);

/// Same quantity for the clean branch (plain one-excitation evolution).
TimeSeries untrapped_transfer_probability(const PseudoChainSpec& spec,
                                          const std::vector<double>& times);

/// Convex mixture of the two branches with weight `occupancy`.
TimeSeries transfer_probability_with_trap(const TrapScenario& scenario,
                                          const std::vector<double>& times);

struct DiscriminationQuery {
  double t_min = 0.0;
  double t_max = 30.0;
  double epsilon = 1e-3;  // trapped branch must transfer below this
  double theta = 0.2;     // clean branch must transfer at least this
  int grid_points = 3000;
};

/// Earliest grid time (with local refinement) where the trapped branch stays
/// below epsilon while the clean branch exceeds theta; nullopt when the
/// window holds no such instant.
std::optional<double> find_discrimination_time(const TrapScenario& scenario,
                                               const DiscriminationQuery& query);

struct FlushRound {
  int round = 0;
  int outcome = +1;   // Z at the last site; -1 signals a detected excitation
  double posterior = 0.0;
};

struct FlushResult {
  double discrimination_time = 0.0;
  double prob_detect_trapped = 0.0;
  double prob_detect_untrapped = 0.0;
  bool certified_untrapped = false;
  std::vector<FlushRound> rounds;
};

/// Repeated inject-evolve-measure cycles at t_star with Bayesian updates of
/// the trap-occupancy posterior. A detection where the trapped branch has
/// (numerically) zero detection probability certifies the clean branch and
/// pins the posterior to exactly zero.
FlushResult flush_protocol(BlackBoxChain& box, const TrapScenario& scenario,
                           double prior, int rounds, double t_star);

}  // namespace pseudochain
