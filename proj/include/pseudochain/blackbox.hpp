#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "pseudochain/dynamics.hpp"
#include "pseudochain/topology.hpp"
#include "pseudochain/traps.hpp"

namespace pseudochain {

enum class Mode { Exact, Sampled };

struct SampledSettings {
  long shots = 100000;
  std::uint64_t seed = 0;
};

/// Record of one end-site Z measurement: the sampled outcome plus the Born
/// probabilities of a detection (outcome -1) under either branch.
struct MeasurementRecord {
  int outcome = +1;
  double detect_probability_trapped = 0.0;
  double detect_probability_untrapped = 0.0;
};

/// A prepared trap scenario with its hidden occupancy draw.
class ScenarioInstance {
 public:
  const TrapScenario& scenario() const { return scenario_; }

 private:
  friend class BlackBoxChain;
  TrapScenario scenario_;
  bool occupied_ = false;
};

/// The access model: a hidden chain reachable only through end-site
/// preparations, evolutions, and measurements. Exact mode returns ideal
/// expectation values; sampled mode returns seeded binomial estimates.
class BlackBoxChain {
 public:
  explicit BlackBoxChain(PseudoChainSpec hidden, Mode mode = Mode::Exact,
                         SampledSettings settings = {});

  Mode mode() const { return mode_; }
  const SampledSettings& settings() const { return settings_; }

  /// One-excitation survival amplitude at site 1.
  ComplexTimeSeries query_survival(const std::vector<double>& t_grid);

  /// Return probability of the state with one excitation at each end.
  TimeSeries query_two_excitation_return(const std::vector<double>& t_grid);

  /// Maximally-mixed-state correlator <a b(t)> with a = X measured at site 1
  /// and b = X or Y measured at site 1.
  TimeSeries query_mixed_correlator(Axis b_axis, const std::vector<double>& t_grid);

  /// Exact-mode only: Taylor coefficients of the mixed correlator, the
  /// idealized limit of the sampled protocol.
  SeriesCoefficients query_correlator_coefficients(Axis b_axis, int max_order);

  /// Draws the hidden trap occupancy with the scenario's probability.
  ScenarioInstance prepare_scenario(const TrapScenario& scenario);
  ScenarioInstance prepare_scenario(const TrapScenario& scenario, bool occupied);

  /// Injects a fresh end excitation, evolves to t, and measures Z on the last
  /// site of the prepared scenario; Born-rule sampled on the true branch.
  MeasurementRecord measure_end_z(const ScenarioInstance& instance, double t);

 private:
  double sample_expectation(double exact);
  double sample_probability(double exact);
  const CorrelatorEngine& engine();

  PseudoChainSpec hidden_;
  Mode mode_;
  SampledSettings settings_;
  std::mt19937_64 rng_;
  std::unique_ptr<CorrelatorEngine> engine_;
};

}  // namespace pseudochain
