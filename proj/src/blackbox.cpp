#include "pseudochain/blackbox.hpp"

#include <cmath>

#include "pseudochain/errors.hpp"

namespace pseudochain {

BlackBoxChain::BlackBoxChain(PseudoChainSpec hidden, Mode mode,
                             SampledSettings settings)
    : hidden_(std::move(hidden)),
      mode_(mode),
      settings_(settings),
      rng_(settings.seed) {
  validate(hidden_);
  if (mode_ == Mode::Sampled && settings_.shots < 1) {
    throw Error(ErrorCode::OutOfRange, "sampled mode needs a positive shot count");
  }
}

const CorrelatorEngine& BlackBoxChain::engine() {
  if (!engine_) {
    engine_ = std::make_unique<CorrelatorEngine>(lower(hidden_));
  }
  return *engine_;
}

double BlackBoxChain::sample_expectation(double exact) {
  const double p = std::clamp((1.0 + exact) / 2.0, 0.0, 1.0);
  std::binomial_distribution<long> dist(settings_.shots, p);
  return 2.0 * dist(rng_) / settings_.shots - 1.0;
}

double BlackBoxChain::sample_probability(double exact) {
  const double p = std::clamp(exact, 0.0, 1.0);
  std::binomial_distribution<long> dist(settings_.shots, p);
  return static_cast<double>(dist(rng_)) / settings_.shots;
}

ComplexTimeSeries BlackBoxChain::query_survival(const std::vector<double>& t_grid) {
  auto series = survival_amplitude(hidden_, t_grid);
  if (mode_ == Mode::Sampled) {
    for (auto& v : series.values) {
      v = {sample_expectation(v.real()), sample_expectation(v.imag())};
    }
  }
  return series;
}

TimeSeries BlackBoxChain::query_two_excitation_return(
    const std::vector<double>& t_grid) {
  auto series = return_probability(hidden_, t_grid);
  if (mode_ == Mode::Sampled) {
    for (auto& v : series.values) v = sample_probability(v);
  }
  return series;
}

TimeSeries BlackBoxChain::query_mixed_correlator(Axis b_axis,
                                                 const std::vector<double>& t_grid) {
  const int m = hidden_.total_spins();
  auto series = engine().correlator(EndOperator(m, Axis::X, 0),
                                    EndOperator(m, b_axis, 0), t_grid);
  if (mode_ == Mode::Sampled) {
    for (auto& v : series.values) v = sample_expectation(v);
  }
  return series;
}

SeriesCoefficients BlackBoxChain::query_correlator_coefficients(Axis b_axis,
                                                                int max_order) {
  if (mode_ != Mode::Exact) {
    throw Error(ErrorCode::InvalidArgument,
                "coefficient queries exist only in exact mode; fit the "
                "sampled correlator instead");
  }
  const int m = hidden_.total_spins();
  return engine().series(EndOperator(m, Axis::X, 0),
                         EndOperator(m, b_axis, 0), max_order);
}

ScenarioInstance BlackBoxChain::prepare_scenario(const TrapScenario& scenario) {
  validate(scenario);
  ScenarioInstance instance;
  instance.scenario_ = scenario;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  instance.occupied_ = unit(rng_) < scenario.occupancy;
  return instance;
}

ScenarioInstance BlackBoxChain::prepare_scenario(const TrapScenario& scenario,
                                                 bool occupied) {
  validate(scenario);
  ScenarioInstance instance;
  instance.scenario_ = scenario;
  instance.occupied_ = occupied;
  return instance;
}

MeasurementRecord BlackBoxChain::measure_end_z(const ScenarioInstance& instance,
                                               double t) {
  const std::vector<double> grid = {t};
  MeasurementRecord rec;
  rec.detect_probability_trapped =
      trapped_transfer_probability(instance.scenario(), grid).values[0];
  rec.detect_probability_untrapped =
      untrapped_transfer_probability(instance.scenario().spec, grid).values[0];
  const double p_detect = instance.occupied_ ? rec.detect_probability_trapped
                                             : rec.detect_probability_untrapped;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  rec.outcome = (unit(rng_) < p_detect) ? -1 : +1;
  return rec;
}

}  // namespace pseudochain
