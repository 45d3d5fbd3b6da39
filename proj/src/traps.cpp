#include "pseudochain/traps.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pseudochain/blackbox.hpp"
#include "pseudochain/errors.hpp"
#include "pseudochain/hilbert.hpp"

namespace pseudochain {

namespace {

// A trapped-branch detection probability at or below this floor is treated
// as an exact zero in the Bayesian update, so a detection certifies the
// clean branch outright.
constexpr double kCertainExclusionFloor = 1e-12;

Eigen::VectorXd block_member_vector(const SiteMap& map, int block,
                                    const Eigen::VectorXd& member_weights) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(map.total_spins());
  for (int m = 0; m < map.block_size(block); ++m) {
    v[map.flatten(block, m)] = member_weights[m];
  }
  return v;
}

}  // namespace

std::vector<Eigen::VectorXd> dark_states(const PseudoChainSpec& spec, int block) {
  validate(spec);
  if (block < 0 || block >= spec.block_count()) {
    throw Error(ErrorCode::OutOfRange, "block index out of range");
  }
  const int n = spec.blocks[block].size;
  if (n < 2) {
    throw Error(ErrorCode::NotABlock, "dark states need a block of two or more");
  }
  const SiteMap map(spec);
  // Columns of any orthonormal completion of the uniform vector; built from
  // the Householder reflector that maps e_1 to the uniform vector.
  Eigen::VectorXd uniform = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(n));
  Eigen::VectorXd w = uniform;
  w[0] -= 1.0;
  std::vector<Eigen::VectorXd> out;
  if (w.norm() < 1e-14) {
    // uniform is already e_1 (impossible for n >= 2, kept for safety)
    for (int c = 1; c < n; ++c) {
      Eigen::VectorXd col = Eigen::VectorXd::Zero(n);
      col[c] = 1.0;
      out.push_back(block_member_vector(map, block, col));
    }
    return out;
  }
  w.normalize();
  for (int c = 1; c < n; ++c) {
    Eigen::VectorXd col = Eigen::VectorXd::Zero(n);
    col[c] = 1.0;
    col -= 2.0 * w.dot(col) * w;
    out.push_back(block_member_vector(map, block, col));
  }
  return out;
}

FlipSplit flip_decomposition(const PseudoChainSpec& spec, int block, int member) {
  validate(spec);
  if (block < 0 || block >= spec.block_count()) {
    throw Error(ErrorCode::OutOfRange, "block index out of range");
  }
  const int n = spec.blocks[block].size;
  if (member < 0 || member >= n) {
    throw Error(ErrorCode::OutOfRange, "member index out of range");
  }
  return FlipSplit{1.0 / n, double(n - 1) / n};
}

TrapScenario make_scenario(const PseudoChainSpec& spec, int block,
                           double occupancy, std::uint64_t dark_seed) {
  const auto basis = dark_states(spec, block);
  TrapScenario scenario;
  scenario.spec = spec;
  scenario.trapped_block = block;
  scenario.occupancy = occupancy;
  if (basis.size() == 1) {
    scenario.trapped_state = basis[0];
  } else {
    std::mt19937_64 rng(dark_seed);
    std::normal_distribution<double> gauss;
    Eigen::VectorXd mix = Eigen::VectorXd::Zero(spec.total_spins());
    for (const auto& v : basis) mix += gauss(rng) * v;
    if (mix.norm() < 1e-9) mix = basis[0];
    scenario.trapped_state = mix.normalized();
  }
  validate(scenario);
  return scenario;
}

void validate(const TrapScenario& scenario) {
  validate(scenario.spec);
  const SiteMap map(scenario.spec);
  if (scenario.trapped_block < 0 ||
      scenario.trapped_block >= scenario.spec.block_count()) {
    throw Error(ErrorCode::OutOfRange, "trapped block out of range");
  }
  if (scenario.spec.blocks[scenario.trapped_block].size < 2) {
    throw Error(ErrorCode::NotABlock, "trapped block must hold several spins");
  }
  if (scenario.occupancy < 0.0 || scenario.occupancy > 1.0) {
    throw Error(ErrorCode::OutOfRange, "occupancy must lie in [0,1]");
  }
  if (scenario.trapped_state.size() != map.total_spins()) {
    throw Error(ErrorCode::DimensionMismatch, "trapped state has wrong dimension");
  }
  if (std::abs(scenario.trapped_state.norm() - 1.0) > 1e-10) {
    throw Error(ErrorCode::InvalidArgument, "trapped state must be normalized");
  }
  double outside = 0.0;
  double symmetric = 0.0;
  for (int site = 0; site < map.total_spins(); ++site) {
    if (map.block_of(site) != scenario.trapped_block) {
      outside += std::abs(scenario.trapped_state[site]);
    } else {
      symmetric += scenario.trapped_state[site];
    }
  }
  if (outside > 1e-12) {
    throw Error(ErrorCode::InvalidArgument,
                "trapped state must be supported on its block");
  }
  const int n = scenario.spec.blocks[scenario.trapped_block].size;
  if (std::abs(symmetric) / std::sqrt(double(n)) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument,
                "trapped state must be orthogonal to the symmetric combination");
  }
}

TimeSeries trapped_transfer_probability(const TrapScenario& scenario,
                                        const std::vector<double>& times) {
  check_time_grid(times);
  validate(scenario);
  const int m = scenario.spec.total_spins();
  const SectorBasis basis(m, 2);
  const auto h = build_hamiltonian(scenario.spec, 2);
  const EigenSystem es = diagonalize(h);

  // injected excitation at site 1 on top of the residual one
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis.size());
  for (int site = 1; site < m; ++site) {
    const double w = scenario.trapped_state[site];
    if (w == 0.0) continue;
    const std::uint32_t mask = 1u | (1u << site);
    psi[basis.rank(mask)] = w;
  }
  const double norm = psi.norm();
  if (norm < 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "degenerate trapped state");
  }
  psi /= norm;

  TimeSeries out;
  out.times = times;
  out.values.reserve(times.size());
  const std::uint32_t last_bit = 1u << (m - 1);
  for (double t : times) {
    const Eigen::VectorXcd evolved = evolve(es, psi, t);
    double p = 0.0;
    for (std::int64_t r = 0; r < basis.size(); ++r) {
      if (basis.state(r) & last_bit) p += std::norm(evolved[r]);
    }
    out.values.push_back(p);
  }
  return out;
}

TimeSeries untrapped_transfer_probability(const PseudoChainSpec& spec,
                                          const std::vector<double>& times) {
  check_time_grid(times);
  const int m = spec.total_spins();
  const SectorBasis basis(m, 1);
  const auto h = build_hamiltonian(spec, 1);
  const EigenSystem es = diagonalize(h);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis.size());
  psi[basis.rank(1u)] = 1.0;
  const std::int64_t last = basis.rank(1u << (m - 1));
  TimeSeries out;
  out.times = times;
  out.values.reserve(times.size());
  for (double t : times) {
    out.values.push_back(std::norm(evolve(es, psi, t)[last]));
  }
  return out;
}

TimeSeries transfer_probability_with_trap(const TrapScenario& scenario,
                                          const std::vector<double>& times) {
  const auto trapped = trapped_transfer_probability(scenario, times);
  const auto clean = untrapped_transfer_probability(scenario.spec, times);
  TimeSeries out;
  out.times = times;
  out.values.reserve(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    out.values.push_back(scenario.occupancy * trapped.values[i] +
                         (1.0 - scenario.occupancy) * clean.values[i]);
  }
  return out;
}

std::optional<double> find_discrimination_time(const TrapScenario& scenario,
                                               const DiscriminationQuery& query) {
  if (!(query.epsilon > 0.0) || !(query.theta > 0.0) || query.epsilon >= 1.0 ||
      query.theta >= 1.0 || query.epsilon >= query.theta) {
    throw Error(ErrorCode::InvalidArgument,
                "need 0 < epsilon < theta < 1 for discrimination");
  }
  if (!(query.t_max > query.t_min) || query.grid_points < 2) {
    throw Error(ErrorCode::InvalidArgument, "bad discrimination window");
  }
  std::vector<double> grid;
  grid.reserve(query.grid_points);
  for (int i = 0; i < query.grid_points; ++i) {
    grid.push_back(query.t_min +
                   (query.t_max - query.t_min) * (i + 1.0) / query.grid_points);
  }
  const auto trapped = trapped_transfer_probability(scenario, grid);
  const auto clean = untrapped_transfer_probability(scenario.spec, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (trapped.values[i] > query.epsilon || clean.values[i] < query.theta) {
      continue;
    }
    // local refinement: maximize the clean-branch probability while the
    // trapped branch stays below epsilon
    double best_t = grid[i];
    double best_clean = clean.values[i];
    const double dt = (query.t_max - query.t_min) / query.grid_points;
    const double lo = std::max(query.t_min, best_t - dt);
    const double hi = std::min(query.t_max, best_t + dt);
    std::vector<double> fine;
    for (int k = 0; k <= 32; ++k) fine.push_back(lo + (hi - lo) * k / 32.0);
    const auto ft = trapped_transfer_probability(scenario, fine);
    const auto fc = untrapped_transfer_probability(scenario.spec, fine);
    for (std::size_t k = 0; k < fine.size(); ++k) {
      if (ft.values[k] <= query.epsilon && fc.values[k] > best_clean) {
        best_clean = fc.values[k];
        best_t = fine[k];
      }
    }
    return best_t;
  }
  return std::nullopt;
}

FlushResult flush_protocol(BlackBoxChain& box, const TrapScenario& scenario,
                           double prior, int rounds, double t_star) {
  if (prior < 0.0 || prior > 1.0) {
    throw Error(ErrorCode::OutOfRange, "prior must lie in [0,1]");
  }
  if (rounds < 0) {
    throw Error(ErrorCode::OutOfRange, "round count must be non-negative");
  }
  FlushResult result;
  result.discrimination_time = t_star;
  const auto instance = box.prepare_scenario(scenario);

  double posterior = prior;
  for (int r = 0; r < rounds; ++r) {
    const MeasurementRecord rec = box.measure_end_z(instance, t_star);
    double p_tr = rec.detect_probability_trapped;
    const double p_un = rec.detect_probability_untrapped;
    if (r == 0) {
      result.prob_detect_trapped = p_tr;
      result.prob_detect_untrapped = p_un;
    }
    if (p_tr <= kCertainExclusionFloor) p_tr = 0.0;
    if (rec.outcome == -1) {
      const double num = posterior * p_tr;
      const double den = num + (1.0 - posterior) * p_un;
      posterior = (den > 0.0) ? num / den : posterior;
      if (p_tr == 0.0) {
        posterior = 0.0;
        result.certified_untrapped = true;
      }
    } else {
      const double num = posterior * (1.0 - p_tr);
      const double den = num + (1.0 - posterior) * (1.0 - p_un);
      posterior = (den > 0.0) ? num / den : posterior;
    }
    result.rounds.push_back(FlushRound{r + 1, rec.outcome, posterior});
  }
  return result;
}

}  // namespace pseudochain
