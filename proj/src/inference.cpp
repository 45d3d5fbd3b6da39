#include "pseudochain/inference.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <json.hpp>

#include "pseudochain/errors.hpp"
#include "pseudochain/modelchain.hpp"
#include "pseudochain/polyfit.hpp"

namespace pseudochain {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

std::int64_t binom_int(int n, int k) { return binomial(n, k); }

double max_abs(const std::vector<double>& v, double floor = 0.0) {
  double m = floor;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> chebyshev_grid(double window, int points) {
  std::vector<double> grid;
  grid.reserve(points);
  for (int i = points - 1; i >= 0; --i) {
    const double u = std::cos(M_PI * (2 * i + 1) / (2.0 * points));
    grid.push_back(window * std::sqrt((u + 1.0) / 2.0));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

double model_max_coupling(const ModelChainSpec& model) {
  double m = 0.1;
  for (double j : model.couplings) m = std::max(m, std::abs(j));
  return m;
}

// order-indexed absolute tolerance for exact-mode coefficient comparisons
double order_noise_floor(int order, double energy_scale) {
  return 1e-10 * std::max(1.0, std::pow(energy_scale, order)) / factorial(order);
}

struct MeasuredCoefficients {
  SeriesCoefficients y;
  SeriesCoefficients x;
  std::vector<double> unc_y;
  std::vector<double> unc_x;
};

MeasuredCoefficients measure_coefficients(BlackBoxChain& box,
                                          const ModelChainSpec& model,
                                          int max_order,
                                          const MixedProbeOptions& options) {
  MeasuredCoefficients out;
  out.unc_y.assign(max_order + 1, 0.0);
  out.unc_x.assign(max_order + 1, 0.0);
  if (box.mode() == Mode::Exact) {
    out.y = box.query_correlator_coefficients(Axis::Y, max_order);
    out.x = box.query_correlator_coefficients(Axis::X, max_order);
    return out;
  }
  const double window = options.sampled_window_scale / model_max_coupling(model);
  const auto grid = chebyshev_grid(window, options.sampled_grid_points);
  const auto gy = box.query_mixed_correlator(Axis::Y, grid);
  const auto gx = box.query_mixed_correlator(Axis::X, grid);
  const auto fit_y = fit_parity_taylor(grid, gy.values, 1, max_order, window, 2);
  const auto fit_x = fit_parity_taylor(grid, gx.values, 0, max_order, window, 2);
  out.y.coefficients = fit_y.coefficients;
  out.x.coefficients = fit_x.coefficients;

  // residual bootstrap for per-order uncertainties
  std::mt19937_64 rng(0x9e3779b9u);
  std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
  std::vector<std::vector<double>> samples_y(options.bootstrap_rounds);
  std::vector<std::vector<double>> samples_x(options.bootstrap_rounds);
  for (int b = 0; b < options.bootstrap_rounds; ++b) {
    // pairs bootstrap: resample (t, value) pairs
    std::vector<double> ts, vy, vx;
    ts.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const std::size_t j = pick(rng);
      ts.push_back(grid[j]);
      vy.push_back(gy.values[j]);
      vx.push_back(gx.values[j]);
    }
    // sort pairs jointly by time; duplicates are fine for least squares
    std::vector<std::size_t> order(ts.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return ts[a] < ts[b]; });
    std::vector<double> ts2, vy2, vx2;
    for (std::size_t idx : order) {
      ts2.push_back(ts[idx]);
      vy2.push_back(vy[idx]);
      vx2.push_back(vx[idx]);
    }
    try {
      samples_y[b] = fit_parity_taylor(ts2, vy2, 1, max_order, window, 2).coefficients;
      samples_x[b] = fit_parity_taylor(ts2, vx2, 0, max_order, window, 2).coefficients;
    } catch (const Error&) {
      samples_y[b] = out.y.coefficients;
      samples_x[b] = out.x.coefficients;
    }
  }
  for (int n = 0; n <= max_order; ++n) {
    double sy = 0.0, sx = 0.0, my = 0.0, mx = 0.0;
    for (int b = 0; b < options.bootstrap_rounds; ++b) {
      my += samples_y[b][n];
      mx += samples_x[b][n];
    }
    my /= options.bootstrap_rounds;
    mx /= options.bootstrap_rounds;
    for (int b = 0; b < options.bootstrap_rounds; ++b) {
      sy += (samples_y[b][n] - my) * (samples_y[b][n] - my);
      sx += (samples_x[b][n] - mx) * (samples_x[b][n] - mx);
    }
    out.unc_y[n] = std::sqrt(sy / std::max(1, options.bootstrap_rounds - 1));
    out.unc_x[n] = std::sqrt(sx / std::max(1, options.bootstrap_rounds - 1));
  }
  return out;
}

MixedProbeResult scan_onset(const MeasuredCoefficients& meas,
                            const SeriesCoefficients& ref_y,
                            const SeriesCoefficients& ref_x, double rel_tol,
                            double energy_scale) {
  const int max_order = std::min(meas.y.max_order(), ref_y.max_order());
  MixedProbeResult result;
  for (int n = 1; n <= max_order; ++n) {
    const bool odd = (n % 2 == 1);
    const double d = odd ? meas.y.coefficients[n] - ref_y.coefficients[n]
                         : meas.x.coefficients[n] - ref_x.coefficients[n];
    const double unc = odd ? meas.unc_y[n] : meas.unc_x[n];
    const double ref_mag = odd ? std::abs(ref_y.coefficients[n])
                               : std::abs(ref_x.coefficients[n]);
    const double meas_mag = odd ? std::abs(meas.y.coefficients[n])
                                : std::abs(meas.x.coefficients[n]);
    const double tol = std::max({rel_tol * std::max(ref_mag, meas_mag),
                                 order_noise_floor(n, energy_scale), 5.0 * unc});
    if (std::abs(d) <= tol) continue;

    result.signal = true;
    result.onset_order = n;
    result.onset_block = odd ? (n + 1) / 2 : n / 2;
    const int odd_order = 2 * result.onset_block - 1;
    const int even_order = 2 * result.onset_block;
    if (odd_order <= max_order) {
      result.c_odd = meas.y.coefficients[odd_order] - ref_y.coefficients[odd_order];
      result.unc_odd = meas.unc_y[odd_order];
    }
    if (even_order <= max_order) {
      result.c_even =
          meas.x.coefficients[even_order] - ref_x.coefficients[even_order];
      result.unc_even = meas.unc_x[even_order];
    }
    return result;
  }
  return result;
}

SeriesCoefficients reference_series(const PseudoChainSpec& estimate, Axis axis,
                                    int max_order) {
  if (is_linear(estimate)) {
    const auto series = heisenberg_series(effective_model(estimate), max_order);
    return axis == Axis::X ? series.x_autocorrelation()
                           : series.y_autocorrelation();
  }
  return end_autocorrelation_series(estimate, axis, max_order);
}

double energy_scale_of(const ModelChainSpec& model) {
  double j = 0.0, b = 0.0;
  for (double x : model.couplings) j = std::max(j, std::abs(x));
  for (double x : model.effective_fields) b = std::max(b, std::abs(x));
  return std::max(1.0, 2.0 * j + b);
}

std::vector<int> pattern_of(const PseudoChainSpec& spec) {
  std::vector<int> sizes;
  sizes.reserve(spec.blocks.size());
  for (const auto& b : spec.blocks) sizes.push_back(b.size);
  return sizes;
}

}  // namespace

double pattern_difference_value(const std::vector<int>& pattern,
                                const std::vector<double>& couplings) {
  const int n = static_cast<int>(pattern.size());
  if (static_cast<int>(couplings.size()) != n - 1) {
    throw Error(ErrorCode::LengthMismatch, "pattern/couplings sizes inconsistent");
  }
  double prod = 1.0;
  for (double j : couplings) prod *= j * j;
  double sum = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double b = static_cast<double>(binom_int(n - 1, i - 1));
    sum += b * b * double(pattern[i - 1] - 1) / pattern[i - 1];
  }
  return 2.0 * prod * sum;
}

CandidateTable build_candidate_table(const ModelChainSpec& model,
                                     int size_bound) {
  if (size_bound < 2) {
    throw Error(ErrorCode::OutOfRange, "size bound must be at least 2");
  }
  validate(model);
  const int n = model.site_count();
  CandidateTable table;
  const int interior = std::max(0, n - 2);
  std::vector<int> pattern(n, 1);
  std::int64_t combos = 1;
  for (int i = 0; i < interior; ++i) {
    combos *= size_bound;
    if (combos > 1'000'000) {
      throw Error(ErrorCode::CapExceeded, "candidate table too large");
    }
  }
  for (std::int64_t code = 0; code < combos; ++code) {
    std::int64_t rest = code;
    for (int i = 0; i < interior; ++i) {
      pattern[1 + i] = 1 + static_cast<int>(rest % size_bound);
      rest /= size_bound;
    }
    table.entries.emplace_back(pattern,
                               pattern_difference_value(pattern, model.couplings));
  }
  std::sort(table.entries.begin(), table.entries.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  return table;
}

std::vector<std::pair<std::vector<int>, double>> select_candidates(
    const CandidateTable& table, double measured) {
  if (table.entries.empty()) {
    throw Error(ErrorCode::EmptySelection, "candidate table is empty");
  }
  std::vector<std::pair<std::vector<int>, double>> chosen;
  const double cap = measured * (1.0 + 1e-9) + 1e-12;
  for (const auto& entry : table.entries) {
    if (entry.second <= cap) chosen.push_back(entry);
  }
  if (chosen.empty()) {
    throw Error(ErrorCode::EmptySelection,
                "every table value exceeds the measurement");
  }
  std::sort(chosen.begin(), chosen.end(), [&](const auto& a, const auto& b) {
    const double da = measured - a.second;
    const double db = measured - b.second;
    if (da != db) return da < db;
    return a.first < b.first;
  });
  return chosen;
}

TwoExcitationFit two_excitation_difference(BlackBoxChain& box,
                                           const ModelChainSpec& model,
                                           const TwoExcitationOptions& options) {
  validate(model);
  const int n = model.site_count();
  if (n < 2) {
    throw Error(ErrorCode::OutOfRange, "need at least two sites");
  }
  const int order = 2 * n - 2;
  const double window = options.window_scale / model_max_coupling(model);
  const auto grid = chebyshev_grid(window, options.grid_points);
  const auto measured = box.query_two_excitation_return(grid);
  const auto reference = return_probability(model, grid);
  std::vector<double> diff(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    diff[i] = measured.values[i] - reference.values[i];
  }
  const int fit_order = order + 4;
  auto run_fit = [&](double w, const std::vector<double>& ts,
                     const std::vector<double>& vs) {
    return fit_parity_taylor(ts, vs, 0, fit_order, w, 2);
  };
  const auto fit = run_fit(window, grid, diff);

  TwoExcitationFit result;
  result.order = order;
  result.coefficient = fit.coefficients[order];

  if (box.mode() == Mode::Exact) {
    // window-stability estimate of the numerical uncertainty
    const int keep = static_cast<int>(grid.size() * 3 / 4);
    std::vector<double> ts(grid.begin(), grid.begin() + keep);
    std::vector<double> vs(diff.begin(), diff.begin() + keep);
    const auto fit2 = run_fit(ts.back(), ts, vs);
    result.uncertainty = std::abs(fit2.coefficients[order] - result.coefficient) +
                         1e-12 * std::max(1.0, std::abs(result.coefficient));
  } else {
    std::mt19937_64 rng(0x2545f491u);
    std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
    std::vector<double> boots;
    for (int b = 0; b < 48; ++b) {
      std::vector<double> ts, vs;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto j = pick(rng);
        ts.push_back(grid[j]);
        vs.push_back(diff[j]);
      }
      std::vector<std::size_t> order_idx(ts.size());
      for (std::size_t i = 0; i < ts.size(); ++i) order_idx[i] = i;
      std::sort(order_idx.begin(), order_idx.end(),
                [&](std::size_t a, std::size_t b2) { return ts[a] < ts[b2]; });
      std::vector<double> ts2, vs2;
      for (auto idx : order_idx) {
        ts2.push_back(ts[idx]);
        vs2.push_back(vs[idx]);
      }
      try {
        boots.push_back(run_fit(window, ts2, vs2).coefficients[order]);
      } catch (const Error&) {
      }
    }
    double mean = 0.0;
    for (double b : boots) mean += b;
    mean /= std::max<std::size_t>(1, boots.size());
    double var = 0.0;
    for (double b : boots) var += (b - mean) * (b - mean);
    result.uncertainty =
        boots.size() > 1 ? std::sqrt(var / (boots.size() - 1)) : 1.0;
  }
  result.moment_difference =
      std::abs(result.coefficient) * factorial(order) / 2.0;
  return result;
}

double predicted_odd_difference(int block_index, int size, double intra,
                                const ModelChainSpec& model) {
  const int i = block_index;
  if (i < 2 || i > model.site_count()) {
    throw Error(ErrorCode::OutOfRange, "block index out of range");
  }
  double prod = 1.0;
  for (int j = 1; j < i; ++j) prod *= model.couplings[j - 1] * model.couplings[j - 1];
  const double sign = (i % 2 == 0) ? 1.0 : -1.0;
  return sign * prod * (size - 1) * intra / factorial(2 * i - 1);
}

double predicted_even_difference(int block_index, int size, double intra,
                                 const ModelChainSpec& model) {
  const int i = block_index;
  if (i < 2 || i >= model.site_count()) {
    throw Error(ErrorCode::OutOfRange, "block index out of range");
  }
  double prod = 1.0;
  for (int j = 1; j < i; ++j) prod *= model.couplings[j - 1] * model.couplings[j - 1];
  const double j_left = model.couplings[i - 2];
  const double j_right = model.couplings[i - 1];
  double field_sum = 0.0;
  for (int j = 1; j <= i; ++j) field_sum += model.effective_fields[j - 1];
  const double nk = size * intra;
  const double bracket =
      3.0 * j_left * j_left - j_right * j_right + nk * (nk - 2.0 * field_sum);
  const double sign = (i % 2 == 0) ? 1.0 : -1.0;
  return sign * prod * (double(size - 1) / size) * bracket / factorial(2 * i);
}

MixedProbeResult mixed_probe(BlackBoxChain& box, const ModelChainSpec& model,
                             const MixedProbeOptions& options) {
  validate(model);
  const int n = model.site_count();
  const int max_order = options.max_order > 0
                            ? options.max_order
                            : std::min(2 * n + 2, 20);
  const auto meas = measure_coefficients(box, model, max_order, options);
  const auto series = heisenberg_series(model, max_order);
  return scan_onset(meas, series.y_autocorrelation(), series.x_autocorrelation(),
                    options.onset_rel_tol, energy_scale_of(model));
}

MixedProbeResult mixed_probe_against(const SeriesCoefficients& measured_y,
                                     const SeriesCoefficients& measured_x,
                                     const SeriesCoefficients& reference_y,
                                     const SeriesCoefficients& reference_x,
                                     double onset_rel_tol) {
  MeasuredCoefficients meas;
  meas.y = measured_y;
  meas.x = measured_x;
  meas.unc_y.assign(measured_y.coefficients.size(), 0.0);
  meas.unc_x.assign(measured_x.coefficients.size(), 0.0);
  const double scale = std::max(1.0, max_abs(measured_y.coefficients, 1.0));
  return scan_onset(meas, reference_y, reference_x, onset_rel_tol, scale);
}

std::vector<StructureHypothesis> solve_block(double c_odd, double c_even,
                                             const ModelChainSpec& model,
                                             int block_index, int size_bound,
                                             const SolveBlockOptions& options) {
  validate(model);
  const int i = block_index;
  const int n = model.site_count();
  if (i < 2 || i >= n) {
    throw Error(ErrorCode::OutOfRange,
                "probe block must be an interior site of the model chain");
  }
  if (size_bound < 2) {
    throw Error(ErrorCode::OutOfRange, "size bound must be at least 2");
  }
  PseudoChainSpec estimate = options.current_estimate.blocks.empty()
                                 ? as_pseudo(model)
                                 : options.current_estimate;
  if (estimate.block_count() != n) {
    throw Error(ErrorCode::LengthMismatch,
                "estimate and model disagree on the block count");
  }

  // inversion factor: couplings squared over the sizes of recovered blocks
  double prod = 1.0;
  for (int j = 1; j < i; ++j) {
    prod *= model.couplings[j - 1] * model.couplings[j - 1] /
            estimate.blocks[j - 1].size;
  }
  const int max_order = options.series_max_order > 0 ? options.series_max_order
                                                     : 2 * i;
  const auto ref_y = reference_series(estimate, Axis::Y, max_order);
  const auto ref_x = reference_series(estimate, Axis::X, max_order);

  const double odd_scale =
      std::max(std::abs(c_odd), order_noise_floor(2 * i - 1, 2.0));
  const double even_scale =
      std::max(std::abs(c_even), order_noise_floor(2 * i, 2.0));

  // both coefficients at the noise floor: nothing to solve for
  if (std::abs(c_odd) <= order_noise_floor(2 * i - 1, 2.0) &&
      std::abs(c_even) <= order_noise_floor(2 * i, 2.0)) {
    return {};
  }

  std::vector<StructureHypothesis> accepted;
  for (int size = 2; size <= size_bound; ++size) {
    const double k_mag =
        std::abs(c_odd) * factorial(2 * i - 1) / (prod * (size - 1));
    std::vector<double> candidates;
    if (k_mag < 1e-12) {
      candidates.push_back(0.0);
    } else {
      candidates.push_back(k_mag);
      candidates.push_back(-k_mag);
    }
    for (double k : candidates) {
      PseudoChainSpec candidate = estimate;
      const double field =
          model.effective_fields[i - 1] - (size - 1) * k;
      candidate.blocks[i - 1] = BlockSpec{size, field, k};
      const auto cand_y = end_autocorrelation_series(candidate, Axis::Y, max_order);
      const auto cand_x = end_autocorrelation_series(candidate, Axis::X, max_order);
      const double pred_odd =
          cand_y.coefficients[2 * i - 1] - ref_y.coefficients[2 * i - 1];
      const double pred_even =
          cand_x.coefficients[2 * i] - ref_x.coefficients[2 * i];
      StructureHypothesis hyp;
      hyp.block_index = i;
      hyp.size = size;
      hyp.intra_coupling = k;
      hyp.residual_odd = std::abs(pred_odd - c_odd);
      hyp.residual_even = std::abs(pred_even - c_even);
      hyp.score = std::max(hyp.residual_odd / odd_scale,
                           hyp.residual_even / even_scale);
      if (hyp.score <= options.accept_rel_tol) accepted.push_back(hyp);
    }
  }
  if (accepted.empty()) {
    throw Error(ErrorCode::NoConsistentSolution,
                "no block hypothesis reproduces the measured coefficients "
                "within the size bound");
  }
  std::sort(accepted.begin(), accepted.end(),
            [](const StructureHypothesis& a, const StructureHypothesis& b) {
              if (a.score != b.score) return a.score < b.score;
              if ((a.intra_coupling >= 0.0) != (b.intra_coupling >= 0.0)) {
                return a.intra_coupling >= 0.0;
              }
              return a.size < b.size;
            });
  return accepted;
}

InferenceReport iterate_structure(BlackBoxChain& box,
                                  const IterateOptions& options) {
  InferenceReport report;
  const auto tomo = run_tomography(box, options.tomography);
  report.tomography_model = tomo.model;
  const auto& model = tomo.model;
  const int n = model.site_count();
  PseudoChainSpec estimate = as_pseudo(model);

  if (n >= 3) {
    const int max_order = std::min(2 * n + 2, 20);
    MixedProbeOptions probe_options;
    probe_options.max_order = max_order;
    const auto meas = measure_coefficients(box, model, max_order, probe_options);
    const double scale = energy_scale_of(model);

    for (int iter = 1; iter <= options.max_iterations; ++iter) {
      const auto ref_y = reference_series(estimate, Axis::Y, max_order);
      const auto ref_x = reference_series(estimate, Axis::X, max_order);
      auto probe = scan_onset(meas, ref_y, ref_x, 1e-8, scale);
      if (!probe.signal) break;

      IterationRecord record;
      record.iteration = iter;
      record.probe = probe;
      SolveBlockOptions solve_options;
      solve_options.accept_rel_tol = options.solve_rel_tol;
      solve_options.current_estimate = estimate;
      try {
        record.hypotheses = solve_block(probe.c_odd, probe.c_even, model,
                                        probe.onset_block, options.size_bound,
                                        solve_options);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NoConsistentSolution) throw;
        report.status = InferenceStatus::NoConsistentSolution;
        report.notes.push_back(
            "no consistent hypothesis for the block at index " +
            std::to_string(probe.onset_block) +
            "; structure ambiguous within the size bound");
        report.iterations.push_back(record);
        break;
      }
      if (record.hypotheses.empty()) {
        report.iterations.push_back(record);
        break;
      }
      record.chosen = record.hypotheses.front();
      if (record.hypotheses.size() > 1 &&
          record.hypotheses[1].score <=
              std::max(10.0 * record.hypotheses[0].score, 1e-9)) {
        report.notes.push_back(
            "competing hypotheses for the block at index " +
            std::to_string(probe.onset_block));
        report.status = InferenceStatus::Ambiguous;
      }
      const auto& chosen = record.chosen;
      estimate.blocks[chosen.block_index - 1] = BlockSpec{
          chosen.size,
          model.effective_fields[chosen.block_index - 1] -
              (chosen.size - 1) * chosen.intra_coupling,
          chosen.intra_coupling};
      report.iterations.push_back(std::move(record));
    }
  }

  report.final_estimate = estimate;
  validate(report.final_estimate);

  if (n >= 2) {
    report.verification = two_excitation_difference(box, model);
    report.verification_predicted =
        pattern_difference_value(pattern_of(estimate), model.couplings);
    const double measured = report.verification.moment_difference;
    const double predicted = report.verification_predicted;
    const double tol = std::max(
        options.verify_rel_tol * std::max(1.0, predicted),
        5.0 * report.verification.uncertainty * factorial(2 * n - 2) / 2.0);
    report.verification_passed = std::abs(measured - predicted) <= tol;
    if (!report.verification_passed &&
        report.status == InferenceStatus::Converged) {
      report.status = InferenceStatus::Ambiguous;
      report.notes.push_back(
          "two-excitation verification disagrees with the recovered pattern");
    }
  } else {
    report.verification_passed = true;
  }
  return report;
}

std::string report_to_json(const InferenceReport& report) {
  nlohmann::json j;
  switch (report.status) {
    case InferenceStatus::Converged: j["status"] = "converged"; break;
    case InferenceStatus::Ambiguous: j["status"] = "ambiguous"; break;
    case InferenceStatus::NoConsistentSolution:
      j["status"] = "no_consistent_solution";
      break;
  }
  j["model"] = {{"J", report.tomography_model.couplings},
                {"B_effective", report.tomography_model.effective_fields}};
  j["final_estimate"] =
      nlohmann::json::parse(spec_to_json_string(report.final_estimate));
  j["iterations"] = nlohmann::json::array();
  for (const auto& it : report.iterations) {
    nlohmann::json ji;
    ji["iteration"] = it.iteration;
    ji["onset_block"] = it.probe.onset_block;
    ji["onset_order"] = it.probe.onset_order;
    ji["c_odd"] = it.probe.c_odd;
    ji["c_even"] = it.probe.c_even;
    ji["hypotheses"] = nlohmann::json::array();
    for (const auto& h : it.hypotheses) {
      ji["hypotheses"].push_back({{"size", h.size},
                                  {"K", h.intra_coupling},
                                  {"score", h.score}});
    }
    ji["chosen"] = {{"size", it.chosen.size}, {"K", it.chosen.intra_coupling}};
    j["iterations"].push_back(ji);
  }
  j["verification"] = {
      {"order", report.verification.order},
      {"coefficient", report.verification.coefficient},
      {"uncertainty", report.verification.uncertainty},
      {"moment_difference", report.verification.moment_difference},
      {"predicted", report.verification_predicted},
      {"passed", report.verification_passed}};
  j["notes"] = report.notes;
  return j.dump(2);
}

}  // namespace pseudochain
