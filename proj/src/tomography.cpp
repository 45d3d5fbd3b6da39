#include "pseudochain/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Dense>
#include <json.hpp>

#include "pseudochain/errors.hpp"

namespace pseudochain {

namespace {

using Cplx = std::complex<double>;

double grid_step(const std::vector<double>& times) {
  if (times.size() < 2) {
    throw Error(ErrorCode::RankDeficient, "survival grid too short");
  }
  const double dt = times[1] - times[0];
  for (std::size_t j = 1; j + 1 < times.size(); ++j) {
    if (std::abs(times[j + 1] - times[j] - dt) > 1e-9 * std::max(1.0, dt)) {
      throw Error(ErrorCode::InvalidArgument, "survival grid must be uniform");
    }
  }
  return dt;
}

// Gauss-Newton refinement of (lambda, w) on the sampled signal. Harmless on
// noisy data, machine-precision modes on clean data.
void polish_modes(SpectralData& data, const ComplexTimeSeries& series) {
  const int p = static_cast<int>(data.eigenvalues.size());
  const int g = static_cast<int>(series.times.size());
  if (p == 0 || 2 * g < 4 * p) return;
  Eigen::VectorXd params(2 * p);
  for (int k = 0; k < p; ++k) {
    params[k] = data.eigenvalues[k];
    params[p + k] = data.weights[k];
  }
  for (int iter = 0; iter < 30; ++iter) {
    Eigen::MatrixXd jac(2 * g, 2 * p);
    Eigen::VectorXd resid(2 * g);
    for (int j = 0; j < g; ++j) {
      const double t = series.times[j];
      Cplx f = 0.0;
      for (int k = 0; k < p; ++k) {
        const Cplx e = std::exp(Cplx(0, -params[k] * t));
        f += params[p + k] * e;
        const Cplx dl = Cplx(0, -t) * params[p + k] * e;
        jac(2 * j, k) = dl.real();
        jac(2 * j + 1, k) = dl.imag();
        jac(2 * j, p + k) = e.real();
        jac(2 * j + 1, p + k) = e.imag();
      }
      const Cplx r = f - series.values[j];
      resid[2 * j] = r.real();
      resid[2 * j + 1] = r.imag();
    }
    const Eigen::VectorXd step = jac.colPivHouseholderQr().solve(resid);
    params -= step;
    if (step.cwiseAbs().maxCoeff() < 1e-14) break;
  }
  for (int k = 0; k < p; ++k) {
    data.eigenvalues[k] = params[k];
    data.weights[k] = params[p + k];
  }
}

void sort_modes(SpectralData& data) {
  std::vector<int> order(data.eigenvalues.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return data.eigenvalues[a] < data.eigenvalues[b];
  });
  SpectralData sorted;
  for (int idx : order) {
    sorted.eigenvalues.push_back(data.eigenvalues[idx]);
    sorted.weights.push_back(data.weights[idx]);
  }
  data = std::move(sorted);
}

}  // namespace

SpectralData estimate_spectrum(const ComplexTimeSeries& survival,
                               const PencilOptions& options) {
  const int g = static_cast<int>(survival.times.size());
  if (g < 8) {
    throw Error(ErrorCode::RankDeficient, "survival grid too short");
  }
  const double dt = grid_step(survival.times);

  const int l = g / 3;
  if (l < 2) {
    throw Error(ErrorCode::RankDeficient, "survival grid too short for the pencil");
  }
  Eigen::MatrixXcd hankel(g - l, l + 1);
  for (int r = 0; r < g - l; ++r) {
    for (int c = 0; c <= l; ++c) hankel(r, c) = survival.values[r + c];
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(hankel, Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double cutoff =
      std::max(options.rank_rel_tol * sigma[0], options.noise_floor);
  int p = 0;
  for (int i = 0; i < sigma.size(); ++i) {
    if (sigma[i] > cutoff) ++p;
  }
  p = std::min({p, options.max_modes, l});
  if (p < 1) {
    throw Error(ErrorCode::RankDeficient, "no modes above the noise floor");
  }

  const Eigen::MatrixXcd v = svd.matrixV().leftCols(p);
  const Eigen::MatrixXcd v1 = v.topRows(l);
  const Eigen::MatrixXcd v2 = v.bottomRows(l);
  const Eigen::MatrixXcd pencil = v1.colPivHouseholderQr().solve(v2);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(pencil);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "pencil eigensolve failed");
  }

  std::vector<double> lambdas;
  for (int k = 0; k < p; ++k) {
    const Cplx z = eig.eigenvalues()[k];
    if (std::abs(std::log(std::abs(z))) > 0.5) continue;  // damped artifact
    lambdas.push_back(-std::arg(z) / dt);
  }
  if (lambdas.empty()) {
    throw Error(ErrorCode::RankDeficient, "pencil produced no undamped modes");
  }

  // least-squares amplitudes on the actual grid
  const int m = static_cast<int>(lambdas.size());
  Eigen::MatrixXcd design(g, m);
  Eigen::VectorXcd rhs(g);
  for (int j = 0; j < g; ++j) {
    for (int k = 0; k < m; ++k) {
      design(j, k) = std::exp(Cplx(0, -lambdas[k] * survival.times[j]));
    }
    rhs[j] = survival.values[j];
  }
  const Eigen::VectorXcd amps = design.colPivHouseholderQr().solve(rhs);

  SpectralData data;
  const double t0 = survival.times[0];
  double most_negative = 0.0;
  for (int k = 0; k < m; ++k) {
    const Cplx w = amps[k] * std::exp(Cplx(0, lambdas[k] * t0));
    most_negative = std::min(most_negative, w.real());
    if (w.real() < options.weight_threshold) continue;
    data.eigenvalues.push_back(lambdas[k]);
    data.weights.push_back(w.real());
  }
  if (most_negative < -options.negative_weight_tol) {
    throw Error(ErrorCode::NonPositiveWeights,
                "significantly negative weight; survival model violated");
  }
  if (data.eigenvalues.empty()) {
    throw Error(ErrorCode::RankDeficient, "all weights below threshold");
  }
  sort_modes(data);
  for (std::size_t i = 0; i + 1 < data.eigenvalues.size(); ++i) {
    const double gap = data.eigenvalues[i + 1] - data.eigenvalues[i];
    const double scale =
        std::max(1.0, std::abs(data.eigenvalues.back() - data.eigenvalues.front()));
    if (gap < 1e-9 * scale) {
      throw Error(ErrorCode::RankDeficient,
                  "degenerate eigenvalue pair; spectrum not simple");
    }
  }
  return data;
}

ModelChainSpec reconstruct_jacobi(const SpectralData& data) {
  const int p = static_cast<int>(data.eigenvalues.size());
  if (p < 1 || data.weights.size() != data.eigenvalues.size()) {
    throw Error(ErrorCode::InvalidArgument, "empty or inconsistent spectral data");
  }
  double total = 0.0;
  for (double w : data.weights) {
    if (w <= 0.0) {
      throw Error(ErrorCode::NonPositiveWeights,
                  "spectral weights must be positive");
    }
    total += w;
  }
  for (int i = 0; i + 1 < p; ++i) {
    if (!(data.eigenvalues[i + 1] > data.eigenvalues[i])) {
      throw Error(ErrorCode::InvalidArgument,
                  "eigenvalues must be sorted and distinct");
    }
  }

  const Eigen::Map<const Eigen::VectorXd> lambda(data.eigenvalues.data(), p);
  Eigen::VectorXd v(p);
  for (int k = 0; k < p; ++k) v[k] = std::sqrt(data.weights[k] / total);

  ModelChainSpec model;
  Eigen::MatrixXd basis(p, p);
  Eigen::VectorXd prev = Eigen::VectorXd::Zero(p);
  double beta_prev = 0.0;
  for (int i = 0; i < p; ++i) {
    basis.col(i) = v;
    Eigen::VectorXd w = lambda.cwiseProduct(v);
    const double alpha = w.dot(v);
    model.effective_fields.push_back(alpha);
    w -= alpha * v;
    if (i > 0) w -= beta_prev * prev;
    for (int r = 0; r <= i; ++r) w -= basis.col(r).dot(w) * basis.col(r);
    const double beta = w.norm();
    if (i + 1 < p) {
      if (beta < 1e-12) {
        throw Error(ErrorCode::Breakdown,
                    "recursion terminated early; chain shorter than the mode "
                    "count or disconnected");
      }
      model.couplings.push_back(beta);
      prev = v;
      v = w / beta;
      beta_prev = beta;
    }
  }
  return model;
}

TomographyResult run_tomography(BlackBoxChain& box,
                                const TomographyOptions& options) {
  double window = 8.0 * M_PI;
  int points = options.points;
  PencilOptions pencil = options.pencil;
  if (box.mode() == Mode::Sampled && pencil.noise_floor == 0.0) {
    const double sigma = 1.0 / std::sqrt(double(box.settings().shots));
    pencil.noise_floor = 6.0 * sigma * std::sqrt(double(points));
    pencil.weight_threshold = std::max(pencil.weight_threshold, 3.0 * sigma);
    pencil.negative_weight_tol =
        std::max(pencil.negative_weight_tol, 10.0 * sigma);
  }

  TomographyResult result;
  for (int round = 0; ; ++round) {
    std::vector<double> grid;
    grid.reserve(points);
    for (int j = 0; j < points; ++j) grid.push_back(window * j / points);
    auto data = box.query_survival(grid);
    result.spectrum = estimate_spectrum(data, pencil);
    polish_modes(result.spectrum, data);
    result.window = window;
    result.points = points;

    double rms = 0.0;
    for (int j = 0; j < points; ++j) {
      Cplx f = 0.0;
      for (std::size_t k = 0; k < result.spectrum.eigenvalues.size(); ++k) {
        f += result.spectrum.weights[k] *
             std::exp(Cplx(0, -result.spectrum.eigenvalues[k] * grid[j]));
      }
      rms += std::norm(f - data.values[j]);
    }
    result.residual = std::sqrt(rms / points);

    if (round >= options.refinement_rounds) break;
    const auto& ev = result.spectrum.eigenvalues;
    if (ev.size() < 2) break;
    double gap = ev[1] - ev[0];
    for (std::size_t i = 1; i + 1 < ev.size(); ++i) {
      gap = std::min(gap, ev[i + 1] - ev[i]);
    }
    const double lambda_max =
        std::max({std::abs(ev.front()), std::abs(ev.back()), 0.5});
    window = std::clamp(4.0 * M_PI / std::max(gap, 1e-6), 2.0 * M_PI / lambda_max,
                        1e5);
    const double dt_max = M_PI / (2.5 * lambda_max);
    points = std::clamp(static_cast<int>(std::ceil(window / dt_max)),
                        options.points, 4096);
  }
  result.model = reconstruct_jacobi(result.spectrum);
  if (static_cast<int>(result.spectrum.eigenvalues.size()) > options.n_max) {
    throw Error(ErrorCode::RankDeficient, "more modes than the configured bound");
  }
  return result;
}

std::string tomography_report_json(const TomographyResult& result) {
  nlohmann::json j;
  j["eigenvalues"] = result.spectrum.eigenvalues;
  j["weights"] = result.spectrum.weights;
  j["J"] = result.model.couplings;
  j["B_effective"] = result.model.effective_fields;
  j["window"] = result.window;
  j["points"] = result.points;
  j["residual_rms"] = result.residual;
  return j.dump(2);
}

}  // namespace pseudochain
