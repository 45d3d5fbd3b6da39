#include "pseudochain/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include <Eigen/Eigenvalues>

#include "pseudochain/errors.hpp"

namespace pseudochain {

namespace {

using Cplx = std::complex<double>;
using LongMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

constexpr Eigen::Index kSeriesDenseRouteDim = 256;
constexpr int kSeriesHardOrderCap = 24;

double gershgorin_bound(const SparseOperator& h) {
  Eigen::VectorXd rowsum = Eigen::VectorXd::Zero(h.dimension());
  for (int k = 0; k < h.mat.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(h.mat, k); it; ++it) {
      rowsum[it.row()] += std::abs(it.value());
    }
  }
  return rowsum.size() == 0 ? 0.0 : rowsum.maxCoeff();
}

struct LanczosBasis {
  Eigen::MatrixXcd vectors;
  Eigen::VectorXd alpha;
  Eigen::VectorXd beta;   // beta[j] couples vector j to j+1; last is the residual
  int size = 0;
};

LanczosBasis lanczos(const SparseOperator& h, const Eigen::VectorXcd& start,
                     int max_dim) {
  const Eigen::Index dim = h.dimension();
  LanczosBasis basis;
  basis.vectors.resize(dim, max_dim);
  basis.alpha.resize(max_dim);
  basis.beta.resize(max_dim);
  const double scale = start.norm();
  Eigen::VectorXcd v = start / scale;
  Eigen::VectorXcd prev = Eigen::VectorXcd::Zero(dim);
  double beta_prev = 0.0;
  for (int j = 0; j < max_dim; ++j) {
    basis.vectors.col(j) = v;
    Eigen::VectorXcd w = h.apply(v);
    const double a = w.dot(v).real();
    w -= a * v;
    if (j > 0) w -= beta_prev * prev;
    // full reorthogonalization; the basis is small
    for (int i = 0; i <= j; ++i) {
      w -= basis.vectors.col(i).dot(w) * basis.vectors.col(i);
    }
    const double b = w.norm();
    basis.alpha[j] = a;
    basis.beta[j] = b;
    basis.size = j + 1;
    if (b < 1e-13) break;  // invariant subspace reached
    prev = v;
    v = w / b;
    beta_prev = b;
  }
  return basis;
}

Eigen::VectorXcd krylov_evolve(const SparseOperator& h,
                               const Eigen::VectorXcd& state0, double t,
                               const EvolveOptions& options) {
  const double norm0 = state0.norm();
  if (norm0 == 0.0 || t == 0.0) return state0;
  const double hnorm = std::max(gershgorin_bound(h), 1e-300);
  double step = 4.0 / hnorm;
  Eigen::VectorXcd state = state0;
  double remaining = t;
  int halvings = 0;
  while (remaining != 0.0) {
    const double dt = std::clamp(remaining, -step, step);
    const LanczosBasis basis = lanczos(h, state, options.krylov_dim);
    const int m = basis.size;
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int j = 0; j < m; ++j) {
      tri(j, j) = basis.alpha[j];
      if (j + 1 < m) tri(j, j + 1) = tri(j + 1, j) = basis.beta[j];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    const Eigen::VectorXcd phases =
        (Cplx(0, -dt) * es.eigenvalues().cast<Cplx>().array()).exp().matrix();
    const Eigen::VectorXcd small = es.eigenvectors().cast<Cplx>() *
                                   phases.cwiseProduct(es.eigenvectors()
                                                           .row(0)
                                                           .transpose()
                                                           .cast<Cplx>()) *
                                   state.norm();
    const bool invariant = basis.beta[m - 1] < 1e-13;
    const double err = invariant
                           ? 0.0
                           : std::abs(basis.beta[m - 1]) * std::abs(small[m - 1]);
    if (err > options.tolerance * std::max(1.0, norm0)) {
      if (++halvings > options.max_halvings) {
        throw Error(ErrorCode::ConvergenceFailure,
                    "Krylov residual did not reach tolerance");
      }
      step /= 2.0;
      continue;
    }
    state = basis.vectors.leftCols(m) * small;
    remaining -= dt;
  }
  if (std::abs(state.norm() - norm0) > 1e-10 * std::max(1.0, norm0)) {
    throw Error(ErrorCode::ConvergenceFailure, "evolution lost unitarity");
  }
  return state;
}

}  // namespace

void check_time_grid(const std::vector<double>& times) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!std::isfinite(times[i])) {
      throw Error(ErrorCode::NonFiniteParameter, "time grid entry not finite");
    }
    if (i > 0 && times[i] <= times[i - 1]) {
      throw Error(ErrorCode::InvalidArgument, "time grid must strictly increase");
    }
  }
}

EigenSystem diagonalize(const SparseOperator& op) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(Eigen::MatrixXd(op.mat));
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "dense eigendecomposition failed");
  }
  return EigenSystem{solver.eigenvalues(), solver.eigenvectors()};
}

Eigen::VectorXcd evolve(const EigenSystem& es, const Eigen::VectorXcd& state,
                        double t) {
  if (state.size() != es.vectors.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "state dimension does not match");
  }
  const Eigen::VectorXcd modes = es.vectors.transpose() * state;
  const Eigen::VectorXcd phases =
      (Cplx(0, -t) * es.values.cast<Cplx>().array()).exp().matrix();
  return es.vectors * phases.cwiseProduct(modes);
}

Eigen::VectorXcd evolve(const SparseOperator& h, const Eigen::VectorXcd& state,
                        double t, const EvolveOptions& options) {
  if (state.size() != h.dimension()) {
    throw Error(ErrorCode::DimensionMismatch, "state dimension does not match");
  }
  if (t == 0.0) return state;
  if (h.dimension() <= options.dense_threshold) {
    return evolve(diagonalize(h), state, t);
  }
  return krylov_evolve(h, state, t, options);
}

double moment(const SparseOperator& h, const Eigen::VectorXcd& state, int order) {
  if (order < 0) {
    throw Error(ErrorCode::OutOfRange, "moment order must be non-negative");
  }
  Eigen::VectorXcd v = state;
  for (int i = 0; i < order; ++i) v = h.apply(v);
  return state.dot(v).real();
}

namespace {

ComplexTimeSeries survival_from_graph(const SiteCouplingGraph& graph,
                                      const std::vector<double>& times) {
  check_time_grid(times);
  const auto h = build_hamiltonian(graph, 1);
  const EigenSystem es = diagonalize(h);
  // |e_1> is the lowest mask in the one-excitation sector, rank 0.
  const Eigen::VectorXd weights_raw = es.vectors.row(0).transpose();
  ComplexTimeSeries out;
  out.times = times;
  out.values.reserve(times.size());
  for (double t : times) {
    Cplx f = 0.0;
    for (Eigen::Index k = 0; k < es.values.size(); ++k) {
      f += weights_raw[k] * weights_raw[k] * std::exp(Cplx(0, -es.values[k] * t));
    }
    out.values.push_back(f);
  }
  return out;
}

TimeSeries return_from_graph(const SiteCouplingGraph& graph,
                             const std::vector<double>& times) {
  check_time_grid(times);
  const SectorBasis basis(graph.spins, 2);
  const auto h = build_hamiltonian(graph, 2);
  const EigenSystem es = diagonalize(h);
  const Eigen::VectorXcd psi = end_pair_state(basis);
  const Eigen::VectorXcd modes = es.vectors.transpose() * psi;
  TimeSeries out;
  out.times = times;
  out.values.reserve(times.size());
  for (double t : times) {
    Cplx f = 0.0;
    for (Eigen::Index k = 0; k < es.values.size(); ++k) {
      f += std::norm(modes[k]) * std::exp(Cplx(0, -es.values[k] * t));
    }
    out.values.push_back(std::norm(f));
  }
  return out;
}

}  // namespace

ComplexTimeSeries survival_amplitude(const PseudoChainSpec& spec,
                                     const std::vector<double>& times) {
  return survival_from_graph(lower(spec), times);
}

ComplexTimeSeries survival_amplitude(const ModelChainSpec& model,
                                     const std::vector<double>& times) {
  return survival_from_graph(lower(model), times);
}

TimeSeries return_probability(const PseudoChainSpec& spec,
                              const std::vector<double>& times) {
  return return_from_graph(lower(spec), times);
}

TimeSeries return_probability(const ModelChainSpec& model,
                              const std::vector<double>& times) {
  return return_from_graph(lower(model), times);
}

Eigen::VectorXcd end_pair_state(const SectorBasis& basis) {
  if (basis.excitation_count() != 2) {
    throw Error(ErrorCode::InvalidArgument, "end-pair state lives in the "
                                            "two-excitation sector");
  }
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis.size());
  const std::uint32_t mask = 1u | (1u << (basis.spin_count() - 1));
  psi[basis.rank(mask)] = 1.0;
  return psi;
}

// ---------------------------------------------------------------------------
// CorrelatorEngine
// ---------------------------------------------------------------------------

struct CorrelatorEngine::Impl {
  SiteCouplingGraph graph;
  int spins = 0;
  std::vector<SectorBasis> bases;
  std::vector<SparseOperator> hams;
  mutable std::vector<std::optional<EigenSystem>> eigs;

  explicit Impl(const SiteCouplingGraph& g) : graph(g), spins(g.spins) {
    if (spins > kTraceMaxSpins) {
      throw Error(ErrorCode::CapExceeded, "trace computations limited to " +
                                              std::to_string(kTraceMaxSpins) +
                                              " spins");
    }
    bases.reserve(spins + 1);
    hams.reserve(spins + 1);
    for (int k = 0; k <= spins; ++k) {
      bases.emplace_back(spins, k);
      hams.push_back(build_hamiltonian(graph, k));
    }
    eigs.resize(spins + 1);
  }

  const EigenSystem& eig(int k) const {
    if (!eigs[k]) eigs[k] = diagonalize(hams[k]);
    return *eigs[k];
  }

  Eigen::Index max_sector_dim() const {
    Eigen::Index d = 0;
    for (const auto& b : bases) d = std::max<Eigen::Index>(d, b.size());
    return d;
  }

  // Trace table T(a,b) = Tr(H^a A H^b B) / 2^M as real structural parts; the
  // axis prefactors are attached by the caller.
  LongMatrix trace_table_matvec(const EndOperator& a, const EndOperator& b,
                                int max_order) const;
  LongMatrix trace_table_spectral(const EndOperator& a, const EndOperator& b,
                                  int max_order) const;
};

namespace {

struct LongTriplets {
  std::vector<int> rows, cols;
  std::vector<long double> vals;
  Eigen::Index out_rows = 0;

  explicit LongTriplets(const Eigen::SparseMatrix<double>& m)
      : out_rows(m.rows()) {
    for (int k = 0; k < m.outerSize(); ++k) {
      for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it) {
        rows.push_back(static_cast<int>(it.row()));
        cols.push_back(static_cast<int>(it.col()));
        vals.push_back(static_cast<long double>(it.value()));
      }
    }
  }

  LongMatrix apply(const LongMatrix& x) const {
    LongMatrix y = LongMatrix::Zero(out_rows, x.cols());
    for (std::size_t i = 0; i < vals.size(); ++i) {
      y.row(rows[i]) += vals[i] * x.row(cols[i]);
    }
    return y;
  }
};

}  // namespace

LongMatrix CorrelatorEngine::Impl::trace_table_matvec(const EndOperator& a,
                                                      const EndOperator& b,
                                                      int max_order) const {
  LongMatrix table = LongMatrix::Zero(max_order + 1, max_order + 1);
  for (int k = 0; k <= spins; ++k) {
    for (int sigma : {+1, -1}) {
      const int kp = k + sigma;
      if (kp < 0 || kp > spins) continue;
      // cycle: B maps k -> kp, then H^b, then A maps kp -> k, then H^a.
      const auto rb = b.real_block(bases[kp], bases[k]);
      const auto ra = a.real_block(bases[k], bases[kp]);
      if (rb.nonZeros() == 0 || ra.nonZeros() == 0) continue;
      const LongTriplets hk(hams[k].mat);
      const LongTriplets hkp(hams[kp].mat);
      const LongTriplets a_trips(ra);
      LongMatrix w = LongMatrix(rb.cast<long double>());
      for (int ob = 0; ob <= max_order; ++ob) {
        LongMatrix v = a_trips.apply(w);
        for (int oa = 0; oa + ob <= max_order; ++oa) {
          table(oa, ob) += v.trace();
          if (oa + ob < max_order) v = hk.apply(v);
        }
        if (ob < max_order) w = hkp.apply(w);
      }
    }
  }
  return table / std::pow(2.0L, spins);
}

LongMatrix CorrelatorEngine::Impl::trace_table_spectral(const EndOperator& a,
                                                        const EndOperator& b,
                                                        int max_order) const {
  LongMatrix table = LongMatrix::Zero(max_order + 1, max_order + 1);
  for (int k = 0; k <= spins; ++k) {
    for (int sigma : {+1, -1}) {
      const int kp = k + sigma;
      if (kp < 0 || kp > spins) continue;
      const auto rb = b.real_block(bases[kp], bases[k]);
      const auto ra = a.real_block(bases[k], bases[kp]);
      if (rb.nonZeros() == 0 || ra.nonZeros() == 0) continue;
      const EigenSystem& ek = eig(k);
      const EigenSystem& ekp = eig(kp);
      const Eigen::MatrixXd a_t = ek.vectors.transpose() * (ra * ekp.vectors);
      const Eigen::MatrixXd b_t = ekp.vectors.transpose() * (rb * ek.vectors);
      const Eigen::MatrixXd weight = a_t.cwiseProduct(b_t.transpose());
      // power tables: P(m, ob) = mu_m^ob, Q(n, oa) = lambda_n^oa
      Eigen::MatrixXd p(ekp.values.size(), max_order + 1);
      p.col(0).setOnes();
      for (int o = 1; o <= max_order; ++o) {
        p.col(o) = p.col(o - 1).cwiseProduct(ekp.values);
      }
      Eigen::MatrixXd q(ek.values.size(), max_order + 1);
      q.col(0).setOnes();
      for (int o = 1; o <= max_order; ++o) {
        q.col(o) = q.col(o - 1).cwiseProduct(ek.values);
      }
      const Eigen::MatrixXd contrib = q.transpose() * (weight * p);
      table += contrib.cast<long double>();
    }
  }
  return table / std::pow(2.0L, spins);
}

CorrelatorEngine::CorrelatorEngine(const SiteCouplingGraph& graph)
    : impl_(std::make_unique<Impl>(graph)) {}

CorrelatorEngine::~CorrelatorEngine() = default;
CorrelatorEngine::CorrelatorEngine(CorrelatorEngine&&) noexcept = default;
CorrelatorEngine& CorrelatorEngine::operator=(CorrelatorEngine&&) noexcept =
    default;

int CorrelatorEngine::spins() const { return impl_->spins; }

TimeSeries CorrelatorEngine::correlator(const EndOperator& a,
                                        const EndOperator& b,
                                        const std::vector<double>& times) const {
  check_time_grid(times);
  const int m = impl_->spins;
  const Cplx phi = a.scalar_prefactor() * b.scalar_prefactor();
  std::vector<Cplx> total(times.size(), Cplx(0, 0));
  for (int k = 0; k <= m; ++k) {
    for (int sigma : {+1, -1}) {
      const int kp = k + sigma;
      if (kp < 0 || kp > m) continue;
      // cycle: e^{-iH_k t}, A maps k -> kp, e^{+iH_kp t}, B maps kp -> k.
      const auto ra = a.real_block(impl_->bases[kp], impl_->bases[k]);
      const auto rb = b.real_block(impl_->bases[k], impl_->bases[kp]);
      if (ra.nonZeros() == 0 || rb.nonZeros() == 0) continue;
      const EigenSystem& ek = impl_->eig(k);
      const EigenSystem& ekp = impl_->eig(kp);
      const Eigen::MatrixXd a_t = ekp.vectors.transpose() * (ra * ek.vectors);
      const Eigen::MatrixXd b_t = ek.vectors.transpose() * (rb * ekp.vectors);
      const Eigen::MatrixXcd weight =
          a_t.transpose().cwiseProduct(b_t).cast<Cplx>();
      for (std::size_t ti = 0; ti < times.size(); ++ti) {
        const double t = times[ti];
        const Eigen::VectorXcd u =
            (Cplx(0, -t) * ek.values.cast<Cplx>().array()).exp().matrix();
        const Eigen::VectorXcd v =
            (Cplx(0, t) * ekp.values.cast<Cplx>().array()).exp().matrix();
        total[ti] += (u.transpose() * (weight * v)).value();
      }
    }
  }
  TimeSeries out;
  out.times = times;
  out.values.reserve(times.size());
  const double norm = std::pow(2.0, m);
  for (auto& z : total) {
    const Cplx g = phi * z / norm;
    out.values.push_back(g.real());
  }
  return out;
}

SeriesCoefficients CorrelatorEngine::series(const EndOperator& a,
                                            const EndOperator& b,
                                            int max_order) const {
  if (max_order < 0 || max_order > kSeriesHardOrderCap) {
    throw Error(ErrorCode::OutOfRange, "series order outside supported range");
  }
  const LongMatrix table =
      impl_->max_sector_dim() <= kSeriesDenseRouteDim
          ? impl_->trace_table_matvec(a, b, max_order)
          : impl_->trace_table_spectral(a, b, max_order);
  const std::complex<long double> phi(
      (a.scalar_prefactor() * b.scalar_prefactor()).real(),
      (a.scalar_prefactor() * b.scalar_prefactor()).imag());
  SeriesCoefficients out;
  out.normalization = "x-x value 1 at t=0";
  out.coefficients.reserve(max_order + 1);
  long double factorial = 1.0L;
  for (int n = 0; n <= max_order; ++n) {
    if (n > 0) factorial *= n;
    std::complex<long double> sum(0.0L, 0.0L);
    for (int oa = 0; oa <= n; ++oa) {
      const int ob = n - oa;
      // i^oa * (-i)^ob
      const int quarter = ((oa - ob) % 4 + 4) % 4;
      static const std::complex<long double> units[4] = {
          {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
      const long double binom = static_cast<long double>(binomial(n, oa));
      sum += units[quarter] * binom * table(oa, ob);
    }
    const std::complex<long double> c = phi * sum / factorial;
    out.coefficients.push_back(static_cast<double>(c.real()));
  }
  return out;
}

// ---------------------------------------------------------------------------
// free-function fronts
// ---------------------------------------------------------------------------

TimeSeries mixed_correlator(const PseudoChainSpec& spec, const EndOperator& a,
                            const EndOperator& b,
                            const std::vector<double>& times) {
  return CorrelatorEngine(lower(spec)).correlator(a, b, times);
}

TimeSeries mixed_correlator(const ModelChainSpec& model, const EndOperator& a,
                            const EndOperator& b,
                            const std::vector<double>& times) {
  return CorrelatorEngine(lower(model)).correlator(a, b, times);
}

SeriesCoefficients correlator_series(const PseudoChainSpec& spec,
                                     const EndOperator& a, const EndOperator& b,
                                     int max_order) {
  return CorrelatorEngine(lower(spec)).series(a, b, max_order);
}

SeriesCoefficients correlator_series(const ModelChainSpec& model,
                                     const EndOperator& a, const EndOperator& b,
                                     int max_order) {
  return CorrelatorEngine(lower(model)).series(a, b, max_order);
}

TimeSeries end_autocorrelation(const PseudoChainSpec& spec, Axis b_axis,
                               const std::vector<double>& times) {
  const int m = spec.total_spins();
  return mixed_correlator(spec, EndOperator(m, Axis::X, 0),
                          EndOperator(m, b_axis, 0), times);
}

SeriesCoefficients end_autocorrelation_series(const PseudoChainSpec& spec,
                                              Axis b_axis, int max_order) {
  const int m = spec.total_spins();
  return correlator_series(spec, EndOperator(m, Axis::X, 0),
                           EndOperator(m, b_axis, 0), max_order);
}

SeriesCoefficients end_autocorrelation_series(const ModelChainSpec& model,
                                              Axis b_axis, int max_order) {
  const int m = model.site_count();
  return correlator_series(model, EndOperator(m, Axis::X, 0),
                           EndOperator(m, b_axis, 0), max_order);
}

}  // namespace pseudochain
