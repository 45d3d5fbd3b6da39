#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pseudochain/hilbert.hpp"
#include "pseudochain/topology.hpp"

namespace pseudochain {

struct TimeSeries {
  std::vector<double> times;
  std::vector<double> values;
};

struct ComplexTimeSeries {
  std::vector<double> times;
  std::vector<std::complex<double>> values;
};

/// coefficients[n] multiplies t^n. Autocorrelation series are normalized so
/// the X-X value is 1 at t = 0.
struct SeriesCoefficients {
  std::vector<double> coefficients;
  std::string normalization;

  int max_order() const { return static_cast<int>(coefficients.size()) - 1; }
};

void check_time_grid(const std::vector<double>& times);

struct EigenSystem {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

EigenSystem diagonalize(const SparseOperator& op);

struct EvolveOptions {
  Eigen::Index dense_threshold = 4000;
  int krylov_dim = 30;
  double tolerance = 1e-12;
  int max_halvings = 40;
};

/// e^{-iHt} |state>, dense spectral path up to dense_threshold, Lanczos
/// propagation with step control beyond it. Norm is preserved to 1e-10.
Eigen::VectorXcd evolve(const SparseOperator& h, const Eigen::VectorXcd& state,
                        double t, const EvolveOptions& options = {});
Eigen::VectorXcd evolve(const EigenSystem& es, const Eigen::VectorXcd& state,
                        double t);

/// <state| H^order |state>, by `order` repeated matrix-vector products.
double moment(const SparseOperator& h, const Eigen::VectorXcd& state, int order);

/// <e_1| e^{-iHt} |e_1> in the one-excitation sector.
ComplexTimeSeries survival_amplitude(const PseudoChainSpec& spec,
                                     const std::vector<double>& times);
ComplexTimeSeries survival_amplitude(const ModelChainSpec& model,
                                     const std::vector<double>& times);

/// |<psi| e^{-iHt} |psi>|^2 for the two-excitation state with one excitation
/// at each chain end.
TimeSeries return_probability(const PseudoChainSpec& spec,
                              const std::vector<double>& times);
TimeSeries return_probability(const ModelChainSpec& model,
                              const std::vector<double>& times);

/// The |10...01> state in the two-excitation sector basis.
Eigen::VectorXcd end_pair_state(const SectorBasis& basis);

/// Exact infinite-temperature correlators Tr(B e^{iHt} A e^{-iHt}) / 2^M and
/// their Taylor coefficients from H-power sandwich traces. One engine caches
/// the per-sector bases, Hamiltonians, and spectral data of a single system.
class CorrelatorEngine {
 public:
  explicit CorrelatorEngine(const SiteCouplingGraph& graph);
  ~CorrelatorEngine();
  CorrelatorEngine(CorrelatorEngine&&) noexcept;
  CorrelatorEngine& operator=(CorrelatorEngine&&) noexcept;

  int spins() const;

  TimeSeries correlator(const EndOperator& a, const EndOperator& b,
                        const std::vector<double>& times) const;
  SeriesCoefficients series(const EndOperator& a, const EndOperator& b,
                            int max_order) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Tr(B e^{iHt} A e^{-iHt}) / 2^M, exact. Requires total spins <= the trace
/// cap; A and B act on end sites.
TimeSeries mixed_correlator(const PseudoChainSpec& spec, const EndOperator& a,
                            const EndOperator& b,
                            const std::vector<double>& times);
TimeSeries mixed_correlator(const ModelChainSpec& model, const EndOperator& a,
                            const EndOperator& b,
                            const std::vector<double>& times);

/// Taylor coefficients of the mixed correlator,
/// c_n = (1/n!) sum_k binom(n,k) i^k (-i)^{n-k} Tr(H^k A H^{n-k} B) / 2^M.
SeriesCoefficients correlator_series(const PseudoChainSpec& spec,
                                     const EndOperator& a, const EndOperator& b,
                                     int max_order);
SeriesCoefficients correlator_series(const ModelChainSpec& model,
                                     const EndOperator& a, const EndOperator& b,
                                     int max_order);

/// Site-1 autocorrelations g_x (b_axis = X) and g_y (b_axis = Y): the first
/// measurement is always X on site 1.
TimeSeries end_autocorrelation(const PseudoChainSpec& spec, Axis b_axis,
                               const std::vector<double>& times);
SeriesCoefficients end_autocorrelation_series(const PseudoChainSpec& spec,
                                              Axis b_axis, int max_order);
SeriesCoefficients end_autocorrelation_series(const ModelChainSpec& model,
                                              Axis b_axis, int max_order);

}  // namespace pseudochain
