#pragma once

#include <string>
#include <vector>

#include "pseudochain/blackbox.hpp"
#include "pseudochain/dynamics.hpp"
#include "pseudochain/topology.hpp"

namespace pseudochain {

/// Frequencies and end-site weights of the one-excitation survival signal,
/// f(t) = sum_k w_k exp(-i lambda_k t).
struct SpectralData {
  std::vector<double> eigenvalues;
  std::vector<double> weights;
};

struct PencilOptions {
  double rank_rel_tol = 1e-10;   // singular-value cutoff, relative to sigma_1
  double noise_floor = 0.0;      // absolute cutoff for sampled data
  double weight_threshold = 1e-6;
  double negative_weight_tol = 1e-6;
  int max_modes = 64;
};

/// Matrix-pencil harmonic retrieval (pencil length = grid/3) followed by a
/// least-squares weight fit. Needs a uniform time grid.
SpectralData estimate_spectrum(const ComplexTimeSeries& survival,
                               const PencilOptions& options = {});

/// Jacobi-matrix reconstruction from spectral data: Lanczos on the diagonal
/// eigenvalue matrix started from the weight vector. Couplings come out
/// positive (the end-site sign gauge).
ModelChainSpec reconstruct_jacobi(const SpectralData& data);

struct TomographyOptions {
  int n_max = 16;           // upper bound on the chain length searched for
  int points = 384;
  int refinement_rounds = 2;
  PencilOptions pencil;
};

struct TomographyResult {
  ModelChainSpec model;
  SpectralData spectrum;
  double window = 0.0;
  int points = 0;
  double residual = 0.0;  // rms misfit of the survival signal
};

/// End-to-end run against a black box: samples the survival amplitude,
/// estimates the spectrum, refines the window from the smallest gap, and
/// reconstructs the chain.
TomographyResult run_tomography(BlackBoxChain& box,
                                const TomographyOptions& options = {});

std::string tomography_report_json(const TomographyResult& result);

}  // namespace pseudochain
