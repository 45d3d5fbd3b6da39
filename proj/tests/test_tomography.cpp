#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pseudochain/blackbox.hpp"
#include "pseudochain/errors.hpp"
#include "pseudochain/tomography.hpp"
#include "support/oracles.hpp"

using namespace pseudochain;
using Cplx = std::complex<double>;

namespace {

ComplexTimeSeries synthesize(const std::vector<double>& lambdas,
                             const std::vector<double>& weights, double window,
                             int points) {
  ComplexTimeSeries out;
  for (int j = 0; j < points; ++j) {
    const double t = window * j / points;
    out.times.push_back(t);
    Cplx f = 0.0;
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
      f += weights[k] * std::exp(Cplx(0, -lambdas[k] * t));
    }
    out.values.push_back(f);
  }
  return out;
}

ModelChainSpec random_model(std::mt19937_64& rng, int max_sites = 8) {
  std::uniform_real_distribution<double> j_dist(0.5, 2.0);
  std::uniform_real_distribution<double> b_dist(-1.0, 1.0);
  const int n = 2 + static_cast<int>(rng() % (max_sites - 1));
  ModelChainSpec model;
  for (int i = 0; i < n; ++i) model.effective_fields.push_back(b_dist(rng));
  for (int i = 0; i + 1 < n; ++i) model.couplings.push_back(j_dist(rng));
  return model;
}

}  // namespace

TEST_CASE("single decaying phase yields one mode") {
  const auto series = synthesize({0.7}, {1.0}, 20.0, 64);
  const auto data = estimate_spectrum(series);
  REQUIRE(data.eigenvalues.size() == 1);
  CHECK(data.eigenvalues[0] == doctest::Approx(0.7).epsilon(1e-10));
  CHECK(data.weights[0] == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("uniform 3-chain spectral data") {
  ModelChainSpec model{{1.0, 1.0}, {0.0, 0.0, 0.0}};
  std::vector<double> grid;
  for (int j = 0; j < 96; ++j) grid.push_back(18.0 * j / 96);
  const auto data = estimate_spectrum(survival_amplitude(model, grid));
  const double r2 = std::sqrt(2.0);
  REQUIRE(data.eigenvalues.size() == 3);
  CHECK(data.eigenvalues[0] == doctest::Approx(-r2).epsilon(1e-8));
  CHECK(data.eigenvalues[1] == doctest::Approx(0.0).epsilon(1e-8));
  CHECK(data.eigenvalues[2] == doctest::Approx(r2).epsilon(1e-8));
  CHECK(data.weights[0] == doctest::Approx(0.25).epsilon(1e-8));
  CHECK(data.weights[1] == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(data.weights[2] == doctest::Approx(0.25).epsilon(1e-8));
}

TEST_CASE("weights sum to one for true survival data") {
  std::mt19937_64 rng(5);
  const auto model = random_model(rng, 6);
  std::vector<double> grid;
  for (int j = 0; j < 256; ++j) grid.push_back(30.0 * j / 256);
  const auto data = estimate_spectrum(survival_amplitude(model, grid));
  double total = 0.0;
  for (double w : data.weights) total += w;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("Jacobi reconstruction inverts the closed 3-chain data") {
  SpectralData data;
  const double r2 = std::sqrt(2.0);
  data.eigenvalues = {-r2, 0.0, r2};
  data.weights = {0.25, 0.5, 0.25};
  const auto model = reconstruct_jacobi(data);
  REQUIRE(model.site_count() == 3);
  CHECK(model.couplings[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(model.couplings[1] == doctest::Approx(1.0).epsilon(1e-12));
  for (double b : model.effective_fields) {
    CHECK(b == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("single mode reconstructs a single site") {
  const auto model = reconstruct_jacobi(SpectralData{{0.9}, {1.0}});
  REQUIRE(model.site_count() == 1);
  CHECK(model.effective_fields[0] == doctest::Approx(0.9));
  CHECK(model.couplings.empty());
}

TEST_CASE("forward-then-inverse round trip on random chains") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 8; ++trial) {
    const auto model = random_model(rng);
    const auto es = diagonalize(build_hamiltonian(model, 1));
    SpectralData data;
    for (int k = 0; k < es.values.size(); ++k) {
      data.eigenvalues.push_back(es.values[k]);
      data.weights.push_back(es.vectors(0, k) * es.vectors(0, k));
    }
    const auto back = reconstruct_jacobi(data);
    REQUIRE(back.site_count() == model.site_count());
    for (std::size_t i = 0; i < model.couplings.size(); ++i) {
      CHECK(back.couplings[i] ==
            doctest::Approx(std::abs(model.couplings[i])).epsilon(1e-8));
    }
    for (int i = 0; i < model.site_count(); ++i) {
      CHECK(back.effective_fields[i] ==
            doctest::Approx(model.effective_fields[i]).epsilon(1e-8));
    }
  }
}

TEST_CASE("coupling signs are gauge: flipped signs leave end data unchanged") {
  std::mt19937_64 rng(13);
  const auto model = random_model(rng, 6);
  auto flipped = model;
  flipped.couplings[0] = -flipped.couplings[0];
  if (flipped.couplings.size() > 2) flipped.couplings[2] = -flipped.couplings[2];
  std::vector<double> grid;
  for (int j = 0; j < 64; ++j) grid.push_back(12.0 * j / 64);
  const auto f = survival_amplitude(model, grid);
  const auto g = survival_amplitude(flipped, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(std::abs(f.values[i] - g.values[i]) < 1e-12);
  }
  BlackBoxChain box(as_pseudo(flipped), Mode::Exact);
  const auto result = run_tomography(box);
  for (double j : result.model.couplings) CHECK(j > 0.0);
}

TEST_CASE("exact-mode tomography recovers random chains to 1e-6") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    const auto model = random_model(rng);
    BlackBoxChain box(as_pseudo(model), Mode::Exact);
    const auto result = run_tomography(box);
    REQUIRE(result.model.site_count() == model.site_count());
    for (std::size_t i = 0; i < model.couplings.size(); ++i) {
      CHECK(std::abs(result.model.couplings[i] - std::abs(model.couplings[i])) <
            1e-6);
    }
    for (int i = 0; i < model.site_count(); ++i) {
      CHECK(std::abs(result.model.effective_fields[i] -
                     model.effective_fields[i]) < 1e-6);
    }
  }
}

TEST_CASE("tomography of a hidden hub chain sees only the effective model") {
  std::mt19937_64 rng(19);
  const auto spec = testsupport::random_pseudo_chain(rng, 5, 3, 11);
  const auto model = effective_model(spec);
  BlackBoxChain box(spec, Mode::Exact);
  const auto result = run_tomography(box);
  REQUIRE(result.model.site_count() == model.site_count());
  for (std::size_t i = 0; i < model.couplings.size(); ++i) {
    CHECK(std::abs(result.model.couplings[i] - std::abs(model.couplings[i])) <
          1e-6);
  }
  for (int i = 0; i < model.site_count(); ++i) {
    CHECK(std::abs(result.model.effective_fields[i] - model.effective_fields[i]) <
          1e-6);
  }
}

TEST_CASE("sampled tomography reaches percent accuracy at a million shots") {
  ModelChainSpec model{{1.0, 1.4, 0.8}, {0.3, -0.4, 0.6, 0.0}};
  BlackBoxChain box(as_pseudo(model), Mode::Sampled, {1'000'000, 23});
  const auto result = run_tomography(box);
  REQUIRE(result.model.site_count() == model.site_count());
  for (std::size_t i = 0; i < model.couplings.size(); ++i) {
    CHECK(std::abs(result.model.couplings[i] - model.couplings[i]) < 1e-2);
  }
  for (int i = 0; i < model.site_count(); ++i) {
    CHECK(std::abs(result.model.effective_fields[i] - model.effective_fields[i]) <
          1e-2);
  }
}

TEST_CASE("error paths: short grids, negative weights, bad spectra") {
  ComplexTimeSeries tiny;
  for (int j = 0; j < 4; ++j) {
    tiny.times.push_back(j * 0.1);
    tiny.values.push_back(1.0);
  }
  CHECK_THROWS_AS(estimate_spectrum(tiny), Error);

  // negative-weight signal violates the survival model
  const auto bad = synthesize({0.5, -0.8}, {1.5, -0.5}, 25.0, 96);
  CHECK_THROWS_AS(estimate_spectrum(bad), Error);

  SpectralData neg{{0.0, 1.0}, {0.5, -0.5}};
  CHECK_THROWS_AS(reconstruct_jacobi(neg), Error);
  SpectralData unsorted{{1.0, 0.0}, {0.5, 0.5}};
  CHECK_THROWS_AS(reconstruct_jacobi(unsorted), Error);
}

TEST_CASE("report JSON carries spectrum and chain") {
  ModelChainSpec model{{1.0}, {0.0, 0.2}};
  BlackBoxChain box(as_pseudo(model), Mode::Exact);
  const auto result = run_tomography(box);
  const auto text = tomography_report_json(result);
  CHECK(text.find("\"J\"") != std::string::npos);
  CHECK(text.find("\"eigenvalues\"") != std::string::npos);
  CHECK(text.find("\"residual_rms\"") != std::string::npos);
}
