#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pseudochain/dynamics.hpp"
#include "pseudochain/errors.hpp"
#include "pseudochain/polyfit.hpp"
#include "support/oracles.hpp"

using namespace pseudochain;
using Cplx = std::complex<double>;

namespace {

PseudoChainSpec hub121(double k2 = 0.0, double b2 = 0.0) {
  PseudoChainSpec spec;
  spec.blocks = {BlockSpec{1, 0.0, 0.0}, BlockSpec{2, b2, k2},
                 BlockSpec{1, 0.0, 0.0}};
  spec.inter_couplings = {1.0, 1.0};
  return spec;
}

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back(a + (b - a) * i / (n - 1));
  return out;
}

Eigen::VectorXcd random_state(std::mt19937_64& rng, Eigen::Index dim) {
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v[i] = Cplx(gauss(rng), gauss(rng));
  v.normalize();
  return v;
}

}  // namespace

TEST_CASE("evolution at t=0 is the identity") {
  const auto h = build_hamiltonian(hub121(0.3, -0.4), 2);
  std::mt19937_64 rng(3);
  const auto psi = random_state(rng, h.dimension());
  CHECK((evolve(h, psi, 0.0) - psi).norm() == 0.0);
}

TEST_CASE("uniform 3-site chain transfers perfectly at t = pi/sqrt(2)") {
  ModelChainSpec model{{1.0, 1.0}, {0.0, 0.0, 0.0}};
  const auto h = build_hamiltonian(model, 1);
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(3);
  e1[0] = 1.0;
  for (double t : linspace(0.1, 6.0, 23)) {
    const auto psi = evolve(h, e1, t);
    const double expect = std::pow(std::sin(t / std::sqrt(2.0)), 4);
    CHECK(std::norm(psi[2]) == doctest::Approx(expect).epsilon(1e-12));
  }
  const auto psi = evolve(h, e1, M_PI / std::sqrt(2.0));
  CHECK(std::norm(psi[2]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("evolution preserves the norm") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 4; ++trial) {
    const auto spec = testsupport::random_pseudo_chain(rng, 5, 3, 11);
    const auto h = build_hamiltonian(spec, 2);
    const auto psi = random_state(rng, h.dimension());
    for (double t : {0.7, 3.3, 25.0}) {
      CHECK(evolve(h, psi, t).norm() == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("Krylov propagation matches the dense path") {
  std::mt19937_64 rng(7);
  const auto spec = testsupport::random_pseudo_chain(rng, 5, 3, 11);
  const auto h = build_hamiltonian(spec, 2);
  const auto psi = random_state(rng, h.dimension());
  EvolveOptions krylov_only;
  krylov_only.dense_threshold = 1;  // force the Krylov path
  for (double t : {0.4, 2.7, -13.0}) {
    const auto a = evolve(h, psi, t);
    const auto b = evolve(h, psi, t, krylov_only);
    CHECK((a - b).norm() < 1e-9);
  }
}

TEST_CASE("return probability starts at one") {
  const auto series = return_probability(hub121(0.5, 0.2), linspace(0, 3, 7));
  CHECK(series.values[0] == doctest::Approx(1.0).epsilon(1e-14));
  for (double v : series.values) {
    CHECK(v >= -1e-12);
    CHECK(v <= 1.0 + 1e-12);
  }
}

TEST_CASE("two fully excited sites are frozen") {
  ModelChainSpec model{{1.7}, {0.0, 0.0}};
  const auto series = return_probability(model, linspace(0, 10, 21));
  for (double v : series.values) {
    CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("return probability is even in time") {
  std::mt19937_64 rng(11);
  const auto spec = testsupport::random_pseudo_chain(rng, 4, 3, 9);
  const auto grid = linspace(0.1, 2.0, 9);
  std::vector<double> neg;
  for (auto it = grid.rbegin(); it != grid.rend(); ++it) neg.push_back(-*it);
  const auto plus = return_probability(spec, grid);
  const auto minus = return_probability(spec, neg);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(plus.values[i] ==
          doctest::Approx(minus.values[grid.size() - 1 - i]).epsilon(1e-12));
  }
}

TEST_CASE("zeroth moment of a normalized state is one") {
  const auto h = build_hamiltonian(hub121(), 2);
  std::mt19937_64 rng(13);
  const auto psi = random_state(rng, h.dimension());
  CHECK(moment(h, psi, 0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("fourth moments of the end-pair state") {
  // hub chain (1,2,1), unit couplings, no fields
  const auto spec = hub121();
  const SectorBasis basis(4, 2);
  const auto h = build_hamiltonian(spec, 2);
  const auto psi = end_pair_state(basis);
  CHECK(moment(h, psi, 4) == doctest::Approx(8.0).epsilon(1e-13));

  ModelChainSpec model{{1.0, 1.0}, {0.0, 0.0, 0.0}};
  const SectorBasis mbasis(3, 2);
  const auto h0 = build_hamiltonian(model, 2);
  const auto psi0 = end_pair_state(mbasis);
  CHECK(moment(h0, psi0, 4) == doctest::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("moment resummation reproduces the return probability") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 3; ++trial) {
    const auto spec = testsupport::random_pseudo_chain(rng, 4, 3, 9);
    const auto graph = lower(spec);
    const double maxj = std::max(graph.max_coupling_scale(), 0.5);
    const SectorBasis basis(spec.total_spins(), 2);
    const auto h = build_hamiltonian(spec, 2);
    const auto psi = end_pair_state(basis);

    const int orders = 24;
    std::vector<double> m(orders + 1);
    Eigen::VectorXcd v = psi;
    for (int n = 0; n <= orders; ++n) {
      m[n] = psi.dot(v).real();
      if (n < orders) v = h.apply(v);
    }
    const auto grid = linspace(0.01 / maxj, 0.5 / maxj, 8);
    const auto exact = return_probability(spec, grid);
    for (std::size_t ti = 0; ti < grid.size(); ++ti) {
      const double t = grid[ti];
      Cplx amp = 0.0;
      double tn = 1.0;
      double fact = 1.0;
      for (int n = 0; n <= orders; ++n) {
        if (n > 0) {
          tn *= t;
          fact *= n;
        }
        amp += std::pow(Cplx(0, -1), n) * m[n] * tn / fact;
      }
      CHECK(std::norm(amp) == doctest::Approx(exact.values[ti]).epsilon(1e-8));
    }
  }
}

TEST_CASE("single-spin correlators are cos and sin of the field") {
  const double field = 0.8;
  ModelChainSpec model{{}, {field}};
  const auto grid = linspace(0.0, 4.0, 17);
  const auto gx = mixed_correlator(model, EndOperator(1, Axis::X, 0),
                                   EndOperator(1, Axis::X, 0), grid);
  const auto gy = mixed_correlator(model, EndOperator(1, Axis::X, 0),
                                   EndOperator(1, Axis::Y, 0), grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(gx.values[i] ==
          doctest::Approx(std::cos(field * grid[i])).epsilon(1e-12));
    CHECK(gy.values[i] ==
          doctest::Approx(std::sin(field * grid[i])).epsilon(1e-12));
  }
}

TEST_CASE("correlator normalization at t = 0") {
  std::mt19937_64 rng(19);
  const auto spec = testsupport::random_pseudo_chain(rng, 4, 3, 8);
  const auto grid = linspace(0.0, 1.0, 3);
  CHECK(end_autocorrelation(spec, Axis::X, grid).values[0] ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(end_autocorrelation(spec, Axis::Y, grid).values[0] ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("series coefficients: order zero and single-spin linear term") {
  std::mt19937_64 rng(23);
  const auto spec = testsupport::random_pseudo_chain(rng, 4, 3, 8);
  CHECK(end_autocorrelation_series(spec, Axis::X, 4).coefficients[0] ==
        doctest::Approx(1.0).epsilon(1e-12));

  ModelChainSpec single{{}, {0.8}};
  const auto gy = end_autocorrelation_series(single, Axis::Y, 5);
  CHECK(gy.coefficients[1] == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(std::abs(gy.coefficients[0]) < 1e-15);
}

TEST_CASE("hub chain odd-order correlator difference") {
  const double k2 = 0.5;
  const auto spec = hub121(k2);
  const auto model = effective_model(spec);
  const auto gy = end_autocorrelation_series(spec, Axis::Y, 5);
  const auto gy0 = end_autocorrelation_series(model, Axis::Y, 5);
  const double diff3 = gy.coefficients[3] - gy0.coefficients[3];
  CHECK(std::abs(diff3) == doctest::Approx(1.0 / 12.0).epsilon(1e-10));
}

TEST_CASE("x series is even and y series is odd") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 3; ++trial) {
    const auto spec = testsupport::random_pseudo_chain(rng, 4, 3, 9);
    const auto gx = end_autocorrelation_series(spec, Axis::X, 9);
    const auto gy = end_autocorrelation_series(spec, Axis::Y, 9);
    const double scale =
        std::max(1.0, std::pow(lower(spec).max_coupling_scale() * 2, 9));
    for (int n = 0; n <= 9; ++n) {
      if (n % 2 == 1) CHECK(std::abs(gx.coefficients[n]) < 1e-12 * scale);
      if (n % 2 == 0) CHECK(std::abs(gy.coefficients[n]) < 1e-12 * scale);
    }
  }
}

TEST_CASE("one-excitation end dynamics matches the effective linear chain") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 6; ++trial) {
    const auto spec = testsupport::random_pseudo_chain(rng, 5, 3, 12);
    const auto model = effective_model(spec);
    const auto grid = linspace(0.0, 20.0, 50);
    const auto f = survival_amplitude(spec, grid);
    const auto f0 = survival_amplitude(model, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(std::abs(f.values[i] - f0.values[i]) < 1e-10);
    }
  }
}

TEST_CASE("series coefficients match derivatives of the time correlator") {
  // Low orders by Richardson central differences, all orders by a scaled
  // polynomial fit on Chebyshev nodes of the exactly evaluated correlator.
  const auto spec = hub121(0.4, 0.3);
  const auto graph = lower(spec);
  const double scale = 2.0 * std::max(graph.max_coupling_scale(), 1.0);
  const int max_order = 8;
  for (Axis axis : {Axis::X, Axis::Y}) {
    const auto series = end_autocorrelation_series(spec, axis, max_order);

    // derivative orders 1 and 2 via Richardson central differences
    {
      const double h = 1e-2 / scale;
      auto g_at = [&](double t) {
        return end_autocorrelation(spec, axis, std::vector<double>{t}).values[0];
      };
      const auto d1 = [&](double hh) {
        return (g_at(hh) - g_at(-hh)) / (2 * hh);
      };
      const double d1r = (4 * d1(h / 2) - d1(h)) / 3.0;
      CHECK(std::abs(d1r - series.coefficients[1]) <
            1e-6 * std::max(1.0, std::abs(series.coefficients[1])));
      const auto d2 = [&](double hh) {
        return (g_at(hh) - 2 * g_at(0.0) + g_at(-hh)) / (hh * hh);
      };
      const double d2r = (4 * d2(h / 2) - d2(h)) / 3.0;
      CHECK(std::abs(d2r / 2.0 - series.coefficients[2]) <
            1e-6 * std::max(1.0, std::abs(series.coefficients[2])));
    }

    // parity-constrained fit: g_x holds even orders only, g_y odd only
    const int parity = (axis == Axis::X) ? 0 : 1;
    const double window = 1.2 / scale;
    const int npts = 128;
    std::vector<double> ts;
    for (int i = npts - 1; i >= 0; --i) {
      const double u = std::cos(M_PI * (2 * i + 1) / (2.0 * npts));
      ts.push_back(window * std::sqrt((u + 1.0) / 2.0));
    }
    std::sort(ts.begin(), ts.end());
    const auto g = end_autocorrelation(spec, axis, ts);
    const auto fit =
        fit_parity_taylor(ts, g.values, parity, max_order, window, 6);
    for (int n = parity; n <= max_order; n += 2) {
      const double tol =
          1e-6 * std::max(std::abs(series.coefficients[n]), 1e-4);
      CHECK(std::abs(fit.coefficients[n] - series.coefficients[n]) < tol);
    }
  }
}

TEST_CASE("trace cap is enforced") {
  ModelChainSpec big;
  big.effective_fields.assign(17, 0.0);
  big.couplings.assign(16, 1.0);
  CHECK_THROWS_AS(end_autocorrelation_series(as_pseudo(big), Axis::X, 2), Error);
}

TEST_CASE("time grids must increase") {
  CHECK_THROWS_AS(return_probability(hub121(), {0.0, 0.0}), Error);
  CHECK_THROWS_AS(return_probability(hub121(), {1.0, 0.5}), Error);
}
