// Scratch calibration runs for the leading coefficients of the correlator
// and return-probability differences. Prints raw oracle values next to
// candidate closed forms.

#include <cstdio>
#include <vector>

#include "pseudochain/dynamics.hpp"
#include "pseudochain/hilbert.hpp"
#include "pseudochain/polyfit.hpp"
#include "pseudochain/topology.hpp"

using namespace pseudochain;

namespace {

PseudoChainSpec make(std::vector<int> sizes, std::vector<double> j,
                     std::vector<double> b, std::vector<double> k) {
  PseudoChainSpec s;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    s.blocks.push_back(BlockSpec{sizes[i], b[i], k[i]});
  }
  s.inter_couplings = std::move(j);
  return s;
}

double diff_coeff(const PseudoChainSpec& spec, Axis axis, int order) {
  const auto model = effective_model(spec);
  const auto g = end_autocorrelation_series(spec, axis, order);
  const auto g0 = end_autocorrelation_series(model, axis, order);
  return g.coefficients[order] - g0.coefficients[order];
}

double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

int main() {
  std::printf("== odd-coefficient sign probe ==\n");
  for (double k : {0.5, -0.5, 0.3}) {
    const auto spec = make({1, 2, 1}, {1, 1}, {0, 0, 0}, {0, k, 0});
    const double c3 = diff_coeff(spec, Axis::Y, 3);
    std::printf("i=2 N=2 K=%+.2f  c3=%+.12f  (N-1)K/3!=%+.12f  ratio=%+.6f\n", k,
                c3, k / 6.0, c3 / (k / 6.0));
  }
  for (double k : {0.4}) {
    const auto spec = make({1, 3, 1}, {1.2, 0.8}, {0, 0, 0}, {0, k, 0});
    const double c3 = diff_coeff(spec, Axis::Y, 3);
    const double want = 1.2 * 1.2 * 2 * k / 6.0;
    std::printf(
        "i=2 N=3 K=%+.2f J1=1.2  c3=%+.12f  J1^2(N-1)K/3!=%+.12f  ratio=%+.6f\n",
        k, c3, want, c3 / want);
  }
  {
    const auto spec = make({1, 1, 2, 1}, {1, 1, 1}, {0, 0, 0, 0}, {0, 0, 0.4, 0});
    const double c5 = diff_coeff(spec, Axis::Y, 5);
    const double want = 0.4 / 120.0;
    std::printf("i=3 N=2 K=+0.40  c5=%+.12f  (N-1)K/5!=%+.12f  ratio=%+.6f\n", c5,
                want, c5 / want);
  }
  {
    const auto spec = make({1, 1, 3, 1}, {0.9, 1.1, 1.3}, {0, 0, 0, 0},
                           {0, 0, -0.25, 0});
    const double c5 = diff_coeff(spec, Axis::Y, 5);
    const double want = 0.9 * 0.9 * 1.1 * 1.1 * 2 * (-0.25) / 120.0;
    std::printf(
        "i=3 N=3 K=-0.25 Js=(0.9,1.1)  c5=%+.12f  pred=%+.12f  ratio=%+.6f\n",
        c5, want, c5 / want);
  }

  std::printf("\n== even-coefficient probe, i=2, (1,n,1) ==\n");
  std::printf("common = (prod_{j<i} J^2) ((N-1)/N) / (2i)!\n");
  struct Row {
    int n;
    double j1, j2, k, b1, b2, b3;
  };
  const std::vector<Row> rows = {
      {2, 1.0, 1.0, 0.0, 0, 0, 0},   {2, 1.3, 1.0, 0.0, 0, 0, 0},
      {2, 1.0, 0.7, 0.0, 0, 0, 0},   {3, 1.0, 1.0, 0.0, 0, 0, 0},
      {4, 1.0, 1.0, 0.0, 0, 0, 0},   {2, 1.0, 1.0, 0.4, 0, 0, 0},
      {2, 1.0, 1.0, 0.8, 0, 0, 0},   {2, 1.0, 1.0, -0.4, 0, 0, 0},
      {3, 1.0, 1.0, 0.4, 0, 0, 0},   {4, 1.0, 1.0, 0.4, 0, 0, 0},
      {2, 1.0, 1.0, 0.4, 0.5, 0, 0}, {2, 1.0, 1.0, 0.4, 0, 0.3, 0},
      {2, 1.0, 1.0, 0.4, 0, 0, 0.6}, {3, 1.0, 1.0, 0.4, 0.5, 0.3, 0},
      {2, 1.0, 1.0, 0.0, 0.5, 0.3, 0.6},
  };
  for (const auto& r : rows) {
    const auto spec =
        make({1, r.n, 1}, {r.j1, r.j2}, {r.b1, r.b2, r.b3}, {0, r.k, 0});
    const double c4 = diff_coeff(spec, Axis::X, 4);
    const double common = r.j1 * r.j1 * (double(r.n - 1) / r.n) / factorial(4);
    // bracket candidate with effective fields B'_1 = b1, B'_2 = b2+(n-1)k
    const double bp1 = r.b1;
    const double bp2 = r.b2 + (r.n - 1) * r.k;
    const double bracket = 3 * r.j1 * r.j1 - r.j2 * r.j2 +
                           r.n * r.k * ((3 * r.n - 2) * r.k - 2 * (bp1 + bp2));
    std::printf(
        "n=%d J=(%.1f,%.1f) K=%+.1f B=(%.1f,%.1f,%.1f): c4=%+.10f "
        "c4/common=%+.8f bracket=%+.8f ratio=%+.6f\n",
        r.n, r.j1, r.j2, r.k, r.b1, r.b2, r.b3, c4, c4 / common, bracket,
        (bracket != 0) ? c4 / common / bracket : 0.0);
  }

  std::printf("\n== even-coefficient probe, i=3, (1,1,n,1) ==\n");
  const std::vector<Row> rows3 = {
      {2, 1.0, 1.0, 0.0, 0, 0, 0},
      {3, 1.0, 1.0, 0.0, 0, 0, 0},
      {2, 1.0, 1.0, 0.5, 0, 0, 0},
      {2, 1.0, 1.0, 0.5, 0.4, 0.3, 0},
  };
  for (const auto& r : rows3) {
    // chain (1,1,n,1) with J = (1, j1, j2); the probe block sits at i=3
    const auto spec = make({1, 1, r.n, 1}, {1.0, r.j1, r.j2},
                           {0.7 * r.b1, r.b1, r.b2, r.b3}, {0, 0, r.k, 0});
    const double c6 = diff_coeff(spec, Axis::X, 6);
    const double common =
        1.0 * r.j1 * r.j1 * (double(r.n - 1) / r.n) / factorial(6);
    const double bp_sum = 0.7 * r.b1 + r.b1 + r.b2 + (r.n - 1) * r.k;
    const double bracket = 3 * r.j1 * r.j1 - r.j2 * r.j2 +
                           r.n * r.k * ((3 * r.n - 2) * r.k - 2 * bp_sum);
    std::printf(
        "n=%d J=(1,%.1f,%.1f) K=%+.1f: c6=%+.12f c6/common=%+.8f "
        "bracket=%+.8f ratio=%+.6f\n",
        r.n, r.j1, r.j2, r.k, c6, c6 / common, bracket,
        (bracket != 0) ? c6 / common / bracket : 0.0);
  }

  std::printf("\n== second-block difference against a partial estimate ==\n");
  {
    // hidden (1,2,3,1); estimate models block 2 exactly and keeps block 3 as
    // a singleton carrying its effective field
    const auto hidden = make({1, 2, 3, 1}, {1, 1, 1}, {0, 0.1, 0.2, 0},
                             {0, 0.4, 0.2, 0});
    auto estimate = make({1, 2, 1, 1}, {1, 1, 1}, {0, 0.1, 0.2 + 2 * 0.2, 0},
                         {0, 0.4, 0, 0});
    const int i = 3, n = 3;
    const auto gy = end_autocorrelation_series(hidden, Axis::Y, 6);
    const auto gy0 = end_autocorrelation_series(estimate, Axis::Y, 6);
    const auto gx = end_autocorrelation_series(hidden, Axis::X, 6);
    const auto gx0 = end_autocorrelation_series(estimate, Axis::X, 6);
    for (int o = 0; o < 5; ++o) {
      std::printf("  order %d: dY=%+.3e dX=%+.3e\n", o,
                  gy.coefficients[o] - gy0.coefficients[o],
                  gx.coefficients[o] - gx0.coefficients[o]);
    }
    const double c5 = gy.coefficients[5] - gy0.coefficients[5];
    const double c6 = gx.coefficients[6] - gx0.coefficients[6];
    const double want5 = -(n - 1) * 0.2 / 120.0;
    const double bp_sum = 0.0 + (0.1 + 0.4) + (0.2 + 2 * 0.2);
    const double want6 = -(double(n - 1) / n) / 720.0 *
                         (3 - 1 + n * 0.2 * (n * 0.2 - 2 * bp_sum));
    std::printf("  c5=%+.10f want=%+.10f ratio=%+.6f\n", c5, want5, c5 / want5);
    std::printf("  c6=%+.10f want=%+.10f ratio=%+.6f\n", c6, want6, c6 / want6);
  }

  std::printf("\n== earlier-block size effect on the onset coefficients ==\n");
  for (int m : {1, 2, 3}) {
    for (double k2 : {0.0, 0.4}) {
      const int i = 3, n = 3;
      const double k3 = 0.2, b2 = 0.0;
      const auto hidden =
          make({1, m, n, 1}, {1, 1, 1}, {0, b2, 0, 0}, {0, k2, k3, 0});
      auto estimate = make({1, m, 1, 1}, {1, 1, 1},
                           {0, b2, (n - 1) * k3, 0}, {0, k2, 0, 0});
      const auto gy = end_autocorrelation_series(hidden, Axis::Y, 6);
      const auto gy0 = end_autocorrelation_series(estimate, Axis::Y, 6);
      const auto gx = end_autocorrelation_series(hidden, Axis::X, 6);
      const auto gx0 = end_autocorrelation_series(estimate, Axis::X, 6);
      const double c5 = gy.coefficients[5] - gy0.coefficients[5];
      const double c6 = gx.coefficients[6] - gx0.coefficients[6];
      const double base5 = -(n - 1) * k3 / 120.0;
      const double bp_sum = 0 + (b2 + (m - 1) * k2) + (n - 1) * k3;
      const double base6 =
          -(double(n - 1) / n) / 720.0 * (3 - 1 + n * k3 * (n * k3 - 2 * bp_sum));
      std::printf(
          "m=%d K2=%.1f: c5=%+.10f c5/base=%.6f  c6=%+.10f c6/base=%.6f\n", m,
          k2, c5, c5 / base5, c6, c6 / base6);
    }
  }

  std::printf("\n== two-excitation probability difference, (1,2,1) ==\n");
  {
    const auto spec = make({1, 2, 1}, {1, 1}, {0, 0, 0}, {0, 0, 0});
    const auto model = effective_model(spec);
    std::vector<double> ts;
    const double window = 0.6;
    for (int i = 1; i <= 160; ++i) ts.push_back(window * i / 160.0);
    const auto p = return_probability(spec, ts);
    const auto p0 = return_probability(model, ts);
    std::vector<double> diff(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) {
      diff[i] = p.values[i] - p0.values[i];
    }
    const auto fit = fit_parity_taylor(ts, diff, 0, 10, window, 4);
    std::printf("leading t^4 coefficient = %+.12f (2D/4! with D=4 -> %+.12f)\n",
                fit.coefficients[4], 2 * 4.0 / 24.0);
    std::printf("next t^6 coefficient    = %+.12f\n", fit.coefficients[6]);
    std::printf("next t^8 coefficient    = %+.12f\n", fit.coefficients[8]);
  }

  std::printf("\n== moment difference with fields on, (1,2,1) ==\n");
  for (double b2 : {0.0, 0.5}) {
    for (double k2 : {0.0, 0.5}) {
      const auto spec = make({1, 2, 1}, {1, 1}, {0, b2, 0}, {0, k2, 0});
      const auto model = effective_model(spec);
      const SectorBasis basis(4, 2), mbasis(3, 2);
      const auto h = build_hamiltonian(spec, 2);
      const auto h0 = build_hamiltonian(model, 2);
      const double m4 = moment(h, end_pair_state(basis), 4);
      const double m04 = moment(h0, end_pair_state(mbasis), 4);
      std::printf(
          "B2=%.1f K2=%.1f: <H^4>-<H0^4> = %+.12f (field-free value 4)\n", b2,
          k2, m4 - m04);
    }
  }
  return 0;
}
