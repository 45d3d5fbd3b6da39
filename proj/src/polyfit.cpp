#include "pseudochain/polyfit.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "pseudochain/errors.hpp"

namespace pseudochain {

namespace {

using LongMat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
using LongVec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

}  // namespace

ParityFit fit_parity_taylor(const std::vector<double>& times,
                            const std::vector<double>& values, int parity,
                            int max_order, double window, int extra_terms,
                            const std::vector<double>* weights) {
  if (parity != 0 && parity != 1) {
    throw Error(ErrorCode::InvalidArgument, "parity must be 0 or 1");
  }
  if (times.size() != values.size() || times.empty()) {
    throw Error(ErrorCode::InvalidArgument, "times/values sizes inconsistent");
  }
  if (!(window > 0.0) || max_order < parity) {
    throw Error(ErrorCode::InvalidArgument, "bad fit window or order");
  }
  const int terms = (max_order - parity) / 2 + 1 + extra_terms;
  const int rows = static_cast<int>(times.size());
  if (rows < terms) {
    throw Error(ErrorCode::FitIllConditioned, "fewer samples than basis terms");
  }

  // design matrix: phi_k(t) = T_k(2 (t/window)^2 - 1) * (t/window)^parity
  LongMat design(rows, terms);
  LongVec rhs(rows);
  for (int i = 0; i < rows; ++i) {
    const long double tau = static_cast<long double>(times[i]) / window;
    const long double u = 2.0L * tau * tau - 1.0L;
    const long double w =
        weights ? static_cast<long double>((*weights)[i]) : 1.0L;
    const long double front = (parity == 1) ? tau : 1.0L;
    long double t_prev = 1.0L;
    long double t_cur = u;
    for (int k = 0; k < terms; ++k) {
      long double basis;
      if (k == 0) {
        basis = 1.0L;
      } else if (k == 1) {
        basis = u;
      } else {
        const long double t_next = 2.0L * u * t_cur - t_prev;
        t_prev = t_cur;
        t_cur = t_next;
        basis = t_cur;
      }
      design(i, k) = w * front * basis;
    }
    rhs[i] = w * static_cast<long double>(values[i]);
  }

  Eigen::ColPivHouseholderQR<LongMat> qr(design);
  if (qr.rank() < terms) {
    throw Error(ErrorCode::FitIllConditioned, "degenerate fit design");
  }
  const LongVec sol = qr.solve(rhs);
  const long double res_norm = (design * sol - rhs).norm();

  // Chebyshev coefficients of u^m: theta[k][m] holds T_k = sum_m theta * u^m.
  std::vector<std::vector<long double>> theta(terms);
  theta[0] = {1.0L};
  if (terms > 1) theta[1] = {0.0L, 1.0L};
  for (int k = 2; k < terms; ++k) {
    theta[k].assign(k + 1, 0.0L);
    for (int m = 0; m <= k - 1; ++m) theta[k][m + 1] += 2.0L * theta[k - 1][m];
    for (int m = 0; m <= k - 2; ++m) theta[k][m] -= theta[k - 2][m];
  }

  // expand u^m = (2 tau^2 - 1)^m into tau^{2j} and collect Taylor orders
  std::vector<long double> tau_coeff(2 * (terms - 1) + parity + 1, 0.0L);
  for (int k = 0; k < terms; ++k) {
    for (int m = 0; m < static_cast<int>(theta[k].size()); ++m) {
      if (theta[k][m] == 0.0L) continue;
      long double binom = 1.0L;
      for (int j = 0; j <= m; ++j) {
        if (j > 0) binom = binom * (m - j + 1) / j;
        const long double sign = ((m - j) % 2 == 0) ? 1.0L : -1.0L;
        tau_coeff[2 * j + parity] +=
            sol[k] * theta[k][m] * binom * std::pow(2.0L, j) * sign;
      }
    }
  }

  ParityFit fit;
  fit.coefficients.assign(max_order + 1, 0.0);
  for (int n = parity; n <= max_order; n += 2) {
    const long double scaled = tau_coeff[n];
    fit.coefficients[n] = static_cast<double>(
        scaled / std::pow(static_cast<long double>(window), n));
  }
  fit.residual_rms = static_cast<double>(res_norm / std::sqrt((long double)rows));
  if (!std::isfinite(fit.residual_rms)) {
    throw Error(ErrorCode::FitIllConditioned, "fit produced non-finite values");
  }
  return fit;
}

}  // namespace pseudochain
