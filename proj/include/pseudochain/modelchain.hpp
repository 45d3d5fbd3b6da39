#pragma once

#include <string>
#include <vector>

#include "pseudochain/dynamics.hpp"
#include "pseudochain/errors.hpp"
#include "pseudochain/hilbert.hpp"
#include "pseudochain/topology.hpp"

namespace pseudochain {

/// One-excitation matrix of a linear chain: couplings on the off-diagonal,
/// effective fields on the diagonal.
SparseOperator oes_matrix(const ModelChainSpec& model);

/// Coefficient tables of the end-site operator expanded over the alternating
/// X/Y string basis: row i, column j holds the order-j derivative coefficient
/// for site i (both 0-based). delta feeds the alpha amplitudes, gamma the
/// beta amplitudes. Scalar is a ring; exact rationals are a valid choice for
/// rational inputs.
template <typename Scalar>
struct HeisenbergTables {
  int sites = 0;
  int max_order = 0;
  std::vector<std::vector<Scalar>> delta;
  std::vector<std::vector<Scalar>> gamma;
};

template <typename Scalar>
HeisenbergTables<Scalar> heisenberg_tables(const std::vector<Scalar>& couplings,
                                           const std::vector<Scalar>& fields,
                                           int max_order) {
  const int n = static_cast<int>(fields.size());
  if (n < 1 || static_cast<int>(couplings.size()) != n - 1) {
    throw Error(ErrorCode::LengthMismatch, "couplings/fields sizes inconsistent");
  }
  if (max_order < 0) {
    throw Error(ErrorCode::OutOfRange, "max_order must be non-negative");
  }
  HeisenbergTables<Scalar> t;
  t.sites = n;
  t.max_order = max_order;
  t.delta.assign(n, std::vector<Scalar>(max_order + 1, Scalar(0)));
  t.gamma.assign(n, std::vector<Scalar>(max_order + 1, Scalar(0)));
  t.delta[0][0] = Scalar(1);
  auto coupling_left = [&](int i) {  // couples site i-1 to i; zero off the chain
    return (i >= 1 && i <= n - 1) ? couplings[i - 1] : Scalar(0);
  };
  auto at = [&](const std::vector<std::vector<Scalar>>& tab, int i,
                int j) -> Scalar {
    if (i < 0 || i >= n) return Scalar(0);
    return tab[i][j];
  };
  for (int j = 1; j <= max_order; ++j) {
    for (int i = 0; i < n; ++i) {
      // site label in 1-based counting decides the alternating sign
      const Scalar sign = ((i + 1) % 2 == 0) ? Scalar(1) : Scalar(-1);
      const Scalar jl = coupling_left(i);
      const Scalar jr = coupling_left(i + 1);
      t.delta[i][j] = sign * (jl * at(t.delta, i - 1, j - 1) +
                              jr * at(t.delta, i + 1, j - 1) +
                              fields[i] * t.gamma[i][j - 1]);
      t.gamma[i][j] = -sign * (jl * at(t.gamma, i - 1, j - 1) +
                               jr * at(t.gamma, i + 1, j - 1) +
                               fields[i] * t.delta[i][j - 1]);
    }
  }
  return t;
}

/// Relative sign between the table-built series and the trace-normalized
/// correlators; pinned by the exact-trace tests.
inline constexpr double kSeriesOracleSign = 1.0;

class HeisenbergSeries {
 public:
  HeisenbergSeries(HeisenbergTables<double> tables);

  int sites() const { return tables_.sites; }
  int max_order() const { return tables_.max_order; }
  const HeisenbergTables<double>& tables() const { return tables_; }

  /// Coefficient of t^order in the amplitude polynomials (0-based site).
  double alpha_coefficient(int site, int order) const;
  double beta_coefficient(int site, int order) const;

  double alpha(int site, double t) const;
  double beta(int site, double t) const;

  /// Site-1 autocorrelations of the linear chain: g_x = alpha_1, g_y = beta_1.
  SeriesCoefficients x_autocorrelation() const;
  SeriesCoefficients y_autocorrelation() const;

 private:
  HeisenbergTables<double> tables_;
  std::vector<double> inv_factorial_;
};

HeisenbergSeries heisenberg_series(const ModelChainSpec& model, int max_order);

std::string tables_to_json(const HeisenbergSeries& series);

}  // namespace pseudochain
