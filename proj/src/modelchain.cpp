#include "pseudochain/modelchain.hpp"

#include <cmath>

#include <json.hpp>

namespace pseudochain {

SparseOperator oes_matrix(const ModelChainSpec& model) {
  validate(model);
  return build_hamiltonian(model, 1);
}

HeisenbergSeries::HeisenbergSeries(HeisenbergTables<double> tables)
    : tables_(std::move(tables)) {
  inv_factorial_.resize(tables_.max_order + 1);
  double f = 1.0;
  for (int j = 0; j <= tables_.max_order; ++j) {
    if (j > 0) f *= j;
    inv_factorial_[j] = 1.0 / f;
  }
}

double HeisenbergSeries::alpha_coefficient(int site, int order) const {
  if (site < 0 || site >= sites() || order < 0 || order > max_order()) {
    throw Error(ErrorCode::OutOfRange, "series index out of range");
  }
  return tables_.delta[site][order] * inv_factorial_[order];
}

double HeisenbergSeries::beta_coefficient(int site, int order) const {
  if (site < 0 || site >= sites() || order < 0 || order > max_order()) {
    throw Error(ErrorCode::OutOfRange, "series index out of range");
  }
  return tables_.gamma[site][order] * inv_factorial_[order];
}

double HeisenbergSeries::alpha(int site, double t) const {
  double acc = 0.0;
  double tn = 1.0;
  for (int j = 0; j <= max_order(); ++j) {
    acc += alpha_coefficient(site, j) * tn;
    tn *= t;
  }
  return acc;
}

double HeisenbergSeries::beta(int site, double t) const {
  double acc = 0.0;
  double tn = 1.0;
  for (int j = 0; j <= max_order(); ++j) {
    acc += beta_coefficient(site, j) * tn;
    tn *= t;
  }
  return acc;
}

SeriesCoefficients HeisenbergSeries::x_autocorrelation() const {
  SeriesCoefficients out;
  out.normalization = "x-x value 1 at t=0";
  out.coefficients.reserve(max_order() + 1);
  for (int j = 0; j <= max_order(); ++j) {
    out.coefficients.push_back(kSeriesOracleSign * alpha_coefficient(0, j));
  }
  return out;
}

SeriesCoefficients HeisenbergSeries::y_autocorrelation() const {
  SeriesCoefficients out;
  out.normalization = "x-x value 1 at t=0";
  out.coefficients.reserve(max_order() + 1);
  for (int j = 0; j <= max_order(); ++j) {
    out.coefficients.push_back(kSeriesOracleSign * beta_coefficient(0, j));
  }
  return out;
}

HeisenbergSeries heisenberg_series(const ModelChainSpec& model, int max_order) {
  validate(model);
  return HeisenbergSeries(
      heisenberg_tables<double>(model.couplings, model.effective_fields, max_order));
}

std::string tables_to_json(const HeisenbergSeries& series) {
  nlohmann::json j;
  j["sites"] = series.sites();
  j["max_order"] = series.max_order();
  j["delta"] = series.tables().delta;
  j["gamma"] = series.tables().gamma;
  return j.dump();
}

}  // namespace pseudochain
