#pragma once

#include <vector>

namespace pseudochain {

/// Least-squares Taylor coefficients of a sampled even or odd function.
/// The fit runs in a Chebyshev basis of t^2 on [0, window] (parity fixes the
/// extra factor of t), then converts back to the monomial basis, so windows
/// holding a dozen terms stay well conditioned. Returned coefficients cover
/// orders 0..max_order with zeros on the off-parity orders. extra_terms adds
/// basis functions beyond max_order to absorb the series tail.
struct ParityFit {
  std::vector<double> coefficients;
  double residual_rms = 0.0;
};

ParityFit fit_parity_taylor(const std::vector<double>& times,
                            const std::vector<double>& values, int parity,
                            int max_order, double window, int extra_terms = 4,
                            const std::vector<double>* weights = nullptr);

}  // namespace pseudochain
