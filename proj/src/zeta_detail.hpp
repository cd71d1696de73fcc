// Individual evaluation routes behind zeta(), exposed so the two continuation
// routes can be cross-checked against each other.
#pragma once

#include "common.hpp"

namespace zd::detail {

struct SeriesValue {
  Complex value{0.0, 0.0};
  Complex deriv{0.0, 0.0};
};

// eta(s) and eta'(s) from the selected alternating series (any s, but only
// accurate for Re s > -1/2 or so).
SeriesValue eta_series(Complex s, const EvalParams& p, bool want_deriv);
// zeta(s) = eta(s) / (1 - 2^{1-s}) with the removable points smoothed.
SeriesValue zeta_series(Complex s, const EvalParams& p, bool want_deriv);
// zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s).
Complex zeta_functional(Complex s, const EvalParams& p);
Complex zeta_deriv_functional(Complex s, const EvalParams& p);
// (s - 1) zeta(s), finite at s = 1.
Complex pole_free_zeta(Complex s, const EvalParams& p);

}  // namespace zd::detail
