#include "ccl/bounds.hpp"

#include <cmath>

#include "ccl/errors.hpp"

namespace ccl {

double compute_pac_bound(const PacBoundInputs& in) {
  if (!(in.c > 0.0)) throw InvalidConfigError("pac_bound: C must be > 0");
  if (!(in.tau_mix > 0.0)) throw InvalidConfigError("pac_bound: tau_mix must be > 0");
  if (!(in.d_c >= 1.0)) throw InvalidConfigError("pac_bound: d_c must be >= 1");
  if (!(in.delta > 0.0 && in.delta < 1.0))
    throw InvalidConfigError("pac_bound: delta must be in (0, 1)");
  if (!(in.d_c / in.delta > 1.0))
    throw InvalidConfigError("pac_bound: requires d_c / delta > 1");
  if (!(in.gamma >= 0.0 && in.gamma < 1.0))
    throw InvalidConfigError("pac_bound: gamma must be in [0, 1)");
  if (!(in.eps > 0.0)) throw InvalidConfigError("pac_bound: eps must be > 0");

  const double one_minus_gamma = 1.0 - in.gamma;
  return in.c * in.tau_mix * in.d_c * std::log(in.d_c / in.delta) /
         (one_minus_gamma * one_minus_gamma * one_minus_gamma * in.eps * in.eps);
}

double lambda2_threshold(double gamma, double v, double e_max) {
  if (!(gamma >= 0.0 && gamma < 1.0))
    throw InvalidConfigError("lambda2_threshold: gamma must be in [0, 1)");
  if (!(v > 1.0)) throw InvalidConfigError("lambda2_threshold: v must be > 1");
  if (!(e_max > 0.0)) throw InvalidConfigError("lambda2_threshold: e_max must be > 0");
  return (1.0 - gamma) * std::log(v) / e_max;
}

}  // namespace ccl
