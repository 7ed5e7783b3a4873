#pragma once

namespace ccl {

// Closed-form sample-size bound for reliable orientation:
//   n* = C * tau_mix * d_c * ln(d_c / delta) / ((1 - gamma)^3 * eps^2).
// Domain: tau_mix > 0, d_c >= 1, delta in (0, 1) with d_c/delta > 1,
// gamma in [0, 1), eps > 0, C > 0. Violations throw InvalidConfigError.
struct PacBoundInputs {
  double c = 1.0;
  double tau_mix = 1.0;
  double d_c = 1.0;
  double delta = 0.05;
  double gamma = 0.9;
  double eps = 0.1;
};

double compute_pac_bound(const PacBoundInputs& in);

// Complexity-weight threshold above which spurious edges are excluded:
//   lambda2* = (1 - gamma) * ln(v) / e_max.
// Domain: gamma in [0, 1), v > 1, e_max > 0.
double lambda2_threshold(double gamma, double v, double e_max);

}  // namespace ccl
