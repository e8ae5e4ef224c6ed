// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace crnlab {

// Gamma function, Lanczos approximation (g = 7, 9 terms). Throws
// std::domain_error for x <= 0.
double gamma_fn(double x);
double log_gamma(double x);

// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);
// Inverse of P(a, .) on [0, inf).
double gamma_p_inv(double a, double p);

// Kolmogorov limiting survival function P(K > lambda).
double kolmogorov_q(double lambda);
// lambda such that kolmogorov_q(lambda) = alpha.
double kolmogorov_q_inv(double alpha);

// Upper quantile of the chi-square law: x with P(chi2_dof > x) = alpha.
double chi_square_upper_quantile(double dof, double alpha);

}  // namespace crnlab
