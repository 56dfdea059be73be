#pragma once
#include <vector>

namespace dcergm {

// Logistic function psi(x) = e^x / (1 + e^x), evaluated without overflow.
double psi(double x);

// log cosh(x), stable for large |x|.
double log_cosh(double x);

// q_a(x) = theta*x^2 - log cosh(2*theta*x + a). The unshifted q is a = 0.
double q_value(double x, double theta, double a = 0.0);

// Largest positive root of x = tanh(2*theta*x), theta > 1/2.
// Residual |t - tanh(2*theta*t)| < 1e-12. Throws for theta <= 1/2.
double find_t(double theta);

// Largest root of x = tanh(2*theta*x + a) for a >= 0 small; t(0) == find_t(theta).
double find_t_shifted(double theta, double a);

// Gauss-Hermite nodes/weights for integrals of f against exp(-x^2) dx.
struct GaussHermite {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussHermite gauss_hermite(int n);

// Empirical quantile as the order statistic ceil(p*N) (no interpolation).
double empirical_quantile(std::vector<double> xs, double p);

// Two-sample Kolmogorov distance sup_x |F1(x) - F2(x)|.
double kolmogorov_distance(std::vector<double> a, std::vector<double> b);

} // namespace dcergm
