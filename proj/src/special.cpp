#include "dcergm/special.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dcergm {

double psi(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
}

double log_cosh(double x) {
    double a = std::fabs(x);
    // cosh(x) = e^a (1 + e^{-2a}) / 2
    return a + std::log1p(std::exp(-2.0 * a)) - std::log(2.0);
}

double q_value(double x, double theta, double a) {
    return theta * x * x - log_cosh(2.0 * theta * x + a);
}

namespace {

// g(x) = tanh(2*theta*x + a) - x; the largest root of g is the fixed point.
double fixed_point_gap(double x, double theta, double a) {
    return std::tanh(2.0 * theta * x + a) - x;
}

double solve_fixed_point(double theta, double a) {
    if (!(theta > 0.5)) throw std::invalid_argument("find_t: requires theta > 1/2");
    if (a < 0.0) throw std::invalid_argument("find_t: shift a must be >= 0");
    // For a = 0, g increases on (0, x0) and decreases after, where x0 is the
    // point with slope 2*theta*sech^2(2*theta*x0) = 1. g(x0) > 0 brackets the
    // largest root from below; tanh < 1 <= 1 + a brackets it from above.
    double x0 = std::acosh(std::sqrt(2.0 * theta)) / (2.0 * theta);
    double lo = x0, hi = 1.0 + a;
    // tanh saturates to 1.0 in doubles for large theta, so the upper gap may
    // evaluate to exactly zero
    if (!(fixed_point_gap(lo, theta, a) > 0.0) || !(fixed_point_gap(hi, theta, a) <= 0.0))
        throw std::runtime_error("find_t: bracket failure");
    for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
        double mid = 0.5 * (lo + hi);
        (fixed_point_gap(mid, theta, a) > 0.0 ? lo : hi) = mid;
    }
    double t = 0.5 * (lo + hi);
    // Newton polish on g.
    for (int it = 0; it < 4; ++it) {
        double th = std::tanh(2.0 * theta * t + a);
        double g = th - t;
        double dg = 2.0 * theta * (1.0 - th * th) - 1.0;
        if (dg == 0.0) break;
        t -= g / dg;
    }
    return t;
}

} // namespace

double find_t(double theta) { return solve_fixed_point(theta, 0.0); }

double find_t_shifted(double theta, double a) { return solve_fixed_point(theta, a); }

GaussHermite gauss_hermite(int n) {
    if (n < 1) throw std::invalid_argument("gauss_hermite: n >= 1");
    GaussHermite gh;
    gh.nodes.resize(n);
    gh.weights.resize(n);
    const double pim4 = 0.7511255444649425; // pi^{-1/4}
    // Newton on the physicists' Hermite polynomial, roots found from the
    // outermost inward; standard initial guesses.
    int m = (n + 1) / 2;
    double z = 0.0;
    for (int i = 0; i < m; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
        } else if (i == 1) {
            z -= 1.14 * std::pow(n, 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * gh.nodes[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * gh.nodes[1];
        } else {
            z = 2.0 * z - gh.nodes[i - 2];
        }
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = pim4, p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p3 = p2;
                p2 = p1;
                p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * n) * p2;
            double dz = p1 / pp;
            z -= dz;
            if (std::fabs(dz) < 1e-14) break;
        }
        gh.nodes[i] = z;
        gh.nodes[n - 1 - i] = -z;
        gh.weights[i] = 2.0 / (pp * pp);
        gh.weights[n - 1 - i] = gh.weights[i];
    }
    if (n % 2 == 1) gh.nodes[n / 2] = 0.0;
    return gh;
}

double empirical_quantile(std::vector<double> xs, double p) {
    if (xs.empty()) throw std::invalid_argument("empirical_quantile: empty sample");
    if (p <= 0.0 || p > 1.0) throw std::invalid_argument("empirical_quantile: p in (0,1]");
    std::sort(xs.begin(), xs.end());
    std::size_t k = static_cast<std::size_t>(std::ceil(p * static_cast<double>(xs.size())));
    if (k == 0) k = 1;
    return xs[k - 1];
}

double kolmogorov_distance(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("kolmogorov_distance: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j]) ++i; else ++j;
        double fa = static_cast<double>(i) / a.size();
        double fb = static_cast<double>(j) / b.size();
        d = std::max(d, std::fabs(fa - fb));
    }
    return d;
}

} // namespace dcergm
