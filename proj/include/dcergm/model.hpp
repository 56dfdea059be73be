#pragma once
#include <vector>

#include "dcergm/counts.hpp"
#include "dcergm/graph.hpp"

namespace dcergm {

// Parameters of one degree-corrected ERGM p.m.f.
//
// ZeroOne:   P(G) ~ exp{ theta/n^{zeta-2} * N(H,G) + sum_i beta_i d_i }
// PlusMinus: P(Y) ~ exp{ theta/(n-1) * Ntilde(K_{1,2},Y) + (1/2) sum_i beta_i k_i }
//
// The PlusMinus form is the two-star model; its auxiliary-variable machinery
// requires motif == K_{1,2}, which the constructor enforces.
struct Model {
    int n = 0;
    double theta = 0.0;
    std::vector<double> beta;
    SubgraphSpec motif = SubgraphSpec::edge();
    Encoding encoding = Encoding::ZeroOne;

    Model(int n_, double theta_, std::vector<double> beta_, SubgraphSpec motif_, Encoding enc);

    static Model two_star_pm(int n, double theta, double beta0);
    static Model two_star_pm(int n, double theta, std::vector<double> beta);

    bool constant_beta() const;
    bool is_two_star_pm() const { return encoding == Encoding::PlusMinus; }
};

// (beta0, s, A) alternative: a sparse support of size s whose vertices get
// beta_i = beta0 + A while everything else stays at the baseline beta0.
struct AlternativeSpec {
    double beta0 = 0.0;
    int s = 0;
    double A = 0.0;
    std::vector<int> support; // empty means {0..s-1}

    AlternativeSpec(double beta0_, int s_, double A_, std::vector<int> support_ = {});
};

std::vector<double> make_beta(const AlternativeSpec& alt, int n);

enum class Regime { Theta1, Theta2, Theta3 };

// Theta3 is exactly (1/2, 0); Theta2 is theta > 1/2 with beta0 = 0;
// every other theta > 0 is Theta1. Throws for theta <= 0.
Regime classify_regime(double theta, double beta0);
const char* regime_name(Regime r);

// s = round(n^b) floored at 1; A = n^t.
int signal_count_from_exponent(int n, double b);
double signal_strength_from_exponent(int n, double t);

// Ntilde(K_{1,2}, Y) = (1/2) sum_i k_i^2 - n(n-1)/2, integer-valued.
double two_star_statistic(const Graph& y);

// Unnormalized log-probability of g under m.
double log_weight(const Graph& g, const Model& m);

// E(G_e | G_f : f != e): psi(theta t_e + beta_i + beta_j) in ZeroOne, and
// tanh(theta (k_i^- + k_j^-)/(n-1) + (beta_i+beta_j)/2) for the PlusMinus
// two-star, where k^- excludes the pair itself. Range (0,1) resp. (-1,1).
double conditional_edge_mean(int i, int j, const Graph& g, const Model& m);

// Probability that the pair reads 1 (ZeroOne) or +1 (PlusMinus) given the
// rest; the heat-bath acceptance probability.
double conditional_plus_prob(int i, int j, const Graph& g, const Model& m);

} // namespace dcergm
