#include "dcergm/model.hpp"

#include <algorithm>
#include <cmath>

#include "dcergm/special.hpp"

namespace dcergm {

Model::Model(int n_, double theta_, std::vector<double> beta_, SubgraphSpec motif_, Encoding enc)
    : n(n_), theta(theta_), beta(std::move(beta_)), motif(std::move(motif_)), encoding(enc) {
    if (n < 1) throw std::invalid_argument("Model: n >= 1");
    if (!(theta >= 0.0)) throw std::invalid_argument("Model: theta >= 0");
    if (static_cast<int>(beta.size()) != n) throw std::invalid_argument("Model: beta length != n");
    for (double b : beta)
        if (!std::isfinite(b)) throw std::invalid_argument("Model: beta must be finite");
    if (encoding == Encoding::PlusMinus && !motif.is_two_star())
        throw std::invalid_argument("Model: PlusMinus encoding requires the K_{1,2} motif");
}

Model Model::two_star_pm(int n, double theta, double beta0) {
    return Model(n, theta, std::vector<double>(n, beta0), SubgraphSpec::two_star(), Encoding::PlusMinus);
}

Model Model::two_star_pm(int n, double theta, std::vector<double> beta) {
    return Model(n, theta, std::move(beta), SubgraphSpec::two_star(), Encoding::PlusMinus);
}

bool Model::constant_beta() const {
    return std::all_of(beta.begin(), beta.end(), [&](double b) { return b == beta[0]; });
}

AlternativeSpec::AlternativeSpec(double beta0_, int s_, double A_, std::vector<int> support_)
    : beta0(beta0_), s(s_), A(A_), support(std::move(support_)) {
    if (s < 1) throw std::invalid_argument("AlternativeSpec: s >= 1");
    if (!(A >= 0.0)) throw std::invalid_argument("AlternativeSpec: A >= 0");
    if (!support.empty() && static_cast<int>(support.size()) != s)
        throw std::invalid_argument("AlternativeSpec: support size != s");
}

std::vector<double> make_beta(const AlternativeSpec& alt, int n) {
    if (alt.s > n) throw std::invalid_argument("make_beta: s <= n required");
    std::vector<double> beta(n, alt.beta0);
    if (alt.support.empty()) {
        for (int i = 0; i < alt.s; ++i) beta[i] += alt.A;
        return beta;
    }
    std::vector<bool> seen(n, false);
    for (int i : alt.support) {
        if (i < 0 || i >= n) throw std::invalid_argument("make_beta: support index out of range");
        if (seen[i]) throw std::invalid_argument("make_beta: duplicate support index");
        seen[i] = true;
        beta[i] += alt.A;
    }
    return beta;
}

Regime classify_regime(double theta, double beta0) {
    if (!(theta > 0.0)) throw std::invalid_argument("classify_regime: theta > 0 required");
    if (theta == 0.5 && beta0 == 0.0) return Regime::Theta3;
    if (theta > 0.5 && beta0 == 0.0) return Regime::Theta2;
    return Regime::Theta1;
}

const char* regime_name(Regime r) {
    switch (r) {
        case Regime::Theta1: return "Theta1";
        case Regime::Theta2: return "Theta2";
        default: return "Theta3";
    }
}

int signal_count_from_exponent(int n, double b) {
    int s = static_cast<int>(std::llround(std::pow(static_cast<double>(n), b)));
    return std::max(1, s);
}

double signal_strength_from_exponent(int n, double t) {
    return std::pow(static_cast<double>(n), t);
}

double two_star_statistic(const Graph& y) {
    if (y.encoding() != Encoding::PlusMinus)
        throw std::invalid_argument("two_star_statistic: PlusMinus encoding required");
    long long sumsq = 0;
    for (int i = 0; i < y.n(); ++i) {
        long long k = y.degree(i);
        sumsq += k * k;
    }
    long long nn = static_cast<long long>(y.n()) * (y.n() - 1);
    return static_cast<double>((sumsq - nn) / 2);
}

double log_weight(const Graph& g, const Model& m) {
    if (g.n() != m.n || g.encoding() != m.encoding)
        throw std::invalid_argument("log_weight: graph does not match model");
    if (m.encoding == Encoding::PlusMinus) {
        double lw = 0.0;
        if (m.n > 1) lw += m.theta / (m.n - 1) * two_star_statistic(g);
        for (int i = 0; i < m.n; ++i) lw += 0.5 * m.beta[i] * g.degree(i);
        return lw;
    }
    double lw = m.theta / std::pow(static_cast<double>(m.n), m.motif.zeta - 2) *
                static_cast<double>(count_subgraph(m.motif, g));
    for (int i = 0; i < m.n; ++i) lw += m.beta[i] * g.degree(i);
    return lw;
}

double conditional_edge_mean(int i, int j, const Graph& g, const Model& m) {
    if (g.n() != m.n || g.encoding() != m.encoding)
        throw std::invalid_argument("conditional_edge_mean: graph does not match model");
    if (i == j || i < 0 || j < 0 || i >= g.n() || j >= g.n())
        throw std::invalid_argument("conditional_edge_mean: invalid pair");
    if (m.encoding == Encoding::PlusMinus) {
        int ki = g.degree(i) - g.edge_value(i, j);
        int kj = g.degree(j) - g.edge_value(i, j);
        return std::tanh(m.theta * (ki + kj) / (m.n - 1) + 0.5 * (m.beta[i] + m.beta[j]));
    }
    double te = count_through_edge_scaled(m.motif, g, i, j);
    return psi(m.theta * te + m.beta[i] + m.beta[j]);
}

double conditional_plus_prob(int i, int j, const Graph& g, const Model& m) {
    double mean = conditional_edge_mean(i, j, g, m);
    return m.encoding == Encoding::PlusMinus ? 0.5 * (1.0 + mean) : mean;
}

} // namespace dcergm
