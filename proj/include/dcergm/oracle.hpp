#pragma once
#include <functional>
#include <optional>
#include <string>

#include "dcergm/model.hpp"

namespace dcergm {

// Event over graphs used to restrict a p.m.f. The canonical instance is
// U = {k_i >= (n-1)t/2 for all i} with t the fixed point of x = tanh(2 theta x).
struct RestrictionEvent {
    std::string name;
    std::function<bool(const Graph&)> contains;

    static RestrictionEvent whole_space();
    static RestrictionEvent min_degree_at_least(double threshold);
    static RestrictionEvent canonical_u(int n, double theta); // requires theta > 1/2
};

// Full enumeration of the p.m.f. over the 2^{C(n,2)} graphs, n <= 6.
// probs is indexed by the triangular-order pair bitmask.
struct ExactDistribution {
    Model model;
    double log_z = 0.0;
    std::vector<double> probs;
    bool restricted = false;

    Graph state(std::uint64_t mask) const { return Graph::from_pair_mask(model.n, mask, model.encoding); }
};

ExactDistribution exact_distribution(const Model& m, const RestrictionEvent* restriction = nullptr);

struct ExactMoments {
    std::vector<double> edge_marginal; // E of the pair value, triangular order
    std::vector<double> edge_cov;      // m x m covariance of pair values
    std::vector<double> degree_mean;   // E k_i (native encoding)
    std::vector<double> degree_var;
    std::vector<double> degree_cov;    // n x n
    double sum_degree_mean = 0.0;

    double edge_cov_at(int m, int e, int f) const { return edge_cov[static_cast<std::size_t>(e) * m + f]; }
    double degree_cov_at(int n, int i, int j) const { return degree_cov[static_cast<std::size_t>(i) * n + j]; }
};

ExactMoments exact_moments(const ExactDistribution& d);

// E_{H0} L_pi^2 for the uniform prior over size-s supports at strength A,
// computed along two independent routes: the direct sum over graphs of
// Q_pi^2 / P_H0 and the partition-function ratio averaged over the
// hypergeometric overlap. Two-star PlusMinus model; n <= 6.
struct LrSecondMoment {
    double direct = 0.0;
    double partition_route = 0.0;
};
LrSecondMoment lr_second_moment(int n, int s, double A, double theta, double beta0,
                                const RestrictionEvent* restriction = nullptr);

// Exact check of the second-moment upper bound
//   E L^2 <= exp{ A^2 s^2 Cov_{(b0/2)1}(k1,k2) + (2 s^2/n)(e^{A^2 Var_{(b0/2)1}(k1)} - 1) },
// valid for n > 2s. lhs and the moment inputs are exact enumerations.
struct LbBoundCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
    double cov_k1k2 = 0.0;
    double var_k1 = 0.0;
};
LbBoundCheck lb_bound_check(int n, int s, double A, double theta, double beta0);

// Ratio constancy between sum_Y exp(joint log-density(Y, phi)) and the
// closed-form marginal f_{n,theta,beta}(phi), over a product grid of phi
// levels. Returns the max relative deviation of the ratio from its value at
// the first grid point. n in {2,3}.
double aux_joint_check(int n, double theta, const std::vector<double>& beta,
                       const std::vector<double>& grid_levels);

// -log f up to constants: p_ij(x,y) = theta/2 (x^2+y^2) - log cosh(theta(x+y) + (beta_i+beta_j)/2).
double aux_pair_potential(double x, double y, double theta, double beta_i, double beta_j);

} // namespace dcergm
