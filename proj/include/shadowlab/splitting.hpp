#ifndef SHADOWLAB_SPLITTING_HPP
#define SHADOWLAB_SPLITTING_HPP

#include "shadowlab/integrate.hpp"

namespace shadowlab {

/// Finite-time splitting rates along a trajectory. Singular exponents are
/// accumulated by the discrete QR recursion over unit-time cocycle steps,
/// stored ascending (log_sigma[k][0] is the strongest contraction).
/// lambda_contract is minus the least-squares slope of the s_dim-th smallest
/// exponent, lambda_dom minus the slope of the gap to the next one; estimates
/// are declared only when both fits have R^2 > 0.9.
struct SplittingEstimate {
    double window = 0.0;
    int s_dim = 0, c_dim = 0;
    double lambda_contract = 0.0, K_contract = 1.0, r2_contract = 0.0;
    double lambda_dom = 0.0, K_dom = 1.0, r2_dom = 0.0;
    bool conclusive = false;
    std::vector<double> times;
    std::vector<Eigen::VectorXd> log_sigma;  // per checkpoint, ascending
};

SplittingEstimate estimate_splitting(const SmoothSystem& sys, const Trajectory& traj, int s_dim,
                                     const StepControl& ctrl = {});

struct SectionalCheck {
    bool ok = false;
    double worst_rate = 0.0;
    int planes_tested = 0;
};

/// Sectional expansion over sampled 2-planes of the central bundle: for each
/// seeded plane, the area growth rate (Gram determinant of the pushed-forward
/// pair, renormalized per unit step) must have least-squares rate at least
/// lambda_min. Throws ErrorKind::domain_error when the basis has fewer than
/// two columns.
SectionalCheck check_sectional_expansion(const SmoothSystem& sys, const Trajectory& traj,
                                         const Eigen::MatrixXd& c_basis, int planes,
                                         std::uint64_t seed, double lambda_min = 1e-3,
                                         const StepControl& ctrl = {});

}  // namespace shadowlab

#endif
