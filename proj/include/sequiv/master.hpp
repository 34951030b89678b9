#pragma once

#include <functional>
#include <vector>

#include "sequiv/classical.hpp"
#include "sequiv/numerics.hpp"

namespace sequiv {

/// d^2 H'/dp'^2 = H' at fixed x, started from H'(x, 0) = sqrt(2V(x)) and
/// dH'/dp'(x, 0) = initial_slope (zero for the physical boundary condition).
struct MasterProblem {
    Potential potential = Potential::oscillator();
    double x = 1.0;
    double p_max = 5.0;
    /// Number of samples on [-p_max, p_max]; must be odd so that p' = 0 is a sample.
    int grid = 1001;
    double initial_slope = 0.0;
};

struct MasterSample {
    double p;
    double h;
    double dh;
};

struct MasterSolution {
    std::vector<MasterSample> samples;
    /// Coefficients of H' = alpha sinh p' + beta cosh p'.
    double alpha_coeff = 0.0;
    double beta_coeff = 0.0;
};

struct SinhCoshFit {
    double alpha;
    double beta;
};

/// The unique alpha sinh + beta cosh matching value and slope at p0.
SinhCoshFit fit_sinh_cosh(double p0, double value, double slope);

MasterSolution solve_master(const MasterProblem& problem, const OdeSpec& spec);

/// sqrt(2V(x)) cosh p'.
double closed_form_hprime(const Potential& v, double x, double p);

/// Profile of dSigma/dH expressed through H'. For Sigma(H) = sqrt(2H) this is 1/H'.
using SigmaSlope = std::function<double(double hprime)>;

/// max |H''(p') * dSigma/dH * L_xdotxdot - 1| over interior samples, with H''
/// from sixth-order central differences on the (uniform) sample grid.
/// Throws DivisionNearZero when |H'| < eps at a sample.
double master_residual_general(const std::vector<MasterSample>& samples, const SigmaSlope& slope = {},
                               double lxx = 1.0, double eps = 1e-12);

struct EulerLagrangeReport {
    double max_el = 0.0;        ///< max |EL(L)| along the path
    double max_el_prime = 0.0;  ///< max |EL(L')| along the path
    /// max relative deviation of EL(L')/EL(L) from 1/sqrt(2H), over samples with |EL(L)| > 1e-6.
    double max_ratio_rel_dev = 0.0;
    std::size_t ratio_samples = 0;
};

/// Evaluates both Euler-Lagrange expressions along a uniformly sampled path x(t).
/// EL(L) uses L = xdot^2/2 - V; EL(L') differentiates lagrangian_prime numerically.
EulerLagrangeReport euler_lagrange_proportionality(const Potential& v, const std::vector<double>& t,
                                                   const std::vector<double>& x);

/// Convenience overload for a PhaseTrajectory's positions.
EulerLagrangeReport euler_lagrange_proportionality(const Potential& v, const PhaseTrajectory& trajectory);

}  // namespace sequiv
