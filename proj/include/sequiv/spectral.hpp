#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "sequiv/numerics.hpp"

namespace sequiv {

/// Label of the eigenfunction Psi_lambda of K = (i/2)(d/dp cosh p + cosh p d/dp).
struct EigenFunctionSpec {
    double lambda = 0.5;

    /// Extension label gamma = lambda mod 2, in [0, 2).
    double gamma() const { return lambda - 2.0 * std::floor(lambda / 2.0); }
    static double normalization() { return 1.0 / std::sqrt(std::numbers::pi); }
};

/// Psi_lambda(p) = exp(-i lambda arctan(sinh p)) / sqrt(pi cosh p).
template <typename Real>
std::complex<Real> psi(Real lambda, Real p) {
    using std::atan;
    using std::cosh;
    using std::sinh;
    using std::sqrt;
    const Real amplitude = 1 / sqrt(std::numbers::pi_v<Real> * cosh(p));
    return std::polar(amplitude, -lambda * atan(sinh(p)));
}

/// d Psi_lambda / dp = Psi_lambda (-tanh(p)/2 - i lambda / cosh p).
template <typename Real>
std::complex<Real> psi_derivative(Real lambda, Real p) {
    using std::cosh;
    using std::tanh;
    return psi(lambda, p) * std::complex<Real>(-tanh(p) / 2, -lambda / cosh(p));
}

Eigen::ArrayXcd psi(const EigenFunctionSpec& spec, const Eigen::ArrayXd& p);

inline std::complex<double> psi(const EigenFunctionSpec& spec, double p) { return psi(spec.lambda, p); }

/// Uniform grid p_k = p0 + k h, k = 0..n-1.
struct UniformGrid {
    double p0 = -10.0;
    double h = 1e-3;
    Eigen::Index n = 20001;

    Eigen::ArrayXd points() const { return p0 + h * Eigen::ArrayXd::LinSpaced(n, 0.0, double(n - 1)); }
    static UniformGrid symmetric(double half_width, double h);
};

struct FdResult {
    /// K f on the grid; rows outside [first_valid, last_valid] are left at zero.
    Eigen::ArrayXcd values;
    Eigen::Index first_valid = 0;
    Eigen::Index last_valid = -1;
    /// max_k |cosh p_k (D4 f - D6 f)_k|: the fourth-order derivative error seen through K.
    double err_estimate = 0.0;
};

/// K f = (i/2)(sinh p f + 2 cosh p f') with fourth-order centred differences.
/// Throws GridTooCoarse when err_estimate exceeds `tol`.
FdResult apply_K_fd(const Eigen::ArrayXcd& f, const UniformGrid& grid,
                    double tol = std::numeric_limits<double>::infinity());

/// max over valid rows of |(K - lambda) Psi_lambda|.
double eigen_residual(double lambda, const UniformGrid& grid);

struct IdentityReport {
    double i1 = 0.0;   ///< first closed form for Psi_{1/2}
    double i2 = 0.0;   ///< exp(-i arctan sinh p) = i (1 - i e^p)/(1 + i e^p)
    double nef = 0.0;  ///< product form of Psi_{n+1/2}, |n| <= n_max
};

IdentityReport identity_checks(const Eigen::ArrayXd& p, int n_max = 6);

/// sin((lambda - mu) pi/2) / ((lambda - mu) pi/2), and 1 at lambda = mu.
double sinc_inner_product(double lambda, double mu);

/// Quadrature of the integral of conj(Psi_lambda) Psi_mu over the real line.
QuadResult<std::complex<double>> inner_product(double lambda, double mu, const QuadratureSpec& spec);

/// Gram matrix of {Psi_{2n+gamma}}, n = -n_max..n_max (row/column 0 is n = -n_max).
Eigen::MatrixXcd gram_psi(double gamma, int n_max, const QuadratureSpec& spec);

using ComplexFunction = std::function<std::complex<double>(double)>;

struct ParsevalReport {
    std::vector<std::complex<double>> coefficients;  ///< (f, Psi_{2n+gamma}), n = -N..N
    std::vector<double> partial_sums;                ///< index m: sum over |n| <= m
    double partial_sum = 0.0;
    double norm_sq = 0.0;
    double norm_err = 0.0;
    double defect = 0.0;  ///< norm_sq - partial_sum
};

/// (f, Psi_{2n+gamma}) via the compact-variable form with sinh p = tan(theta/2).
std::complex<double> basis_coefficient(const ComplexFunction& f, double gamma, int n, const QuadratureSpec& spec);

ParsevalReport parseval_check(const ComplexFunction& f, double gamma, int N, const QuadratureSpec& spec);

/// lim_{p->-inf} sqrt(cosh p) Psi_lambda(p) over lim_{p->+inf}, probed at +-p_probe.
std::complex<double> extension_boundary_ratio(double lambda, double p_probe = 30.0);

/// Smooth function with its derivative, used to probe the symmetry of K.
struct TestFunction {
    ComplexFunction value;
    ComplexFunction derivative;

    /// exp(-1/(1 - u^2)) e^{i k p}, u = (p - center)/half_width, zero outside.
    static TestFunction bump(double center, double half_width, double k = 0.0);
    static TestFunction eigenfunction(double lambda);
};

struct SymmetryDefect {
    std::complex<double> defect;         ///< (f, K g) - (K f, g) on [a, b]
    std::complex<double> boundary_term;  ///< i [cosh p conj(f) g] from a to b
    double err_estimate = 0.0;
};

SymmetryDefect symmetry_defect(const TestFunction& f, const TestFunction& g, double a, double b,
                               const QuadratureSpec& spec);

/// <f, K f> for a test function supported in [a, b].
std::complex<double> expectation_K(const TestFunction& f, double a, double b, const QuadratureSpec& spec);

}  // namespace sequiv
