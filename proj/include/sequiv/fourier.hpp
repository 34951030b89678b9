#pragma once

#include <complex>
#include <functional>

#include <Eigen/Dense>

#include "sequiv/exactpoly.hpp"
#include "sequiv/numerics.hpp"

namespace sequiv {

/// Phi_{1/2}(x) = 2 e^{-pi x/2} / (1 + e^{-2 pi x}) = e^{pi x/2} / cosh(pi x).
double phi_half(double x);

/// Analytic continuation e^{pi z/2} / cosh(pi z).
std::complex<double> phi_half(std::complex<double> z);

/// Phi_{n+1/2}(x) for any integer n: Phi_{1/2} W_n / n! for n >= 0 and
/// (-1)^m Phi_{-1/2} W_m / m! with m = -n-1 for n < 0, where Phi_{-1/2}(x) = Phi_{1/2}(-x).
double phi_closed(int n, double x);

/// (1/sqrt(2 pi)) * integral of Psi_lambda(p) e^{ipx} over the real line.
QuadResult<std::complex<double>> fourier_transform_num(double lambda, double x, const QuadratureSpec& spec);

/// W(x, t) = (1 + t^2)^(-1/2) exp(2 x arctan t). Throws DomainError for |t| >= 1.
double generating_w(double x, double t);

/// Phi(x, t) = Phi_{1/2}(x) W(x, t) = sum_n Phi_{n+1/2}(x) t^n. Throws DomainError for |t| >= 1.
double generating_phi(double x, double t);

/// Result of the nonlocal Hamiltonian applied to Phi_{n+1/2} at a real point.
struct NonlocalAction {
    double value = 0.0;  ///< (H'_Q Phi_{n+1/2})(x)
    /// Exact polynomial part: the operator's action on the W factor at x (as an exact rational).
    GaussianRational poly_factor;
    /// (n + 1/2) W_m(x), the factor an eigenfunction must produce.
    GaussianRational expected_factor;
    bool exact_match = false;
};

/// H'_Q f(x) = (i/2)(1/2 - ix) f(x+i) - (i/2)(1/2 + ix) f(x-i) on f = Phi_{n+1/2}.
/// The shifted values use Phi_{1/2}(x +- i) = -+ i Phi_{1/2}(x) and an exact
/// evaluation of W at x +- i, so the polynomial factor carries no rounding.
NonlocalAction apply_nonlocal_H(int n, double x);

/// The same operator on any closed form that can be evaluated off the real axis.
std::complex<double> apply_nonlocal_H(const std::function<std::complex<double>(std::complex<double>)>& f,
                                      double x);

/// Symmetrised general-potential form sqrt(V/2) cos(d/dx) + cos(d/dx) sqrt(V/2) applied to f at x.
/// Square roots use the principal branch. Intended for smoke evaluation only.
std::complex<double> apply_nonlocal_general(const std::function<std::complex<double>(std::complex<double>)>& v,
                                            const std::function<std::complex<double>(std::complex<double>)>& f,
                                            double x);

struct CounterexampleReport {
    std::complex<double> multiplier_exact;  ///< (K Psi)/Psi with the analytic derivative
    std::complex<double> multiplier_fd;     ///< (K Psi)/Psi with fourth-order differences
    double multiplier_expected = 0.0;       ///< 1/2 + a cosh p
    double eigenvalue = 0.5;
    double shift = 0.0;
};

/// Psi(p) = Psi_{1/2}(p) e^{-ipa}: K Psi = (1/2 + a cosh p) Psi, so Psi is an
/// eigenfunction only for a = 0.
CounterexampleReport shifted_counterexample(double a, double p);

/// |H'_Q Phi - Phi/2| at x for Phi(x) = Phi_{1/2}(x + a), evaluated by analytic continuation.
double shifted_solution_residual(double a, double x);

struct GramReport {
    Eigen::MatrixXd values;  ///< integral of W_n W_k / cosh(pi x)
    Eigen::MatrixXd err;     ///< quadrature error estimate for each entry
};

/// Gram matrix of W_0..W_{n_max} under the weight 1/cosh(pi x). Computed in
/// extended precision on the normalised polynomials W_n/n! with the integrand
/// folded onto [0, L]; n_max is limited to 12.
GramReport gram_w(int n_max, const QuadratureSpec& spec);

/// Integral of e^{2 x theta} / cosh(pi x) over the real line, equal to 1/cos(theta).
/// Throws DomainError for |theta| >= pi/2.
QuadResult<double> weight_integral(double theta, const QuadratureSpec& spec);

/// Integral of W(x, s) W(x, t) / cosh(pi x), equal to 1/(1 - st).
QuadResult<double> ww_generating_check(double s, double t, const QuadratureSpec& spec);

struct ResidueReport {
    double periodicity_dev = 0.0;  ///< max |Psi(p + 2 pi i, t)/Psi(p, t) + 1|
    std::complex<double> pole;     ///< i pi/2 - 2i arctan t
    double pole_denominator = 0.0; ///< |denominator of Psi(., t)| at the pole
    std::complex<double> residue_formula;
    std::complex<double> residue_numeric;  ///< numerator / derivative of denominator
    std::complex<double> residue_circle;   ///< trapezoid rule on a small circle
    std::complex<double> lower_side;       ///< (1/sqrt(2 pi)) integral over [-a, a]
    double contour_identity_dev = 0.0;     ///< |lower (1 + e^{-2 pi x}) - 2 pi i residue|
    double generating_dev = 0.0;           ///< |lower - generating_phi(x, t)|
    double side_magnitude = 0.0;           ///< largest vertical-side contribution at +-a
};

/// Psi(p, t) = (1/sqrt(pi)) (1+i) e^{p/2} / ((1 - it) + i(1 + it) e^p), the generating function of Psi_{n+1/2}.
std::complex<double> generating_psi(std::complex<double> p, double t);

ResidueReport residue_contour_check(double x, double t, double a, const QuadratureSpec& spec);

}  // namespace sequiv
