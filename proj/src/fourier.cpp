#include "sequiv/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sequiv/spectral.hpp"

namespace sequiv {

using cd = std::complex<double>;
using std::numbers::pi;

double phi_half(double x) {
    const double ax = std::abs(x);
    return 2.0 * std::exp(pi * x / 2 - pi * ax) / (1.0 + std::exp(-2.0 * pi * ax));
}

cd phi_half(cd z) { return std::exp(pi * z / 2.0) / std::cosh(pi * z); }

double phi_closed(int n, double x) {
    if (n >= 0) return phi_half(x) * w_normalized(static_cast<std::size_t>(n), x);
    const int m = -n - 1;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return sign * phi_half(-x) * w_normalized(static_cast<std::size_t>(m), x);
}

QuadResult<cd> fourier_transform_num(double lambda, double x, const QuadratureSpec& spec) {
    auto q = integrate_real_line([=](double p) { return psi(lambda, p) * std::polar(1.0, p * x); }, spec);
    const double scale = 1.0 / std::sqrt(2.0 * pi);
    return {q.value * scale, q.err_estimate * scale};
}

namespace {

void require_unit_disc(double t, const char* who) {
    if (!(std::abs(t) < 1)) throw DomainError(std::string(who) + ": requires |t| < 1");
}

}  // namespace

double generating_w(double x, double t) {
    require_unit_disc(t, "generating_w");
    return std::exp(2.0 * x * std::atan(t)) / std::sqrt(1.0 + t * t);
}

double generating_phi(double x, double t) {
    require_unit_disc(t, "generating_phi");
    return phi_half(x) * generating_w(x, t);
}

NonlocalAction apply_nonlocal_H(int n, double x) {
    const GaussianRational i = GaussianRational::i();
    const GaussianRational half(mpq_class(1, 2));
    const GaussianRational X{mpq_class(x)};

    // Phi_{1/2}(x +- i) = -+ i Phi_{1/2}(x); Phi_{-1/2}(x +- i) = +- i Phi_{-1/2}(x).
    const bool positive = n >= 0;
    const std::size_t m = positive ? static_cast<std::size_t>(n) : static_cast<std::size_t>(-n - 1);
    const GaussianRational up = positive ? -i : i;
    const GaussianRational down = positive ? i : -i;
    const GaussianRationalPoly& w = w_poly(m);

    const GaussianRational half_i = half * i;
    NonlocalAction out;
    out.poly_factor = half_i * (half - i * X) * up * w(X + i) - half_i * (half + i * X) * down * w(X - i);
    out.expected_factor = GaussianRational(mpq_class(2 * n + 1, 2)) * w(X);
    out.exact_match = out.poly_factor == out.expected_factor;

    double base;
    if (positive) {
        base = phi_half(x);
    } else {
        base = (m % 2 == 0 ? 1.0 : -1.0) * phi_half(-x);
    }
    out.value = base * mpq_class(out.poly_factor.re() / factorial(m)).get_d();
    return out;
}

cd apply_nonlocal_H(const std::function<cd(cd)>& f, double x) {
    const cd i(0, 1);
    return (i / 2.0) * (0.5 - i * x) * f(x + i) - (i / 2.0) * (0.5 + i * x) * f(x - i);
}

cd apply_nonlocal_general(const std::function<cd(cd)>& v, const std::function<cd(cd)>& f, double x) {
    const cd i(0, 1);
    const cd z(x, 0);
    const double c = 1.0 / (2.0 * std::sqrt(2.0));
    const cd r0 = std::sqrt(v(z));
    return c * (r0 + std::sqrt(v(z + i))) * f(z + i) + c * (r0 + std::sqrt(v(z - i))) * f(z - i);
}

CounterexampleReport shifted_counterexample(double a, double p) {
    const cd i(0, 1);
    auto value = [a](double q) { return psi(0.5, q) * std::polar(1.0, -q * a); };
    auto derivative = [a, i](double q) {
        return (psi_derivative(0.5, q) - i * a * psi(0.5, q)) * std::polar(1.0, -q * a);
    };

    CounterexampleReport r;
    r.shift = a;
    r.multiplier_expected = 0.5 + a * std::cosh(p);
    const cd k_exact = (i / 2.0) * (std::sinh(p) * value(p) + 2.0 * std::cosh(p) * derivative(p));
    r.multiplier_exact = k_exact / value(p);

    const double h = 1e-3;
    const UniformGrid grid{p - 4 * h, h, 9};
    const Eigen::ArrayXcd f = grid.points().unaryExpr(value);
    const FdResult k = apply_K_fd(f, grid);
    r.multiplier_fd = k.values(4) / f(4);
    return r;
}

double shifted_solution_residual(double a, double x) {
    auto shifted = [a](cd z) { return phi_half(z + a); };
    return std::abs(apply_nonlocal_H(shifted, x) - 0.5 * phi_half(x + a));
}

namespace {

long double to_long_double(const mpq_class& q) {
    const double hi = q.get_d();
    const double lo = mpq_class(q - hi).get_d();
    return static_cast<long double>(hi) + static_cast<long double>(lo);
}

std::vector<long double> normalized_coeffs(std::size_t n) {
    const GaussianRationalPoly& w = w_poly(n);
    const mpz_class nf = factorial(n);
    std::vector<long double> out;
    for (const auto& c : w.coeffs()) out.push_back(to_long_double(c.re() / nf));
    return out;
}

long double horner(const std::vector<long double>& c, long double x) {
    long double acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

long double sech_pi(long double x) {
    const long double ax = std::abs(x);
    const long double e = std::exp(-std::numbers::pi_v<long double> * ax);
    return 2 * e / (1 + e * e);
}

// Integral over the real line of f(x)/cosh(pi x) where f grows at most like e^{2|theta x|}.
QuadResult<double> sech_weighted(const std::function<double(double)>& f, double theta, const QuadratureSpec& spec) {
    spec.validate();
    const double rate = pi - 2.0 * std::abs(theta);
    const double needed = std::log(4.0 / (rate * spec.abs_tol)) / rate;
    const double l = std::max(spec.truncation, needed);
    const int panels = std::max(32, static_cast<int>(std::ceil(l)));
    auto integrand = [&](double x) {
        const double ax = std::abs(x);
        return f(x) * 2.0 * std::exp(-pi * ax) / (1.0 + std::exp(-2.0 * pi * ax));
    };
    return gauss_kronrod<double>(integrand, -l, l, spec.abs_tol, spec.max_subdivisions, panels);
}

}  // namespace

GramReport gram_w(int n_max, const QuadratureSpec& spec) {
    spec.validate();
    if (n_max < 0 || n_max > 12) throw DomainError("gram_w: n_max must lie in [0, 12]");
    const int size = n_max + 1;
    GramReport r{Eigen::MatrixXd::Zero(size, size), Eigen::MatrixXd::Zero(size, size)};

    std::vector<std::vector<long double>> coeffs;
    for (int n = 0; n < size; ++n) coeffs.push_back(normalized_coeffs(n));

    const long double floor_tol = 64 * std::numeric_limits<long double>::epsilon();
    const long double l = spec.truncation;
    for (int n = 0; n < size; ++n) {
        for (int k = n; k < size; ++k) {
            if ((n + k) % 2 == 1) continue;  // odd integrand, folded sum is identically zero
            const long double scale = to_long_double(mpq_class(factorial(n) * factorial(k)));
            const long double tol = std::max(static_cast<long double>(spec.abs_tol) / scale, floor_tol);
            auto folded = [&](long double x) {
                return (horner(coeffs[n], x) * horner(coeffs[k], x) + horner(coeffs[n], -x) * horner(coeffs[k], -x)) *
                       sech_pi(x);
            };
            const auto q = gauss_kronrod<long double>(folded, 0.0L, l, tol, spec.max_subdivisions, 64);
            r.values(n, k) = r.values(k, n) = static_cast<double>(q.value * scale);
            r.err(n, k) = r.err(k, n) = static_cast<double>(q.err_estimate * scale);
        }
    }
    return r;
}

QuadResult<double> weight_integral(double theta, const QuadratureSpec& spec) {
    if (!(std::abs(theta) < pi / 2)) throw DomainError("weight_integral: requires |theta| < pi/2");
    return sech_weighted([theta](double x) { return std::exp(2.0 * x * theta); }, theta, spec);
}

QuadResult<double> ww_generating_check(double s, double t, const QuadratureSpec& spec) {
    require_unit_disc(s, "ww_generating_check");
    require_unit_disc(t, "ww_generating_check");
    const double theta = std::atan(s) + std::atan(t);
    return sech_weighted([s, t](double x) { return generating_w(x, s) * generating_w(x, t); }, theta, spec);
}

cd generating_psi(cd p, double t) {
    const cd i(0, 1);
    return (1.0 + i) * std::exp(p / 2.0) / ((1.0 - i * t) + i * (1.0 + i * t) * std::exp(p)) / std::sqrt(pi);
}

ResidueReport residue_contour_check(double x, double t, double a, const QuadratureSpec& spec) {
    require_unit_disc(t, "residue_contour_check");
    if (!(a > 0)) throw DomainError("residue_contour_check: a must be positive");
    const cd i(0, 1);
    const double norm = 1.0 / std::sqrt(2.0 * pi);
    auto integrand = [&](cd p) { return norm * generating_psi(p, t) * std::exp(i * p * x); };

    ResidueReport r;
    for (cd p : {cd(0.3, 0), cd(-1.2, 0), cd(2.5, 0), cd(0.3, 0.7)}) {
        r.periodicity_dev = std::max(r.periodicity_dev, std::abs(generating_psi(p + 2.0 * pi * i, t) / generating_psi(p, t) + 1.0));
    }

    r.pole = i * (pi / 2 - 2.0 * std::atan(t));
    r.pole_denominator = std::abs((1.0 - i * t) + i * (1.0 + i * t) * std::exp(r.pole));

    r.residue_formula = -i / pi * std::exp(-pi * x / 2) / std::sqrt(1 + t * t) * std::exp(2 * x * std::atan(t));
    const cd numerator = norm * (1.0 + i) * std::exp(r.pole / 2.0) * std::exp(i * r.pole * x) / std::sqrt(pi);
    r.residue_numeric = numerator / (i * (1.0 + i * t) * std::exp(r.pole));

    const int m = 64;
    const double radius = 0.5;
    cd acc = 0;
    for (int j = 0; j < m; ++j) {
        const cd dz = std::polar(radius, 2 * pi * j / m);
        acc += integrand(r.pole + dz) * dz;
    }
    r.residue_circle = acc / double(m);

    r.lower_side = integrate_interval([&](double p) { return integrand(cd(p, 0)); }, -a, a, spec).value;
    r.contour_identity_dev = std::abs(r.lower_side * (1.0 + std::exp(-2 * pi * x)) - 2.0 * pi * i * r.residue_formula);
    r.generating_dev = std::abs(r.lower_side - generating_phi(x, t));

    for (double edge : {-a, a}) {
        const cd side = integrate_interval([&](double y) { return integrand(cd(edge, y)) * i; }, 0.0, 2 * pi, spec).value;
        r.side_magnitude = std::max(r.side_magnitude, std::abs(side));
    }
    return r;
}

}  // namespace sequiv
