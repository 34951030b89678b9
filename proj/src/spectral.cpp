#include "sequiv/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sequiv {

using cd = std::complex<double>;
using std::numbers::pi;

Eigen::ArrayXcd psi(const EigenFunctionSpec& spec, const Eigen::ArrayXd& p) {
    return p.unaryExpr([lambda = spec.lambda](double q) { return psi(lambda, q); });
}

UniformGrid UniformGrid::symmetric(double half_width, double h) {
    const auto half = static_cast<Eigen::Index>(std::llround(half_width / h));
    return {-half * h, h, 2 * half + 1};
}

FdResult apply_K_fd(const Eigen::ArrayXcd& f, const UniformGrid& grid, double tol) {
    if (f.size() != grid.n) throw DomainError("apply_K_fd: sample count does not match the grid");
    if (grid.n < 7) throw DomainError("apply_K_fd: grid needs at least 7 points");
    const Eigen::Index n = grid.n;
    const double h = grid.h;
    const Eigen::ArrayXd p = grid.points();

    // Centre rows 2..n-3 for the fourth-order stencil.
    const Eigen::Index m4 = n - 4;
    const Eigen::ArrayXcd d4 =
        (f.segment(0, m4) - 8.0 * f.segment(1, m4) + 8.0 * f.segment(3, m4) - f.segment(4, m4)) / (12.0 * h);

    FdResult out;
    out.values = Eigen::ArrayXcd::Zero(n);
    out.first_valid = 2;
    out.last_valid = n - 3;
    const Eigen::ArrayXd pc = p.segment(2, m4);
    out.values.segment(2, m4) = cd(0, 0.5) * (pc.sinh() * f.segment(2, m4) + 2.0 * pc.cosh() * d4);

    // Centre rows 3..n-4 for the sixth-order comparison.
    const Eigen::Index m6 = n - 6;
    const Eigen::ArrayXcd d6 = (-f.segment(0, m6) + 9.0 * f.segment(1, m6) - 45.0 * f.segment(2, m6) +
                                45.0 * f.segment(4, m6) - 9.0 * f.segment(5, m6) + f.segment(6, m6)) /
                               (60.0 * h);
    const Eigen::ArrayXd gap = ((d4.segment(1, m6) - d6).abs() * p.segment(3, m6).cosh());
    out.err_estimate = gap.maxCoeff();
    if (out.err_estimate > tol) {
        std::ostringstream os;
        os << "apply_K_fd: estimated error " << out.err_estimate << " exceeds " << tol;
        throw GridTooCoarse(os.str(), out.err_estimate);
    }
    return out;
}

double eigen_residual(double lambda, const UniformGrid& grid) {
    const EigenFunctionSpec spec{lambda};
    const Eigen::ArrayXcd f = psi(spec, grid.points());
    const FdResult k = apply_K_fd(f, grid);
    const Eigen::Index m = k.last_valid - k.first_valid + 1;
    return (k.values.segment(k.first_valid, m) - lambda * f.segment(k.first_valid, m)).abs().maxCoeff();
}

namespace {

cd ipow(cd z, int n) {
    if (n < 0) return 1.0 / ipow(z, -n);
    cd out = 1.0;
    for (int k = 0; k < n; ++k) out *= z;
    return out;
}

}  // namespace

IdentityReport identity_checks(const Eigen::ArrayXd& p, int n_max) {
    const cd i(0, 1);
    IdentityReport r;
    for (double q : p) {
        const double phase = std::atan(std::sinh(q));
        const cd ep = std::exp(q);
        const cd lhs1 = std::polar(1.0 / std::sqrt(std::cosh(q)), -phase / 2);
        const cd rhs1 = (1.0 + i) / (1.0 + i * ep) * std::exp(q / 2);
        r.i1 = std::max(r.i1, std::abs(lhs1 - rhs1));

        const cd lhs2 = std::polar(1.0, -phase);
        const cd rhs2 = i * (1.0 - i * ep) / (1.0 + i * ep);
        r.i2 = std::max(r.i2, std::abs(lhs2 - rhs2));

        for (int n = -n_max; n <= n_max; ++n) {
            const cd product = ipow(rhs2, n) * rhs1 / std::sqrt(pi);
            r.nef = std::max(r.nef, std::abs(product - psi(n + 0.5, q)));
        }
    }
    return r;
}

double sinc_inner_product(double lambda, double mu) {
    const double z = (lambda - mu) * pi / 2;
    return z == 0 ? 1.0 : std::sin(z) / z;
}

QuadResult<cd> inner_product(double lambda, double mu, const QuadratureSpec& spec) {
    return integrate_real_line([=](double p) { return std::conj(psi(lambda, p)) * psi(mu, p); }, spec);
}

Eigen::MatrixXcd gram_psi(double gamma, int n_max, const QuadratureSpec& spec) {
    const int size = 2 * n_max + 1;
    Eigen::MatrixXcd g(size, size);
    for (int r = 0; r < size; ++r) {
        for (int c = r; c < size; ++c) {
            const double lr = 2.0 * (r - n_max) + gamma;
            const double lc = 2.0 * (c - n_max) + gamma;
            g(r, c) = inner_product(lr, lc, spec).value;
            g(c, r) = std::conj(g(r, c));
        }
    }
    return g;
}

std::complex<double> basis_coefficient(const ComplexFunction& f, double gamma, int n, const QuadratureSpec& spec) {
    auto integrand = [&](double theta) -> cd {
        const double half = theta / 2;
        const double c = std::cos(half);
        const double p = std::asinh(std::tan(half));
        return std::conj(f(p)) / std::sqrt(c) * std::polar(1.0, -(gamma / 2 + n) * theta);
    };
    return integrate_theta(integrand, spec).value / (2.0 * std::sqrt(pi));
}

ParsevalReport parseval_check(const ComplexFunction& f, double gamma, int N, const QuadratureSpec& spec) {
    if (N < 0) throw DomainError("parseval_check: N must be nonnegative");
    ParsevalReport r;
    const auto norm = integrate_real_line([&](double p) { return std::norm(f(p)); }, spec);
    r.norm_sq = norm.value;
    r.norm_err = norm.err_estimate;

    r.coefficients.resize(2 * N + 1);
    for (int n = -N; n <= N; ++n) r.coefficients[n + N] = basis_coefficient(f, gamma, n, spec);

    double acc = std::norm(r.coefficients[N]);
    r.partial_sums.push_back(acc);
    for (int m = 1; m <= N; ++m) {
        acc += std::norm(r.coefficients[N + m]) + std::norm(r.coefficients[N - m]);
        r.partial_sums.push_back(acc);
    }
    r.partial_sum = acc;
    r.defect = r.norm_sq - r.partial_sum;
    return r;
}

std::complex<double> extension_boundary_ratio(double lambda, double p_probe) {
    auto scaled = [lambda](double p) { return std::sqrt(std::cosh(p)) * psi(lambda, p); };
    return scaled(-p_probe) / scaled(p_probe);
}

TestFunction TestFunction::bump(double center, double half_width, double k) {
    auto base = [=](double p) -> std::pair<double, double> {
        const double u = (p - center) / half_width;
        if (std::abs(u) >= 1) return {0.0, 0.0};
        const double w = 1 - u * u;
        const double v = std::exp(-1 / w);
        return {v, v * (-2 * u / (w * w)) / half_width};
    };
    TestFunction t;
    t.value = [=](double p) { return base(p).first * std::polar(1.0, k * p); };
    t.derivative = [=](double p) {
        const auto [v, dv] = base(p);
        return (dv + cd(0, k) * v) * std::polar(1.0, k * p);
    };
    return t;
}

TestFunction TestFunction::eigenfunction(double lambda) {
    return {[lambda](double p) { return psi(lambda, p); }, [lambda](double p) { return psi_derivative(lambda, p); }};
}

namespace {

cd apply_K_exact(const TestFunction& f, double p) {
    return cd(0, 0.5) * (std::sinh(p) * f.value(p) + 2 * std::cosh(p) * f.derivative(p));
}

}  // namespace

SymmetryDefect symmetry_defect(const TestFunction& f, const TestFunction& g, double a, double b,
                               const QuadratureSpec& spec) {
    auto integrand = [&](double p) {
        return std::conj(f.value(p)) * apply_K_exact(g, p) - std::conj(apply_K_exact(f, p)) * g.value(p);
    };
    const auto q = integrate_interval(integrand, a, b, spec);
    auto edge = [&](double p) { return std::cosh(p) * std::conj(f.value(p)) * g.value(p); };
    return {q.value, cd(0, 1) * (edge(b) - edge(a)), q.err_estimate};
}

std::complex<double> expectation_K(const TestFunction& f, double a, double b, const QuadratureSpec& spec) {
    return integrate_interval([&](double p) { return std::conj(f.value(p)) * apply_K_exact(f, p); }, a, b, spec).value;
}

}  // namespace sequiv
