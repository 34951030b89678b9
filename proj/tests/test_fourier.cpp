#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sequiv/errors.hpp"
#include "sequiv/fourier.hpp"

using namespace sequiv;
using std::numbers::pi;
using cd = std::complex<double>;

namespace {

// |E_0|, |E_2|, ... from sum_{k<=n} C(2n, 2k) E_{2k} = 0.
std::vector<mpz_class> euler_numbers_abs(int count) {
    std::vector<mpz_class> e{1};
    for (int n = 1; n < count; ++n) {
        mpz_class acc = 0, binom;
        for (int k = 0; k < n; ++k) {
            mpz_bin_uiui(binom.get_mpz_t(), 2 * n, 2 * k);
            acc += binom * ((k % 2) ? mpz_class(-e[k]) : e[k]);
        }
        e.push_back(abs(acc));
    }
    return e;
}

// Integral of x^{2j} / cosh(pi x) = |E_{2j}| / 4^j; odd moments vanish.
mpq_class sech_moment(std::size_t m, const std::vector<mpz_class>& e) {
    if (m % 2) return 0;
    const std::size_t j = m / 2;
    return mpq_class(e[j], mpz_class(1) << (2 * j));
}

mpq_class exact_gram(std::size_t n, std::size_t k, const std::vector<mpz_class>& e) {
    mpq_class acc = 0;
    const auto& a = w_poly(n).coeffs();
    const auto& b = w_poly(k).coeffs();
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) acc += a[i].re() * b[j].re() * sech_moment(i + j, e);
    return acc;
}

}  // namespace

TEST_CASE("Phi_1/2 forms agree and stay finite") {
    for (double x : {-3.0, -0.4, 0.0, 1.1, 5.0}) {
        CHECK(phi_half(x) == doctest::Approx(std::exp(pi * x / 2) / std::cosh(pi * x)).epsilon(1e-14));
        CHECK(std::abs(phi_half(cd(x, 0)) - phi_half(x)) < 1e-14);
        CHECK(std::abs(phi_half(cd(x, 1)) + cd(0, 1) * phi_half(x)) < 1e-13);
        CHECK(std::abs(phi_half(cd(x, -1)) - cd(0, 1) * phi_half(x)) < 1e-13);
    }
    CHECK(std::isfinite(phi_half(400.0)));
    CHECK(std::isfinite(phi_half(-400.0)));
    CHECK(phi_half(400.0) > 0.0);
    CHECK(phi_half(400.0) < 1e-270);
    CHECK(phi_half(0.0) == 1.0);
}

TEST_CASE("negative-index closed forms are mirror images") {
    for (int m = 0; m <= 4; ++m) {
        for (double x : {-1.0, 0.25, 2.0}) {
            CHECK(phi_closed(-m - 1, x) == doctest::Approx(phi_closed(m, -x)).epsilon(1e-14));
        }
    }
}

TEST_CASE("Fourier transform of Psi_{n+1/2} is Phi_{n+1/2}") {
    QuadratureSpec spec;
    spec.truncation = 60;
    for (int n = -3; n <= 3; ++n) {
        for (double x : {-2.5, -0.7, 0.0, 1.3, 3.0}) {
            const auto q = fourier_transform_num(n + 0.5, x, spec);
            CHECK(std::abs(q.value - phi_closed(n, x)) < 1e-8);
        }
    }
}

TEST_CASE("nonlocal H acts with eigenvalue n + 1/2, exactly in the polynomial factor") {
    for (int n = -21; n <= 20; ++n) {
        for (double x : {-1.75, 0.0, 0.5, 2.125}) {
            const auto a = apply_nonlocal_H(n, x);
            CHECK(a.exact_match);
            CHECK(a.poly_factor == a.expected_factor);
            const double expected = (n + 0.5) * phi_closed(n, x);
            CHECK(std::abs(a.value - expected) <= 1e-12 * (1 + std::abs(expected)));
        }
    }
}

TEST_CASE("nonlocal H via analytic continuation agrees for Phi_1/2") {
    for (double x : {-1.0, 0.3, 2.0}) {
        const cd v = apply_nonlocal_H([](cd z) { return phi_half(z); }, x);
        CHECK(std::abs(v - 0.5 * phi_half(x)) < 1e-13);
    }
}

TEST_CASE("shifted Phi_1/2 solves the position-space equation") {
    for (double a : {0.0, 1.0, -0.6}) {
        for (double x : {-1.0, 0.0, 1.5}) CHECK(shifted_solution_residual(a, x) < 1e-13);
    }
}

TEST_CASE("momentum-space counterpart is not an eigenfunction unless a = 0") {
    for (double p : {0.0, 1.0, 2.0}) {
        const auto r = shifted_counterexample(1.0, p);
        CHECK(std::abs(r.multiplier_exact - cd(0.5 + std::cosh(p), 0)) < 1e-12);
        CHECK(std::abs(r.multiplier_fd - cd(0.5 + std::cosh(p), 0)) < 1e-6);
    }
    const auto r0 = shifted_counterexample(1.0, 0.0);
    const auto r2 = shifted_counterexample(1.0, 2.0);
    CHECK(std::abs(r2.multiplier_exact - r0.multiplier_exact) > 1.0);
    CHECK(std::abs(shifted_counterexample(0.0, 1.7).multiplier_exact - 0.5) < 1e-12);
}

TEST_CASE("general-potential form is finite on the oscillator") {
    const auto v = [](cd z) { return 0.5 * z * z + 1.0; };
    const auto f = [](cd z) { return phi_half(z); };
    for (double x : {-1.0, 0.0, 2.0}) CHECK(std::isfinite(std::abs(apply_nonlocal_general(v, f, x))));
}

TEST_CASE("generating functions") {
    CHECK(generating_w(1.3, 0.0) == 1.0);
    CHECK(generating_phi(0.0, 0.0) == 1.0);
    CHECK_THROWS_AS(generating_w(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(generating_phi(0.0, -1.5), DomainError);

    // Taylor coefficients of Phi(x, t) = Phi_1/2(x) W(x, t) at t = 0, by the trapezoid rule on |t| = 1/2.
    for (double x : {-1.2, 0.0, 0.8}) {
        const int m = 128;
        for (int n = 0; n <= 8; ++n) {
            cd acc = 0;
            for (int j = 0; j < m; ++j) {
                const cd t = std::polar(0.5, 2 * pi * j / m);
                acc += phi_half(x) * std::exp(2.0 * x * std::atan(t)) / std::sqrt(1.0 + t * t) / std::pow(t, n);
            }
            CHECK(std::abs(acc.real() / m - phi_closed(n, x)) < 1e-12);
        }
    }
}

TEST_CASE("exact Gram oracle: W_n are orthogonal with norm (n!)^2") {
    const auto e = euler_numbers_abs(14);
    CHECK(e[1] == 1);
    CHECK(e[2] == 5);
    CHECK(e[3] == 61);
    for (std::size_t n = 0; n <= 12; ++n) {
        for (std::size_t k = 0; k <= 12; ++k) {
            const mpz_class f = factorial(n);
            CHECK(exact_gram(n, k, e) == (n == k ? mpq_class(f * f) : mpq_class(0)));
        }
    }
}

TEST_CASE("gram_w against the exact oracle") {
    const auto e = euler_numbers_abs(14);
    const auto r = gram_w(10, QuadratureSpec{});
    for (int n = 0; n <= 10; ++n) {
        for (int k = 0; k <= 10; ++k) {
            const double exact = exact_gram(n, k, e).get_d();
            if (n == k) {
                CHECK(std::abs(r.values(n, k) - exact) / exact < 1e-8);
            } else if (n <= 8 && k <= 8) {
                CHECK(std::abs(r.values(n, k)) < 1e-8);
            } else {
                // Beyond n = 8 the absolute floor is set by extended precision times n! k!.
                const double scale = factorial(n).get_d() * factorial(k).get_d();
                CHECK(std::abs(r.values(n, k)) / scale < 1e-17);
                CHECK(std::abs(r.values(n, k)) <= r.err(n, k) + 1e-8);
            }
        }
    }
    CHECK(r.values.isApprox(r.values.transpose()));
    CHECK(gram_w(0, QuadratureSpec{}).values(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(gram_w(13, QuadratureSpec{}), DomainError);
    CHECK_THROWS_AS(gram_w(-1, QuadratureSpec{}), DomainError);
}

TEST_CASE("weight integral is 1/cos(theta)") {
    const QuadratureSpec spec;
    CHECK(std::abs(weight_integral(0, spec).value - 1) < 1e-10);
    CHECK(std::abs(weight_integral(pi / 4, spec).value - std::sqrt(2.0)) < 1e-10);
    CHECK(std::abs(weight_integral(pi / 3, spec).value - 2) < 1e-10);
    CHECK(std::abs(weight_integral(-pi / 6, spec).value - 1 / std::cos(pi / 6)) < 1e-10);
    CHECK_THROWS_AS(weight_integral(pi / 2, spec), DomainError);
}

TEST_CASE("W(x,s) W(x,t) against the weight is 1/(1 - st)") {
    const QuadratureSpec spec;
    CHECK(std::abs(ww_generating_check(0, 0, spec).value - 1) < 1e-10);
    CHECK(std::abs(ww_generating_check(0.3, 0.5, spec).value - 1 / 0.85) < 1e-8);
    CHECK(std::abs(ww_generating_check(-0.6, 0.6, spec).value - 1 / 1.36) < 1e-8);
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    for (int trial = 0; trial < 5; ++trial) {
        const double s = u(rng), t = u(rng);
        CHECK(std::abs(ww_generating_check(s, t, spec).value - 1 / (1 - s * t)) < 1e-8);
    }
    CHECK_THROWS_AS(ww_generating_check(1.0, 0.0, spec), DomainError);
}

TEST_CASE("contour machinery at t = 0, x = 0") {
    const auto r = residue_contour_check(0.0, 0.0, 40.0, QuadratureSpec{});
    CHECK(r.periodicity_dev < 1e-12);
    CHECK(std::abs(r.pole - cd(0, pi / 2)) < 1e-15);
    CHECK(r.pole_denominator < 1e-14);
    CHECK(std::abs(r.residue_formula - cd(0, -1 / pi)) < 1e-15);
    CHECK(std::abs(2.0 * pi * cd(0, 1) * r.residue_formula / 2.0 - 1.0) < 1e-15);
    CHECK(std::abs(r.residue_numeric - r.residue_formula) < 1e-14);
    CHECK(std::abs(r.residue_circle - r.residue_formula) < 1e-10);
    CHECK(r.contour_identity_dev < 1e-8);
    CHECK(r.generating_dev < 1e-8);
}

TEST_CASE("contour machinery at generic points") {
    // At x < 0 the identity multiplies the truncated lower side by 1 + e^{-2 pi x}, so a must grow with |x|.
    for (auto [x, t] : {std::pair{0.7, 0.3}, std::pair{-1.1, -0.5}, std::pair{2.0, 0.8}}) {
        const auto r = residue_contour_check(x, t, 60.0, QuadratureSpec{});
        CHECK(r.periodicity_dev < 1e-12);
        CHECK(r.pole_denominator < 1e-13);
        CHECK(std::abs(r.residue_numeric - r.residue_formula) < 1e-13);
        CHECK(std::abs(r.residue_circle - r.residue_formula) < 1e-9);
        CHECK(r.contour_identity_dev < 1e-8);
        CHECK(r.generating_dev < 1e-8);
    }
    CHECK_THROWS_AS(residue_contour_check(0, 1.0, 40, QuadratureSpec{}), DomainError);
    CHECK_THROWS_AS(residue_contour_check(0, 0.0, -1, QuadratureSpec{}), DomainError);
}
