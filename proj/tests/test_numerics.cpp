#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sequiv/numerics.hpp"
#include "sequiv/spectral.hpp"

using namespace sequiv;
using std::numbers::pi;

TEST_CASE("real line: sech integrates to pi") {
    const QuadratureSpec spec;
    const auto q = integrate_real_line([](double p) { return 1.0 / std::cosh(p); }, spec);
    CHECK(std::abs(q.value - pi) < 1e-10);
    CHECK(q.err_estimate <= spec.abs_tol);
}

TEST_CASE("real line: zero integrand gives exactly zero") {
    const auto q = integrate_real_line([](double) { return 0.0; }, QuadratureSpec{});
    CHECK(q.value == 0.0);
    CHECK(q.err_estimate == 0.0);
}

TEST_CASE("real line: exponential against sech(pi x) matches 1/cos(pi/4)") {
    const double oracle = 1.0 / std::cos(pi / 4);  // sqrt 2
    const auto q = integrate_real_line(
        [](double x) { return std::exp(2 * x * pi / 4) / std::cosh(pi * x); }, QuadratureSpec{});
    CHECK(std::abs(q.value - oracle) < 1e-10);
}

TEST_CASE("real line: complex integrand keeps both parts") {
    // integral of e^{-p^2} e^{ip} = sqrt(pi) e^{-1/4}
    const auto q = integrate_real_line(
        [](double p) { return std::exp(-p * p) * std::polar(1.0, p); }, QuadratureSpec{});
    CHECK(std::abs(q.value - std::sqrt(pi) * std::exp(-0.25)) < 1e-10);
}

TEST_CASE("theta: constant, Fourier modes and eigenfunction weight") {
    const QuadratureSpec spec;
    SUBCASE("constant 1/2 over [-pi, pi]") {
        const auto q = integrate_theta([](double th) { return 1.0 / (2 * std::cos(th / 2)) * std::cos(th / 2); }, spec);
        CHECK(std::abs(q.value - pi) < 1e-10);
    }
    SUBCASE("distinct Fourier modes are orthogonal") {
        for (auto [n, k] : {std::pair{1, 3}, std::pair{-2, 5}, std::pair{0, 7}}) {
            const auto q = integrate_theta(
                [n, k](double th) { return std::polar(1.0, -n * th) * std::polar(1.0, k * th); }, spec);
            CHECK(std::abs(q.value) < 1e-10);
        }
    }
    SUBCASE("|Psi_1/2|^2 pulled back to theta integrates to one, as on the real line") {
        auto p_form = [](double p) { return std::norm(psi(0.5, p)); };
        auto theta_form = [&](double th) {
            const double p = std::asinh(std::tan(th / 2));
            return p_form(p) / (2 * std::cos(th / 2));
        };
        const auto qt = integrate_theta(theta_form, spec);
        const auto qp = integrate_real_line(p_form, spec);
        CHECK(std::abs(qt.value - 1.0) < 1e-10);
        CHECK(std::abs(qt.value - qp.value) < qt.err_estimate + qp.err_estimate + 1e-12);
    }
}

TEST_CASE("theta: integrable endpoint singularity (cos(theta/2))^(-1/2)") {
    // integral over [-pi, pi] of cos(t/2)^(-1/2) = 2 * integral_{-pi/2}^{pi/2} cos(u)^(-1/2) du
    // = 2 * B(1/2, 1/4) = 2 * Gamma(1/2) Gamma(1/4) / Gamma(3/4).
    const double oracle = 2 * std::tgamma(0.5) * std::tgamma(0.25) / std::tgamma(0.75);
    QuadratureSpec spec;
    spec.abs_tol = 1e-7;
    const auto q = integrate_theta([](double th) { return 1.0 / std::sqrt(std::cos(th / 2)); }, spec);
    // Resolution near theta = +-pi is limited by double spacing there (~4e-16), which costs ~1e-7.
    CHECK(std::abs(q.value - oracle) < 5e-7);
}

TEST_CASE("substitution consistency: truncated vs transformed-compact") {
    QuadratureSpec trunc;
    QuadratureSpec compact;
    compact.scheme = QuadratureScheme::TransformedCompact;
    // Integrands decaying at least like e^{-|p|}; the compact form is then bounded.
    const std::vector<std::function<std::complex<double>(double)>> fs = {
        [](double p) { return std::complex<double>(1.0 / std::cosh(p)); },
        [](double p) { return std::complex<double>(std::exp(-p * p)); },
        [](double p) { return std::conj(psi(1.5, p)) * psi(0.5, p); },
    };
    for (const auto& f : fs) {
        const auto a = integrate_real_line(f, trunc);
        const auto b = integrate_real_line(f, compact);
        CHECK(std::abs(a.value - b.value) < a.err_estimate + b.err_estimate + 1e-12);
    }
}

TEST_CASE("quadrature is linear within combined error estimates") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-3, 3);
    const QuadratureSpec spec;
    auto f = [](double p) { return std::exp(-p * p) * std::cos(3 * p); };
    auto g = [](double p) { return 1.0 / std::cosh(2 * p); };
    const auto qf = integrate_real_line(f, spec);
    const auto qg = integrate_real_line(g, spec);
    for (int trial = 0; trial < 20; ++trial) {
        const double alpha = u(rng);
        const double beta = u(rng);
        const auto qh = integrate_real_line([&](double p) { return alpha * f(p) + beta * g(p); }, spec);
        const double bound = 2 * (std::abs(alpha) * qf.err_estimate + std::abs(beta) * qg.err_estimate + qh.err_estimate);
        CHECK(std::abs(qh.value - (alpha * qf.value + beta * qg.value)) <= bound + 1e-14);
    }
}

TEST_CASE("quadrature errors") {
    SUBCASE("budget exhausted") {
        QuadratureSpec spec;
        spec.abs_tol = 1e-15;
        spec.max_subdivisions = 40;
        CHECK_THROWS_AS(integrate_real_line([](double p) { return std::sqrt(std::abs(std::sin(p))); }, spec),
                        ToleranceNotMet);
    }
    SUBCASE("non-finite sample") {
        CHECK_THROWS_AS(integrate_real_line([](double p) { return (p > 1 && p < 2) ? NAN : 1.0 / std::cosh(p); }, QuadratureSpec{}),
                        NonFiniteSample);
    }
    SUBCASE("invalid spec") {
        QuadratureSpec spec;
        spec.abs_tol = 0;
        CHECK_THROWS_AS(spec.validate(), DomainError);
        spec = QuadratureSpec{};
        spec.truncation = -1;
        CHECK_THROWS_AS(spec.validate(), DomainError);
    }
}

TEST_CASE("gauss_kronrod in extended precision") {
    const auto q = gauss_kronrod<long double>([](long double x) { return std::exp(-x); }, 0.0L, 1.0L, 1e-18L, 200);
    CHECK(std::abs(q.value - (1 - std::exp(-1.0L))) < 1e-17L);
}

namespace {

const VectorField2 oscillator = [](double, const State2& y) { return State2(y[1], -y[0]); };

}  // namespace

TEST_CASE("ode: harmonic oscillator half period") {
    for (auto method : {OdeMethod::Rk4Fixed, OdeMethod::Rk45Adaptive}) {
        OdeSpec spec;
        spec.method = method;
        spec.abs_tol = 1e-10;
        const OdePath path = ode_solve(oscillator, State2(1, 0), 0, pi, spec);
        CHECK(path.t.back() == doctest::Approx(pi).epsilon(1e-15));
        CHECK(std::abs(path.y.back()[0] + 1) < 1e-6);
        CHECK(std::abs(path.y.back()[1]) < 1e-6);
        // Monotone sample times covering the span.
        CHECK(path.t.front() == 0.0);
        for (std::size_t k = 1; k < path.t.size(); ++k) CHECK(path.t[k] > path.t[k - 1]);
    }
}

TEST_CASE("ode: zero field keeps the state") {
    const VectorField2 zero = [](double, const State2&) { return State2(0, 0); };
    const OdePath path = ode_solve(zero, State2(2.5, -1.25), 0, 3, OdeSpec{});
    for (const auto& y : path.y) CHECK((y - State2(2.5, -1.25)).norm() == 0.0);
}

TEST_CASE("ode: alternative oscillator field gives x = cos t") {
    const VectorField2 alt = [](double, const State2& y) { return State2(y[0] * std::sinh(y[1]), -std::cosh(y[1])); };
    OdeSpec spec;
    spec.abs_tol = 1e-10;
    const OdePath path = ode_solve(alt, State2(1, 0), 0, 1, spec);
    CHECK(std::abs(path.y.back()[0] - std::cos(1.0)) < 1e-6);
}

TEST_CASE("ode: rk4 energy drift scales like step^4") {
    auto drift = [](double step) {
        OdeSpec spec;
        spec.method = OdeMethod::Rk4Fixed;
        spec.step = step;
        const OdePath path = ode_solve(oscillator, State2(1, 0), 0, 10, spec);
        double worst = 0;
        for (const auto& y : path.y) worst = std::max(worst, std::abs(0.5 * y.squaredNorm() - 0.5));
        return worst;
    };
    const double ratio = drift(0.1) / drift(0.05);
    CHECK(ratio > 12);
    CHECK(ratio < 40);
}

TEST_CASE("ode: blow-up is reported as StepFailure") {
    const VectorField2 blowup = [](double, const State2& y) { return State2(y[0] * y[0], 0); };
    OdeSpec spec;
    spec.abs_tol = 1e-10;
    CHECK_THROWS_AS(ode_solve(blowup, State2(1, 0), 0, 2, spec), StepFailure);
    const OdePath partial = ode_integrate(blowup, State2(1, 0), 0, 2, spec);
    CHECK(partial.status == PathStatus::StepFailure);
    CHECK(partial.t.back() < 1.0);
}
