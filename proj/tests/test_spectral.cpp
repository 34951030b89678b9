#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "sequiv/errors.hpp"
#include "sequiv/spectral.hpp"

using namespace sequiv;
using std::numbers::pi;
using cd = std::complex<double>;

TEST_CASE("Psi_lambda closed form at p = 0 and decay") {
    CHECK(std::abs(psi(0.5, 0.0) - cd(1 / std::sqrt(pi), 0)) < 1e-16);
    CHECK(std::abs(psi(0.5, 30.0)) < 1e-6);
    // |Psi|^2 cosh p = 1/pi everywhere
    for (double p : {-5.0, -0.3, 2.0}) CHECK(std::norm(psi(1.7, p)) * std::cosh(p) == doctest::Approx(1 / pi));
    const EigenFunctionSpec spec{2.3};
    CHECK(spec.gamma() == doctest::Approx(0.3));
    CHECK(EigenFunctionSpec{-0.5}.gamma() == doctest::Approx(1.5));
}

TEST_CASE("psi_derivative agrees with a central difference") {
    const double h = 1e-5;
    for (double p : {-3.0, 0.0, 0.4, 2.5}) {
        const cd fd = (psi(0.8, p + h) - psi(0.8, p - h)) / (2 * h);
        CHECK(std::abs(fd - psi_derivative(0.8, p)) < 1e-9);
    }
}

TEST_CASE("K Psi_lambda = lambda Psi_lambda with fourth-order convergence") {
    // Coarse steps, so truncation error dominates rounding (the floor is ~1e-12 near h = 1e-3).
    const double r1 = eigen_residual(0.5, UniformGrid::symmetric(8, 8e-3));
    const double r2 = eigen_residual(0.5, UniformGrid::symmetric(8, 4e-3));
    CHECK(eigen_residual(0.5, UniformGrid::symmetric(8, 1e-3)) < 1e-7);
    CHECK(r1 / r2 > 12);
    CHECK(r1 / r2 < 20);
    for (double lambda : {-1.5, 0.0, 2.25}) CHECK(eigen_residual(lambda, UniformGrid::symmetric(6, 1e-3)) < 1e-7);
}

TEST_CASE("apply_K_fd flags coarse grids") {
    const UniformGrid grid = UniformGrid::symmetric(5, 0.5);
    const Eigen::ArrayXcd f = psi(EigenFunctionSpec{0.5}, grid.points());
    CHECK_THROWS_AS(apply_K_fd(f, grid, 1e-12), GridTooCoarse);
    const FdResult r = apply_K_fd(f, grid);
    CHECK(r.first_valid == 2);
    CHECK(r.last_valid == grid.n - 3);
    CHECK(r.values(0) == cd(0, 0));
}

TEST_CASE("closed-form identities") {
    const Eigen::ArrayXd p = Eigen::ArrayXd::LinSpaced(201, -10, 10);
    const auto rep = identity_checks(p, 6);
    CHECK(rep.i1 < 1e-13);
    CHECK(rep.i2 < 1e-13);
    CHECK(rep.nef < 1e-12);
}

TEST_CASE("inner products are sinc((lambda - mu) pi/2)") {
    CHECK(sinc_inner_product(0.7, 0.7) == 1.0);
    CHECK(std::abs(sinc_inner_product(0.5, 2.5)) < 1e-16);
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> u(-3, 3);
    const QuadratureSpec spec;
    for (int trial = 0; trial < 10; ++trial) {
        const double l = u(rng), m = u(rng);
        const auto q = inner_product(l, m, spec);
        CHECK(std::abs(q.value - sinc_inner_product(l, m)) < 1e-9);
    }
}

TEST_CASE("Psi_{2n+gamma} are orthonormal") {
    for (double gamma : {0.0, 0.5, 1.3}) {
        const Eigen::MatrixXcd g = gram_psi(gamma, 3, QuadratureSpec{});
        CHECK(g.rows() == 7);
        CHECK((g - Eigen::MatrixXcd::Identity(7, 7)).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("basis coefficients of a basis element") {
    const double gamma = 0.5;
    const ComplexFunction f = [](double p) { return psi(2 * 1 + 0.5, p); };
    for (int n = -3; n <= 3; ++n) {
        const cd c = basis_coefficient(f, gamma, n, QuadratureSpec{});
        CHECK(std::abs(c - cd(n == 1 ? 1.0 : 0.0, 0)) < 1e-10);
    }
}

TEST_CASE("Parseval for a Gaussian") {
    const ComplexFunction f = [](double p) { return cd(std::exp(-p * p), 0); };
    const auto rep = parseval_check(f, 0.5, 25, QuadratureSpec{});
    CHECK(std::abs(rep.norm_sq - std::sqrt(pi / 2)) < 1e-10);
    CHECK(std::abs(rep.defect) < 1e-9);
    CHECK(rep.coefficients.size() == 51);
    for (std::size_t m = 1; m < rep.partial_sums.size(); ++m) CHECK(rep.partial_sums[m] >= rep.partial_sums[m - 1]);
    CHECK(rep.partial_sum <= rep.norm_sq + 1e-9);
}

TEST_CASE("Parseval is independent of the extension label") {
    const ComplexFunction f = [](double p) { return std::exp(-0.5 * p * p) * std::polar(1.0, p); };
    for (double gamma : {0.0, 0.9, 1.7}) {
        const auto rep = parseval_check(f, gamma, 64, QuadratureSpec{});
        CHECK(std::abs(rep.defect) < 1e-9);
    }
}

TEST_CASE("boundary ratio is e^{i pi gamma}") {
    for (double lambda : {0.0, 0.3, 1.0, 2.3, -0.6}) {
        const cd expected = std::polar(1.0, pi * EigenFunctionSpec{lambda}.gamma());
        CHECK(std::abs(extension_boundary_ratio(lambda) - expected) < 1e-10);
    }
}

TEST_CASE("K is symmetric on compactly supported functions") {
    const auto f = TestFunction::bump(0.2, 1.5, 1.0);
    const auto g = TestFunction::bump(-0.3, 2.0, -2.0);
    const auto d = symmetry_defect(f, g, -3, 3, QuadratureSpec{});
    CHECK(std::abs(d.defect) < 1e-10);
    CHECK(std::abs(d.boundary_term) == 0.0);
    const cd e = expectation_K(f, -1.3, 1.7, QuadratureSpec{});
    CHECK(std::abs(e.imag()) < 1e-10);
}

TEST_CASE("symmetry defect on a finite window equals the boundary term") {
    const auto f = TestFunction::eigenfunction(0.5);
    const auto g = TestFunction::eigenfunction(1.1);
    const auto d = symmetry_defect(f, g, -2, 1.5, QuadratureSpec{});
    CHECK(std::abs(d.defect - d.boundary_term) < 1e-10);
    CHECK(std::abs(d.boundary_term) > 1e-3);
}
