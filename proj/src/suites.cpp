#include "sequiv/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <future>
#include <numbers>
#include <random>
#include <sstream>

#include "sequiv/classical.hpp"
#include "sequiv/exactpoly.hpp"
#include "sequiv/fourier.hpp"
#include "sequiv/master.hpp"
#include "sequiv/spectral.hpp"

namespace sequiv {

using cd = std::complex<double>;
using std::numbers::pi;

bool SuiteResult::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

double SuiteResult::worst_ratio() const {
    double worst = 0;
    for (const auto& c : checks) {
        if (c.timing) continue;
        if (c.lower_bound) worst = std::max(worst, c.tolerance / c.measured);
        else if (c.tolerance > 0) worst = std::max(worst, c.measured / c.tolerance);
        else if (c.measured != 0) worst = std::max(worst, std::numeric_limits<double>::infinity());
    }
    return worst;
}

namespace {

using Clock = std::chrono::steady_clock;

// measured < tol, or exactly zero when tol == 0
Check below(std::string name, double measured, double tol) {
    const bool ok = std::isfinite(measured) && (tol > 0 ? measured < tol : measured == 0);
    return {std::move(name), measured, tol, ok, false};
}

Check above(std::string name, double measured, double floor) {
    return {std::move(name), measured, floor, std::isfinite(measured) && measured > floor, false, true};
}

Check flag(std::string name, bool ok) { return {std::move(name), ok ? 0.0 : 1.0, 0.0, ok, false}; }

Check timing(std::string name, double seconds, double limit) { return {std::move(name), seconds, limit, seconds < limit, true}; }

// Runs body, converting library errors into a failed check so one suite cannot abort the report.
template <typename F>
SuiteResult run_suite(int id, std::string title, F&& body) {
    SuiteResult r;
    r.id = id;
    r.title = std::move(title);
    const auto start = Clock::now();
    try {
        body(r.checks);
    } catch (const std::exception& e) {
        r.checks.push_back(flag(std::string("error: ") + e.what(), false));
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    return r;
}

GaussianRationalPoly integer_poly(std::initializer_list<long> c) {
    std::vector<GaussianRational> v;
    for (long k : c) v.emplace_back(k);
    return GaussianRationalPoly(std::move(v));
}

GaussianRationalPoly random_real_poly(std::mt19937& rng, int degree) {
    std::uniform_int_distribution<long> num(-100, 100);
    std::uniform_int_distribution<long> den(1, 16);
    std::vector<GaussianRational> c;
    for (int k = 0; k <= degree; ++k) c.emplace_back(mpq_class(num(rng), den(rng)));
    return GaussianRationalPoly(std::move(c));
}

double wrap_angle(double a) { return std::remainder(a, 2 * pi); }

}  // namespace

SuiteResult suite_polynomials(const SuiteOptions& o) {
    return run_suite(1, "polynomial table", [&](std::vector<Check>& out) {
        const auto start = Clock::now();
        const std::vector<GaussianRationalPoly> table = {
            integer_poly({1}), integer_poly({0, 2}), integer_poly({-1, 0, 4}), integer_poly({0, -10, 0, 8}),
            integer_poly({9, 0, -56, 0, 16})};
        long mismatched = 0;
        for (std::size_t n = 0; n < table.size(); ++n) mismatched += !(w_poly(n) == table[n]);
        out.push_back(below("W_0..W_4 coefficient mismatches", double(mismatched), 0));

        const auto x2 = integer_poly({0, 2});
        long broken = 0;
        for (int n = 1; n < o.recurrence_n; ++n) {
            const GaussianRational nn(long(n) * n);
            broken += !(w_poly(n + 1) == x2 * w_poly(n) - nn * w_poly(n - 1));
        }
        out.push_back(below("recurrence failures for n <= " + std::to_string(o.recurrence_n), double(broken), 0));
        out.push_back(timing("runtime", std::chrono::duration<double>(Clock::now() - start).count(), o.poly_seconds));
    });
}

SuiteResult suite_eigen_identity(const SuiteOptions& o) {
    return run_suite(2, "eigen-identity", [&](std::vector<Check>& out) {
        long h_fail = 0, r_fail = 0;
        for (int n = 0; n <= o.eigen_n; ++n) {
            const GaussianRational ev(mpq_class(2 * n + 1, 2));
            h_fail += !(apply_h(w_poly(n)) == ev * w_poly(n));
            r_fail += !(apply_R(w_poly(n)) == w_poly(n + 1));
        }
        out.push_back(below("h W_n != (n+1/2) W_n count", double(h_fail), 0));
        out.push_back(below("R W_n != W_{n+1} count", double(r_fail), 0));

        std::mt19937 rng(o.seed);
        std::uniform_int_distribution<int> deg(0, o.random_degree);
        long c_fail = 0;
        for (int k = 0; k < o.random_polys; ++k) c_fail += !commutator_residual(random_real_poly(rng, deg(rng))).is_zero();
        out.push_back(below("nonzero [h,R]-R residuals over random polynomials", double(c_fail), 0));
    });
}

SuiteResult suite_orthogonality(const SuiteOptions& o) {
    return run_suite(3, "orthogonality", [&](std::vector<Check>& out) {
        const auto start = Clock::now();
        const auto g = gram_w(o.gram_n, o.quadrature);
        double diag = 0, off = 0;
        for (int n = 0; n <= o.gram_n; ++n) {
            const double f = factorial(n).get_d();
            for (int k = 0; k <= o.gram_n; ++k) {
                if (n == k) diag = std::max(diag, std::abs(g.values(n, n) - f * f) / (f * f));
                else off = std::max(off, std::abs(g.values(n, k)));
            }
        }
        out.push_back(below("gram diagonal relative error", diag, o.gram_diag_rel));
        out.push_back(below("gram off-diagonal absolute error", off, o.gram_offdiag_abs));

        double w = 0;
        for (double theta : {0.0, pi / 6, pi / 4, pi / 3})
            w = std::max(w, std::abs(weight_integral(theta, o.quadrature).value - 1 / std::cos(theta)));
        out.push_back(below("weight integral vs 1/cos(theta)", w, o.weight_tol));

        std::mt19937 rng(o.seed + 3);
        std::uniform_real_distribution<double> u(-0.9, 0.9);
        double ww = 0;
        for (int k = 0; k < o.ww_pairs; ++k) {
            const double s = u(rng), t = u(rng);
            ww = std::max(ww, std::abs(ww_generating_check(s, t, o.quadrature).value - 1 / (1 - s * t)));
        }
        out.push_back(below("W(x,s)W(x,t) integral vs 1/(1-st)", ww, o.ww_tol));
        out.push_back(timing("runtime", std::chrono::duration<double>(Clock::now() - start).count(),
                             o.orthogonality_seconds));
    });
}

SuiteResult suite_spectrum(const SuiteOptions& o) {
    return run_suite(4, "spectrum", [&](std::vector<Check>& out) {
        const UniformGrid grid = UniformGrid::symmetric(o.fd_half_width, o.fd_step);
        double res = 0;
        for (double lambda : {0.0, 0.5, 1.0, 1.5, 2.0, 2.5}) res = std::max(res, eigen_residual(lambda, grid));
        out.push_back(below("sup |(K - lambda) Psi_lambda|", res, o.residual_tol));

        std::mt19937 rng(o.seed + 4);
        std::uniform_real_distribution<double> u(-4, 4);
        double sinc = 0;
        for (int k = 0; k < o.sinc_pairs; ++k) {
            const double l = u(rng), m = u(rng);
            sinc = std::max(sinc, std::abs(inner_product(l, m, o.quadrature).value - sinc_inner_product(l, m)));
        }
        out.push_back(below("inner product vs sinc", sinc, o.sinc_tol));

        for (double gamma : {0.0, 0.5, 1.0, 1.5}) {
            const Eigen::MatrixXcd gm = gram_psi(gamma, o.psi_gram_n, o.quadrature);
            const double dev = (gm - Eigen::MatrixXcd::Identity(gm.rows(), gm.cols())).cwiseAbs().maxCoeff();
            std::ostringstream name;
            name << "Psi gram vs identity, gamma = " << gamma;
            out.push_back(below(name.str(), dev, o.psi_gram_tol));
        }
    });
}

SuiteResult suite_extensions(const SuiteOptions& o) {
    return run_suite(5, "extensions", [&](std::vector<Check>& out) {
        double arg = 0;
        for (double gamma : {0.0, 0.5, 1.0, 1.5}) {
            for (int n : {-2, 0, 1, 3}) {
                const cd ratio = extension_boundary_ratio(gamma + 2 * n);
                arg = std::max(arg, std::abs(wrap_angle(std::arg(ratio) - pi * gamma)));
                arg = std::max(arg, std::abs(std::abs(ratio) - 1));
            }
        }
        out.push_back(below("boundary ratio vs e^{i pi gamma}", arg, o.boundary_tol));

        const std::vector<TestFunction> bumps = {TestFunction::bump(0.0, 1.0), TestFunction::bump(0.5, 2.0, 1.5),
                                                 TestFunction::bump(-1.0, 1.5, -3.0)};
        double sym = 0;
        for (const auto& f : bumps)
            for (const auto& g : bumps) sym = std::max(sym, std::abs(symmetry_defect(f, g, -4, 4, o.quadrature).defect));
        out.push_back(below("symmetry defect on compact bumps", sym, o.symmetry_tol));
    });
}

SuiteResult suite_parseval(const SuiteOptions& o) {
    return run_suite(6, "parseval", [&](std::vector<Check>& out) {
        const ComplexFunction f = [](double p) { return cd(std::exp(-p * p), 0); };
        const auto rep = parseval_check(f, o.parseval_gamma, o.parseval_n, o.quadrature);
        out.push_back(below("|norm^2 - sqrt(pi/2)|", std::abs(rep.norm_sq - std::sqrt(pi / 2)), o.norm_tol));
        out.push_back(below("Parseval defect", std::abs(rep.defect), o.parseval_tol));
    });
}

SuiteResult suite_fourier(const SuiteOptions& o) {
    return run_suite(7, "fourier duality", [&](std::vector<Check>& out) {
        QuadratureSpec spec = o.quadrature;
        spec.truncation = std::max(spec.truncation, o.fourier_truncation);
        double ft = 0;
        for (int n = -3; n <= 3; ++n) {
            for (int k = 0; k < o.fourier_points; ++k) {
                const double x = -3 + 6.0 * k / (o.fourier_points - 1);
                ft = std::max(ft, std::abs(fourier_transform_num(n + 0.5, x, spec).value - phi_closed(n, x)));
            }
        }
        out.push_back(below("transform vs closed form", ft, o.fourier_tol));

        long inexact = 0;
        double value = 0;
        for (int n = -o.nonlocal_n - 1; n <= o.nonlocal_n; ++n) {
            for (double x : {-2.5, -0.75, 0.0, 0.5, 1.875}) {
                const auto a = apply_nonlocal_H(n, x);
                inexact += !a.exact_match;
                const double expected = (n + 0.5) * phi_closed(n, x);
                value = std::max(value, std::abs(a.value - expected) / (1 + std::abs(expected)));
            }
        }
        out.push_back(below("nonlocal H: inexact polynomial factors", double(inexact), 0));
        out.push_back(below("nonlocal H value vs (n+1/2) Phi", value, o.fourier_tol));

        double per = 0, res = 0, contour = 0;
        for (auto [x, t] : {std::pair{0.0, 0.0}, std::pair{0.7, 0.3}, std::pair{-1.1, -0.5}, std::pair{2.0, 0.8}}) {
            const auto r = residue_contour_check(x, t, o.contour_half_width, o.quadrature);
            per = std::max(per, r.periodicity_dev);
            res = std::max({res, std::abs(r.residue_numeric - r.residue_formula), r.pole_denominator});
            contour = std::max({contour, r.contour_identity_dev, r.generating_dev});
        }
        out.push_back(below("Psi(p + 2 pi i) = -Psi(p)", per, o.contour_tol));
        out.push_back(below("pole and residue", res, o.contour_tol));
        out.push_back(below("rectangle-contour identity", contour, o.contour_tol));
    });
}

SuiteResult suite_counterexample(const SuiteOptions& o) {
    return run_suite(8, "counterexample", [&](std::vector<Check>& out) {
        double dev = 0;
        std::vector<double> m;
        for (double p : {0.0, 1.0, 2.0}) {
            const auto r = shifted_counterexample(o.shift, p);
            dev = std::max({dev, std::abs(r.multiplier_fd - r.multiplier_expected),
                            std::abs(r.multiplier_exact - r.multiplier_expected)});
            m.push_back(r.multiplier_fd.real());
        }
        out.push_back(below("multiplier vs 1/2 + a cosh p", dev, o.multiplier_tol));
        out.push_back(above("multiplier spread over p", *std::max_element(m.begin(), m.end()) -
                                                            *std::min_element(m.begin(), m.end()),
                            o.multiplier_tol));
    });
}

SuiteResult suite_classical(const SuiteOptions& o) {
    return run_suite(9, "classical s-equivalence", [&](std::vector<Check>& out) {
        OdeSpec spec;
        spec.method = OdeMethod::Rk45Adaptive;
        spec.step = 1e-2;
        spec.abs_tol = o.flow_ode_tol;
        const auto rep = s_equivalence_report(Potential::oscillator(), 1.0, 0.0, 0.0, o.flow_t_end, spec);
        out.push_back(flag("window reaches t_end", !rep.truncated));
        out.push_back(below("max |x - x'|", rep.max_position_deviation, o.flow_position_tol));
        out.push_back(below("H drift", rep.standard_drift, o.flow_conservation_tol));
        out.push_back(below("H' drift", rep.alternative_drift, o.flow_conservation_tol));
        out.push_back(below("|H' - sqrt(2H)|", rep.max_sigma_deviation, o.flow_sigma_tol));
        out.push_back(flag("strip confinement", rep.strip_confined));
    });
}

SuiteResult suite_master(const SuiteOptions& o) {
    return run_suite(10, "master equation", [&](std::vector<Check>& out) {
        OdeSpec spec;
        spec.method = OdeMethod::Rk4Fixed;
        spec.step = o.master_step;
        struct Case {
            const char* label;
            Potential v;
            double x;
        };
        const std::vector<Case> cases = {{"x^2/2 at x = 0.5", Potential::oscillator(), 0.5},
                                         {"x^2/2 at x = 1", Potential::oscillator(), 1.0},
                                         {"x^2/2 at x = 2", Potential::oscillator(), 2.0},
                                         {"x^2/2 + 1 at x = 0", Potential::oscillator(1.0), 0.0}};
        for (const auto& c : cases) {
            MasterProblem prob;
            prob.potential = c.v;
            prob.x = c.x;
            prob.p_max = o.master_p_max;
            prob.grid = o.master_grid;
            const auto sol = solve_master(prob, spec);
            double sup = 0;
            for (const auto& s : sol.samples) sup = std::max(sup, std::abs(s.h - closed_form_hprime(c.v, c.x, s.p)));
            out.push_back(below(std::string("sup error, ") + c.label, sup, o.master_tol));
            out.push_back(below(std::string("|alpha|, ") + c.label, std::abs(sol.alpha_coeff), o.master_alpha_tol));
        }
    });
}

std::vector<SuiteResult> run_all_suites(const SuiteOptions& o, bool parallel) {
    using Fn = SuiteResult (*)(const SuiteOptions&);
    const Fn suites[] = {suite_polynomials, suite_eigen_identity, suite_orthogonality, suite_spectrum,
                         suite_extensions,  suite_parseval,       suite_fourier,       suite_counterexample,
                         suite_classical,   suite_master};
    std::vector<SuiteResult> out;
    if (!parallel) {
        for (Fn f : suites) out.push_back(f(o));
        return out;
    }
    // Warm the shared W cache first so concurrent suites only read it.
    w_poly(std::max({o.recurrence_n, o.eigen_n, o.gram_n, o.nonlocal_n}) + 1);
    std::vector<std::future<SuiteResult>> jobs;
    for (Fn f : suites) jobs.push_back(std::async(std::launch::async, f, std::cref(o)));
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

Table suites_table(const std::vector<SuiteResult>& results) {
    Table t{{"suite", "title", "check", "measured", "tolerance", "passed"}, {}};
    for (const auto& r : results) {
        for (const auto& c : r.checks) {
            const Cell measured = c.timing ? Cell(std::string()) : Cell(c.measured);
            t.add_row({long(r.id), r.title, c.name, measured, c.tolerance, c.passed});
        }
    }
    return t;
}

}  // namespace sequiv
