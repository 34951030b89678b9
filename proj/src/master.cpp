#include "sequiv/master.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sequiv {

SinhCoshFit fit_sinh_cosh(double p0, double value, double slope) {
    // [sinh cosh; cosh sinh] [alpha; beta] = [value; slope], determinant -1.
    const double s = std::sinh(p0);
    const double c = std::cosh(p0);
    return {c * slope - s * value, c * value - s * slope};
}

double closed_form_hprime(const Potential& v, double x, double p) {
    const double vx = v(x);
    if (vx < 0) throw DomainError("closed_form_hprime: V(x) is negative");
    return std::sqrt(2.0 * vx) * std::cosh(p);
}

namespace {

// Samples of y'' = y on [0, p_max] at spacing h, starting from (y0, dy0).
std::vector<State2> half_line(double y0, double dy0, double p_max, double h, int count, const OdeSpec& spec) {
    OdeSpec inner = spec;
    int stride = 1;
    if (spec.method == OdeMethod::Rk4Fixed) {
        stride = std::max(1, static_cast<int>(std::ceil(h / spec.step - 1e-9)));
        inner.step = h / stride;
    } else {
        inner.step = h;
    }
    const VectorField2 rhs = [](double, const State2& y) { return State2(y[1], y[0]); };
    const OdePath path = ode_solve(rhs, State2(y0, dy0), 0.0, p_max, inner);
    std::vector<State2> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        const std::size_t idx = std::min(path.y.size() - 1, static_cast<std::size_t>(k) * stride);
        out.push_back(path.y[idx]);
    }
    return out;
}

}  // namespace

MasterSolution solve_master(const MasterProblem& problem, const OdeSpec& spec) {
    spec.validate();
    if (!(problem.p_max > 0)) throw DomainError("solve_master: p_max must be positive");
    if (problem.grid < 3 || problem.grid % 2 == 0) throw DomainError("solve_master: grid must be odd and >= 3");
    const double vx = problem.potential(problem.x);
    if (!(vx > 0)) throw DomainError("solve_master: requires V(x) > 0");

    const double h0 = std::sqrt(2.0 * vx);
    const int half = problem.grid / 2;
    const double h = problem.p_max / half;

    const auto forward = half_line(h0, problem.initial_slope, problem.p_max, h, half + 1, spec);
    // H(-q) = Y(q) with Y'' = Y, Y(0) = H(0), Y'(0) = -H'(0).
    const auto backward = half_line(h0, -problem.initial_slope, problem.p_max, h, half + 1, spec);

    MasterSolution sol;
    sol.samples.reserve(problem.grid);
    for (int k = half; k >= 1; --k) sol.samples.push_back({-k * h, backward[k][0], -backward[k][1]});
    for (int k = 0; k <= half; ++k) sol.samples.push_back({k * h, forward[k][0], forward[k][1]});

    const MasterSample& origin = sol.samples[half];
    const SinhCoshFit fit = fit_sinh_cosh(origin.p, origin.h, origin.dh);
    sol.alpha_coeff = fit.alpha;
    sol.beta_coeff = fit.beta;
    return sol;
}

double master_residual_general(const std::vector<MasterSample>& samples, const SigmaSlope& slope, double lxx,
                               double eps) {
    if (samples.size() < 7) throw DomainError("master_residual_general: need at least 7 samples");
    const double h = samples[1].p - samples[0].p;
    static constexpr double c[4] = {-49.0 / 18.0, 3.0 / 2.0, -3.0 / 20.0, 1.0 / 90.0};
    double worst = 0;
    for (std::size_t k = 3; k + 3 < samples.size(); ++k) {
        const double hp = samples[k].h;
        if (std::abs(hp) < eps) {
            std::ostringstream os;
            os << "master_residual_general: H' = " << hp << " at p' = " << samples[k].p;
            throw DivisionNearZero(os.str());
        }
        double d2 = c[0] * hp;
        for (int j = 1; j <= 3; ++j) d2 += c[j] * (samples[k + j].h + samples[k - j].h);
        d2 /= h * h;
        const double ds = slope ? slope(hp) : 1.0 / hp;
        worst = std::max(worst, std::abs(d2 * ds * lxx - 1.0));
    }
    return worst;
}

EulerLagrangeReport euler_lagrange_proportionality(const Potential& v, const std::vector<double>& t,
                                                   const std::vector<double>& x) {
    if (t.size() != x.size() || t.size() < 5) throw DomainError("euler_lagrange_proportionality: need >= 5 samples");
    const double dt = t[1] - t[0];
    EulerLagrangeReport r;

    auto lp = [&v](double xx, double vv) { return lagrangian_prime(v, xx, vv).value; };
    for (std::size_t k = 2; k + 2 < x.size(); ++k) {
        const double xd = (-x[k + 2] + 8 * x[k + 1] - 8 * x[k - 1] + x[k - 2]) / (12 * dt);
        const double xdd = (-x[k + 2] + 16 * x[k + 1] - 30 * x[k] + 16 * x[k - 1] - x[k - 2]) / (12 * dt * dt);
        const double xk = x[k];

        const double el = -v.deriv(xk) - xdd;

        const double hx = 1e-5 * std::max(1.0, std::abs(xk));
        const double hv = 1e-4 * std::max(1.0, std::abs(xd));
        const double l_x = (lp(xk + hx, xd) - lp(xk - hx, xd)) / (2 * hx);
        const double l_vx = (lp(xk + hx, xd + hv) - lp(xk + hx, xd - hv) - lp(xk - hx, xd + hv) +
                             lp(xk - hx, xd - hv)) /
                            (4 * hx * hv);
        const double l_vv = (lp(xk, xd + hv) - 2 * lp(xk, xd) + lp(xk, xd - hv)) / (hv * hv);
        const double el_prime = l_x - xd * l_vx - xdd * l_vv;

        r.max_el = std::max(r.max_el, std::abs(el));
        r.max_el_prime = std::max(r.max_el_prime, std::abs(el_prime));
        if (std::abs(el) > 1e-6) {
            const double factor = 1.0 / std::sqrt(2.0 * (0.5 * xd * xd + v(xk)));
            r.max_ratio_rel_dev = std::max(r.max_ratio_rel_dev, std::abs(el_prime / el - factor) / factor);
            ++r.ratio_samples;
        }
    }
    return r;
}

EulerLagrangeReport euler_lagrange_proportionality(const Potential& v, const PhaseTrajectory& trajectory) {
    std::vector<double> t;
    std::vector<double> x;
    for (const auto& s : trajectory.samples) {
        t.push_back(s.t);
        x.push_back(s.x);
    }
    // the final sample lands on t1 or the stop time, off the uniform grid
    if (t.size() >= 3) {
        const double h = t[1] - t[0];
        if (std::abs((t.back() - t[t.size() - 2]) - h) > 1e-9 * std::abs(h)) {
            t.pop_back();
            x.pop_back();
        }
    }
    return euler_lagrange_proportionality(v, t, x);
}

}  // namespace sequiv
