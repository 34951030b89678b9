#include "sequiv/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sequiv {

Potential Potential::oscillator(double a) {
    return Potential{[](double x) { return 0.5 * x * x; }, [](double x) { return x; }, a};
}

Potential Potential::constant(double c) {
    return Potential{[c](double) { return c; }, [](double) { return 0.0; }, 0.0};
}

std::string to_string(ModelKind kind) { return kind == ModelKind::Standard ? "standard" : "alternative"; }

namespace {

double branch_sign(const HamiltonianModel& m) { return m.branch == RootBranch::Plus ? 1.0 : -1.0; }

double root_two_v(const Potential& v, double x, const char* who) {
    const double vx = v(x);
    if (vx < 0) {
        std::ostringstream os;
        os << who << ": V(" << x << ") = " << vx << " is negative";
        throw DomainError(os.str());
    }
    return std::sqrt(2.0 * vx);
}

}  // namespace

double eval_hamiltonian(const HamiltonianModel& model, double x, double momentum) {
    if (model.kind == ModelKind::Standard) return 0.5 * momentum * momentum + model.potential(x);
    return branch_sign(model) * root_two_v(model.potential, x, "eval_hamiltonian") * std::cosh(momentum);
}

State2 hamilton_rhs(const HamiltonianModel& model, double x, double momentum) {
    if (model.kind == ModelKind::Standard) return {momentum, -model.potential.deriv(x)};
    const double s = root_two_v(model.potential, x, "hamilton_rhs");
    if (s == 0) throw DomainError("hamilton_rhs: alternative vector field is singular where V(x) = 0");
    const double sign = branch_sign(model);
    return {sign * s * std::sinh(momentum), -sign * model.potential.deriv(x) / s * std::cosh(momentum)};
}

double PhaseTrajectory::max_conservation_drift() const {
    double worst = 0;
    for (const auto& s : samples) worst = std::max(worst, std::abs(s.conserved - b));
    return worst;
}

PhaseTrajectory integrate_flow(const HamiltonianModel& model, double x0, double momentum0, double t0, double t1,
                               const OdeSpec& spec, const FlowOptions& options) {
    PhaseTrajectory out;
    out.kind = model.kind;
    out.b = eval_hamiltonian(model, x0, momentum0);
    const bool alternative = model.kind == ModelKind::Alternative;
    if (alternative && std::sqrt(2.0 * model.potential(x0)) <= options.strip_epsilon) {
        throw DomainError("integrate_flow: initial state sits on the V = 0 singularity");
    }

    const VectorField2 rhs = [&model, alternative](double, const State2& y) -> State2 {
        if (alternative && !(model.potential(y[0]) > 0)) {
            const double nan = std::numeric_limits<double>::quiet_NaN();
            return {nan, nan};
        }
        return hamilton_rhs(model, y[0], y[1]);
    };
    std::function<bool(double, const State2&)> stop;
    if (alternative) {
        stop = [&](double, const State2& y) {
            const double vx = model.potential(y[0]);
            return !(vx > 0) || std::sqrt(2.0 * vx) <= options.strip_epsilon;
        };
    }

    const OdePath path = ode_integrate(rhs, State2(x0, momentum0), t0, t1, spec, stop);
    out.samples.reserve(path.t.size());
    for (std::size_t k = 0; k < path.t.size(); ++k) {
        const double x = path.y[k][0];
        const double m = path.y[k][1];
        out.samples.push_back({path.t[k], x, m, eval_hamiltonian(model, x, m)});
    }
    out.status = path.status == PathStatus::Completed ? TrajectoryStatus::Completed : TrajectoryStatus::SingularityStop;
    out.t_valid_end = out.samples.empty() ? t0 : out.samples.back().t;
    return out;
}

double alternative_momentum(const Potential& v, double x, double xdot) {
    const double vx = v(x);
    if (!(vx > 0)) throw DomainError("alternative_momentum: requires V(x) > 0");
    return std::asinh(xdot / std::sqrt(2.0 * vx));
}

SEquivalenceReport s_equivalence_report(const Potential& v, double x0, double v0, double t0, double t1,
                                        const OdeSpec& spec, const FlowOptions& options) {
    SEquivalenceReport r;
    const double p_alt = alternative_momentum(v, x0, v0);
    r.standard = integrate_flow(HamiltonianModel::standard(v), x0, v0, t0, t1, spec, options);
    r.alternative = integrate_flow(HamiltonianModel::alternative(v), x0, p_alt, t0, t1, spec, options);

    const std::size_t n = std::min(r.standard.samples.size(), r.alternative.samples.size());
    r.truncated = r.standard.status != TrajectoryStatus::Completed ||
                  r.alternative.status != TrajectoryStatus::Completed;
    r.window_end = n > 0 ? r.standard.samples[n - 1].t : t0;
    r.standard_drift = r.standard.max_conservation_drift();
    r.alternative_drift = r.alternative.max_conservation_drift();

    const double b = r.alternative.b;
    for (std::size_t k = 0; k < n; ++k) {
        const auto& s = r.standard.samples[k];
        const auto& a = r.alternative.samples[k];
        r.max_position_deviation = std::max(r.max_position_deviation, std::abs(s.x - a.x));
        r.max_sigma_deviation = std::max(r.max_sigma_deviation, std::abs(a.conserved - std::sqrt(2.0 * s.conserved)));
    }
    for (const auto& a : r.alternative.samples) {
        const double s = std::sqrt(2.0 * v(a.x));
        if (!(s > 0) || s > b * (1 + 1e-12) + 1e-12) r.strip_confined = false;
    }
    return r;
}

LagrangianPrime lagrangian_prime(const Potential& v, double x, double xdot) {
    const double vx = v(x);
    if (!(vx > 0)) throw DomainError("lagrangian_prime: requires V(x) > 0");
    const double s = std::sqrt(2.0 * vx);
    const double pp = std::asinh(xdot / s);
    const double value = xdot * pp - std::hypot(xdot, s);
    return {value, pp, xdot * pp - value};
}

MomentumRelationReport momentum_relation_check(const Potential& v, const std::vector<double>& xs,
                                               const std::vector<double>& ps) {
    MomentumRelationReport r;
    for (double x : xs) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (double p : ps) {
            const double d = alternative_momentum(v, x, p) - p;
            lo = std::min(lo, d);
            hi = std::max(hi, d);
        }
        const double spread = ps.empty() ? 0.0 : hi - lo;
        r.spread_per_x.push_back(spread);
        r.max_spread = std::max(r.max_spread, spread);
    }
    return r;
}

}  // namespace sequiv
