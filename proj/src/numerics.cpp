#include "sequiv/numerics.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include <boost/numeric/odeint.hpp>

namespace sequiv {

namespace odeint = boost::numeric::odeint;

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0)) throw DomainError("QuadratureSpec: abs_tol must be positive");
    if (!(truncation > 0)) throw DomainError("QuadratureSpec: truncation must be positive");
    if (max_subdivisions < 1) throw DomainError("QuadratureSpec: max_subdivisions must be positive");
}

void OdeSpec::validate() const {
    if (!(step > 0)) throw DomainError("OdeSpec: step must be positive");
    if (!(abs_tol > 0)) throw DomainError("OdeSpec: abs_tol must be positive");
}

namespace {

using Raw = std::array<double, 2>;

State2 to_eigen(const Raw& r) { return State2(r[0], r[1]); }

bool finite(const Raw& r) { return std::isfinite(r[0]) && std::isfinite(r[1]); }

// Records a sample; returns false if the caller asked to stop.
struct Recorder {
    OdePath& path;
    const std::function<bool(double, const State2&)>& stop;

    bool operator()(double t, const Raw& y) {
        const State2 s = to_eigen(y);
        if (!finite(y)) {
            path.status = PathStatus::StepFailure;
            return false;
        }
        if (stop && stop(t, s)) {
            path.status = PathStatus::Stopped;
            return false;
        }
        path.t.push_back(t);
        path.y.push_back(s);
        return true;
    }
};

}  // namespace

OdePath ode_integrate(const VectorField2& rhs, const State2& y0, double t0, double t1, const OdeSpec& spec,
                      const std::function<bool(double, const State2&)>& stop) {
    spec.validate();
    if (!(t1 >= t0)) throw DomainError("ode_integrate: t_span must satisfy t1 >= t0");

    auto system = [&rhs](const Raw& y, Raw& dydt, double t) {
        const State2 d = rhs(t, to_eigen(y));
        dydt = {d[0], d[1]};
    };

    OdePath path;
    Recorder record{path, stop};
    Raw y{y0[0], y0[1]};
    if (!record(t0, y) || t1 == t0) return path;

    // Sample times t0 + k*step; the last interval is shortened to land on t1.
    const auto n_full = static_cast<long>(std::floor((t1 - t0) / spec.step * (1 + 1e-14)));
    std::vector<double> times;
    times.reserve(n_full + 2);
    for (long k = 1; k <= n_full; ++k) times.push_back(t0 + k * spec.step);
    if (times.empty() || t1 - times.back() > 1e-12 * std::max(1.0, std::abs(t1))) {
        times.push_back(t1);
    } else {
        times.back() = t1;
    }

    if (spec.method == OdeMethod::Rk4Fixed) {
        odeint::runge_kutta4<Raw> stepper;
        double t = t0;
        for (double next : times) {
            stepper.do_step(system, y, t, next - t);
            t = next;
            if (!record(t, y)) return path;
        }
        return path;
    }

    auto dense = odeint::make_dense_output(spec.abs_tol, spec.abs_tol, odeint::runge_kutta_dopri5<Raw>());
    dense.initialize(y, t0, spec.step);
    std::size_t next = 0;
    const double dt_floor = 1e-12;
    while (next < times.size()) {
        std::pair<double, double> span;
        try {
            span = dense.do_step(system);
        } catch (const odeint::step_adjustment_error&) {
            path.status = PathStatus::StepFailure;
            return path;
        }
        if (!finite(dense.current_state())) {
            path.status = PathStatus::StepFailure;
            return path;
        }
        while (next < times.size() && times[next] <= span.second) {
            Raw ys;
            dense.calc_state(times[next], ys);
            if (!record(times[next], ys)) return path;
            ++next;
        }
        if (next < times.size() && dense.current_time_step() < dt_floor * std::max(1.0, std::abs(span.second))) {
            path.status = PathStatus::StepFailure;
            return path;
        }
    }
    return path;
}

OdePath ode_solve(const VectorField2& rhs, const State2& y0, double t0, double t1, const OdeSpec& spec) {
    OdePath path = ode_integrate(rhs, y0, t0, t1, spec);
    if (path.status == PathStatus::StepFailure) {
        std::ostringstream os;
        os << "ode step controller failed near t = " << path.t.back();
        throw StepFailure(os.str(), path.t.back());
    }
    return path;
}

}  // namespace sequiv
