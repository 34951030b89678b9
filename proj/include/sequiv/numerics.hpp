#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <queue>
#include <sstream>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "sequiv/errors.hpp"

namespace sequiv {

namespace detail {
template <typename T>
struct real_of {
    using type = T;
};
template <typename T>
struct real_of<std::complex<T>> {
    using type = T;
};
}  // namespace detail

template <typename T>
using real_of_t = typename detail::real_of<T>::type;

enum class QuadratureScheme {
    /// Map the real line onto (-pi, pi) with sinh p = tan(theta/2), then integrate in theta.
    TransformedCompact,
    /// Cut the real line at |p| = truncation and integrate adaptively.
    TruncatedAdaptive,
};

struct QuadratureSpec {
    QuadratureScheme scheme = QuadratureScheme::TruncatedAdaptive;
    double truncation = 40.0;
    double abs_tol = 1e-10;
    int max_subdivisions = 2000;

    void validate() const;
};

template <typename Value>
struct QuadResult {
    Value value{};
    real_of_t<Value> err_estimate{};
};

enum class OdeMethod { Rk4Fixed, Rk45Adaptive };

struct OdeSpec {
    OdeMethod method = OdeMethod::Rk45Adaptive;
    /// Step for rk4-fixed; sample spacing (and initial step) for rk45-adaptive.
    double step = 1e-3;
    double abs_tol = 1e-8;

    void validate() const;
};

using State2 = Eigen::Vector2d;
using VectorField2 = std::function<State2(double t, const State2& y)>;

enum class PathStatus { Completed, Stopped, StepFailure };

struct OdePath {
    std::vector<double> t;
    std::vector<State2> y;
    PathStatus status = PathStatus::Completed;
};

namespace detail {

// Gauss-Kronrod 7/15 abscissae and weights on [-1, 1].
inline constexpr long double kXgk[8] = {
    0.991455371120812639206854697526329L, 0.949107912342758524526189684047851L,
    0.864864423359769072789712788640926L, 0.741531185599394439863864773280788L,
    0.586087235467691130294144845693013L, 0.405845151377397166906606412076961L,
    0.207784955007898467600689403773245L, 0.000000000000000000000000000000000L};
inline constexpr long double kWgk[8] = {
    0.022935322010529224963732008058970L, 0.063092092629978553290700663189204L,
    0.104790010322250183839876322541518L, 0.140653259715525918745189590510238L,
    0.169004726639267902826583426598550L, 0.190350578064785409913256402421014L,
    0.204432940075298892414161999234649L, 0.209482141084727828012999174891714L};
inline constexpr long double kWg[4] = {
    0.129484966168869693270611432679082L, 0.279705391489276667901467771423780L,
    0.381830050505118944950369775488975L, 0.417959183673469387755102040816327L};

template <typename Value>
bool is_finite_value(const Value& v) {
    if constexpr (std::is_arithmetic_v<Value>) {
        return std::isfinite(v);
    } else {
        return std::isfinite(v.real()) && std::isfinite(v.imag());
    }
}

template <typename Real, typename Value>
struct Panel {
    Real a, b;
    Value value;
    Real err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

template <typename Real, typename F>
auto gk15_panel(F& f, Real a, Real b) {
    using Value = std::invoke_result_t<F&, Real>;
    const Real c = (a + b) / 2;
    const Real h = (b - a) / 2;
    auto sample = [&](Real x) {
        Value v = f(x);
        if (!is_finite_value(v)) {
            std::ostringstream os;
            os << "integrand is not finite at x = " << static_cast<double>(x);
            throw NonFiniteSample(os.str(), static_cast<double>(x));
        }
        return v;
    };
    const Value fc = sample(c);
    Value resk = fc * static_cast<Real>(kWgk[7]);
    Value resg = fc * static_cast<Real>(kWg[3]);
    for (int j = 0; j < 7; ++j) {
        const Real dx = h * static_cast<Real>(kXgk[j]);
        const Value pair = sample(c - dx) + sample(c + dx);
        resk += pair * static_cast<Real>(kWgk[j]);
        if (j % 2 == 1) resg += pair * static_cast<Real>(kWg[j / 2]);
    }
    using std::abs;
    return Panel<Real, Value>{a, b, resk * h, abs(resk - resg) * abs(h)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod 7/15 on [a, b] with an absolute error target.
///
/// The interval starts split into `initial_panels` equal pieces; the panel with
/// the largest |K15 - G7| is bisected until the summed estimate drops below
/// `abs_tol`. Throws ToleranceNotMet once `max_subdivisions` panels exist.
template <typename Real, typename F>
auto gauss_kronrod(F&& f, Real a, Real b, Real abs_tol, int max_subdivisions, int initial_panels = 1)
    -> QuadResult<std::invoke_result_t<F&, Real>> {
    using Value = std::invoke_result_t<F&, Real>;
    using PanelT = detail::Panel<Real, Value>;

    std::priority_queue<PanelT> queue;
    const int n0 = std::max(1, initial_panels);
    for (int i = 0; i < n0; ++i) {
        const Real lo = a + (b - a) * Real(i) / Real(n0);
        const Real hi = (i + 1 == n0) ? b : a + (b - a) * Real(i + 1) / Real(n0);
        queue.push(detail::gk15_panel<Real>(f, lo, hi));
    }
    auto totals = [&queue]() {
        // Deterministic re-summation in abscissa order.
        std::vector<PanelT> all;
        auto copy = queue;
        while (!copy.empty()) {
            all.push_back(copy.top());
            copy.pop();
        }
        std::sort(all.begin(), all.end(), [](const PanelT& l, const PanelT& r) { return l.a < r.a; });
        QuadResult<Value> out{};
        for (const auto& p : all) {
            out.value += p.value;
            out.err_estimate += p.err;
        }
        return out;
    };

    Real err_sum = 0;
    {
        auto copy = queue;
        while (!copy.empty()) {
            err_sum += copy.top().err;
            copy.pop();
        }
    }
    while (err_sum > abs_tol) {
        if (static_cast<int>(queue.size()) >= max_subdivisions) {
            auto best = totals();
            std::ostringstream os;
            os << "quadrature tolerance " << static_cast<double>(abs_tol) << " not met after "
               << queue.size() << " panels (estimate " << static_cast<double>(best.err_estimate) << ")";
            throw ToleranceNotMet(os.str(), std::complex<double>(best.value),
                                  static_cast<double>(best.err_estimate));
        }
        PanelT worst = queue.top();
        queue.pop();
        const Real mid = (worst.a + worst.b) / 2;
        if (!(mid > worst.a && mid < worst.b)) {
            // Panel cannot be split further in this precision.
            auto best = totals();
            throw ToleranceNotMet("quadrature panel width reached machine resolution",
                                  std::complex<double>(best.value), static_cast<double>(best.err_estimate));
        }
        PanelT left = detail::gk15_panel<Real>(f, worst.a, mid);
        PanelT right = detail::gk15_panel<Real>(f, mid, worst.b);
        err_sum += left.err + right.err - worst.err;
        queue.push(left);
        queue.push(right);
        if (err_sum <= abs_tol) {
            // Guard against drift in the running sum.
            err_sum = totals().err_estimate;
        }
    }
    return totals();
}

/// Integral of a function decaying at least exponentially on the real line.
///
/// TruncatedAdaptive integrates over [-truncation, truncation]. TransformedCompact
/// substitutes sinh p = tan(theta/2), dp = d theta / (2 cos(theta/2)) and hands the
/// result to integrate_theta.
template <typename Real = double, typename F>
auto integrate_real_line(F&& f, const QuadratureSpec& spec)
    -> QuadResult<std::invoke_result_t<F&, Real>>;

/// Integral over [-pi, pi] of a function that may carry an integrable
/// (cos(theta/2))^(-1/2) singularity at the endpoints. A double-exponential
/// change of variables theta = pi tanh((pi/2) sinh u) clusters nodes near
/// the endpoints; the endpoints themselves are never sampled.
template <typename Real = double, typename G>
auto integrate_theta(G&& g, const QuadratureSpec& spec) -> QuadResult<std::invoke_result_t<G&, Real>> {
    spec.validate();
    using Value = std::invoke_result_t<G&, Real>;
    const Real pi = std::numbers::pi_v<Real>;
    const Real half_pi = pi / 2;
    auto mapped = [&](Real u) -> Value {
        using std::cosh;
        using std::sinh;
        using std::tanh;
        const Real s = half_pi * sinh(u);
        const Real theta = pi * tanh(s);
        if (!(theta > -pi && theta < pi)) return Value{};
        const Real ch = cosh(s);
        const Real jac = pi * half_pi * cosh(u) / (ch * ch);
        if (jac == Real(0)) return Value{};
        return g(theta) * jac;
    };
    // Beyond |u| = 3.2 the Jacobian is below 1e-16 and theta rounds to +-pi.
    const Real u_max = Real(3.2);
    return gauss_kronrod<Real>(mapped, -u_max, u_max, static_cast<Real>(spec.abs_tol),
                               spec.max_subdivisions, 16);
}

template <typename Real, typename F>
auto integrate_real_line(F&& f, const QuadratureSpec& spec) -> QuadResult<std::invoke_result_t<F&, Real>> {
    spec.validate();
    using Value = std::invoke_result_t<F&, Real>;
    if (spec.scheme == QuadratureScheme::TransformedCompact) {
        auto in_theta = [&](Real theta) -> Value {
            using std::asinh;
            using std::cos;
            using std::tan;
            const Real half = theta / 2;
            const Real p = asinh(tan(half));
            return f(p) / (2 * cos(half));
        };
        return integrate_theta<Real>(in_theta, spec);
    }
    const Real t = static_cast<Real>(spec.truncation);
    return gauss_kronrod<Real>(f, -t, t, static_cast<Real>(spec.abs_tol), spec.max_subdivisions, 32);
}

/// Integral over a finite interval using the QuadratureSpec tolerance and budget.
template <typename Real = double, typename F>
auto integrate_interval(F&& f, Real a, Real b, const QuadratureSpec& spec)
    -> QuadResult<std::invoke_result_t<F&, Real>> {
    spec.validate();
    return gauss_kronrod<Real>(f, a, b, static_cast<Real>(spec.abs_tol), spec.max_subdivisions, 8);
}

/// Integrates y' = rhs(t, y) on [t0, t1] (t1 >= t0). Samples are taken at
/// t0 + k*step and at t1. Throws StepFailure if the adaptive controller
/// underflows or the state leaves the finite range.
OdePath ode_solve(const VectorField2& rhs, const State2& y0, double t0, double t1, const OdeSpec& spec);

/// Like ode_solve, but never throws on step failure: integration ends early with
/// status StepFailure (or Stopped when `stop` returns true for an accepted sample),
/// keeping every sample accepted so far. The sample that triggered `stop` is not kept.
OdePath ode_integrate(const VectorField2& rhs, const State2& y0, double t0, double t1, const OdeSpec& spec,
                      const std::function<bool(double, const State2&)>& stop = {});

}  // namespace sequiv
