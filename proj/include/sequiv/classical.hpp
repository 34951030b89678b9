#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sequiv/numerics.hpp"

namespace sequiv {

/// Potential V(x) with its derivative and an optional additive constant `shift`
/// (the regularisation V + a that lifts the zero of the oscillator potential).
struct Potential {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    double shift = 0.0;

    double operator()(double x) const { return value(x) + shift; }
    double deriv(double x) const { return derivative(x); }

    /// V = x^2/2 + a.
    static Potential oscillator(double a = 0.0);
    /// V = c (constant).
    static Potential constant(double c);
};

enum class ModelKind { Standard, Alternative };

/// Sign in front of sqrt(2V) for the alternative Hamiltonian. Only Plus is the
/// model developed in full; Minus is available for experimentation.
enum class RootBranch { Plus, Minus };

struct HamiltonianModel {
    ModelKind kind = ModelKind::Standard;
    Potential potential = Potential::oscillator();
    RootBranch branch = RootBranch::Plus;

    static HamiltonianModel standard(Potential v) { return {ModelKind::Standard, std::move(v)}; }
    static HamiltonianModel alternative(Potential v, RootBranch b = RootBranch::Plus) {
        return {ModelKind::Alternative, std::move(v), b};
    }
};

/// H = p^2/2 + V(x) (Standard) or H' = sqrt(2V(x)) cosh p' (Alternative).
/// Throws DomainError for the Alternative model where V(x) < 0.
double eval_hamiltonian(const HamiltonianModel& model, double x, double momentum);

/// (dx/dt, dmomentum/dt) from Hamilton's equations. For the Alternative model
/// xdot = sqrt(2V) sinh p', p'dot = -V'/sqrt(2V) cosh p', which needs V(x) > 0.
State2 hamilton_rhs(const HamiltonianModel& model, double x, double momentum);

struct PhaseSample {
    double t;
    double x;
    double momentum;
    double conserved;
};

enum class TrajectoryStatus { Completed, SingularityStop };

struct PhaseTrajectory {
    ModelKind kind = ModelKind::Standard;
    std::vector<PhaseSample> samples;
    /// Value of the model's Hamiltonian at the initial state.
    double b = 0.0;
    TrajectoryStatus status = TrajectoryStatus::Completed;
    /// End of the window on which samples are valid.
    double t_valid_end = 0.0;

    double max_conservation_drift() const;
};

struct FlowOptions {
    /// Alternative model stops once sqrt(2V(x)) falls to this value.
    double strip_epsilon = 1e-8;
};

/// Integrates Hamilton's equations from (x0, momentum0) over [t0, t1]. For the
/// Alternative model the run halts before sqrt(2V) reaches zero (or when the step
/// controller underflows) and reports SingularityStop with the last valid time.
PhaseTrajectory integrate_flow(const HamiltonianModel& model, double x0, double momentum0, double t0, double t1,
                               const OdeSpec& spec, const FlowOptions& options = {});

/// Velocity to alternative momentum: p' = arcsinh(xdot / sqrt(2V(x))). Requires V(x) > 0.
double alternative_momentum(const Potential& v, double x, double xdot);

struct SEquivalenceReport {
    PhaseTrajectory standard;
    PhaseTrajectory alternative;
    /// Upper end of the window on which both flows are valid.
    double window_end = 0.0;
    bool truncated = false;
    double max_position_deviation = 0.0;
    double standard_drift = 0.0;
    double alternative_drift = 0.0;
    /// max |H'(alternative state) - sqrt(2 H(standard state))| at matched times.
    double max_sigma_deviation = 0.0;
    /// Every alternative sample satisfies 0 < sqrt(2V(x)) <= b up to 1e-12 (0 < x <= b for the oscillator).
    bool strip_confined = true;
};

/// Runs both models from matched data (standard from (x0, v0), alternative from
/// (x0, arcsinh(v0/sqrt(2V(x0))))) on a common sample grid and compares them.
SEquivalenceReport s_equivalence_report(const Potential& v, double x0, double v0, double t0, double t1,
                                        const OdeSpec& spec, const FlowOptions& options = {});

struct LagrangianPrime {
    double value;      ///< L' = xdot arcsinh(xdot/s) - sqrt(xdot^2 + s^2), s = sqrt(2V)
    double momentum;   ///< p' = dL'/dxdot = arcsinh(xdot/s)
    double legendre;   ///< xdot p' - L', equal to s cosh p'
};

LagrangianPrime lagrangian_prime(const Potential& v, double x, double xdot);

struct MomentumRelationReport {
    /// For each x: max_p (p' - p) - min_p (p' - p).
    std::vector<double> spread_per_x;
    double max_spread = 0.0;
};

/// Evaluates p'(x, p) - p on an (x, p) grid with p' = arcsinh(p/sqrt(2V(x))). A
/// positive spread at fixed x shows p' - p is not a function of x alone.
MomentumRelationReport momentum_relation_check(const Potential& v, const std::vector<double>& xs,
                                               const std::vector<double>& ps);

std::string to_string(ModelKind kind);

}  // namespace sequiv
