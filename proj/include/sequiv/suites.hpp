#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sequiv/io.hpp"

namespace sequiv {

/// One measured quantity against its threshold.
struct Check {
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    /// Wall-clock checks are reported but kept out of the deterministic tables.
    bool timing = false;
    /// Passes when measured exceeds tolerance instead of staying below it.
    bool lower_bound = false;
};

struct SuiteResult {
    int id = 0;
    std::string title;
    std::vector<Check> checks;
    double seconds = 0.0;
    bool passed() const;
    /// Largest measured/tolerance (tolerance/measured for lower bounds) over non-timing checks.
    double worst_ratio() const;
};

/// Thresholds and sizes for the verification suites. Defaults are the acceptance values.
struct SuiteOptions {
    std::uint32_t seed = 20261018;

    int recurrence_n = 30;
    int eigen_n = 30;
    int random_polys = 100;
    int random_degree = 12;
    double poly_seconds = 1.0;

    int gram_n = 8;
    double gram_diag_rel = 1e-8;
    double gram_offdiag_abs = 1e-8;
    double weight_tol = 1e-10;
    double ww_tol = 1e-8;
    int ww_pairs = 10;
    double orthogonality_seconds = 10.0;

    double fd_step = 1e-3;
    double fd_half_width = 10.0;
    double residual_tol = 1e-6;
    double sinc_tol = 1e-8;
    int sinc_pairs = 20;
    int psi_gram_n = 8;
    double psi_gram_tol = 1e-8;

    double boundary_tol = 1e-8;
    double symmetry_tol = 1e-8;

    int parseval_n = 64;
    double parseval_gamma = 0.5;
    double parseval_tol = 1e-6;
    double norm_tol = 1e-10;

    double fourier_tol = 1e-8;
    int fourier_points = 25;
    double fourier_truncation = 60.0;
    int nonlocal_n = 20;
    double contour_tol = 1e-8;
    double contour_half_width = 60.0;

    double shift = 1.0;
    double multiplier_tol = 1e-6;

    double flow_t_end = 1.4;
    double flow_position_tol = 1e-6;
    double flow_conservation_tol = 1e-8;
    double flow_sigma_tol = 1e-8;
    double flow_ode_tol = 1e-12;

    double master_p_max = 5.0;
    int master_grid = 1001;
    double master_step = 1e-3;
    double master_tol = 1e-6;
    double master_alpha_tol = 1e-10;

    QuadratureSpec quadrature{};
};

SuiteResult suite_polynomials(const SuiteOptions& o);
SuiteResult suite_eigen_identity(const SuiteOptions& o);
SuiteResult suite_orthogonality(const SuiteOptions& o);
SuiteResult suite_spectrum(const SuiteOptions& o);
SuiteResult suite_extensions(const SuiteOptions& o);
SuiteResult suite_parseval(const SuiteOptions& o);
SuiteResult suite_fourier(const SuiteOptions& o);
SuiteResult suite_counterexample(const SuiteOptions& o);
SuiteResult suite_classical(const SuiteOptions& o);
SuiteResult suite_master(const SuiteOptions& o);

/// All ten suites in id order. With `parallel` the suites run concurrently; the
/// returned order and contents do not depend on scheduling.
std::vector<SuiteResult> run_all_suites(const SuiteOptions& o, bool parallel = false);

/// Columns suite, title, check, measured, tolerance, passed (timing checks have an empty measured cell).
Table suites_table(const std::vector<SuiteResult>& results);

}  // namespace sequiv
