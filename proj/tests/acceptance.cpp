// One line per acceptance criterion; exit status 1 if any criterion fails.
#include <cstdio>

#include "sequiv/suites.hpp"

using namespace sequiv;

int main() {
    // Thresholds pinned explicitly so a change of library defaults cannot move them.
    SuiteOptions o;
    o.recurrence_n = 30;
    o.poly_seconds = 1.0;
    o.eigen_n = 30;
    o.random_polys = 100;
    o.random_degree = 12;
    o.gram_n = 8;
    o.gram_diag_rel = 1e-8;
    o.gram_offdiag_abs = 1e-8;
    o.weight_tol = 1e-10;
    o.ww_tol = 1e-8;
    o.ww_pairs = 10;
    o.orthogonality_seconds = 10.0;
    o.fd_step = 1e-3;
    o.residual_tol = 1e-6;
    o.sinc_tol = 1e-8;
    o.sinc_pairs = 20;
    o.psi_gram_n = 8;
    o.psi_gram_tol = 1e-8;
    o.boundary_tol = 1e-8;
    o.symmetry_tol = 1e-8;
    o.parseval_n = 64;
    o.parseval_gamma = 0.5;
    o.parseval_tol = 1e-6;
    o.fourier_tol = 1e-8;
    o.fourier_points = 25;
    o.nonlocal_n = 20;
    o.contour_tol = 1e-8;
    o.shift = 1.0;
    o.multiplier_tol = 1e-6;
    o.flow_t_end = 1.4;
    o.flow_position_tol = 1e-6;
    o.flow_conservation_tol = 1e-8;
    o.flow_sigma_tol = 1e-8;
    o.master_p_max = 5.0;
    o.master_tol = 1e-6;
    o.master_alpha_tol = 1e-10;

    int failed = 0;
    for (const auto& r : run_all_suites(o)) {
        const bool ok = r.passed();
        failed += !ok;
        std::printf("%s  criterion %2d  %-24s worst measured/tol %.3e  (%.2f s)\n", ok ? "PASS" : "FAIL", r.id,
                    r.title.c_str(), r.worst_ratio(), r.seconds);
        for (const auto& c : r.checks) {
            if (!c.passed) std::printf("        failed: %s: %.6e vs %.1e\n", c.name.c_str(), c.measured, c.tolerance);
        }
    }
    std::printf("%d of 10 criteria passed\n", 10 - failed);
    return failed ? 1 : 0;
}
