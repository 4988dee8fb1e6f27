#pragma once

#include "isac/errors.hpp"

namespace isac {

/**
 * Numerical knobs shared by the solvers and the coverage verifier.
 * Every tolerance used anywhere in the library lives here.
 */
struct SolverConfig {
    double metric_tol = 1e-9;  ///< relative stop for the loss-balance bisection
    double v_tol = 1e-9;       ///< relative stop for the velocity bisection
    double angle_tol = 1e-9;   ///< radians; stop for the connection-angle bisection
    double feas_tol = 1e-9;    ///< relative slack on the connector-sum constraint
    double point_tol = 1e-6;   ///< meters; exit-point movement considered converged
    int max_iters = 200;       ///< cap for any scalar bisection
    int max_inner_iters = 20;  ///< alternating angle/radius iterations per exit point
    int max_sweeps = 50;       ///< coordinate-descent sweeps over all regions
    double grid_step = 0.0;    ///< meters; <= 0 selects area radius / 100
    double dt = 0.0;           ///< seconds; <= 0 selects beam width / 400 of sweep
    double rel_slack = 0.01;   ///< relative slack when verifying delivered data
    unsigned seed = 12345;     ///< seed for randomized property checks

    void validate() const {
        if (!(metric_tol > 0) || !(v_tol > 0) || !(angle_tol > 0) || !(feas_tol >= 0) ||
            !(point_tol > 0) || !(rel_slack >= 0))
            throw ValidationError("SolverConfig: tolerances must be positive");
        if (max_iters < 1 || max_inner_iters < 0 || max_sweeps < 1)
            throw ValidationError("SolverConfig: iteration caps must be >= 1");
    }
};

} // namespace isac
