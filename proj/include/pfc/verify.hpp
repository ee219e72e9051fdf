#pragma once

// Assembly of the full verification suite: every residual check the engine
// knows how to make, at one parameter point or across a sweep grid.

#include <string>
#include <vector>

#include "pfc/report.hpp"
#include "pfc/twolevel.hpp"

namespace pfc {

// Runs every check family at one parameter point. Closed-form identities use
// `tol`; the ODE-vs-propagator cross check carries its own integrator-scale
// tolerance (1e-6 at dt = 1e-3).
CheckReport verify_system(const SystemParams& p, double tol = 1e-12);

struct SweepSpec {
    double ratio_lo = 0.0;     // delta / |omega|
    double ratio_hi = 0.99;
    int ratio_steps = 10;
    int arg_steps = 8;         // arg(omega) over [0, 2 pi)
    double omega_abs = 1.0;
};

struct SweepRow {
    double ratio = 0.0;
    double arg_omega = 0.0;
    double gamma_a = 0.0, gamma_b = 0.0;
    Complex omega;
    std::string status;        // "ok" | "degenerate" | "strong_damping"
    double Omega = 0.0;        // NaN when the splitting is not real
    double res_spectrum = 0.0, res_metric = 0.0, res_algebra = 0.0;
    double res_symmetry = 0.0, res_coherent = 0.0, res_evolution = 0.0;
    bool pass = false;
};

// One verify run per grid point; rows on the degenerate line or beyond it are
// flagged rather than aborting the sweep (their residual columns are NaN).
std::vector<SweepRow> run_sweep(const SweepSpec& spec, double tol = 1e-12);

} // namespace pfc
