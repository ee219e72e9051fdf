#pragma once

// Time evolution: closed-form 2x2 propagators for H and H^dag, symbolic
// spectral evolution of both coherent-state families with stability checks,
// the degenerate zero-splitting amplitudes, and a fixed-step RK4 integrator
// of the damped amplitude equation as an independent cross-validation oracle.
// The integrator works in every damping regime; the ladder-operator
// constructions stay gated on a real splitting.

#include <vector>

#include "pfc/coherent.hpp"
#include "pfc/report.hpp"
#include "pfc/twolevel.hpp"

namespace pfc {

// exp(-i H t) (dual = false) or exp(-i H^dag t) (dual = true) via the
// traceless closed form cos(Omega t/2) 1 - i t sinc(Omega t/2) H, with a
// series branch for |Omega t| < 1e-6 that covers the nilpotent Omega = 0
// limit exactly.
Mat2 propagator(const SystemParams& p, double t, bool dual = false);

// Symbolic spectral evolution of a coherent state. The evolved state stays in
// the family: state = factor * CS(parameter_ratio * xi). Both scalars are
// extracted from the evolved coefficients; the residuals quantify how exactly
// the factorization and the rotation law hold (machine epsilon scale).
struct EvolvedCoherentState {
    GradedVector state;
    Complex factor;                   // overall e^{i E t}
    Complex parameter_ratio;          // xi(t)/xi = e^{-2 i E t}
    double factorization_residual;    // state vs factor * CS(ratio * xi)
    double parameter_law_residual;    // |ratio - e^{-i Omega t}|
};
EvolvedCoherentState evolve_cs(const SystemParams& p, Flavor flavor, double t);

// Eigenstate property, factorization, unit-modulus factor, factor product,
// bi-normalization and both mixed resolution integrals for every time in the
// grid (worst residual per check is reported).
CheckReport stability_report(const SystemParams& p, const std::vector<double>& t_grid,
                             double tol = 1e-12);

// Propagator self-consistency: group law, inverse, spectral action and the
// metric intertwining relation eta exp(-iHt) eta^{-1} = exp(-iH^dag t).
CheckReport propagator_report(const SystemParams& p, double tol = 1e-12);

// Generator of the damped amplitude equation i dC'/dt = M C',
// M = (1/2) [[-i gamma_a, conj(omega)], [omega, -i gamma_b]].
Mat2 evolution_generator(const SystemParams& p);

struct TrajectorySample {
    Vec2 damped;          // C'(t): literal solution of the damped equation
    Vec2 renormalized;    // C(t) = e^{Gamma t} C'(t): evolves under H
};

struct Trajectory {
    SystemParams params;
    Vec2 initial;           // C'(0)
    double dt = 0.0;
    std::vector<double> times;
    std::vector<TrajectorySample> samples;
};

// Classical fixed-step RK4 for the damped amplitude equation; valid in every
// damping regime. Samples every `stride`-th step (and always the endpoint).
Trajectory ode_integrate(const SystemParams& p, const Vec2& c0, double t_max, double dt,
                         std::size_t stride = 1);

// Closed-form damped amplitudes on the degenerate line Omega = 0 for the
// upper-level initial state (1, 0):
//   C'_a(t) = (1 - delta t / 2) e^{-Gamma t},  C'_b(t) = -(i omega t / 2) e^{-Gamma t}.
// These solve the damped equation literally (the nilpotent H gives a linear-
// in-t propagator); the RK4 oracle pins the sign and phase conventions.
Vec2 degenerate_amplitudes(const SystemParams& p, double t);

// max_t || C(t) - exp(-iHt) C(0) || over the trajectory samples.
double max_deviation_vs_propagator(const Trajectory& traj);

// max_t || C'(t) - degenerate closed form || (initial state must be (1,0)).
double max_deviation_vs_degenerate(const Trajectory& traj);

// log2(err(h) / err(h/2)) against the propagator; ~4 for the classical RK4.
double rk4_convergence_order(const SystemParams& p, const Vec2& c0, double t_max, double h);

} // namespace pfc
