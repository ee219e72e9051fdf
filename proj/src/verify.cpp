#include "pfc/verify.hpp"

#include <cmath>
#include <limits>

#include "pfc/coherent.hpp"
#include "pfc/evolution.hpp"

namespace pfc {

namespace {

CheckReport spectrum_report(const SystemParams& p, double tol) {
    const Spectrum s = eigensystem(p);
    const Mat2 h = hamiltonian(p);
    const double W = p.Omega();

    CheckReport r;
    r.add("spectrum.energies", "eigenvalues are -Omega/2 and +Omega/2",
          std::abs(s.e1 + W / 2.0) + std::abs(s.e2 - W / 2.0), tol);
    double eig = 0.0;
    eig = std::max(eig, (h * s.psi1 - s.e1 * s.psi1).norm());
    eig = std::max(eig, (h * s.psi2 - s.e2 * s.psi2).norm());
    eig = std::max(eig, (h.adjoint() * s.phi1 - s.e1 * s.phi1).norm());
    eig = std::max(eig, (h.adjoint() * s.phi2 - s.e2 * s.phi2).norm());
    r.add("spectrum.eigen_equations", "eigenvector pairs satisfy their eigen equations", eig,
          tol);
    r.add("spectrum.biorthonormality", "<phi_i|psi_j> = delta_ij",
          s.biorthonormality_residual(), tol);
    r.add("spectrum.completeness", "sum of |psi_i><phi_i| is the identity",
          s.completeness_residual(), tol);
    return r;
}

CheckReport metric_report(const SystemParams& p, double tol) {
    const Mat2 eta = metric_eta(p);
    const Spectrum s = eigensystem(p);

    CheckReport r;
    r.add("metric.hermitian", "eta is Hermitian", frob_dist(eta, eta.adjoint()), tol);
    Eigen::SelfAdjointEigenSolver<Mat2> solver(eta);
    const double lambda_min = solver.eigenvalues().minCoeff();
    r.add("metric.positive_definite", "eta has positive eigenvalues in the valid regime",
          std::max(0.0, -lambda_min), tol);
    r.add("metric.eta_plus_decomposition",
          "eta equals (Omega/|omega|) times the dual-projector sum",
          eta_plus_decomposition(p).residual, tol);
    const double scale = p.Omega() / p.omega_abs();
    double maps = 0.0;
    maps = std::max(maps, (eta * s.psi1 - scale * s.phi1).norm());
    maps = std::max(maps, (eta * s.psi2 - scale * s.phi2).norm());
    r.add("metric.maps_primal_to_dual", "eta sends psi_i to (Omega/|omega|) phi_i", maps, tol);
    return r;
}

CheckReport symmetry_report(const SystemParams& p, double tol) {
    const auto ops = symmetry_operators(p);
    const Mat2 h = hamiltonian(p);
    const double w = p.omega_abs();

    CheckReport r = pt_symmetry_report(p, tol);
    r.add("symmetry.parity_involution", "P^2 = 1",
          frob_dist(ops.parity * ops.parity, Mat2::Identity()), tol);
    Mat2 pgen_closed;
    pgen_closed << 0.0, -std::conj(p.omega()) / w, -p.omega() / w, 0.0;
    r.add("symmetry.parity_generalized",
          "dual-projector parity matches its closed matrix form",
          frob_dist(ops.parity_generalized, pgen_closed), tol);
    r.add("symmetry.charge_closed_form", "charge conjugation equals -(2/Omega) H",
          frob_dist(ops.charge, (-2.0 / p.Omega()) * h), tol);
    r.add("symmetry.charge_commutes", "[C, H] = 0",
          frob_dist(ops.charge * h, h * ops.charge), tol);
    r.add("symmetry.charge_involution", "C^2 = 1",
          frob_dist(ops.charge * ops.charge, Mat2::Identity()), tol);
    r.add("symmetry.time_reversal_unitary", "the time-reversal matrix factor is unitary",
          frob_dist(ops.time_reversal_unitary * ops.time_reversal_unitary.adjoint(),
                    Mat2::Identity()),
          tol);
    return r;
}

} // namespace

CheckReport verify_system(const SystemParams& p, double tol) {
    CheckReport r;
    r.merge(spectrum_report(p, tol));
    r.merge(metric_report(p, tol));
    r.merge(algebra_report(p, tol));
    r.merge(symmetry_report(p, tol));
    r.merge(displacement_report(p, tol));
    r.merge(coherent_state_report(p, tol));
    r.merge(resolution_report(p, tol));
    r.merge(propagator_report(p, tol));
    r.merge(stability_report(p, {0.0, 0.7, 3.1}, tol));

    const auto traj = ode_integrate(p, Vec2(1.0, 0.0), 10.0, 1e-3, 100);
    r.add("evolution.ode_vs_propagator",
          "fixed-step RK4 of the damped equation matches the spectral propagator",
          max_deviation_vs_propagator(traj), 1e-6);
    return r;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec, double tol) {
    if (spec.ratio_steps < 1 || spec.arg_steps < 1)
        throw ArgumentError("sweep grid must have at least one point per axis");
    if (spec.ratio_lo < 0.0 || spec.ratio_hi < spec.ratio_lo)
        throw ArgumentError("sweep ratio range must satisfy 0 <= lo <= hi");
    if (!(spec.omega_abs > 0.0)) throw ArgumentError("sweep needs |omega| > 0");

    std::vector<SweepRow> rows;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int i = 0; i < spec.ratio_steps; ++i) {
        const double ratio =
            spec.ratio_steps == 1
                ? spec.ratio_lo
                : spec.ratio_lo + (spec.ratio_hi - spec.ratio_lo) * i / (spec.ratio_steps - 1);
        for (int k = 0; k < spec.arg_steps; ++k) {
            const double arg = 2.0 * M_PI * k / spec.arg_steps;
            SweepRow row;
            row.ratio = ratio;
            row.arg_omega = arg;
            row.gamma_a = 2.0 * ratio * spec.omega_abs;
            row.gamma_b = 0.0;
            row.omega = std::polar(spec.omega_abs, arg);
            const SystemParams p(row.gamma_a, row.gamma_b, row.omega);
            if (p.is_degenerate() || !p.has_real_splitting()) {
                row.status = p.is_degenerate() ? "degenerate" : "strong_damping";
                row.Omega = p.is_degenerate() ? 0.0 : nan;
                row.res_spectrum = row.res_metric = row.res_algebra = nan;
                row.res_symmetry = row.res_coherent = row.res_evolution = nan;
                row.pass = false;
                rows.push_back(row);
                continue;
            }
            row.status = "ok";
            row.Omega = p.Omega();
            const CheckReport report = verify_system(p, tol);
            row.res_spectrum = report.max_residual("spectrum.");
            row.res_metric = report.max_residual("metric.");
            row.res_algebra = report.max_residual("algebra.");
            row.res_symmetry = report.max_residual("symmetry.");
            row.res_coherent = std::max({report.max_residual("displacement."),
                                         report.max_residual("coherent."),
                                         report.max_residual("resolution.")});
            row.res_evolution = report.max_residual("evolution.");
            row.pass = report.all_pass();
            rows.push_back(row);
        }
    }
    return rows;
}

} // namespace pfc
