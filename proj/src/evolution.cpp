#include "pfc/evolution.hpp"

#include <cmath>

namespace pfc {

namespace {

const Complex I{0.0, 1.0};

} // namespace

Mat2 propagator(const SystemParams& p, double t, bool dual) {
    const double W = p.Omega_or_zero();
    const Mat2 h = dual ? Mat2(hamiltonian(p).adjoint()) : hamiltonian(p);
    const double x = W * t / 2.0;
    // t * sin(x)/x; the series branch keeps the Omega -> 0 limit exact
    // (H is nilpotent there and exp(-iHt) = 1 - iHt).
    const double sinc_t =
        (std::abs(W * t) < 1e-6) ? t * (1.0 - x * x / 6.0) : std::sin(x) / x * t;
    return std::cos(x) * Mat2::Identity() - I * sinc_t * h;
}

EvolvedCoherentState evolve_cs(const SystemParams& p, Flavor flavor, double t) {
    const double W = p.Omega();
    const double E = W / 2.0;
    const auto sig = one_mode_signature();

    // Spectral dyad action: slot i picks up e^{-i E_i t} with E_0 = -E,
    // E_1 = +E, for the dual family identically (H^dag has the same spectrum
    // over the phi slots).
    const Complex u0 = std::polar(1.0, E * t);
    const Complex u1 = std::polar(1.0, -E * t);
    const auto form = coherent_closed_form(sig, 0, flavor_tag(flavor));
    GradedVector evolved(form.tag(), u0 * form.comp(0), u1 * form.comp(1));

    const Complex factor = evolved.comp(0).body();
    const Complex ratio = -evolved.comp(1).coeff(Mask{1}) / factor;

    const auto reconstructed =
        times_left(GrassmannElement::unit(sig, factor),
                   substitute_parameter_scale(form, 0, ratio));
    EvolvedCoherentState r{std::move(evolved), factor, ratio, 0.0, 0.0};
    r.factorization_residual = max_coeff_dist(r.state, reconstructed);
    r.parameter_law_residual = std::abs(ratio - std::polar(1.0, -W * t));
    return r;
}

CheckReport stability_report(const SystemParams& p, const std::vector<double>& t_grid,
                             double tol) {
    const auto sig = one_mode_signature();
    const Spectrum s = eigensystem(p);
    const auto xi = GrassmannElement::generator(sig, 0);
    const auto b = lowering_operator(sig, BasisTag::Psi);
    const auto bt = lowering_operator(sig, BasisTag::Phi);

    double eig_primal = 0.0, eig_dual = 0.0, fact_primal = 0.0, fact_dual = 0.0;
    double param_law = 0.0, modulus = 0.0, product = 0.0, binormal = 0.0;
    double res_sym = 0.0, res_num = 0.0;

    for (const double t : t_grid) {
        const auto primal = evolve_cs(p, Flavor::Primal, t);
        const auto dual = evolve_cs(p, Flavor::Dual, t);

        const auto xi_t = primal.parameter_ratio * xi;
        eig_primal = std::max(eig_primal, max_coeff_dist(apply(b, primal.state),
                                                         times_left(xi_t, primal.state)));
        eig_dual = std::max(eig_dual, max_coeff_dist(apply(bt, dual.state),
                                                     times_left(xi_t, dual.state)));

        fact_primal = std::max(fact_primal, primal.factorization_residual);
        fact_dual = std::max(fact_dual, dual.factorization_residual);
        param_law = std::max(param_law, std::max(primal.parameter_law_residual,
                                                 dual.parameter_law_residual));
        modulus = std::max(modulus, std::abs(std::abs(primal.factor) - 1.0));
        product = std::max(product,
                           std::abs(std::conj(primal.factor) * dual.factor - Complex{1.0}));
        binormal = std::max(binormal,
                            max_coeff_dist(pair(dagger(dual.state), primal.state),
                                           GrassmannElement::unit(sig)));

        const auto op_pd = berezin_pair(outer(primal.state, dagger(dual.state)), 0);
        const auto op_dp = berezin_pair(outer(dual.state, dagger(primal.state)), 0);
        res_sym = std::max(res_sym,
                           std::max(max_coeff_dist(op_pd, identity_operator(sig, BasisTag::Psi)),
                                    max_coeff_dist(op_dp, identity_operator(sig, BasisTag::Phi))));
        res_num = std::max(res_num,
                           std::max(frob_dist(numeric_realization(op_pd, s), Mat2::Identity()),
                                    frob_dist(numeric_realization(op_dp, s), Mat2::Identity())));
    }

    CheckReport r;
    r.add("evolution.eigenstate_primal", "evolved |xi;t> stays an eigenstate of b", eig_primal,
          tol);
    r.add("evolution.eigenstate_dual", "evolved dual state stays an eigenstate of b~", eig_dual,
          tol);
    r.add("evolution.factorization_primal",
          "evolved |xi;t> factors as a phase times a rotated coherent state", fact_primal, tol);
    r.add("evolution.factorization_dual",
          "evolved dual state factors as a phase times a rotated coherent state", fact_dual,
          tol);
    r.add("evolution.parameter_law", "extracted rotation matches e^{-i Omega t}", param_law,
          tol);
    r.add("evolution.factor_modulus", "overall evolution factor has unit modulus", modulus, tol);
    r.add("evolution.factor_product", "conj(primal factor) * dual factor = 1", product, tol);
    r.add("evolution.binormal", "evolved pair stays bi-normalized", binormal, tol);
    r.add("evolution.resolution_symbolic",
          "evolved mixed projectors still integrate to the identity", res_sym, tol);
    r.add("evolution.resolution_numeric",
          "numeric substitution of the evolved mixed integrals equals the identity", res_num,
          tol);
    return r;
}

CheckReport propagator_report(const SystemParams& p, double tol) {
    const Spectrum s = eigensystem(p);
    const Mat2 eta = metric_eta(p);
    const double t1 = 0.7, t2 = 3.1;

    CheckReport r;
    r.add("evolution.propagator_at_zero", "exp(-iH 0) = 1",
          frob_dist(propagator(p, 0.0), Mat2::Identity()), tol);
    r.add("evolution.propagator_group", "exp(-iH(t1+t2)) = exp(-iHt1) exp(-iHt2)",
          frob_dist(propagator(p, t1 + t2), propagator(p, t1) * propagator(p, t2)), tol);
    r.add("evolution.propagator_inverse", "exp(-iHt) exp(+iHt) = 1",
          frob_dist(propagator(p, t1) * propagator(p, -t1), Mat2::Identity()), tol);

    double spectral = 0.0;
    for (const double t : {t1, t2}) {
        const Mat2 u = propagator(p, t);
        spectral = std::max(spectral,
                            (u * s.psi1 - std::exp(-I * s.e1 * t) * s.psi1).norm());
        spectral = std::max(spectral,
                            (u * s.psi2 - std::exp(-I * s.e2 * t) * s.psi2).norm());
        const Mat2 ud = propagator(p, t, true);
        spectral = std::max(spectral,
                            (ud * s.phi1 - std::exp(-I * s.e1 * t) * s.phi1).norm());
        spectral = std::max(spectral,
                            (ud * s.phi2 - std::exp(-I * s.e2 * t) * s.phi2).norm());
    }
    r.add("evolution.propagator_spectral", "propagators act spectrally on the eigenvectors",
          spectral, tol);

    double intertwine = 0.0;
    for (const double t : {t1, t2})
        intertwine = std::max(
            intertwine,
            frob_dist(eta * propagator(p, t) * eta.inverse(), propagator(p, t, true)));
    r.add("evolution.propagator_intertwine", "eta exp(-iHt) eta^-1 = exp(-iH^dag t)",
          intertwine, tol);
    return r;
}

Mat2 evolution_generator(const SystemParams& p) {
    Mat2 m;
    m << -I * p.gamma_a() / 2.0, std::conj(p.omega()) / 2.0, p.omega() / 2.0,
        -I * p.gamma_b() / 2.0;
    return m;
}

Trajectory ode_integrate(const SystemParams& p, const Vec2& c0, double t_max, double dt,
                         std::size_t stride) {
    if (!(dt > 0.0) || !(t_max > 0.0) || !std::isfinite(dt) || !std::isfinite(t_max))
        throw ArgumentError("ode_integrate needs positive finite dt and t_max");
    if (stride == 0) throw ArgumentError("stride must be positive");

    const Mat2 gen = -I * evolution_generator(p);
    const auto rhs = [&gen](const Vec2& y) -> Vec2 { return gen * y; };

    const auto steps = static_cast<std::size_t>(std::llround(t_max / dt));
    Trajectory traj{p, c0, dt, {}, {}};
    Vec2 y = c0;

    const auto record = [&](std::size_t step) {
        const double t = static_cast<double>(step) * dt;
        traj.times.push_back(t);
        traj.samples.push_back({y, std::exp(p.Gamma() * t) * y});
    };

    record(0);
    for (std::size_t k = 1; k <= steps; ++k) {
        const Vec2 k1 = rhs(y);
        const Vec2 k2 = rhs(y + 0.5 * dt * k1);
        const Vec2 k3 = rhs(y + 0.5 * dt * k2);
        const Vec2 k4 = rhs(y + dt * k3);
        y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (k % stride == 0 || k == steps) record(k);
    }
    return traj;
}

Vec2 degenerate_amplitudes(const SystemParams& p, double t) {
    if (!p.is_degenerate())
        throw NotDegenerate("closed-form amplitudes exist only on the Omega = 0 line");
    const double decay = std::exp(-p.Gamma() * t);
    return Vec2((1.0 - p.delta() * t / 2.0) * decay, -I * p.omega() * t / 2.0 * decay);
}

double max_deviation_vs_propagator(const Trajectory& traj) {
    const Vec2 c0 = traj.initial;
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        const Vec2 analytic = propagator(traj.params, traj.times[k]) * c0;
        worst = std::max(worst, (traj.samples[k].renormalized - analytic).norm());
    }
    return worst;
}

double max_deviation_vs_degenerate(const Trajectory& traj) {
    double worst = 0.0;
    for (std::size_t k = 0; k < traj.times.size(); ++k)
        worst = std::max(worst, (traj.samples[k].damped -
                                 degenerate_amplitudes(traj.params, traj.times[k]))
                                    .norm());
    return worst;
}

double rk4_convergence_order(const SystemParams& p, const Vec2& c0, double t_max, double h) {
    const double err_h = max_deviation_vs_propagator(ode_integrate(p, c0, t_max, h));
    const double err_h2 = max_deviation_vs_propagator(ode_integrate(p, c0, t_max, h / 2.0));
    return std::log2(err_h / err_h2);
}

} // namespace pfc
