#include "pfc/coherent.hpp"

#include <stdexcept>

namespace pfc {

namespace {

// xi* xi over the given parameter pair.
GrassmannElement pair_quadratic(const Signature& sig, std::size_t gen) {
    return GrassmannElement::monomial(sig, {sig->star(gen), gen});
}

GradedOperator half_identity(Signature sig, BasisTag left) {
    GradedOperator h(left, dual_tag(left), sig);
    h.set_comp(0, 0, GrassmannElement::unit(sig, 0.5));
    h.set_comp(1, 1, GrassmannElement::unit(sig, 0.5));
    return h;
}

// G(0,0) + (G(1,1)-G(0,0)) xi*xi - G(0,1) xi + G(1,0) xi*: the closed overlap
// polynomial of two coherent patterns against a pairing table G.
GrassmannElement closed_overlap(const Signature& sig, std::size_t gen, const Mat2& g) {
    const auto xi = GrassmannElement::generator(sig, gen);
    const auto xis = GrassmannElement::generator(sig, sig->star(gen));
    return GrassmannElement::unit(sig, g(0, 0)) + (g(1, 1) - g(0, 0)) * pair_quadratic(sig, gen) -
           g(0, 1) * xi + g(1, 0) * xis;
}

struct DisplacementRoutes {
    GradedOperator series;
    GradedOperator expansion;
};

DisplacementRoutes displacement_routes(DisplacementKind kind, const Signature& sig,
                                       std::size_t gen) {
    const BasisTag tag = (kind == DisplacementKind::DualFamily) ? BasisTag::Phi : BasisTag::Psi;
    const auto low = lowering_operator(sig, tag);
    const auto rai = raising_operator(sig, tag);
    const auto xi = GrassmannElement::generator(sig, gen);
    const auto xis = GrassmannElement::generator(sig, sig->star(gen));

    GradedOperator exponent = times_right(rai, xi) - times_left(xis, low);
    if (kind == DisplacementKind::SharpAdjoint)
        exponent = times_left(GrassmannElement::unit(sig, -1.0), exponent);

    DisplacementRoutes r{op_exp(exponent),
                         identity_operator(sig, tag) + exponent +
                             times_right(rai * low - half_identity(sig, tag),
                                         pair_quadratic(sig, gen))};
    return r;
}

} // namespace

Signature one_mode_signature() {
    static const Signature s = complex_pairs({"xi"});
    return s;
}

Signature two_mode_signature() {
    static const Signature s = complex_pairs({"xi", "zeta"});
    return s;
}

GradedVector coherent_closed_form(Signature sig, std::size_t gen, BasisTag tag) {
    auto norm = GrassmannElement::unit(sig) - 0.5 * pair_quadratic(sig, gen);
    auto c1 = -GrassmannElement::generator(sig, gen);
    return GradedVector(tag, std::move(norm), std::move(c1));
}

GradedOperator displacement(const SystemParams& p, DisplacementKind kind, Signature sig,
                            std::size_t gen) {
    (void)p.Omega();   // regime gate: the ladder pair exists only for real splitting
    auto routes = displacement_routes(kind, sig, gen);
    if (routes.series != routes.expansion)
        throw std::logic_error("displacement series and closed expansion disagree");
    return routes.series;
}

GradedOperator displacement(const SystemParams& p, DisplacementKind kind) {
    return displacement(p, kind, one_mode_signature(), 0);
}

double displacement_expansion_residual(const SystemParams& p, DisplacementKind kind) {
    (void)p.Omega();
    auto routes = displacement_routes(kind, one_mode_signature(), 0);
    return max_coeff_dist(routes.series, routes.expansion);
}

CoherentState coherent_state(const SystemParams& p, Flavor flavor, Signature sig,
                             std::size_t gen) {
    const DisplacementKind kind = (flavor == Flavor::Primal) ? DisplacementKind::Standard
                                                             : DisplacementKind::DualFamily;
    const auto d = displacement(p, kind, sig, gen);
    return CoherentState{apply(d, basis_ket(sig, flavor_tag(flavor), 0)), flavor,
                         GrassmannElement::unit(sig) - 0.5 * pair_quadratic(sig, gen), gen};
}

CoherentState coherent_state(const SystemParams& p, Flavor flavor) {
    return coherent_state(p, flavor, one_mode_signature(), 0);
}

GradedVector substitute_parameter_scale(const GradedVector& v, std::size_t gen, Complex c) {
    const auto& sig = v.sig();
    auto sub = [&](const GrassmannElement& e) {
        return scale_generator(scale_generator(e, gen, c), sig->star(gen), std::conj(c));
    };
    return GradedVector(v.tag(), sub(v.comp(0)), sub(v.comp(1)));
}

GradedBra eta_bra(const SystemParams& p, const GradedBra& bra_over_psi) {
    if (bra_over_psi.tag() != BasisTag::Psi)
        throw BasisError("eta_bra expects a bra over the psi basis");
    const Spectrum s = eigensystem(p);
    const Mat2 eta = metric_eta(p);
    Mat2 mix;   // mix(a,b) = <psi_a| eta |psi_b>
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            mix(a, b) = s.psi(static_cast<std::size_t>(a))
                            .dot(eta * s.psi(static_cast<std::size_t>(b)));
    const auto& sig = bra_over_psi.sig();
    GrassmannElement c0(sig), c1(sig);
    for (std::size_t a = 0; a < 2; ++a) {
        c0 = c0 + mix(static_cast<int>(a), 0) * bra_over_psi.comp(a);
        c1 = c1 + mix(static_cast<int>(a), 1) * bra_over_psi.comp(a);
    }
    return GradedBra(BasisTag::Phi, std::move(c0), std::move(c1));
}

Mat2 numeric_realization(const GradedOperator& op, const Spectrum& s) {
    Mat2 m = Mat2::Zero();
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            const auto& e = op.comp(i, j);
            for (const auto& [mask, c] : e.terms())
                if (mask != 0)
                    throw ArgumentError("numeric realization needs scalar coefficients");
            const Complex c = e.body();
            if (c == Complex{}) continue;
            const Vec2 ket = (op.left_tag() == BasisTag::Psi) ? s.psi(i) : s.phi(i);
            const Vec2 bra = (op.right_tag() == BasisTag::Psi) ? s.psi(j) : s.phi(j);
            m += c * ket * bra.adjoint();
        }
    }
    return m;
}

InnerProducts inner_products(const SystemParams& p) {
    const Spectrum s = eigensystem(p);
    const auto primal = coherent_state(p, Flavor::Primal);
    const auto dual = coherent_state(p, Flavor::Dual);

    InnerProducts r{GrassmannElement(one_mode_signature()),
                    GrassmannElement(one_mode_signature()),
                    GrassmannElement(one_mode_signature()),
                    GrassmannElement(two_mode_signature())};
    r.primal_primal = pair(dagger(primal.base), primal.base, s.gram_psi());
    r.dual_dual = pair(dagger(dual.base), dual.base, s.gram_phi());
    r.dual_primal = pair(dagger(dual.base), primal.base);

    const auto primal2 = coherent_state(p, Flavor::Primal, two_mode_signature(), 0);
    const auto dual2 = coherent_state(p, Flavor::Dual, two_mode_signature(), 2);
    r.cross_two_param = pair(dagger(primal2.base), dual2.base);
    return r;
}

CheckReport displacement_report(const SystemParams& p, double tol) {
    const auto sig = one_mode_signature();
    const auto d = displacement(p, DisplacementKind::Standard);
    const auto ds = displacement(p, DisplacementKind::SharpAdjoint);
    const auto dt = displacement(p, DisplacementKind::DualFamily);
    const auto id_psi = identity_operator(sig, BasisTag::Psi);

    CheckReport r;
    double series = 0.0;
    for (auto kind : {DisplacementKind::Standard, DisplacementKind::SharpAdjoint,
                      DisplacementKind::DualFamily})
        series = std::max(series, displacement_expansion_residual(p, kind));
    r.add("displacement.series_vs_expansion",
          "exponential series equals the closed quadratic expansion", series, tol);

    r.add("displacement.pseudo_unitary_left", "D# D = 1", max_coeff_dist(ds * d, id_psi), tol);
    r.add("displacement.pseudo_unitary_right", "D D# = 1", max_coeff_dist(d * ds, id_psi), tol);

    const auto dt_dag = dagger(dt);
    r.add("displacement.bi_unitary_left", "D (dual D)^dag = 1",
          max_coeff_dist(d * dt_dag, id_psi), tol);
    r.add("displacement.bi_unitary_right", "(dual D)^dag D = 1",
          max_coeff_dist(dt_dag * d, id_psi), tol);

    const auto b = lowering_operator(sig, BasisTag::Psi);
    const auto shifted = ds * b * d;
    const auto expected =
        b + times_left(GrassmannElement::generator(sig, 0), identity_operator(sig, BasisTag::Psi));
    r.add("displacement.shift_relation", "D# b D = b + xi", max_coeff_dist(shifted, expected),
          tol);
    return r;
}

CheckReport coherent_state_report(const SystemParams& p, double tol) {
    const auto sig = one_mode_signature();
    const Spectrum s = eigensystem(p);
    const auto primal = coherent_state(p, Flavor::Primal);
    const auto dual = coherent_state(p, Flavor::Dual);
    const auto xi = GrassmannElement::generator(sig, 0);

    CheckReport r;
    r.add("coherent.primal_closed_form", "D|ground> reduces to the closed coherent form",
          max_coeff_dist(primal.base, coherent_closed_form(sig, 0, BasisTag::Psi)), tol);
    r.add("coherent.dual_closed_form", "dual D|dual ground> reduces to the closed coherent form",
          max_coeff_dist(dual.base, coherent_closed_form(sig, 0, BasisTag::Phi)), tol);

    const auto b = lowering_operator(sig, BasisTag::Psi);
    const auto bt = lowering_operator(sig, BasisTag::Phi);
    r.add("coherent.eigenstate_primal", "b |xi> = xi |xi>",
          max_coeff_dist(apply(b, primal.base), times_left(xi, primal.base)), tol);
    r.add("coherent.eigenstate_dual", "b~ |dual xi> = xi |dual xi>",
          max_coeff_dist(apply(bt, dual.base), times_left(xi, dual.base)), tol);

    r.add("coherent.zero_parameter_limit", "xi -> 0 recovers the ground eigenstate",
          max_coeff_dist(substitute_parameter_scale(primal.base, 0, 0.0),
                         basis_ket(sig, BasisTag::Psi, 0)),
          tol);

    const auto overlaps = inner_products(p);
    r.add("coherent.binormalized", "<dual xi | xi> = 1",
          max_coeff_dist(overlaps.dual_primal, GrassmannElement::unit(sig)), tol);
    r.add("coherent.overlap_primal", "<xi|xi> matches its Gram-weighted closed polynomial",
          max_coeff_dist(overlaps.primal_primal, closed_overlap(sig, 0, s.gram_psi())), tol);
    r.add("coherent.overlap_dual", "dual self overlap matches its closed polynomial",
          max_coeff_dist(overlaps.dual_dual, closed_overlap(sig, 0, s.gram_phi())), tol);

    {
        const auto sig2 = two_mode_signature();
        const auto u2 = GrassmannElement::unit(sig2);
        const auto xis2 = GrassmannElement::generator(sig2, 1);
        const auto zeta2 = GrassmannElement::generator(sig2, 2);
        const auto expected = xis2 * zeta2 + 0.25 * (2.0 * u2 - pair_quadratic(sig2, 0)) *
                                                 (2.0 * u2 - pair_quadratic(sig2, 2));
        r.add("coherent.overlap_cross_general",
              "two-parameter cross overlap matches its closed polynomial",
              max_coeff_dist(overlaps.cross_two_param, expected), tol);
    }

    {
        const auto ebra = eta_bra(p, dagger(primal.base));
        const double scale = p.omega_abs() / p.Omega();
        r.add("coherent.eta_bra_unit", "scaled metric bra against |xi> gives 1",
              max_coeff_dist(scale * pair(ebra, primal.base), GrassmannElement::unit(sig)), tol);
        const auto bs = raising_operator(sig, BasisTag::Psi);
        const auto xis = GrassmannElement::generator(sig, 1);
        r.add("coherent.eta_bra_raising", "metric bra is a left eigenbra of b#",
              max_coeff_dist(apply(ebra, bs).comp(0), times_right(ebra, xis).comp(0)) +
                  max_coeff_dist(apply(ebra, bs).comp(1), times_right(ebra, xis).comp(1)),
              tol);
    }
    return r;
}

CheckReport resolution_report(const SystemParams& p, double tol) {
    const auto sig = one_mode_signature();
    const Spectrum s = eigensystem(p);
    const auto primal = coherent_state(p, Flavor::Primal);
    const auto dual = coherent_state(p, Flavor::Dual);

    CheckReport r;
    const auto op_pd = berezin_pair(outer(primal.base, dagger(dual.base)), 0);
    const auto op_dp = berezin_pair(outer(dual.base, dagger(primal.base)), 0);
    r.add("resolution.mixed_primal_dual",
          "integral of |xi><dual xi| is the identity, coefficient-exactly",
          max_coeff_dist(op_pd, identity_operator(sig, BasisTag::Psi)), tol);
    r.add("resolution.mixed_dual_primal",
          "integral of |dual xi><xi| is the identity, coefficient-exactly",
          max_coeff_dist(op_dp, identity_operator(sig, BasisTag::Phi)), tol);

    const Mat2 m_pd = numeric_realization(op_pd, s);
    const Mat2 m_dp = numeric_realization(op_dp, s);
    r.add("resolution.mixed_primal_dual_numeric",
          "numeric substitution of the first mixed integral equals the identity",
          frob_dist(m_pd, Mat2::Identity()), tol);
    r.add("resolution.mixed_dual_primal_numeric",
          "numeric substitution of the second mixed integral equals the identity",
          frob_dist(m_dp, Mat2::Identity()), tol);
    r.add("resolution.mixed_consistency", "the two mixed integrals agree with each other",
          frob_dist(m_pd, m_dp), tol);

    // Same-family projectors: away from the Hermitian limit they must NOT
    // integrate to the identity. The entry residual is the shortfall below a
    // fixed distinctness floor (zero when the gap is present); on the
    // delta = 0 line the integrals legitimately equal the identity and the
    // residual reverts to the plain deviation.
    const double gap_floor = 1e-9;
    const auto gap_entry = [&](double deviation) {
        if (p.delta() == 0.0) return deviation;
        return deviation > gap_floor ? 0.0 : gap_floor - deviation;
    };

    const Mat2 m_hermitian =
        numeric_realization(berezin_pair(outer(primal.base, dagger(primal.base)), 0), s);
    r.add("resolution.unmixed_hermitian",
          "integral of |xi><xi| differs from the identity away from the Hermitian limit",
          gap_entry(frob_dist(m_hermitian, Mat2::Identity())), tol);

    const Mat2 m_eta = numeric_realization(
        berezin_pair(outer(primal.base, eta_bra(p, dagger(primal.base))), 0), s);
    r.add("resolution.unmixed_eta",
          "integral of |xi><xi| eta differs from the identity away from the Hermitian limit",
          gap_entry(frob_dist(m_eta, Mat2::Identity())), tol);
    r.add("resolution.unmixed_eta_scale",
          "metric-weighted projector integrates to (Omega/|omega|) times the identity",
          frob_dist(m_eta, (p.Omega() / p.omega_abs()) * Mat2::Identity()), tol);
    return r;
}

} // namespace pfc
