#pragma once

// Displacement operators and the bi-normalized, bi-overcomplete coherent-state
// pair built on the graded two-slot algebra. The slot content of b, b#, b~ and
// the displacement operators is parameter independent (it lives in the
// eigen-dyad basis); SystemParams enters as the regime gate and through the
// numeric substitution of eigenvectors into dyads.

#include "pfc/graded.hpp"
#include "pfc/report.hpp"
#include "pfc/twolevel.hpp"

namespace pfc {

enum class Flavor { Primal, Dual };   // over psi / over phi

constexpr BasisTag flavor_tag(Flavor f) {
    return f == Flavor::Primal ? BasisTag::Psi : BasisTag::Phi;
}

enum class DisplacementKind {
    Standard,       // exp(b# xi - xi* b)
    SharpAdjoint,   // exp(xi* b - b# xi)
    DualFamily,     // exp(b~#' xi - xi* b~)
};

// Shared one-mode signature (xi, xi*) and the two-mode extension
// (xi, xi*, zeta, zeta*) used by two-parameter overlaps.
Signature one_mode_signature();
Signature two_mode_signature();

struct CoherentState {
    GradedVector base;                // full canonical state
    Flavor flavor = Flavor::Primal;
    GrassmannElement normalization;   // the 1 - (1/2) xi* xi prefactor
    std::size_t gen = 0;              // generator index of the parameter
};

// exp(-xi*xi/2) (|e0> - xi |e1>): the closed form every coherent state must
// reduce to; used as an independent oracle by the reports and tests.
GradedVector coherent_closed_form(Signature sig, std::size_t gen, BasisTag tag);

// Displacement operator, built by the terminating exponential series. The
// closed one-plus-linear-plus-quadratic expansion is computed alongside; the
// two routes must agree coefficient-exactly (logic error otherwise, also
// exposed via displacement_expansion_residual).
GradedOperator displacement(const SystemParams& p, DisplacementKind kind, Signature sig,
                            std::size_t gen);
GradedOperator displacement(const SystemParams& p, DisplacementKind kind);
double displacement_expansion_residual(const SystemParams& p, DisplacementKind kind);

// Coherent state of either flavor: displacement applied to the slot-0 ground
// state of the flavor's basis.
CoherentState coherent_state(const SystemParams& p, Flavor flavor, Signature sig,
                             std::size_t gen);
CoherentState coherent_state(const SystemParams& p, Flavor flavor);

// Parameter substitution xi -> c xi (and xi* -> conj(c) xi*).
GradedVector substitute_parameter_scale(const GradedVector& v, std::size_t gen, Complex c);

// <xi| eta as a graded bra over the dual basis; slot mixing is computed
// numerically from <psi_a| eta |psi_b>.
GradedBra eta_bra(const SystemParams& p, const GradedBra& bra_over_psi);

// Numeric substitution of eigenvectors into dyads; requires scalar (body-only)
// coefficients.
Mat2 numeric_realization(const GradedOperator& op, const Spectrum& s);

// The four overlaps of the coherent pair as exact Grassmann polynomials.
struct InnerProducts {
    GrassmannElement primal_primal;    // <xi|xi>, psi Gram matrix
    GrassmannElement dual_dual;        // dual-family self overlap, phi Gram
    GrassmannElement dual_primal;      // dual bra against primal ket = 1
    GrassmannElement cross_two_param;  // <xi-primal | zeta-dual> over 4 generators
};
InnerProducts inner_products(const SystemParams& p);

// Residual reports ------------------------------------------------------

// Series-vs-expansion, pseudo-unitarity, bi-unitarity and the shift relation
// D#(xi) b D(xi) = b + xi.
CheckReport displacement_report(const SystemParams& p, double tol = 1e-12);

// Closed forms of both states, eigenstate property of b and b~, the
// bi-normalization <dual|primal> = 1, the eta-bra identities and the four
// overlap polynomials against their closed forms.
CheckReport coherent_state_report(const SystemParams& p, double tol = 1e-12);

// Both mixed projector integrals equal the identity (symbolically and after
// numeric substitution); the two same-family integrals differ from it away
// from the Hermitian limit.
CheckReport resolution_report(const SystemParams& p, double tol = 1e-12);

} // namespace pfc
