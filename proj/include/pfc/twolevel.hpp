#pragma once

// Numeric construction of the damped two-level system: Hamiltonian, metric,
// biorthonormal eigensystem, pseudo-fermion ladder operators and the discrete
// symmetry operators, plus residual reports for all of their defining
// relations. Everything is a pure function of SystemParams; matrices are
// dense complex 2x2.

#include <complex>

#include "pfc/errors.hpp"
#include "pfc/linalg.hpp"
#include "pfc/report.hpp"

namespace pfc {

// Physical inputs: decay rates of the upper/lower level (units 1/time) and
// the complex coupling omega. Derived quantities:
//   delta = (gamma_a - gamma_b)/2          decay asymmetry
//   Gamma = (gamma_a + gamma_b)/4          mean decay removed by e^{Gamma t}
//   Omega = sqrt(|omega|^2 - delta^2)      level splitting, real iff
//                                          |omega| >= |delta|
class SystemParams {
public:
    SystemParams(double gamma_a, double gamma_b, Complex omega);

    double gamma_a() const { return gamma_a_; }
    double gamma_b() const { return gamma_b_; }
    Complex omega() const { return omega_; }

    double delta() const { return (gamma_a_ - gamma_b_) / 2.0; }
    double Gamma() const { return (gamma_a_ + gamma_b_) / 4.0; }
    double omega_abs() const { return std::abs(omega_); }
    // |omega|^2 - delta^2; sign classifies the regime.
    double splitting_sq() const;

    bool is_degenerate() const { return splitting_sq() == 0.0; }
    bool has_real_splitting() const { return splitting_sq() > 0.0; }

    // Omega > 0. Throws StrongDamping when the splitting is imaginary and
    // DegenerateOmega on the Omega = 0 line.
    double Omega() const;
    // Omega including the degenerate value 0; throws only StrongDamping.
    double Omega_or_zero() const;

private:
    double gamma_a_, gamma_b_;
    Complex omega_;
};

// Biorthonormal eigensystem of H: H psi_i = E_i psi_i, H^dag phi_i = E_i phi_i,
// <phi_i|psi_j> = delta_ij, Sum |psi_i><phi_i| = 1.
struct Spectrum {
    double e1 = 0.0, e2 = 0.0;
    Vec2 psi1, psi2, phi1, phi2;

    Vec2 psi(std::size_t slot) const { return slot == 0 ? psi1 : psi2; }
    Vec2 phi(std::size_t slot) const { return slot == 0 ? phi1 : phi2; }

    // Gram matrices <psi_i|psi_j> and <phi_i|phi_j> (not assumed diagonal).
    Mat2 gram_psi() const;
    Mat2 gram_phi() const;

    double biorthonormality_residual() const;
    double completeness_residual() const;
};

// H = (1/2) [[-i delta, conj(omega)], [omega, i delta]]; traceless,
// det H = (delta^2 - |omega|^2)/4.
Mat2 hamiltonian(const SystemParams& p);

// Eigenvalues -Omega/2, +Omega/2 and the biorthonormal pair system, principal
// square-root branch throughout.
Spectrum eigensystem(const SystemParams& p);

// The metric eta making H pseudo-Hermitian: H^dag = eta H eta^{-1}. Hermitian
// by construction; positive definite in the real-splitting regime. Defined for
// every nonzero coupling (no regime restriction).
Mat2 metric_eta(const SystemParams& p);

// (Omega/|omega|) (|phi_1><phi_1| + |phi_2><phi_2|) together with its
// deviation from metric_eta.
struct EtaPlusDecomposition {
    Mat2 eta_reconstructed;
    double residual;
};
EtaPlusDecomposition eta_plus_decomposition(const SystemParams& p);

// Pseudo-fermion ladder operators (closed forms).
Mat2 b_op(const SystemParams& p);
Mat2 b_dagger_op(const SystemParams& p);
Mat2 b_sharp_op(const SystemParams& p);            // eta-pseudo-adjoint of b
Mat2 b_tilde_op(const SystemParams& p);            // eta b eta^{-1}
Mat2 b_tilde_sharp_op(const SystemParams& p);      // inv-metric adjoint of b_tilde (= b^dag)

// || eta^{-1} b^dag eta - b_sharp(closed form) ||: the two published routes to
// b# must agree.
double b_sharp_route_residual(const SystemParams& p);

// N = b# b.
Mat2 number_op(const SystemParams& p);

struct SymmetryOps {
    Mat2 parity;                 // [[0,1],[1,0]]
    Mat2 parity_generalized;     // |phi_1><phi_1| - |phi_2><phi_2|
    Mat2 charge;                 // |psi_1><phi_1| - |psi_2><phi_2| = -(2/Omega) H
    Mat2 time_reversal_unitary;  // diagonal unitary factor of T = U K0
};
SymmetryOps symmetry_operators(const SystemParams& p);

// Residuals of P conj(H) P^{-1} = H and (P K0)^2 = 1.
CheckReport pt_symmetry_report(const SystemParams& p, double tol = 1e-12);

// Residuals of the full ladder-operator algebra: nilpotency, anticommutator,
// actions on the eigenvectors, number-operator relations, the factorization
// H = Omega (b# b - 1/2), pseudo-Hermiticity of H, the two routes to b#, and
// the inverse-metric pair algebra of b_tilde.
CheckReport algebra_report(const SystemParams& p, double tol = 1e-12);

double frob_dist(const Mat2& a, const Mat2& b);

} // namespace pfc
