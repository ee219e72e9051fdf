#include "pfc/twolevel.hpp"

#include <cmath>

namespace pfc {

namespace {

const Complex I{0.0, 1.0};

} // namespace

SystemParams::SystemParams(double gamma_a, double gamma_b, Complex omega)
    : gamma_a_(gamma_a), gamma_b_(gamma_b), omega_(omega) {
    if (!std::isfinite(gamma_a) || !std::isfinite(gamma_b) || !std::isfinite(omega.real()) ||
        !std::isfinite(omega.imag()))
        throw ArgumentError("system parameters must be finite");
    if (gamma_a < 0.0 || gamma_b < 0.0)
        throw ArgumentError("decay rates must be nonnegative");
    if (omega == Complex{})
        throw ZeroCoupling("omega = 0: levels do not couple");
}

double SystemParams::splitting_sq() const {
    return std::norm(omega_) - delta() * delta();
}

double SystemParams::Omega() const {
    const double s = splitting_sq();
    if (s < 0.0)
        throw StrongDamping("|omega|^2 < delta^2: level splitting is imaginary");
    if (s == 0.0)
        throw DegenerateOmega("|omega|^2 = delta^2: degenerate (zero) splitting");
    return std::sqrt(s);
}

double SystemParams::Omega_or_zero() const {
    const double s = splitting_sq();
    if (s < 0.0)
        throw StrongDamping("|omega|^2 < delta^2: level splitting is imaginary");
    return std::sqrt(s);
}

Mat2 Spectrum::gram_psi() const {
    Mat2 g;
    g << psi1.dot(psi1), psi1.dot(psi2), psi2.dot(psi1), psi2.dot(psi2);
    return g;
}

Mat2 Spectrum::gram_phi() const {
    Mat2 g;
    g << phi1.dot(phi1), phi1.dot(phi2), phi2.dot(phi1), phi2.dot(phi2);
    return g;
}

double Spectrum::biorthonormality_residual() const {
    Mat2 overlap;
    overlap << phi1.dot(psi1), phi1.dot(psi2), phi2.dot(psi1), phi2.dot(psi2);
    return (overlap - Mat2::Identity()).cwiseAbs().maxCoeff();
}

double Spectrum::completeness_residual() const {
    const Mat2 sum = psi1 * phi1.adjoint() + psi2 * phi2.adjoint();
    return (sum - Mat2::Identity()).norm();
}

Mat2 hamiltonian(const SystemParams& p) {
    const double d = p.delta();
    Mat2 h;
    h << -I * d / 2.0, std::conj(p.omega()) / 2.0, p.omega() / 2.0, I * d / 2.0;
    return h;
}

Spectrum eigensystem(const SystemParams& p) {
    const double W = p.Omega();
    const double d = p.delta();
    const double w = p.omega_abs();
    const Complex ws = std::conj(p.omega());
    const double root2W = std::sqrt(2.0 * W);
    const Complex sp = std::sqrt(Complex{W, d});    // sqrt(Omega + i delta), principal
    const Complex sm = std::sqrt(Complex{W, -d});   // sqrt(Omega - i delta), principal

    Spectrum s;
    s.e1 = -W / 2.0;
    s.e2 = W / 2.0;
    s.psi1 << -ws * sp / w / root2W, sm / root2W;
    s.psi2 << ws * sm / w / root2W, sp / root2W;
    // Dual vectors: same expressions with Omega real, so conj(Omega) = Omega
    // and the inner roots swap.
    s.phi1 << -ws * sm / w / root2W, sp / root2W;
    s.phi2 << ws * sp / w / root2W, sm / root2W;
    return s;
}

Mat2 metric_eta(const SystemParams& p) {
    const double d = p.delta();
    const double w2 = std::norm(p.omega());
    const Complex off = I * d * std::conj(p.omega()) / w2;
    Mat2 eta;
    eta << 1.0, off, std::conj(off), 1.0;
    return eta;
}

EtaPlusDecomposition eta_plus_decomposition(const SystemParams& p) {
    const Spectrum s = eigensystem(p);
    const double factor = p.Omega() / p.omega_abs();
    EtaPlusDecomposition r;
    r.eta_reconstructed =
        factor * (s.phi1 * s.phi1.adjoint() + s.phi2 * s.phi2.adjoint());
    r.residual = frob_dist(r.eta_reconstructed, metric_eta(p));
    return r;
}

Mat2 b_op(const SystemParams& p) {
    const double W = p.Omega();
    const double d = p.delta();
    const double w = p.omega_abs();
    const Complex om = p.omega();
    const Complex ws = std::conj(om);
    Mat2 b;
    b << -w, -ws * Complex{W, d} / w, om * Complex{W, -d} / w, w;
    return b / (2.0 * W);
}

Mat2 b_dagger_op(const SystemParams& p) {
    const double W = p.Omega();
    const double d = p.delta();
    const double w = p.omega_abs();
    const Complex om = p.omega();
    const Complex ws = std::conj(om);
    Mat2 bd;
    bd << -w, ws * Complex{W, d} / w, -om * Complex{W, -d} / w, w;
    return bd / (2.0 * W);
}

Mat2 b_sharp_op(const SystemParams& p) {
    const double W = p.Omega();
    const double d = p.delta();
    const double w = p.omega_abs();
    const Complex om = p.omega();
    const Complex ws = std::conj(om);
    Mat2 bs;
    bs << -w, ws * Complex{W, -d} / w, -om * Complex{W, d} / w, w;
    return bs / (2.0 * W);
}

Mat2 b_tilde_op(const SystemParams& p) {
    const Mat2 eta = metric_eta(p);
    return eta * b_op(p) * eta.inverse();
}

Mat2 b_tilde_sharp_op(const SystemParams& p) {
    // eta'-pseudo-adjoint of b_tilde with eta' = eta^{-1}:
    // (eta')^{-1} b_tilde^dag eta' = eta b_tilde^dag eta^{-1}.
    const Mat2 eta = metric_eta(p);
    return eta * b_tilde_op(p).adjoint() * eta.inverse();
}

double b_sharp_route_residual(const SystemParams& p) {
    const Mat2 eta = metric_eta(p);
    const Mat2 via_metric = eta.inverse() * b_dagger_op(p) * eta;
    return frob_dist(via_metric, b_sharp_op(p));
}

Mat2 number_op(const SystemParams& p) { return b_sharp_op(p) * b_op(p); }

SymmetryOps symmetry_operators(const SystemParams& p) {
    const Spectrum s = eigensystem(p);
    SymmetryOps ops;
    ops.parity << 0.0, 1.0, 1.0, 0.0;
    ops.parity_generalized = s.phi1 * s.phi1.adjoint() - s.phi2 * s.phi2.adjoint();
    ops.charge = s.psi1 * s.phi1.adjoint() - s.psi2 * s.phi2.adjoint();
    const Complex u = p.omega() / p.omega_abs();
    ops.time_reversal_unitary << u, 0.0, 0.0, u;
    return ops;
}

CheckReport pt_symmetry_report(const SystemParams& p, double tol) {
    const Mat2 h = hamiltonian(p);
    Mat2 parity;
    parity << 0.0, 1.0, 1.0, 0.0;

    CheckReport r;
    r.add("symmetry.pt_commutation", "P conj(H) P^-1 equals H (PT invariance)",
          frob_dist(parity * h.conjugate() * parity, h), tol);

    double worst = 0.0;
    const Vec2 probes[] = {Vec2(1.0, 0.0), Vec2(0.0, 1.0), Vec2(Complex{0.5, 0.5}, 1.0),
                           Vec2(1.0, Complex{-0.25, 1.0})};
    for (const auto& v : probes) {
        const Vec2 once = parity * v.conjugate();
        const Vec2 twice = parity * once.conjugate();
        worst = std::max(worst, (twice - v).norm());
    }
    r.add("symmetry.pt_squared", "(P K0)^2 acts as the identity", worst, tol);
    return r;
}

CheckReport algebra_report(const SystemParams& p, double tol) {
    const double W = p.Omega();
    const Mat2 h = hamiltonian(p);
    const Mat2 eta = metric_eta(p);
    const Mat2 b = b_op(p);
    const Mat2 bs = b_sharp_op(p);
    const Mat2 n = bs * b;
    const Mat2 id = Mat2::Identity();
    const Spectrum s = eigensystem(p);

    CheckReport r;
    r.add("algebra.b_nilpotent", "b^2 = 0", (b * b).norm(), tol);
    r.add("algebra.b_sharp_nilpotent", "(b#)^2 = 0", (bs * bs).norm(), tol);
    r.add("algebra.anticommutator", "{b, b#} = 1", frob_dist(b * bs + bs * b, id), tol);
    r.add("algebra.lowering_ground", "b annihilates the lower eigenvector",
          (b * s.psi1).norm(), tol);
    r.add("algebra.lowering_step", "b maps the upper eigenvector to the lower one",
          (b * s.psi2 - s.psi1).norm(), tol);
    r.add("algebra.raising_top", "b# annihilates the upper eigenvector",
          (bs * s.psi2).norm(), tol);
    r.add("algebra.raising_step", "b# maps the lower eigenvector to the upper one",
          (bs * s.psi1 - s.psi2).norm(), tol);
    r.add("algebra.number_anticomm_b", "{N, b} = b", frob_dist(n * b + b * n, b), tol);
    r.add("algebra.number_anticomm_b_sharp", "{N, b#} = b#",
          frob_dist(n * bs + bs * n, bs), tol);
    r.add("algebra.number_idempotent", "N^2 = N", frob_dist(n * n, n), tol);
    r.add("algebra.factorization", "H = Omega (b# b - 1/2)",
          frob_dist(h, W * (n - 0.5 * id)), tol);
    r.add("algebra.pseudo_hermitian", "H^dag eta = eta H",
          frob_dist(h.adjoint() * eta, eta * h), tol);
    r.add("algebra.b_sharp_routes", "metric route to b# matches its closed form",
          b_sharp_route_residual(p), tol);

    const Mat2 bt = b_tilde_op(p);
    const Mat2 bts = b_tilde_sharp_op(p);
    r.add("algebra.dual_anticommutator", "{b~, b~#'} = 1",
          frob_dist(bt * bts + bts * bt, id), tol);
    r.add("algebra.dual_b_nilpotent", "b~^2 = 0", (bt * bt).norm(), tol);
    r.add("algebra.dual_b_sharp_nilpotent", "(b~#')^2 = 0", (bts * bts).norm(), tol);
    r.add("algebra.dual_sharp_is_b_dagger", "inv-metric adjoint of b~ equals b^dag",
          frob_dist(bts, b_dagger_op(p)), tol);
    return r;
}

double frob_dist(const Mat2& a, const Mat2& b) { return (a - b).norm(); }

} // namespace pfc
