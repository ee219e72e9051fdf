#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "pfc/twolevel.hpp"

using namespace pfc;

namespace {

SystemParams canonical() { return SystemParams(1.6, 0.4, 1.0); }

std::vector<SystemParams> sweep_grid() {
    std::vector<SystemParams> grid;
    const double ratios[] = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99};
    for (double r : ratios)
        for (int k = 0; k < 8; ++k) {
            const double theta = k * M_PI / 4.0;
            grid.emplace_back(2.0 * r, 0.0, std::polar(1.0, theta));
        }
    return grid;
}

SystemParams random_params(std::mt19937& rng) {
    std::uniform_real_distribution<double> ratio(0.0, 0.95), mag(0.5, 2.0), arg(0.0, 2 * M_PI),
        base(0.0, 1.0);
    const double w = mag(rng);
    const double delta = ratio(rng) * w;
    const double gb = base(rng);
    return SystemParams(gb + 2.0 * delta, gb, std::polar(w, arg(rng)));
}

} // namespace

TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(SystemParams(-0.1, 0.0, 1.0), ArgumentError);
    CHECK_THROWS_AS(SystemParams(0.0, -2.0, 1.0), ArgumentError);
    CHECK_THROWS_AS(SystemParams(1.0, 0.0, 0.0), ZeroCoupling);
    CHECK_THROWS_AS(SystemParams(3.0, 0.0, 1.0).Omega(), StrongDamping);
    CHECK_THROWS_AS(SystemParams(2.0, 0.0, 1.0).Omega(), DegenerateOmega);
    CHECK(SystemParams(2.0, 0.0, 1.0).Omega_or_zero() == 0.0);
    CHECK(SystemParams(2.0, 0.0, 1.0).is_degenerate());
}

TEST_CASE("derived parameters at the canonical point") {
    auto p = canonical();
    CHECK(p.delta() == doctest::Approx(0.6).epsilon(1e-15));
    CHECK(p.Gamma() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p.Omega() == doctest::Approx(0.8).epsilon(1e-15));
}

TEST_CASE("hamiltonian matrix entries") {
    const Mat2 h = hamiltonian(canonical());
    CHECK(std::abs(h(0, 0) - Complex{0.0, -0.3}) < 1e-15);
    CHECK(std::abs(h(0, 1) - Complex{0.5, 0.0}) < 1e-15);
    CHECK(std::abs(h(1, 0) - Complex{0.5, 0.0}) < 1e-15);
    CHECK(std::abs(h(1, 1) - Complex{0.0, 0.3}) < 1e-15);
}

TEST_CASE("hamiltonian is Hermitian iff the decay rates match") {
    const Mat2 h_sym = hamiltonian(SystemParams(0.7, 0.7, Complex{0.3, 0.4}));
    CHECK(frob_dist(h_sym, h_sym.adjoint()) == 0.0);
    const Mat2 h = hamiltonian(canonical());
    CHECK(frob_dist(h, h.adjoint()) > 0.1);
}

TEST_CASE("hamiltonian trace, determinant and square") {
    std::mt19937 rng(13);
    for (int k = 0; k < 30; ++k) {
        auto p = random_params(rng);
        const Mat2 h = hamiltonian(p);
        CHECK(std::abs(h.trace()) == 0.0);
        const double det_expected = (p.delta() * p.delta() - std::norm(p.omega())) / 4.0;
        CHECK(std::abs(h.determinant() - det_expected) < 1e-14);
        const double w2 = p.has_real_splitting() ? p.Omega() * p.Omega() : -p.splitting_sq();
        if (p.has_real_splitting())
            CHECK(frob_dist(h * h, (w2 / 4.0) * Mat2::Identity()) < 1e-14);
    }
}

TEST_CASE("eigensystem at the canonical point") {
    const Spectrum s = eigensystem(canonical());
    CHECK(s.e1 == doctest::Approx(-0.4).epsilon(1e-15));
    CHECK(s.e2 == doctest::Approx(0.4).epsilon(1e-15));
    const Mat2 h = hamiltonian(canonical());
    CHECK((h * s.psi1 - s.e1 * s.psi1).norm() < 1e-15);
    CHECK((h * s.psi2 - s.e2 * s.psi2).norm() < 1e-15);
    CHECK((h.adjoint() * s.phi1 - s.e1 * s.phi1).norm() < 1e-15);
    CHECK((h.adjoint() * s.phi2 - s.e2 * s.phi2).norm() < 1e-15);
}

TEST_CASE("biorthonormality and completeness over the sweep grid") {
    for (const auto& p : sweep_grid()) {
        const Spectrum s = eigensystem(p);
        CHECK(s.biorthonormality_residual() <= 1e-12);
        CHECK(s.completeness_residual() <= 1e-12);
    }
}

TEST_CASE("Hermitian limit: primal and dual eigenvectors coincide") {
    const Spectrum s = eigensystem(SystemParams(0.5, 0.5, Complex{0.8, -0.6}));
    CHECK((s.psi1 - s.phi1).norm() <= 1e-15);
    CHECK((s.psi2 - s.phi2).norm() <= 1e-15);
    CHECK(std::abs(s.psi1.dot(s.psi2)) <= 1e-15);
    CHECK(std::abs(s.psi1.norm() - 1.0) <= 1e-15);
}

TEST_CASE("metric entries and basic properties") {
    const Mat2 eta = metric_eta(canonical());
    CHECK(std::abs(eta(0, 0) - Complex{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(eta(0, 1) - Complex{0.0, 0.6}) < 1e-15);
    CHECK(std::abs(eta(1, 0) - Complex{0.0, -0.6}) < 1e-15);

    CHECK(frob_dist(metric_eta(SystemParams(0.3, 0.3, 1.0)), Mat2::Identity()) == 0.0);

    std::mt19937 rng(17);
    for (int k = 0; k < 30; ++k) {
        auto p = random_params(rng);
        const Mat2 e = metric_eta(p);
        const Mat2 h = hamiltonian(p);
        CHECK(frob_dist(e, e.adjoint()) == 0.0);   // Hermitian by construction
        CHECK(frob_dist(h.adjoint() * e, e * h) <= 1e-12);
        Eigen::SelfAdjointEigenSolver<Mat2> solver(e);
        CHECK(solver.eigenvalues().minCoeff() > 0.0);
    }
}

TEST_CASE("metric works in the strong-damping regime too") {
    SystemParams p(3.0, 0.0, 1.0);   // delta = 1.5 > |omega|
    const Mat2 e = metric_eta(p);
    const Mat2 h = hamiltonian(p);
    CHECK(frob_dist(h.adjoint() * e, e * h) <= 1e-12);
}

TEST_CASE("dual-projector decomposition of the metric") {
    CHECK(eta_plus_decomposition(canonical()).residual <= 1e-12);
    auto hermitian = eta_plus_decomposition(SystemParams(0.2, 0.2, 1.0));
    CHECK(frob_dist(hermitian.eta_reconstructed, Mat2::Identity()) <= 1e-14);
    std::mt19937 rng(19);
    for (int k = 0; k < 30; ++k) CHECK(eta_plus_decomposition(random_params(rng)).residual <= 1e-12);
}

TEST_CASE("lowering operator matrix at the canonical point") {
    const Mat2 b = b_op(canonical());
    const double f = 1.0 / 1.6;
    CHECK(std::abs(b(0, 0) - f * Complex{-1.0, 0.0}) < 1e-15);
    CHECK(std::abs(b(0, 1) - f * Complex{-0.8, -0.6}) < 1e-15);
    CHECK(std::abs(b(1, 0) - f * Complex{0.8, -0.6}) < 1e-15);
    CHECK(std::abs(b(1, 1) - f * Complex{1.0, 0.0}) < 1e-15);
}

TEST_CASE("adjoint and pseudo-adjoint ladder operators") {
    std::mt19937 rng(23);
    for (int k = 0; k < 30; ++k) {
        auto p = random_params(rng);
        CHECK(frob_dist(b_dagger_op(p), b_op(p).adjoint()) <= 1e-15);
        CHECK(b_sharp_route_residual(p) <= 1e-12);
    }
    // Hermitian limit: the metric is trivial and b# collapses to b^dag.
    SystemParams herm(0.4, 0.4, Complex{0.6, 0.8});
    CHECK(frob_dist(b_sharp_op(herm), b_dagger_op(herm)) <= 1e-14);
}

TEST_CASE("number operator") {
    auto p = canonical();
    const Mat2 n = number_op(p);
    const Spectrum s = eigensystem(p);
    CHECK(frob_dist(n * n, n) <= 1e-12);
    CHECK((n * s.psi1).norm() <= 1e-12);
    CHECK((n * s.psi2 - s.psi2).norm() <= 1e-12);
}

TEST_CASE("symmetry operators") {
    std::mt19937 rng(29);
    for (int k = 0; k < 30; ++k) {
        auto p = random_params(rng);
        const auto ops = symmetry_operators(p);
        const Mat2 h = hamiltonian(p);
        const double w = p.omega_abs();

        CHECK(frob_dist(ops.parity * ops.parity, Mat2::Identity()) == 0.0);

        Mat2 pgen_closed;
        pgen_closed << 0.0, -std::conj(p.omega()) / w, -p.omega() / w, 0.0;
        CHECK(frob_dist(ops.parity_generalized, pgen_closed) <= 1e-12);

        CHECK(frob_dist(ops.charge, (-2.0 / p.Omega()) * h) <= 1e-12);
        CHECK(frob_dist(ops.charge * h, h * ops.charge) <= 1e-12);

        CHECK(frob_dist(ops.time_reversal_unitary * ops.time_reversal_unitary.adjoint(),
                        Mat2::Identity()) <= 1e-15);
    }
}

TEST_CASE("PT symmetry report") {
    CHECK(pt_symmetry_report(canonical()).all_pass());
    CHECK(pt_symmetry_report(SystemParams(0.1, 0.1, 1.0)).all_pass());
    std::mt19937 rng(31);
    for (int k = 0; k < 20; ++k) CHECK(pt_symmetry_report(random_params(rng)).all_pass());
}

TEST_CASE("algebra report at the canonical point and in the Hermitian limit") {
    auto r = algebra_report(canonical(), 1e-12);
    for (const auto& e : r.entries()) {
        INFO(e.id, " residual=", e.residual);
        CHECK(e.pass);
    }
    CHECK(algebra_report(SystemParams(0.0, 0.0, 1.0), 1e-12).all_pass());
    CHECK_THROWS_AS(algebra_report(SystemParams(3.0, 0.0, 1.0), 1e-12), StrongDamping);
}

TEST_CASE("factorization of H across the sweep grid") {
    for (const auto& p : sweep_grid()) {
        const Mat2 h = hamiltonian(p);
        const Mat2 n = number_op(p);
        CHECK(frob_dist(h, p.Omega() * (n - 0.5 * Mat2::Identity())) <= 1e-12);
    }
}
