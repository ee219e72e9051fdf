#pragma once

// Z2-graded vectors, bras and operators with Grassmann coefficients over a
// two-slot biorthonormal basis. Slot 0 is even (fermion number 0), slot 1 is
// odd. Canonical form keeps coefficients LEFT of kets and dyads and RIGHT of
// bras; every movement of a parity-q Grassmann factor across a parity-p basis
// symbol contributes the Koszul sign (-1)^{pq}. Contractions pair a bra of one
// basis with a ket of the dual basis via <phi_i|psi_j> = delta_ij; same-basis
// pairings need an explicit numeric Gram matrix.

#include <array>
#include <optional>
#include <ostream>
#include <string>

#include "pfc/grassmann.hpp"
#include "pfc/linalg.hpp"

namespace pfc {

enum class BasisTag { Psi, Phi };

constexpr BasisTag dual_tag(BasisTag t) {
    return t == BasisTag::Psi ? BasisTag::Phi : BasisTag::Psi;
}

constexpr int slot_parity(std::size_t slot) { return static_cast<int>(slot & 1); }

const char* tag_name(BasisTag t);

class GradedVector {
public:
    GradedVector(BasisTag tag, GrassmannElement c0, GrassmannElement c1);

    BasisTag tag() const { return tag_; }
    const Signature& sig() const { return comp_[0].sig(); }
    const GrassmannElement& comp(std::size_t i) const { return comp_.at(i); }
    bool is_zero() const { return comp_[0].is_zero() && comp_[1].is_zero(); }
    std::optional<int> parity() const;

    bool operator==(const GradedVector& o) const;
    bool operator!=(const GradedVector& o) const { return !(*this == o); }

private:
    BasisTag tag_;
    std::array<GrassmannElement, 2> comp_;
};

class GradedBra {
public:
    GradedBra(BasisTag tag, GrassmannElement c0, GrassmannElement c1);

    BasisTag tag() const { return tag_; }
    const Signature& sig() const { return comp_[0].sig(); }
    const GrassmannElement& comp(std::size_t i) const { return comp_.at(i); }
    bool is_zero() const { return comp_[0].is_zero() && comp_[1].is_zero(); }

    bool operator==(const GradedBra& o) const;
    bool operator!=(const GradedBra& o) const { return !(*this == o); }

private:
    BasisTag tag_;
    std::array<GrassmannElement, 2> comp_;
};

class GradedOperator {
public:
    GradedOperator(BasisTag left, BasisTag right, Signature sig);
    GradedOperator(BasisTag left, BasisTag right,
                   std::array<std::array<GrassmannElement, 2>, 2> comp);

    BasisTag left_tag() const { return left_; }
    BasisTag right_tag() const { return right_; }
    const Signature& sig() const { return comp_[0][0].sig(); }
    const GrassmannElement& comp(std::size_t i, std::size_t j) const;
    void set_comp(std::size_t i, std::size_t j, GrassmannElement e);
    bool is_zero() const;
    // Parity of a homogeneous operator: q_ij + i + j constant over nonzero
    // entries; nullopt otherwise.
    std::optional<int> parity() const;

    bool operator==(const GradedOperator& o) const;
    bool operator!=(const GradedOperator& o) const { return !(*this == o); }

private:
    BasisTag left_, right_;
    std::array<std::array<GrassmannElement, 2>, 2> comp_;
};

// ---- constructors -------------------------------------------------------

GradedVector basis_ket(Signature sig, BasisTag tag, std::size_t slot);
GradedBra basis_bra(Signature sig, BasisTag tag, std::size_t slot);

// Identity Sum_i |e_i><f_i| over (tag, dual(tag)) dyads.
GradedOperator identity_operator(Signature sig, BasisTag left);
// |e_0><f_1| : annihilates slot 0, maps slot 1 to slot 0.
GradedOperator lowering_operator(Signature sig, BasisTag left);
// |e_1><f_0| : annihilates slot 1, maps slot 0 to slot 1.
GradedOperator raising_operator(Signature sig, BasisTag left);
GradedOperator dyad_operator(BasisTag left, std::size_t i, BasisTag right, std::size_t j,
                             GrassmannElement coeff);

// ---- linear structure ---------------------------------------------------

GradedVector operator+(const GradedVector& a, const GradedVector& b);
GradedVector operator-(const GradedVector& a, const GradedVector& b);
GradedOperator operator+(const GradedOperator& a, const GradedOperator& b);
GradedOperator operator-(const GradedOperator& a, const GradedOperator& b);
GradedBra operator+(const GradedBra& a, const GradedBra& b);
GradedBra operator-(const GradedBra& a, const GradedBra& b);

// ---- Grassmann multiplication with Koszul bookkeeping -------------------

GradedVector times_left(const GrassmannElement& mu, const GradedVector& v);
GradedVector times_right(const GradedVector& v, const GrassmannElement& mu);
GradedBra times_left(const GrassmannElement& mu, const GradedBra& br);
GradedBra times_right(const GradedBra& br, const GrassmannElement& mu);
GradedOperator times_left(const GrassmannElement& mu, const GradedOperator& a);
GradedOperator times_right(const GradedOperator& a, const GrassmannElement& mu);

// ---- contractions -------------------------------------------------------

// Operator applied to a ket; requires a.right_tag == dual(v.tag).
GradedVector apply(const GradedOperator& a, const GradedVector& v);
// Bra applied to an operator from the left; requires br.tag == dual(a.left_tag).
GradedBra apply(const GradedBra& br, const GradedOperator& a);
// Operator composition; requires a.right_tag == dual(b.left_tag).
GradedOperator operator*(const GradedOperator& a, const GradedOperator& b);

// <br|v> against an explicit pairing table: gram(a, b) = <bra slot a|ket slot b>.
GrassmannElement pair(const GradedBra& br, const GradedVector& v, const Mat2& gram);
// Biorthonormal pairing (table = identity); PairingError unless the bra basis
// is dual to the ket basis.
GrassmannElement pair(const GradedBra& br, const GradedVector& v);

// |v><br| as a graded operator.
GradedOperator outer(const GradedVector& v, const GradedBra& br);

// ---- involutions and calculus -------------------------------------------

GradedBra dagger(const GradedVector& v);
GradedVector dagger(const GradedBra& br);
GradedOperator dagger(const GradedOperator& a);

// exp of an operator with body-free coefficients (terminating series).
GradedOperator op_exp(const GradedOperator& a);

// Coefficient-wise double Berezin integral against d(g*) dg; the integrand
// must already be in canonical form (this type can hold nothing else).
GradedOperator berezin_pair(const GradedOperator& a, std::size_t g);
GradedVector berezin_pair(const GradedVector& v, std::size_t g);

// ---- diagnostics ---------------------------------------------------------

double max_coeff_dist(const GradedVector& a, const GradedVector& b);
double max_coeff_dist(const GradedOperator& a, const GradedOperator& b);

std::string to_string(const GradedVector& v);
std::string to_string(const GradedOperator& a);
std::ostream& operator<<(std::ostream& os, const GradedVector& v);
std::ostream& operator<<(std::ostream& os, const GradedOperator& a);

} // namespace pfc
