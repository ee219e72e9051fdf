#pragma once

// Exact arithmetic in a complex Grassmann algebra on n ordered anticommuting
// generators. Generators come in conjugate pairs (g, g*); elements are finite
// linear combinations of square-free monomials stored in canonical ascending
// generator order. All operations are pure; coefficients are complex doubles
// and terms are pruned only when a coefficient is bit-exact zero, so algebraic
// cancellations are exact and equality of canonical forms is meaningful.

#include <complex>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "pfc/errors.hpp"

namespace pfc {

using Complex = std::complex<double>;

// Subset of generator indices, bit i <=> generator i. The bit order is the
// canonical monomial order.
using Mask = std::uint32_t;

class GeneratorSignature {
public:
    // names[i] labels generator i; star[i] is the index of its conjugate
    // partner. star must be an involution without fixed points matching the
    // (g, g*) pairing.
    GeneratorSignature(std::vector<std::string> names, std::vector<std::size_t> star);

    std::size_t size() const { return names_.size(); }
    const std::string& name(std::size_t g) const;
    std::size_t star(std::size_t g) const;

    bool operator==(const GeneratorSignature& other) const;
    bool operator!=(const GeneratorSignature& other) const { return !(*this == other); }

private:
    std::vector<std::string> names_;
    std::vector<std::size_t> star_;
};

using Signature = std::shared_ptr<const GeneratorSignature>;

// Builds the signature (b0, b0*, b1, b1*, ...) for the given base labels,
// star-paired adjacently. complex_pairs({"xi"}) is the one-mode algebra used
// throughout; complex_pairs({"xi", "zeta"}) hosts two-parameter overlaps.
Signature complex_pairs(const std::vector<std::string>& bases);

class GrassmannElement {
public:
    explicit GrassmannElement(Signature sig) : sig_(std::move(sig)) {}

    static GrassmannElement zero(Signature sig) { return GrassmannElement(std::move(sig)); }
    static GrassmannElement unit(Signature sig, Complex c = 1.0);
    static GrassmannElement generator(Signature sig, std::size_t g);
    // Monomial c * g_{k_0} g_{k_1} ... in the given (not necessarily
    // canonical) order; reordering signs are applied, repeats give zero.
    static GrassmannElement monomial(Signature sig, const std::vector<std::size_t>& gens,
                                     Complex c = 1.0);

    const Signature& sig() const { return sig_; }
    const std::map<Mask, Complex>& terms() const { return terms_; }

    Complex coeff(Mask m) const;
    Complex coeff(const std::vector<std::size_t>& gens) const;
    Complex body() const { return coeff(Mask{0}); }
    bool is_zero() const { return terms_.empty(); }
    // Parity shared by all monomials, or nullopt if inhomogeneous / zero.
    std::optional<int> parity() const;

    void set_coeff(Mask m, Complex c);

    bool operator==(const GrassmannElement& other) const;
    bool operator!=(const GrassmannElement& other) const { return !(*this == other); }

private:
    Signature sig_;
    std::map<Mask, Complex> terms_;
};

GrassmannElement operator+(const GrassmannElement& a, const GrassmannElement& b);
GrassmannElement operator-(const GrassmannElement& a, const GrassmannElement& b);
GrassmannElement operator-(const GrassmannElement& a);
GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b);
GrassmannElement operator*(Complex c, const GrassmannElement& a);
GrassmannElement operator*(const GrassmannElement& a, Complex c);

// Conjugation: coefficients conjugate, generators map to their star partners,
// monomial order reverses before recanonicalization, so (ab)* = b* a*.
GrassmannElement star(const GrassmannElement& a);

// Left derivative d/dg: monomials not containing g vanish; in the others g is
// anticommuted to the front (collecting the sign) and removed.
GrassmannElement deriv_left(const GrassmannElement& a, std::size_t g);

// Berezin integral over dg; by construction identical to deriv_left.
GrassmannElement berezin(const GrassmannElement& a, std::size_t g);

// Double integral against d(g*) dg: the dg integral is applied first, then
// d(g*). This order makes the mixed projector integrals below come out right.
GrassmannElement berezin_pair(const GrassmannElement& a, std::size_t g);

// exp(a) for body-free a; the series terminates at the nilpotency degree.
GrassmannElement grassmann_exp(const GrassmannElement& a);

// Koszul sign applicator: multiplies every monomial of parity q by (-1)^{p q}.
// This is the sign picked up when the element crosses a parity-p symbol.
GrassmannElement koszul_flip(const GrassmannElement& a, int p);

// Substitution g -> c*g (and nothing else): monomials containing g are scaled
// by c. Composing with the star partner implements g -> c g, g* -> conj(c) g*.
GrassmannElement scale_generator(const GrassmannElement& a, std::size_t g, Complex c);

// Largest |coefficient| of a - b over the union of monomials.
double max_coeff_dist(const GrassmannElement& a, const GrassmannElement& b);

std::string to_string(const GrassmannElement& a);
std::ostream& operator<<(std::ostream& os, const GrassmannElement& a);

} // namespace pfc
