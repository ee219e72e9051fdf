#include "pfc/grassmann.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace pfc {

namespace {

void require_same_sig(const GrassmannElement& a, const GrassmannElement& b) {
    if (a.sig() == b.sig()) return;          // shared pointer fast path
    if (a.sig() && b.sig() && *a.sig() == *b.sig()) return;
    throw SignatureError("operands live over different generator signatures");
}

void require_valid_gen(const Signature& sig, std::size_t g) {
    if (!sig || g >= sig->size())
        throw SignatureError("generator index " + std::to_string(g) + " outside signature");
}

// Sorts a generator sequence into ascending order, returning the permutation
// sign, or 0 if a generator repeats (nilpotency).
int canonicalize_sequence(std::vector<std::size_t>& seq) {
    int sign = 1;
    for (std::size_t i = 1; i < seq.size(); ++i) {
        for (std::size_t j = i; j > 0 && seq[j - 1] >= seq[j]; --j) {
            if (seq[j - 1] == seq[j]) return 0;
            std::swap(seq[j - 1], seq[j]);
            sign = -sign;
        }
    }
    return sign;
}

std::vector<std::size_t> mask_to_sequence(Mask m) {
    std::vector<std::size_t> seq;
    for (std::size_t g = 0; m != 0; ++g, m >>= 1)
        if (m & 1u) seq.push_back(g);
    return seq;
}

// Sign of merging two canonical monomials a,b into canonical order: parity of
// the number of pairs (i in a, j in b) with i > j.
int merge_sign(Mask a, Mask b) {
    int swaps = 0;
    for (Mask rest = b; rest != 0; rest &= rest - 1) {
        const int j = std::countr_zero(rest);
        const Mask above = (j >= 31) ? Mask{0} : (a >> (j + 1));
        swaps += std::popcount(above);
    }
    return (swaps % 2 == 0) ? 1 : -1;
}

} // namespace

GeneratorSignature::GeneratorSignature(std::vector<std::string> names,
                                       std::vector<std::size_t> star)
    : names_(std::move(names)), star_(std::move(star)) {
    if (names_.size() != star_.size())
        throw SignatureError("star pairing size differs from generator count");
    if (names_.size() > 32) throw SignatureError("at most 32 generators supported");
    for (std::size_t g = 0; g < star_.size(); ++g) {
        if (star_[g] >= star_.size() || star_[star_[g]] != g)
            throw SignatureError("star pairing is not an involution");
        for (std::size_t h = g + 1; h < names_.size(); ++h)
            if (names_[g] == names_[h])
                throw SignatureError("generator names must be distinct");
    }
}

const std::string& GeneratorSignature::name(std::size_t g) const {
    if (g >= names_.size()) throw SignatureError("generator index outside signature");
    return names_[g];
}

std::size_t GeneratorSignature::star(std::size_t g) const {
    if (g >= star_.size()) throw SignatureError("generator index outside signature");
    return star_[g];
}

bool GeneratorSignature::operator==(const GeneratorSignature& other) const {
    return names_ == other.names_ && star_ == other.star_;
}

Signature complex_pairs(const std::vector<std::string>& bases) {
    std::vector<std::string> names;
    std::vector<std::size_t> star;
    for (const auto& b : bases) {
        names.push_back(b);
        names.push_back(b + "*");
        star.push_back(names.size() - 1);
        star.push_back(names.size() - 2);
    }
    return std::make_shared<const GeneratorSignature>(std::move(names), std::move(star));
}

GrassmannElement GrassmannElement::unit(Signature sig, Complex c) {
    GrassmannElement e(std::move(sig));
    e.set_coeff(0, c);
    return e;
}

GrassmannElement GrassmannElement::generator(Signature sig, std::size_t g) {
    require_valid_gen(sig, g);
    GrassmannElement e(std::move(sig));
    e.set_coeff(Mask{1} << g, 1.0);
    return e;
}

GrassmannElement GrassmannElement::monomial(Signature sig, const std::vector<std::size_t>& gens,
                                            Complex c) {
    for (auto g : gens) require_valid_gen(sig, g);
    std::vector<std::size_t> seq = gens;
    const int sign = canonicalize_sequence(seq);
    GrassmannElement e(std::move(sig));
    if (sign == 0 || c == Complex{}) return e;
    Mask m = 0;
    for (auto g : seq) m |= Mask{1} << g;
    e.set_coeff(m, static_cast<double>(sign) * c);
    return e;
}

Complex GrassmannElement::coeff(Mask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Complex{} : it->second;
}

Complex GrassmannElement::coeff(const std::vector<std::size_t>& gens) const {
    std::vector<std::size_t> seq = gens;
    const int sign = canonicalize_sequence(seq);
    if (sign == 0) return Complex{};
    Mask m = 0;
    for (auto g : seq) m |= Mask{1} << g;
    return static_cast<double>(sign) * coeff(m);
}

std::optional<int> GrassmannElement::parity() const {
    std::optional<int> p;
    for (const auto& [m, c] : terms_) {
        const int q = std::popcount(m) % 2;
        if (!p)
            p = q;
        else if (*p != q)
            return std::nullopt;
    }
    return p;
}

void GrassmannElement::set_coeff(Mask m, Complex c) {
    if (sig_ && m >= (Mask{1} << sig_->size()))
        throw SignatureError("monomial mask outside signature");
    if (c == Complex{})
        terms_.erase(m);
    else
        terms_[m] = c;
}

bool GrassmannElement::operator==(const GrassmannElement& other) const {
    require_same_sig(*this, other);
    return terms_ == other.terms_;
}

GrassmannElement operator+(const GrassmannElement& a, const GrassmannElement& b) {
    require_same_sig(a, b);
    GrassmannElement r = a;
    for (const auto& [m, c] : b.terms()) r.set_coeff(m, r.coeff(m) + c);
    return r;
}

GrassmannElement operator-(const GrassmannElement& a, const GrassmannElement& b) {
    require_same_sig(a, b);
    GrassmannElement r = a;
    for (const auto& [m, c] : b.terms()) r.set_coeff(m, r.coeff(m) - c);
    return r;
}

GrassmannElement operator-(const GrassmannElement& a) { return -1.0 * a; }

GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b) {
    require_same_sig(a, b);
    GrassmannElement r(a.sig());
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            if (ma & mb) continue;                       // repeated generator
            const Mask m = ma | mb;
            const double s = merge_sign(ma, mb);
            r.set_coeff(m, r.coeff(m) + s * ca * cb);
        }
    }
    return r;
}

GrassmannElement operator*(Complex c, const GrassmannElement& a) {
    GrassmannElement r(a.sig());
    if (c == Complex{}) return r;
    for (const auto& [m, ca] : a.terms()) r.set_coeff(m, c * ca);
    return r;
}

GrassmannElement operator*(const GrassmannElement& a, Complex c) { return c * a; }

GrassmannElement star(const GrassmannElement& a) {
    GrassmannElement r(a.sig());
    for (const auto& [m, c] : a.terms()) {
        std::vector<std::size_t> seq = mask_to_sequence(m);
        std::reverse(seq.begin(), seq.end());
        for (auto& g : seq) g = a.sig()->star(g);
        const int sign = canonicalize_sequence(seq);
        Mask sm = 0;
        for (auto g : seq) sm |= Mask{1} << g;
        r.set_coeff(sm, r.coeff(sm) + static_cast<double>(sign) * std::conj(c));
    }
    return r;
}

GrassmannElement deriv_left(const GrassmannElement& a, std::size_t g) {
    require_valid_gen(a.sig(), g);
    const Mask bit = Mask{1} << g;
    GrassmannElement r(a.sig());
    for (const auto& [m, c] : a.terms()) {
        if (!(m & bit)) continue;
        // Generators below g are hopped over when g moves to the front.
        const int before = std::popcount(m & (bit - 1));
        const double s = (before % 2 == 0) ? 1.0 : -1.0;
        r.set_coeff(m & ~bit, r.coeff(m & ~bit) + s * c);
    }
    return r;
}

GrassmannElement berezin(const GrassmannElement& a, std::size_t g) { return deriv_left(a, g); }

GrassmannElement berezin_pair(const GrassmannElement& a, std::size_t g) {
    require_valid_gen(a.sig(), g);
    const std::size_t gs = a.sig()->star(g);
    if (gs == g) throw SignatureError("generator has no distinct star partner");
    return berezin(berezin(a, g), gs);
}

GrassmannElement grassmann_exp(const GrassmannElement& a) {
    if (a.body() != Complex{})
        throw NonNilpotentError("exp requires a body-free (nilpotent) element");
    GrassmannElement r = GrassmannElement::unit(a.sig());
    GrassmannElement term = GrassmannElement::unit(a.sig());
    const std::size_t n = a.sig()->size();
    for (std::size_t k = 1; k <= n; ++k) {
        term = (1.0 / static_cast<double>(k)) * (term * a);
        if (term.is_zero()) break;
        r = r + term;
    }
    return r;
}

GrassmannElement koszul_flip(const GrassmannElement& a, int p) {
    if (p % 2 == 0) return a;
    GrassmannElement r(a.sig());
    for (const auto& [m, c] : a.terms())
        r.set_coeff(m, (std::popcount(m) % 2 == 0) ? c : -c);
    return r;
}

GrassmannElement scale_generator(const GrassmannElement& a, std::size_t g, Complex c) {
    require_valid_gen(a.sig(), g);
    const Mask bit = Mask{1} << g;
    GrassmannElement r(a.sig());
    for (const auto& [m, co] : a.terms()) r.set_coeff(m, (m & bit) ? c * co : co);
    return r;
}

double max_coeff_dist(const GrassmannElement& a, const GrassmannElement& b) {
    require_same_sig(a, b);
    double d = 0.0;
    for (const auto& [m, c] : a.terms()) d = std::max(d, std::abs(c - b.coeff(m)));
    for (const auto& [m, c] : b.terms()) d = std::max(d, std::abs(a.coeff(m) - c));
    return d;
}

std::string to_string(const GrassmannElement& a) {
    if (a.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : a.terms()) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
        for (auto g : mask_to_sequence(m)) os << " " << a.sig()->name(g);
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const GrassmannElement& a) {
    return os << to_string(a);
}

} // namespace pfc
