#include "pfc/graded.hpp"

#include <sstream>

namespace pfc {

namespace {

void require_same_sig(const Signature& a, const Signature& b) {
    if (a == b || (a && b && *a == *b)) return;
    throw SignatureError("graded components live over different generator signatures");
}

GrassmannElement cross_sign(const GrassmannElement& e, std::size_t parities_crossed) {
    return koszul_flip(e, static_cast<int>(parities_crossed % 2));
}

} // namespace

const char* tag_name(BasisTag t) { return t == BasisTag::Psi ? "psi" : "phi"; }

GradedVector::GradedVector(BasisTag tag, GrassmannElement c0, GrassmannElement c1)
    : tag_(tag), comp_{std::move(c0), std::move(c1)} {
    require_same_sig(comp_[0].sig(), comp_[1].sig());
}

std::optional<int> GradedVector::parity() const {
    std::optional<int> p;
    for (std::size_t i = 0; i < 2; ++i) {
        if (comp_[i].is_zero()) continue;
        auto q = comp_[i].parity();
        if (!q) return std::nullopt;
        const int total = (*q + slot_parity(i)) % 2;
        if (!p)
            p = total;
        else if (*p != total)
            return std::nullopt;
    }
    return p;
}

bool GradedVector::operator==(const GradedVector& o) const {
    return tag_ == o.tag_ && comp_[0] == o.comp_[0] && comp_[1] == o.comp_[1];
}

GradedBra::GradedBra(BasisTag tag, GrassmannElement c0, GrassmannElement c1)
    : tag_(tag), comp_{std::move(c0), std::move(c1)} {
    require_same_sig(comp_[0].sig(), comp_[1].sig());
}

bool GradedBra::operator==(const GradedBra& o) const {
    return tag_ == o.tag_ && comp_[0] == o.comp_[0] && comp_[1] == o.comp_[1];
}

GradedOperator::GradedOperator(BasisTag left, BasisTag right, Signature sig)
    : left_(left), right_(right),
      comp_{{{GrassmannElement(sig), GrassmannElement(sig)},
             {GrassmannElement(sig), GrassmannElement(sig)}}} {}

GradedOperator::GradedOperator(BasisTag left, BasisTag right,
                               std::array<std::array<GrassmannElement, 2>, 2> comp)
    : left_(left), right_(right), comp_(std::move(comp)) {
    require_same_sig(comp_[0][0].sig(), comp_[0][1].sig());
    require_same_sig(comp_[0][0].sig(), comp_[1][0].sig());
    require_same_sig(comp_[0][0].sig(), comp_[1][1].sig());
}

const GrassmannElement& GradedOperator::comp(std::size_t i, std::size_t j) const {
    return comp_.at(i).at(j);
}

void GradedOperator::set_comp(std::size_t i, std::size_t j, GrassmannElement e) {
    require_same_sig(comp_[0][0].sig(), e.sig());
    comp_.at(i).at(j) = std::move(e);
}

bool GradedOperator::is_zero() const {
    for (const auto& row : comp_)
        for (const auto& e : row)
            if (!e.is_zero()) return false;
    return true;
}

std::optional<int> GradedOperator::parity() const {
    std::optional<int> p;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            if (comp_[i][j].is_zero()) continue;
            auto q = comp_[i][j].parity();
            if (!q) return std::nullopt;
            const int total = static_cast<int>((*q + i + j) % 2);
            if (!p)
                p = total;
            else if (*p != total)
                return std::nullopt;
        }
    }
    return p;
}

bool GradedOperator::operator==(const GradedOperator& o) const {
    if (left_ != o.left_ || right_ != o.right_) return false;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            if (comp_[i][j] != o.comp_[i][j]) return false;
    return true;
}

// ---- constructors -------------------------------------------------------

GradedVector basis_ket(Signature sig, BasisTag tag, std::size_t slot) {
    GrassmannElement c0(sig), c1(sig);
    (slot == 0 ? c0 : c1) = GrassmannElement::unit(sig);
    return GradedVector(tag, std::move(c0), std::move(c1));
}

GradedBra basis_bra(Signature sig, BasisTag tag, std::size_t slot) {
    GrassmannElement c0(sig), c1(sig);
    (slot == 0 ? c0 : c1) = GrassmannElement::unit(sig);
    return GradedBra(tag, std::move(c0), std::move(c1));
}

GradedOperator identity_operator(Signature sig, BasisTag left) {
    GradedOperator a(left, dual_tag(left), sig);
    a.set_comp(0, 0, GrassmannElement::unit(sig));
    a.set_comp(1, 1, GrassmannElement::unit(sig));
    return a;
}

GradedOperator lowering_operator(Signature sig, BasisTag left) {
    GradedOperator a(left, dual_tag(left), sig);
    a.set_comp(0, 1, GrassmannElement::unit(sig));
    return a;
}

GradedOperator raising_operator(Signature sig, BasisTag left) {
    GradedOperator a(left, dual_tag(left), sig);
    a.set_comp(1, 0, GrassmannElement::unit(sig));
    return a;
}

GradedOperator dyad_operator(BasisTag left, std::size_t i, BasisTag right, std::size_t j,
                             GrassmannElement coeff) {
    GradedOperator a(left, right, coeff.sig());
    a.set_comp(i, j, std::move(coeff));
    return a;
}

// ---- linear structure ---------------------------------------------------

GradedVector operator+(const GradedVector& a, const GradedVector& b) {
    if (a.tag() != b.tag()) throw BasisError("adding kets over different bases");
    return GradedVector(a.tag(), a.comp(0) + b.comp(0), a.comp(1) + b.comp(1));
}

GradedVector operator-(const GradedVector& a, const GradedVector& b) {
    if (a.tag() != b.tag()) throw BasisError("subtracting kets over different bases");
    return GradedVector(a.tag(), a.comp(0) - b.comp(0), a.comp(1) - b.comp(1));
}

GradedOperator operator+(const GradedOperator& a, const GradedOperator& b) {
    if (a.left_tag() != b.left_tag() || a.right_tag() != b.right_tag())
        throw BasisError("adding operators over different dyad bases");
    GradedOperator r(a.left_tag(), a.right_tag(), a.sig());
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r.set_comp(i, j, a.comp(i, j) + b.comp(i, j));
    return r;
}

GradedOperator operator-(const GradedOperator& a, const GradedOperator& b) {
    if (a.left_tag() != b.left_tag() || a.right_tag() != b.right_tag())
        throw BasisError("subtracting operators over different dyad bases");
    GradedOperator r(a.left_tag(), a.right_tag(), a.sig());
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r.set_comp(i, j, a.comp(i, j) - b.comp(i, j));
    return r;
}

GradedBra operator+(const GradedBra& a, const GradedBra& b) {
    if (a.tag() != b.tag()) throw BasisError("adding bras over different bases");
    return GradedBra(a.tag(), a.comp(0) + b.comp(0), a.comp(1) + b.comp(1));
}

GradedBra operator-(const GradedBra& a, const GradedBra& b) {
    if (a.tag() != b.tag()) throw BasisError("subtracting bras over different bases");
    return GradedBra(a.tag(), a.comp(0) - b.comp(0), a.comp(1) - b.comp(1));
}

// ---- Grassmann multiplication --------------------------------------------

GradedVector times_left(const GrassmannElement& mu, const GradedVector& v) {
    return GradedVector(v.tag(), mu * v.comp(0), mu * v.comp(1));
}

// v * mu: mu crosses the ket symbol of each slot on its way left.
GradedVector times_right(const GradedVector& v, const GrassmannElement& mu) {
    return GradedVector(v.tag(), v.comp(0) * cross_sign(mu, 0), v.comp(1) * cross_sign(mu, 1));
}

// mu * <e_i|c_i: mu crosses the bra symbol and lands left inside the coefficient.
GradedBra times_left(const GrassmannElement& mu, const GradedBra& br) {
    return GradedBra(br.tag(), cross_sign(mu, 0) * br.comp(0), cross_sign(mu, 1) * br.comp(1));
}

GradedBra times_right(const GradedBra& br, const GrassmannElement& mu) {
    return GradedBra(br.tag(), br.comp(0) * mu, br.comp(1) * mu);
}

GradedOperator times_left(const GrassmannElement& mu, const GradedOperator& a) {
    GradedOperator r(a.left_tag(), a.right_tag(), a.sig());
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r.set_comp(i, j, mu * a.comp(i, j));
    return r;
}

// A * mu: mu crosses the parity-(i+j) dyad of each entry.
GradedOperator times_right(const GradedOperator& a, const GrassmannElement& mu) {
    GradedOperator r(a.left_tag(), a.right_tag(), a.sig());
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            r.set_comp(i, j, a.comp(i, j) * cross_sign(mu, i + j));
    return r;
}

// ---- contractions -------------------------------------------------------

GradedVector apply(const GradedOperator& a, const GradedVector& v) {
    if (a.right_tag() != dual_tag(v.tag()))
        throw BasisError(std::string("operator with right basis ") + tag_name(a.right_tag()) +
                         " cannot contract a " + tag_name(v.tag()) + " ket");
    GrassmannElement r0(v.sig()), r1(v.sig());
    for (std::size_t i = 0; i < 2; ++i) {
        GrassmannElement acc(v.sig());
        for (std::size_t j = 0; j < 2; ++j)
            acc = acc + a.comp(i, j) * cross_sign(v.comp(j), i + j);
        (i == 0 ? r0 : r1) = acc;
    }
    return GradedVector(a.left_tag(), std::move(r0), std::move(r1));
}

GradedBra apply(const GradedBra& br, const GradedOperator& a) {
    if (br.tag() != dual_tag(a.left_tag()))
        throw BasisError(std::string("bra over ") + tag_name(br.tag()) +
                         " cannot contract an operator with left basis " + tag_name(a.left_tag()));
    GrassmannElement r0(br.sig()), r1(br.sig());
    for (std::size_t k = 0; k < 2; ++k) {
        GrassmannElement acc(br.sig());
        for (std::size_t j = 0; j < 2; ++j)
            acc = acc + cross_sign(br.comp(j) * a.comp(j, k), j + k);
        (k == 0 ? r0 : r1) = acc;
    }
    return GradedBra(a.right_tag(), std::move(r0), std::move(r1));
}

GradedOperator operator*(const GradedOperator& a, const GradedOperator& b) {
    if (a.right_tag() != dual_tag(b.left_tag()))
        throw BasisError("inner dyad bases do not contract");
    GradedOperator r(a.left_tag(), b.right_tag(), a.sig());
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t k = 0; k < 2; ++k) {
            GrassmannElement acc(a.sig());
            for (std::size_t j = 0; j < 2; ++j)
                acc = acc + a.comp(i, j) * cross_sign(b.comp(j, k), i + j);
            r.set_comp(i, k, acc);
        }
    }
    return r;
}

GrassmannElement pair(const GradedBra& br, const GradedVector& v, const Mat2& gram) {
    require_same_sig(br.sig(), v.sig());
    GrassmannElement r(v.sig());
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            const Complex g = gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            if (g == Complex{}) continue;
            // The coefficient block moves to the far left, crossing only the
            // bra symbol of slot a before the slots contract.
            r = r + g * cross_sign(br.comp(a) * v.comp(b), a);
        }
    }
    return r;
}

GrassmannElement pair(const GradedBra& br, const GradedVector& v) {
    if (br.tag() != dual_tag(v.tag()))
        throw PairingError("same-basis pairing requires an explicit Gram matrix");
    return pair(br, v, Mat2::Identity());
}

GradedOperator outer(const GradedVector& v, const GradedBra& br) {
    require_same_sig(v.sig(), br.sig());
    GradedOperator r(v.tag(), br.tag(), v.sig());
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            r.set_comp(i, j, v.comp(i) * cross_sign(br.comp(j), i + j));
    return r;
}

// ---- involutions and calculus -------------------------------------------

GradedBra dagger(const GradedVector& v) {
    return GradedBra(v.tag(), star(v.comp(0)), star(v.comp(1)));
}

GradedVector dagger(const GradedBra& br) {
    return GradedVector(br.tag(), star(br.comp(0)), star(br.comp(1)));
}

GradedOperator dagger(const GradedOperator& a) {
    GradedOperator r(a.right_tag(), a.left_tag(), a.sig());
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            r.set_comp(j, i, cross_sign(star(a.comp(i, j)), i + j));
    return r;
}

GradedOperator op_exp(const GradedOperator& a) {
    if (a.left_tag() != dual_tag(a.right_tag()))
        throw BasisError("operator exp needs a square dyad basis");
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            if (a.comp(i, j).body() != Complex{})
                throw NonNilpotentError("operator exp requires body-free coefficients");
    GradedOperator r = identity_operator(a.sig(), a.left_tag());
    GradedOperator term = r;
    const std::size_t n = a.sig()->size();
    for (std::size_t k = 1; k <= n + 1; ++k) {
        term = term * a;
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j)
                term.set_comp(i, j, (1.0 / static_cast<double>(k)) * term.comp(i, j));
        if (term.is_zero()) break;
        r = r + term;
    }
    return r;
}

GradedOperator berezin_pair(const GradedOperator& a, std::size_t g) {
    GradedOperator r(a.left_tag(), a.right_tag(), a.sig());
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r.set_comp(i, j, berezin_pair(a.comp(i, j), g));
    return r;
}

GradedVector berezin_pair(const GradedVector& v, std::size_t g) {
    return GradedVector(v.tag(), berezin_pair(v.comp(0), g), berezin_pair(v.comp(1), g));
}

// ---- diagnostics ---------------------------------------------------------

double max_coeff_dist(const GradedVector& a, const GradedVector& b) {
    if (a.tag() != b.tag()) throw BasisError("comparing kets over different bases");
    return std::max(max_coeff_dist(a.comp(0), b.comp(0)), max_coeff_dist(a.comp(1), b.comp(1)));
}

double max_coeff_dist(const GradedOperator& a, const GradedOperator& b) {
    if (a.left_tag() != b.left_tag() || a.right_tag() != b.right_tag())
        throw BasisError("comparing operators over different dyad bases");
    double d = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            d = std::max(d, max_coeff_dist(a.comp(i, j), b.comp(i, j)));
    return d;
}

std::string to_string(const GradedVector& v) {
    std::ostringstream os;
    os << "[" << to_string(v.comp(0)) << "] |" << tag_name(v.tag()) << "0> + ["
       << to_string(v.comp(1)) << "] |" << tag_name(v.tag()) << "1>";
    return os.str();
}

std::string to_string(const GradedOperator& a) {
    std::ostringstream os;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            os << "[" << to_string(a.comp(i, j)) << "] |" << tag_name(a.left_tag()) << i << "><"
               << tag_name(a.right_tag()) << j << "|" << (i == 1 && j == 1 ? "" : " + ");
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const GradedVector& v) { return os << to_string(v); }
std::ostream& operator<<(std::ostream& os, const GradedOperator& a) { return os << to_string(a); }

} // namespace pfc
