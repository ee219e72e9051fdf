#pragma once

#include <stdexcept>
#include <string>

namespace pfc {

// Base of all typed engine errors. kind() is a stable machine-readable tag
// (the CLI serializes it into error objects and maps it to exit codes).
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

// Operands built over different generator signatures, or a generator index
// outside the signature.
struct SignatureError : Error {
    explicit SignatureError(const std::string& msg) : Error("SignatureError", msg) {}
};

// Exponential requested for an element with nonzero body; the series would
// not terminate.
struct NonNilpotentError : Error {
    explicit NonNilpotentError(const std::string& msg) : Error("NonNilpotentError", msg) {}
};

// Basis tags of graded objects do not contract.
struct BasisError : Error {
    explicit BasisError(const std::string& msg) : Error("BasisError", msg) {}
};

// A bra/ket pairing that needs an explicit Gram matrix was invoked without one.
struct PairingError : Error {
    explicit PairingError(const std::string& msg) : Error("PairingError", msg) {}
};

// omega = 0: the two levels do not couple and none of the constructions apply.
struct ZeroCoupling : Error {
    explicit ZeroCoupling(const std::string& msg) : Error("ZeroCoupling", msg) {}
};

// |omega|^2 < delta^2: level splitting is imaginary; the ladder-operator
// construction is defined only for a real splitting, so the engine refuses.
struct StrongDamping : Error {
    explicit StrongDamping(const std::string& msg) : Error("StrongDamping", msg) {}
};

// |omega|^2 == delta^2: zero splitting, degenerate spectrum. Only the ODE
// oracle and the dedicated degenerate closed form handle this line.
struct DegenerateOmega : Error {
    explicit DegenerateOmega(const std::string& msg) : Error("DegenerateOmega", msg) {}
};

// Degenerate-only formula called away from the degenerate line.
struct NotDegenerate : Error {
    explicit NotDegenerate(const std::string& msg) : Error("NotDegenerate", msg) {}
};

// Malformed plain arguments (negative rates, nonpositive step sizes, ...).
struct ArgumentError : Error {
    explicit ArgumentError(const std::string& msg) : Error("ArgumentError", msg) {}
};

} // namespace pfc
