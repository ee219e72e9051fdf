#pragma once

// Named residual checks with tolerances: the common currency of the
// verification layer. pass <=> residual <= tol for every entry.

#include <string>
#include <vector>

namespace pfc {

struct CheckEntry {
    std::string id;            // stable machine-readable name, dot-grouped
    std::string description;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
};

class CheckReport {
public:
    CheckReport() = default;

    void add(std::string id, std::string description, double residual, double tol);
    void merge(const CheckReport& other);

    const std::vector<CheckEntry>& entries() const { return entries_; }
    bool all_pass() const;
    double max_residual() const;
    // Largest residual among entries whose id starts with the given prefix.
    double max_residual(const std::string& id_prefix) const;
    const CheckEntry* find(const std::string& id) const;

private:
    std::vector<CheckEntry> entries_;
};

} // namespace pfc
