#include "pfc/report.hpp"

#include <algorithm>

namespace pfc {

void CheckReport::add(std::string id, std::string description, double residual, double tol) {
    CheckEntry e;
    e.id = std::move(id);
    e.description = std::move(description);
    e.residual = residual;
    e.tol = tol;
    e.pass = residual <= tol;
    entries_.push_back(std::move(e));
}

void CheckReport::merge(const CheckReport& other) {
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

bool CheckReport::all_pass() const {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const CheckEntry& e) { return e.pass; });
}

double CheckReport::max_residual() const {
    double m = 0.0;
    for (const auto& e : entries_) m = std::max(m, e.residual);
    return m;
}

double CheckReport::max_residual(const std::string& id_prefix) const {
    double m = 0.0;
    for (const auto& e : entries_)
        if (e.id.rfind(id_prefix, 0) == 0) m = std::max(m, e.residual);
    return m;
}

const CheckEntry* CheckReport::find(const std::string& id) const {
    for (const auto& e : entries_)
        if (e.id == id) return &e;
    return nullptr;
}

} // namespace pfc
