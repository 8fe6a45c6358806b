#pragma once

#include <string>
#include <vector>

namespace tetra {

// Outcome of a named verification with human-readable notes.
struct CheckReport {
    std::string name;
    bool passed = true;
    std::vector<std::string> details;

    explicit CheckReport(std::string n = {}) : name(std::move(n)) {}
    void note(std::string line) { details.push_back(std::move(line)); }
    // Records a failed condition; returns cond.
    bool require(bool cond, const std::string& what) {
        if (!cond) {
            passed = false;
            details.push_back("FAIL: " + what);
        }
        return cond;
    }
    void merge(const CheckReport& other) {
        if (!other.passed) passed = false;
        for (const auto& d : other.details) details.push_back(other.name.empty() ? d : other.name + ": " + d);
    }
    std::string first_failure() const {
        for (const auto& d : details)
            if (d.rfind("FAIL: ", 0) == 0) return d.substr(6);
        return {};
    }
};

// Throws E with the first failing detail when the report did not pass.
template <typename E>
const CheckReport& throw_unless(const CheckReport& r) {
    if (!r.passed) throw E(r.name + ": " + r.first_failure());
    return r;
}

}  // namespace tetra
