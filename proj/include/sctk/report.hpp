#ifndef SCTK_REPORT_HPP
#define SCTK_REPORT_HPP

#include <sstream>
#include <string>
#include <vector>

namespace sctk {

struct CheckResult {
    std::string name;   // kebab-case, stable
    bool passed = true;
    std::string detail; // single line, no newlines
};

/// Structured verdict: named pass/fail checks with witnesses. The machine
/// rendering is one grep-able line per check.
struct Report {
    std::vector<CheckResult> checks;

    void pass(const std::string& name, const std::string& detail = "") {
        checks.push_back({name, true, detail});
    }
    void fail(const std::string& name, const std::string& detail = "") {
        checks.push_back({name, false, detail});
    }
    void add(const std::string& name, bool ok, const std::string& detail = "") {
        checks.push_back({name, ok, detail});
    }
    void append(const Report& other) {
        checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    }

    bool ok() const {
        for (const auto& c : checks)
            if (!c.passed) return false;
        return true;
    }

    const CheckResult* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }

    std::string machine_text() const {
        std::ostringstream os;
        for (const auto& c : checks) {
            os << "CHECK " << c.name << ' ' << (c.passed ? "PASS" : "FAIL");
            if (!c.detail.empty()) os << ' ' << c.detail;
            os << '\n';
        }
        return os.str();
    }
};

} // namespace sctk

#endif
