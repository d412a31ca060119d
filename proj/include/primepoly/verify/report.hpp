#pragma once

/**
 * @file report.hpp
 * @brief Verification report: named checks with parameters, status and an
 *        optional counterexample, rendered as JSON or text.
 */

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace primepoly::verify {

using nlohmann::ordered_json;

struct CheckResult {
    std::string name;
    ordered_json params = ordered_json::object();
    bool passed = false;
    std::string detail;
    std::optional<ordered_json> counterexample;
};

struct VerificationReport {
    std::string suite;
    std::vector<CheckResult> checks;
    std::vector<std::string> notes;

    std::size_t passed() const {
        std::size_t n = 0;
        for (const auto& c : checks) n += c.passed ? 1 : 0;
        return n;
    }
    std::size_t failed() const { return checks.size() - passed(); }
    bool ok() const { return failed() == 0; }

    CheckResult& add(std::string name, ordered_json params, bool passed, std::string detail = {},
                     std::optional<ordered_json> counterexample = std::nullopt) {
        checks.push_back({std::move(name), std::move(params), passed, std::move(detail), std::move(counterexample)});
        return checks.back();
    }

    void merge(const VerificationReport& o) {
        checks.insert(checks.end(), o.checks.begin(), o.checks.end());
        notes.insert(notes.end(), o.notes.begin(), o.notes.end());
    }

    ordered_json to_json() const {
        ordered_json doc;
        doc["suite"] = suite;
        doc["checks"] = ordered_json::array();
        for (const auto& c : checks) {
            ordered_json j;
            j["name"] = c.name;
            j["params"] = c.params;
            j["status"] = c.passed ? "pass" : "fail";
            if (!c.detail.empty()) j["detail"] = c.detail;
            if (c.counterexample) j["counterexample"] = *c.counterexample;
            doc["checks"].push_back(std::move(j));
        }
        doc["passed"] = passed();
        doc["failed"] = failed();
        if (!notes.empty()) doc["notes"] = notes;
        return doc;
    }

    std::string to_text() const {
        std::ostringstream os;
        os << "suite " << suite << "\n";
        for (const auto& c : checks) {
            os << (c.passed ? "  PASS " : "  FAIL ") << c.name;
            if (!c.detail.empty()) os << ": " << c.detail;
            os << "\n";
            if (c.counterexample) os << "       counterexample " << c.counterexample->dump() << "\n";
        }
        for (const auto& n : notes) os << "  note: " << n << "\n";
        os << passed() << " passed, " << failed() << " failed\n";
        return os.str();
    }
};

}  // namespace primepoly::verify
