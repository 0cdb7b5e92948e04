#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace spectra {

enum class Status { pass, fail, skipped };

inline const char* status_name(Status s) {
    switch (s) {
        case Status::pass: return "pass";
        case Status::fail: return "fail";
        case Status::skipped: return "skipped";
    }
    return "?";
}

/// Outcome of one verification. Witnesses are human-readable counterexamples.
struct Check {
    std::string name;
    std::string anchor;
    Status status = Status::pass;
    std::string reason;
    std::vector<std::string> witnesses;

    bool passed() const noexcept { return status != Status::fail; }

    static Check make(std::string name, std::string anchor) { return {std::move(name), std::move(anchor), Status::pass, {}, {}}; }

    /// Records a failure; only the first few witnesses are kept.
    void fail_with(std::string witness, std::size_t keep = 8) {
        status = Status::fail;
        if (witnesses.size() < keep) witnesses.push_back(std::move(witness));
    }
    void skip(std::string why) {
        status = Status::skipped;
        reason = std::move(why);
    }
};

struct Report {
    std::string command;
    std::string inputs_digest;
    std::uint64_t seed = 0;
    std::vector<Check> checks;

    bool passed() const {
        for (auto& c : checks)
            if (!c.passed()) return false;
        return true;
    }
    void add(Check c) { checks.push_back(std::move(c)); }
    void add_all(const std::vector<Check>& cs) { checks.insert(checks.end(), cs.begin(), cs.end()); }
};

}  // namespace spectra
