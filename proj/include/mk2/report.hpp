#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace mk2 {

enum class CheckStatus { Pass, Fail, Inconclusive };
const char* status_name(CheckStatus s);

struct CaseFailure {
    std::string inputs;
    std::string detail;
};

/// Structured outcome of a lemma / sequence check.  Serialises to the fixed
/// schema {check, ring, params:{seed,budget,window}, cases_run, failures,
/// status}; identical runs produce byte-identical JSON.
struct VerificationReport {
    std::string check;
    std::string ring;
    std::uint64_t seed = 0;
    long budget = 0;
    std::string window;
    long cases_run = 0;
    std::vector<CaseFailure> failures;
    /// window-limited checks that neither failed nor covered their domain
    bool incomplete = false;
    std::map<std::string, long> branches;  // per-branch case counts
    std::vector<std::string> notes;

    CheckStatus status() const {
        if (!failures.empty()) return CheckStatus::Fail;
        return incomplete ? CheckStatus::Inconclusive : CheckStatus::Pass;
    }
    int exit_code() const { return static_cast<int>(status()); }

    void add_failure(const std::string& inputs, const std::string& detail);
    void bump(const std::string& branch);

    std::string json() const;
    std::string text() const;
};

std::string json_escape(const std::string& s);

}  // namespace mk2
