#pragma once

#include <functional>

#include "hecke/congruence.hpp"

namespace hecke {

struct CheckOutcome {
    std::string name;
    std::string anchor;
    std::string status; // pass | fail | premise
    std::vector<std::string> details;
};

struct VerificationReport {
    std::string tool_version;
    int q = 5;
    std::vector<CheckOutcome> checks;
    std::string verdict;
    int failures = 0;

    std::string to_json() const;
    std::string to_text() const;
    static VerificationReport from_json(const std::string& text);

    bool operator==(const VerificationReport& o) const {
        if (tool_version != o.tool_version || q != o.q || verdict != o.verdict ||
            failures != o.failures || checks.size() != o.checks.size())
            return false;
        for (std::size_t i = 0; i < checks.size(); ++i) {
            if (checks[i].name != o.checks[i].name || checks[i].anchor != o.checks[i].anchor ||
                checks[i].status != o.checks[i].status || checks[i].details != o.checks[i].details)
                return false;
        }
        return true;
    }
};

/// Resolves the catalog/golden data directory: explicit argument, then the
/// HECKE_DATA_DIR environment variable, then the compiled-in default.
std::string data_directory(const std::string& override_dir = "");

/// Names of all registered checks, in report order.
std::vector<std::string> check_names();

/// Runs one named check; throws std::invalid_argument for unknown names.
CheckOutcome run_check(const std::string& name, const std::string& data_dir);

/// Runs every registered check (or the `only` subset) and assembles the
/// aggregated report; deterministic output, byte-identical across runs.
VerificationReport run_all(const std::string& data_dir, const std::vector<std::string>& only = {});

/// Human-readable explanation: the check's anchor and computed witnesses.
std::string explain(const std::string& name, const std::string& data_dir);

std::string tool_version();

} // namespace hecke
