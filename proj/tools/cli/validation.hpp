#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace loccmc::cli {

struct ValidationResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct ValidationOptions {
    int workers = 1;
    std::vector<int> only;  ///< empty runs every criterion
    /// Scratch directory for the determinism check; a temporary one if empty.
    std::filesystem::path scratch;
};

inline constexpr int kCriterionCount = 10;

/// Runs one acceptance criterion.
ValidationResult run_criterion(int id, const ValidationOptions& opts);

/// Runs the selected criteria, printing one PASS/FAIL line each to `log`.
std::vector<ValidationResult> run_validation(const ValidationOptions& opts, std::ostream& log);

}  // namespace loccmc::cli
