#pragma once

// The fourteen acceptance criteria, shared by the acceptance test binary and `largesol verify`.

#include <cstdint>
#include <string>
#include <vector>

namespace largesol::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;  // measured values, or the exception text when a computation failed
    double seconds = 0;
};

inline constexpr int kCriterionCount = 14;
inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// Runs one criterion (1..14); exceptions are caught and reported as failures.
CriterionResult run_criterion(int id, std::uint64_t seed = kDefaultSeed);
/// Runs the criteria in `ids` (all when empty) in order.
std::vector<CriterionResult> run_suite(std::uint64_t seed = kDefaultSeed, const std::vector<int>& ids = {});

/// "[PASS] 01 exponents: detail"
std::string format_line(const CriterionResult& r);
/// Markdown table with one row per criterion.
std::string markdown_table(const std::vector<CriterionResult>& results);

}  // namespace largesol::verify
