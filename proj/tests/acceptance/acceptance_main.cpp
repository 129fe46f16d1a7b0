// Prints one line per acceptance criterion and exits nonzero if any fails.
// Optional arguments: criterion numbers to run (default: all).

#include "largesol/verify/acceptance.hpp"

#include <cstdio>
#include <cstdlib>
#include <vector>

int main(int argc, char** argv) {
    std::vector<int> ids;
    for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));
    const auto results = largesol::verify::run_suite(largesol::verify::kDefaultSeed, ids);
    int failed = 0;
    for (const auto& r : results) {
        std::printf("%s (%.2f s)\n", largesol::verify::format_line(r).c_str(), r.seconds);
        failed += r.pass ? 0 : 1;
    }
    std::printf("%zu criteria, %d failed\n", results.size(), failed);
    return failed == 0 ? 0 : 1;
}
