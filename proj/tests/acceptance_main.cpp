// Runs every acceptance criterion and prints one pass/fail line per
// criterion, with the supporting measurements indented above it. Exits
// nonzero if any criterion fails, so the test harness surfaces the failure.
#include <cstdio>
#include <exception>

#include "matchings/acceptance.hpp"

int main() {
    int failures = 0;
    try {
        for (const auto& r : matchings::run_acceptance("all")) {
            std::printf("== %s ==\n", r.name.c_str());
            for (const auto& d : r.details) std::printf("  %s\n", d.c_str());
            std::printf("%s: %s\n", r.name.c_str(), r.passed ? "PASS" : "FAIL");
            std::fflush(stdout);
            if (!r.passed) ++failures;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance run aborted: %s\n", e.what());
        return 2;
    }
    if (failures) std::printf("%d criterion(s) failed\n", failures);
    return failures ? 1 : 0;
}
