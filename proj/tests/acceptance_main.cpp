// Acceptance suite driver: one pass/fail line per criterion, nonzero exit on
// any failure. HESSLAB_SEED overrides the default seed 42.

#include <cstdio>
#include <cstdlib>

#include "hesslab/verify.hpp"

int main() {
    std::uint64_t seed = 42;
    if (const char* env = std::getenv("HESSLAB_SEED")) seed = std::strtoull(env, nullptr, 10);

    std::printf("hesslab acceptance suite (seed %llu)\n",
                static_cast<unsigned long long>(seed));
    const auto results = hesslab::verify::run_suite("all", seed);

    bool all = true;
    for (const auto& r : results) {
        std::printf("criterion %2d: %s - %s (%s)\n", r.id, r.pass ? "PASS" : "FAIL",
                    r.name.c_str(), r.details.c_str());
        all = all && r.pass;
    }
    std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SUITE FAILED");
    return all ? 0 : 1;
}
