#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hesslab/payloads.hpp"

namespace hesslab::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string details;  // may include timings; not part of the payload
    json payload;         // deterministic for a fixed seed
};

// Brute-force classification oracle: classifies (a, b) from the eigenvalue
// vector (a, b, 1, ..., 1) through the Horner S_k route, independently of
// the closed-form binomial coefficients used by classify_vab.
RegionLabel classify_vab_bruteforce(int n, double a, double b, double tol = kGardingTol);

// Criterion ids for a suite: garding {1,2,3}, lelong {4,5},
// slicing {6..11}, all {1..12}.
std::vector<int> suite_criteria(const std::string& suite);

std::vector<CriterionResult> run_suite(const std::string& suite, std::uint64_t seed);

// The verify payload: deterministic summary of a suite run.
json suite_payload(const std::string& suite, std::uint64_t seed,
                   const std::vector<CriterionResult>& results);

}  // namespace hesslab::verify
