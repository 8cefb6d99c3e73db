#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hesslab/catalog.hpp"

namespace hesslab {

// Minimum-relative-S_k scan: samples points uniformly in the annulus
// r_inner <= |z| <= r_outer (resampling off the singular set), computes the
// Hessian spectrum at each, and tracks min over points of S_k / scale_k for
// k = 1..m. pass means min >= -1e-9, i.e. the spectrum stays inside Gamma_m
// up to the boundary tolerance.
struct MshScanReport {
    std::string function;
    int n = 0, m = 0;
    int samples = 0;
    std::uint64_t seed = 0;
    double r_inner = 0.0, r_outer = 0.0;
    double min_rel_sk = 0.0;
    int argmin_k = 0;
    std::vector<double> per_k_min_rel;  // index k-1, k = 1..m
    int fd_checked = 0;
    double fd_max_rel_err = -1.0;       // -1 when no FD cross-check ran
    bool pass = false;
};

MshScanReport msh_scan(const TestFunction& f, int m, int samples, std::uint64_t seed,
                       int fd_checks = 0, double r_inner = 0.25, double r_outer = 2.0);

}  // namespace hesslab
