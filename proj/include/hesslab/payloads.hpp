#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hesslab/report.hpp"
#include "hesslab/scan.hpp"

namespace hesslab {

// Catalog function selector as it appears on the command line.
struct FunctionSpec {
    std::string name;
    int n = 0;
    int p = 0;
    std::vector<double> params;

    TestFunction resolve() const { return catalog_lookup(name, n, params, p); }
    json to_json() const;
};

// One subcommand result: the canonical JSON payload (deterministic bytes for
// a fixed parameter set) plus a CSV rendering.
struct PayloadBundle {
    std::string command;
    json payload;
    std::string csv;
};

PayloadBundle payload_classify(int n, double a, double b, double tol = kGardingTol);
PayloadBundle payload_table1(int n, int grid = 601);
PayloadBundle payload_boundaries(int n);
PayloadBundle payload_msh_check(const FunctionSpec& fn, int m, int samples,
                                std::uint64_t seed, int fd_checks);
PayloadBundle payload_lelong(const FunctionSpec& fn, const std::vector<cplx>& center, int m,
                             const RadiusLadder& ladder, const std::string& estimator,
                             const EstimatorConfig& cfg);
PayloadBundle payload_slice_index(const FunctionSpec& fn, const std::vector<cplx>& xprime,
                                  int probes, double probe_radius, double tol = kGardingTol);
PayloadBundle payload_exceptional_scan(const FunctionSpec& fn, int p, int grid, double extent,
                                       double omega_radius, const EstimatorConfig& cfg);
PayloadBundle payload_directional(const FunctionSpec& fn, const Ball& bprime,
                                  const std::vector<cplx>& xsecond, int m, int q,
                                  const RadiusLadder& ladder, const EstimatorConfig& cfg);

// Deterministic probe set for slice_index: points on the sphere of the given
// radius in the slice dimension.
std::vector<Point> default_probes(int dim, int count, double radius);

}  // namespace hesslab
