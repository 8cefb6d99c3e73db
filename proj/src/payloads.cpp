#include "hesslab/payloads.hpp"

#include <stdexcept>

#include "hesslab/rng.hpp"

namespace hesslab {

json FunctionSpec::to_json() const {
    return json{{"name", name}, {"n", n}, {"p", p}, {"params", params}};
}

PayloadBundle payload_classify(int n, double a, double b, double tol) {
    const RegionLabel label = classify_vab(n, a, b, tol);
    PayloadBundle out;
    out.command = "classify";
    out.payload = json{{"command", "classify"}, {"n", n}, {"a", a}, {"b", b},
                       {"tol", tol}, {"label", hesslab::to_json(label)}};
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"n", "a", "b", "m", "k", "delta"});
    cells.push_back({std::to_string(n), format_double(a), format_double(b),
                     std::to_string(label.m_index), std::to_string(label.slice_k_index),
                     label.delta ? std::to_string(*label.delta) : ""});
    out.csv = csv_render(cells);
    validate_payload(out.command, out.payload);
    return out;
}

PayloadBundle payload_table1(int n, int grid) {
    const std::vector<RegionRow> rows = table1(n, grid);
    json jrows = json::array();
    for (const RegionRow& r : rows) jrows.push_back(hesslab::to_json(r));
    PayloadBundle out;
    out.command = "table1";
    out.payload = json{{"command", "table1"}, {"n", n}, {"grid", grid}, {"rows", jrows}};
    out.csv = table1_csv(rows);
    validate_payload(out.command, out.payload);
    return out;
}

PayloadBundle payload_boundaries(int n) {
    const std::vector<BoundaryCurve> curves = region_boundaries(n);
    json jcurves = json::array();
    for (const BoundaryCurve& c : curves) jcurves.push_back(hesslab::to_json(c));
    PayloadBundle out;
    out.command = "boundaries";
    out.payload = json{{"command", "boundaries"}, {"n", n}, {"curves", jcurves}};
    out.csv = boundaries_csv(curves);
    validate_payload(out.command, out.payload);
    return out;
}

PayloadBundle payload_msh_check(const FunctionSpec& fn, int m, int samples,
                                std::uint64_t seed, int fd_checks) {
    const TestFunction f = fn.resolve();
    const MshScanReport rep = msh_scan(f, m, samples, seed, fd_checks);
    PayloadBundle out;
    out.command = "msh_check";
    out.payload = json{{"command", "msh_check"},
                       {"function", fn.to_json()},
                       {"m", m},
                       {"samples", samples},
                       {"seed", seed},
                       {"annulus", json::array({rep.r_inner, rep.r_outer})},
                       {"min_rel_sk", rep.min_rel_sk},
                       {"argmin_k", rep.argmin_k},
                       {"per_k_min_rel", rep.per_k_min_rel},
                       {"fd_checked", rep.fd_checked},
                       {"fd_max_rel_err", rep.fd_max_rel_err},
                       {"pass", rep.pass}};
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"k", "min_rel_sk"});
    for (size_t k = 0; k < rep.per_k_min_rel.size(); ++k)
        cells.push_back({std::to_string(k + 1), format_double(rep.per_k_min_rel[k])});
    out.csv = csv_render(cells);
    validate_payload(out.command, out.payload);
    return out;
}

PayloadBundle payload_lelong(const FunctionSpec& fn, const std::vector<cplx>& center, int m,
                             const RadiusLadder& ladder, const std::string& estimator,
                             const EstimatorConfig& cfg) {
    const TestFunction f = fn.resolve();
    if (static_cast<int>(center.size()) != f.n())
        throw std::invalid_argument("lelong: center must have n complex coordinates");
    const Point a(center, f.split());
    LelongEstimate est;
    if (estimator == "sphere")
        est = lelong_point_sphere(f, a, m, ladder, cfg);
    else if (estimator == "ball")
        est = lelong_point_ball(f, a, m, ladder, cfg);
    else
        throw std::invalid_argument("lelong: estimator must be sphere or ball");

    PayloadBundle out;
    out.command = "lelong";
    out.payload = json{{"command", "lelong"},
                       {"function", fn.to_json()},
                       {"center", points_to_json(center)},
                       {"m", m},
                       {"estimator", estimator},
                       {"ladder", hesslab::to_json(ladder)},
                       {"samples", cfg.samples},
                       {"seed", cfg.seed},
                       {"estimate", hesslab::to_json(est)}};
    out.csv = ladder_csv(est);
    validate_payload(out.command, out.payload);
    return out;
}

std::vector<Point> default_probes(int dim, int count, double radius) {
    const CounterRng rng{0x50524f4245u, streams::scan};
    std::vector<Point> probes;
    std::vector<cplx> dir(static_cast<size_t>(dim));
    for (int i = 0; i < count; ++i) {
        unit_direction(rng, static_cast<std::uint64_t>(i), 0, dir);
        Point pt = Point::origin(dim);
        for (int j = 0; j < dim; ++j) pt.z[static_cast<size_t>(j)] = radius * dir[static_cast<size_t>(j)];
        probes.push_back(std::move(pt));
    }
    return probes;
}

PayloadBundle payload_slice_index(const FunctionSpec& fn, const std::vector<cplx>& xprime,
                                  int probes, double probe_radius, double tol) {
    const TestFunction f = fn.resolve();
    const std::vector<Point> grid = default_probes(f.n() - static_cast<int>(xprime.size()),
                                                   probes, probe_radius);
    const int idx = slice_index(f, xprime, grid, tol);
    PayloadBundle out;
    out.command = "slice_index";
    out.payload = json{{"command", "slice_index"},
                       {"function", fn.to_json()},
                       {"xprime", points_to_json(xprime)},
                       {"p", static_cast<int>(xprime.size())},
                       {"probes", probes},
                       {"probe_radius", probe_radius},
                       {"tol", tol},
                       {"index", idx}};
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"p", "index"});
    cells.push_back({std::to_string(xprime.size()), std::to_string(idx)});
    out.csv = csv_render(cells);
    validate_payload(out.command, out.payload);
    return out;
}

PayloadBundle payload_exceptional_scan(const FunctionSpec& fn, int p, int grid, double extent,
                                       double omega_radius, const EstimatorConfig& cfg) {
    const TestFunction f = fn.resolve();
    const Ball omega{std::vector<cplx>(static_cast<size_t>(f.n() - p), cplx(0.0, 0.0)),
                     omega_radius};
    const std::vector<ExceptionalCandidate> cands = exceptional_scan(f, p, grid, extent, omega, cfg);
    json jc = json::array();
    for (const ExceptionalCandidate& c : cands)
        jc.push_back(json{{"xprime", points_to_json(c.xprime)},
                          {"evidence", hesslab::to_json(c.evidence)}});
    PayloadBundle out;
    out.command = "exceptional_scan";
    out.payload = json{{"command", "exceptional_scan"},
                       {"function", fn.to_json()},
                       {"p", p},
                       {"grid", grid},
                       {"extent", extent},
                       {"omega_radius", omega_radius},
                       {"seed", cfg.seed},
                       {"candidates", jc}};
    std::vector<std::vector<std::string>> cells;
    cells.push_back({"re_x1", "im_x1", "minus_inf_slice"});
    for (const ExceptionalCandidate& c : cands)
        cells.push_back({format_double(c.xprime[0].real()), format_double(c.xprime[0].imag()),
                         c.evidence.minus_inf_slice ? "1" : "0"});
    out.csv = csv_render(cells);
    validate_payload(out.command, out.payload);
    return out;
}

PayloadBundle payload_directional(const FunctionSpec& fn, const Ball& bprime,
                                  const std::vector<cplx>& xsecond, int m, int q,
                                  const RadiusLadder& ladder, const EstimatorConfig& cfg) {
    const TestFunction f = fn.resolve();
    const DirectionalEstimate est = directional_lelong(f, bprime, xsecond, m, q, ladder, cfg);
    PayloadBundle out;
    out.command = "directional";
    out.payload = json{{"command", "directional"},
                       {"function", fn.to_json()},
                       {"bprime", json{{"center", points_to_json(bprime.center)},
                                       {"radius", bprime.radius}}},
                       {"xsecond", points_to_json(xsecond)},
                       {"ladder", hesslab::to_json(ladder)},
                       {"samples", cfg.samples},
                       {"seed", cfg.seed},
                       {"estimate", hesslab::to_json(est)}};
    out.csv = directional_csv(est);
    validate_payload(out.command, out.payload);
    return out;
}

}  // namespace hesslab
