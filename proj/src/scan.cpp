#include "hesslab/scan.hpp"

#include <cmath>
#include <stdexcept>

#include "hesslab/garding.hpp"
#include "hesslab/hessian.hpp"
#include "hesslab/rng.hpp"

namespace hesslab {

MshScanReport msh_scan(const TestFunction& f, int m, int samples, std::uint64_t seed,
                       int fd_checks, double r_inner, double r_outer) {
    const int n = f.n();
    if (m < 1 || m > n) throw std::invalid_argument("msh_scan: requires 1 <= m <= n");
    if (samples < 1) throw std::invalid_argument("msh_scan: need at least one sample");
    if (!(0.0 < r_inner && r_inner < r_outer))
        throw std::invalid_argument("msh_scan: need 0 < r_inner < r_outer");

    MshScanReport rep;
    rep.function = f.name();
    rep.n = n;
    rep.m = m;
    rep.samples = samples;
    rep.seed = seed;
    rep.r_inner = r_inner;
    rep.r_outer = r_outer;
    rep.min_rel_sk = std::numeric_limits<double>::infinity();
    rep.per_k_min_rel.assign(static_cast<size_t>(m), std::numeric_limits<double>::infinity());

    const CounterRng rng{seed, streams::scan};
    const double lo = std::pow(r_inner, 2.0 * n);
    const double hi = std::pow(r_outer, 2.0 * n);
    Point pt = Point::origin(n);
    std::vector<cplx> dir(static_cast<size_t>(n));

    for (int i = 0; i < samples; ++i) {
        // uniform in the annulus: radius from the 2n-volume measure
        unit_direction(rng, static_cast<std::uint64_t>(i), 0, dir);
        const double u = rng.uniform(static_cast<std::uint64_t>(i),
                                     static_cast<std::uint32_t>(4 * n));
        const double t = std::pow(lo + u * (hi - lo), 1.0 / (2.0 * n));
        for (int j = 0; j < n; ++j) pt.z[static_cast<size_t>(j)] = t * dir[static_cast<size_t>(j)];

        const HermitianMatrix H =
            f.has_analytic_hessian() ? f.hessian(pt) : wirtinger_hessian_auto(f, pt);
        const Spectrum sp = spectrum(H);

        std::vector<double> absl(sp.eigenvalues.size());
        for (size_t j = 0; j < absl.size(); ++j) absl[j] = std::abs(sp.eigenvalues[j]);
        const std::vector<double> sk = elementary_symmetric_all(sp.eigenvalues);
        const std::vector<double> sc = elementary_symmetric_all(absl);
        for (int k = 1; k <= m; ++k) {
            const double rel = sk[static_cast<size_t>(k)] / (sc[static_cast<size_t>(k)] + 1.0);
            if (rel < rep.per_k_min_rel[static_cast<size_t>(k - 1)])
                rep.per_k_min_rel[static_cast<size_t>(k - 1)] = rel;
            if (rel < rep.min_rel_sk) {
                rep.min_rel_sk = rel;
                rep.argmin_k = k;
            }
        }

        if (i < fd_checks && f.has_analytic_hessian()) {
            const HermitianMatrix F = wirtinger_hessian_auto(f, pt);
            double diff = 0.0;
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) diff += std::norm(F.at(r, c) - H.at(r, c));
            const double rel = std::sqrt(diff) / std::max(H.frobenius(), 1e-300);
            rep.fd_max_rel_err = std::max(rep.fd_max_rel_err, rel);
            ++rep.fd_checked;
        }
    }

    rep.pass = rep.min_rel_sk >= -1e-9;
    return rep;
}

}  // namespace hesslab
