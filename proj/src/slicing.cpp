#include "hesslab/slicing.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "hesslab/hessian.hpp"
#include "hesslab/rng.hpp"

namespace hesslab {

int q_min(int n, int m, int p) {
    if (!(1 <= p && p < m && m < n))
        throw std::invalid_argument("q_min: requires 1 <= p < m < n");
    return (m * p + n - 1) / n;  // ceil(mp/n), exact in the integer case
}

// ---------------------------------------------------------------------- slice

TestFunction slice(const TestFunction& f, std::span<const cplx> xprime) {
    const int n = f.n();
    const int p = static_cast<int>(xprime.size());
    if (p < 1 || p >= n) throw std::invalid_argument("slice: requires 1 <= |x'| < n");

    const std::vector<cplx> xp(xprime.begin(), xprime.end());

    // Singular set of the slice: pin the first p coordinates to x'. If a
    // pinned constraint fails, the slice misses the singular set entirely;
    // if all constraints land below index p and hold, the whole slice is
    // singular (identically -inf families).
    SingularSet sing = SingularSet::none();
    if (f.singular().present) {
        bool alive = true;
        std::vector<int> idx;
        std::vector<cplx> val;
        for (size_t j = 0; j < f.singular().idx.size(); ++j) {
            const int i = f.singular().idx[j];
            if (i < p) {
                if (std::abs(xp[static_cast<size_t>(i)] - f.singular().val[j]) > 1e-12) {
                    alive = false;
                    break;
                }
            } else {
                idx.push_back(i - p);
                val.push_back(f.singular().val[j]);
            }
        }
        if (alive) {
            sing.present = true;
            sing.idx = std::move(idx);
            sing.val = std::move(val);
        }
    }

    TestFunction::Builder builder;
    builder.n = n - p;
    builder.p = 0;
    builder.name = "slice(" + f.name() + ")";
    builder.params = f.params();
    builder.singular = std::move(sing);

    TestFunction parent = f;
    builder.eval = [parent, xp](const Point& zs) {
        return parent(concat(xp, std::span<const cplx>(zs.z)));
    };
    if (f.has_analytic_hessian()) {
        // The slice Hessian is the lower-right (n-p) x (n-p) block of the
        // parent Hessian at (x', z'').
        builder.hess = [parent, xp, p](const Point& zs) {
            const HermitianMatrix full = parent.hessian(concat(xp, std::span<const cplx>(zs.z)));
            HermitianMatrix block(full.size() - p);
            for (int j = 0; j < block.size(); ++j)
                for (int k = 0; k < block.size(); ++k) block.at(j, k) = full.at(p + j, p + k);
            return block;
        };
        builder.diag = [parent, xp, p](const Point& zs) {
            const std::vector<double> d = parent.hessian_diag(concat(xp, std::span<const cplx>(zs.z)));
            return std::vector<double>(d.begin() + p, d.end());
        };
    }

    // Radial structure of the slice, when it survives restriction.
    if (f.radial()) {
        const RadialStructure& rs = *f.radial();
        const int fp = f.split();
        if (rs.block == RadialBlock::zsecond && fp == p) {
            RadialStructure out = rs;  // profile in |z'' - center|^2 unchanged
            builder.radial = out;
        } else if (rs.block == RadialBlock::full) {
            double d2 = 0.0;
            for (int j = 0; j < p; ++j) d2 += std::norm(xp[static_cast<size_t>(j)] - rs.center[static_cast<size_t>(j)]);
            if (d2 < 1e-24) {
                RadialStructure out;
                out.block = RadialBlock::full;
                out.center.assign(rs.center.begin() + p, rs.center.end());
                out.f = rs.f;
                out.fp = rs.fp;
                out.fpp = rs.fpp;
                builder.radial = out;
            }
        }
    }

    return builder.build();
}

// --------------------------------------------------------- slice_integrability

IntegrabilityEvidence slice_integrability(const TestFunction& f,
                                          std::span<const cplx> xprime,
                                          const Ball& omega_second,
                                          const EstimatorConfig& cfg) {
    cfg.validate();
    const TestFunction s = slice(f, xprime);
    if (omega_second.dim() != s.n())
        throw std::invalid_argument("slice_integrability: test ball dimension mismatch");
    const int l = s.n();

    IntegrabilityEvidence ev;

    // Probe pass: a slice that is -inf on the whole probe set is divergent by
    // the definition of the exceptional set.
    const CounterRng probe_rng{cfg.seed, streams::integrability ^ 0x50524f4245ULL};
    constexpr int kProbes = 64;
    int minus_inf = 0;
    Point pt = Point::origin(l);
    std::vector<cplx> dir(static_cast<size_t>(l));
    for (int i = 0; i < kProbes; ++i) {
        unit_direction(probe_rng, static_cast<std::uint64_t>(i), 0,
                       std::span<cplx>(dir));
        const double u = probe_rng.uniform(static_cast<std::uint64_t>(i),
                                           static_cast<std::uint32_t>(4 * l));
        const double t = omega_second.radius * std::pow(u, 1.0 / (2.0 * l));
        for (int j = 0; j < l; ++j)
            pt.z[static_cast<size_t>(j)] = omega_second.center[static_cast<size_t>(j)] + t * dir[static_cast<size_t>(j)];
        if (s(pt) == kMinusInf) ++minus_inf;
    }
    if (minus_inf >= (9 * kProbes) / 10) {
        ev.verdict = Integrability::divergent;
        ev.minus_inf_slice = true;
        return ev;
    }

    // Nested Monte Carlo estimates of the integral of max(-f, 0) with a
    // doubling-sample stopping rule (4 doublings).
    const CounterRng rng{cfg.seed, streams::integrability};
    const double vol = ball_volume(l, omega_second.radius);
    constexpr int kBase = 2048;
    constexpr int kDoublings = 4;

    double sum = 0.0;
    long used = 0;
    for (int stage = 0; stage <= kDoublings; ++stage) {
        const long target = static_cast<long>(kBase) << stage;
        for (long i = used; i < target; ++i) {
            unit_direction(rng, static_cast<std::uint64_t>(i), 0, std::span<cplx>(dir));
            const double u = rng.uniform(static_cast<std::uint64_t>(i),
                                         static_cast<std::uint32_t>(4 * l));
            const double t = omega_second.radius * std::pow(u, 1.0 / (2.0 * l));
            for (int j = 0; j < l; ++j)
                pt.z[static_cast<size_t>(j)] = omega_second.center[static_cast<size_t>(j)] + t * dir[static_cast<size_t>(j)];
            const double v = s(pt);
            if (v == kMinusInf) {
                ev.verdict = Integrability::divergent;
                ev.minus_inf_slice = false;
                ev.estimates.push_back(std::numeric_limits<double>::infinity());
                ev.final_estimate = std::numeric_limits<double>::infinity();
                return ev;
            }
            sum += std::max(-v, 0.0);
        }
        used = target;
        ev.estimates.push_back(vol * sum / static_cast<double>(used));
    }
    ev.final_estimate = ev.estimates.back();

    // Growth rule: monotone blow-up across all doublings means divergence;
    // settled estimates mean integrability; anything else is inconclusive.
    bool grows = true;
    for (size_t j = 1; j < ev.estimates.size(); ++j)
        if (!(ev.estimates[j] > 1.25 * ev.estimates[j - 1] &&
              ev.estimates[j - 1] > 0.0))
            grows = false;
    const double last = ev.estimates[ev.estimates.size() - 1];
    const double prev = ev.estimates[ev.estimates.size() - 2];
    const double settle = std::abs(last - prev) /
                          std::max({std::abs(last), std::abs(prev), 1e-12 * vol, 1e-300});

    if (grows) {
        ev.verdict = Integrability::divergent;
        return ev;
    }
    if (settle <= 0.15 || last == 0.0) {
        ev.verdict = Integrability::integrable;
        return ev;
    }
    throw std::runtime_error("slice_integrability: inconclusive after max doublings");
}

// ----------------------------------------------------------------- slice_index

int slice_index(const TestFunction& f, std::span<const cplx> xprime,
                std::span<const Point> probes, double tol) {
    if (probes.empty()) throw std::invalid_argument("slice_index: need at least one probe");
    const TestFunction s = slice(f, xprime);
    int idx = s.n();
    for (const Point& z : probes) {
        HermitianMatrix H = s.has_analytic_hessian() ? s.hessian(z) : wirtinger_hessian_auto(s, z);
        const Spectrum sp = spectrum(H);
        idx = std::min(idx, subharmonic_index(sp.eigenvalues, tol));
    }
    return idx;
}

// ----------------------------------------------------------- directional side

namespace {

EstimatorConfig with_default_shell(const EstimatorConfig& cfg, const RadiusLadder& ladder) {
    EstimatorConfig c = cfg;
    if (c.clamp_radius == 0.0) c.clamp_radius = ladder.r_min() / 8.0;
    if (!(c.clamp_radius < ladder.r_min() / 4.0))
        throw std::invalid_argument("directional: clamp_radius must stay below r_min / 4");
    return c;
}

double factorial(int k) {
    double v = 1.0;
    for (int j = 2; j <= k; ++j) v *= j;
    return v;
}

}  // namespace

DirectionalEstimate directional_lelong(const TestFunction& f, const Ball& bprime,
                                       std::span<const cplx> xsecond, int m, int q,
                                       const RadiusLadder& ladder,
                                       const EstimatorConfig& cfg) {
    const int n = f.n();
    const int p = bprime.dim();
    if (!(1 <= p && p < m && m < n))
        throw std::invalid_argument("directional_lelong: requires 1 <= p < m < n");
    if (q < q_min(n, m, p))
        throw std::invalid_argument("directional_lelong: q must be >= q_min(n, m, p)");
    if (m - q < 1) throw std::invalid_argument("directional_lelong: requires m - q >= 1");
    const EstimatorConfig c = with_default_shell(cfg, ladder);

    const double kcal = calibration_constant(n);
    const double nfact = factorial(n);
    // Form-mass weights per unit hessian_mass output (which carries 2^n n!):
    //   I: p! (n-p-1)! / n!   J: (p-1)! (n-p)! / n!   total: (n-1)! / n!
    const double w_i = factorial(p) * factorial(n - p - 1) / nfact;
    const double w_j = factorial(p - 1) * factorial(n - p) / nfact;
    const double w_t = factorial(n - 1) / nfact;
    const double scaling_exp = 2.0 * (n - p) * (1.0 - 1.0 / static_cast<double>(m - q));

    DirectionalEstimate est;
    est.n = n;
    est.m = m;
    est.p = p;
    est.q = q;

    bool tainted = false;
    std::vector<LadderPoint> totals;
    for (const double r : ladder.radii()) {
        const HessianMassParts parts = hessian_mass_parts(f, bprime, xsecond, r, c);
        const double scale = kcal / std::pow(r, scaling_exp);
        DirectionalPoint pt;
        pt.r = r;
        pt.i_part = scale * w_i * parts.zsecond.value;
        pt.j_part = scale * w_j * parts.zprime.value;
        pt.total = scale * w_t * parts.total.value;
        pt.std_error = scale * w_t * parts.total.std_error;
        pt.std_error_i = scale * w_i * parts.zsecond.std_error;
        pt.std_error_j = scale * w_j * parts.zprime.std_error;
        est.per_radius.push_back(pt);
        totals.push_back({r, pt.total, pt.std_error});
        tainted = tainted || !parts.total.reliable();
    }

    const Extrapolation ex = extrapolate(totals);
    est.limit = ex.limit;
    est.fit_slope = ex.fit_slope;
    est.quality = tainted ? Quality::unreliable : ex.quality;
    return est;
}

MonotonicityReport monotonicity_check(const TestFunction& f, const Ball& bprime,
                                      std::span<const cplx> xsecond, int m, int q,
                                      const RadiusLadder& ladder,
                                      const EstimatorConfig& cfg) {
    MonotonicityReport rep;
    rep.estimate = directional_lelong(f, bprime, xsecond, m, q, ladder, cfg);
    const auto& pr = rep.estimate.per_radius;

    auto check = [&](const char* comp, auto value, auto se) {
        // radii decrease along the ladder; monotone means value(r_small) <=
        // value(r_large) within 3 stderr slack
        for (size_t j = 1; j < pr.size(); ++j) {
            const double large = value(pr[j - 1]);
            const double small = value(pr[j]);
            const double slack =
                3.0 * std::sqrt(se(pr[j - 1]) * se(pr[j - 1]) + se(pr[j]) * se(pr[j]) ) +
                1e-12 * std::max(std::abs(large), std::abs(small));
            if (small > large + slack) {
                MonotonicityViolation v;
                v.component = comp;
                v.r_small = pr[j].r;
                v.r_large = pr[j - 1].r;
                v.drop = small - large;
                v.slack = slack;
                rep.violations.push_back(v);
            }
        }
    };
    check("total", [](const DirectionalPoint& x) { return x.total; },
          [](const DirectionalPoint& x) { return x.std_error; });
    check("I", [](const DirectionalPoint& x) { return x.i_part; },
          [](const DirectionalPoint& x) { return x.std_error_i; });
    check("J", [](const DirectionalPoint& x) { return x.j_part; },
          [](const DirectionalPoint& x) { return x.std_error_j; });
    rep.pass = rep.violations.empty();
    return rep;
}

double loglog_slope(std::span<const double> radii, std::span<const double> values,
                    int window) {
    if (radii.size() != values.size() || radii.size() < 2)
        throw std::invalid_argument("loglog_slope: need matching columns, >= 2 points");
    const size_t k0 = radii.size() > static_cast<size_t>(window)
                          ? radii.size() - static_cast<size_t>(window)
                          : 0;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    int cnt = 0;
    for (size_t j = k0; j < radii.size(); ++j) {
        if (!(values[j] > 0.0) || !(radii[j] > 0.0)) continue;
        const double x = std::log(radii[j]);
        const double y = std::log(values[j]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    if (cnt < 2) throw std::runtime_error("loglog_slope: not enough positive values");
    return (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
}

// --------------------------------------------------------------- slice_identity_check

SliceIdentityReport slice_identity_check(const TestFunction& f, const Ball& bprime,
                        std::span<const cplx> xsecond, int m, int q,
                        std::span<const std::vector<cplx>> xgrid,
                        const RadiusLadder& ladder, const EstimatorConfig& cfg,
                        double tol) {
    const int n = f.n();
    const int p = bprime.dim();
    SliceIdentityReport rep;
    rep.tolerance = tol;
    rep.directional = directional_lelong(f, bprime, xsecond, m, q, ladder, cfg);
    rep.lhs = rep.directional.limit;
    rep.tainted = rep.directional.quality == Quality::unreliable;

    // J-rate exponent over the last 4 rungs (0 slope when J vanishes).
    {
        std::vector<double> rr, jj;
        for (const DirectionalPoint& pt : rep.directional.per_radius) {
            rr.push_back(pt.r);
            jj.push_back(pt.j_part);
        }
        bool positive = true;
        for (size_t j = jj.size() >= 4 ? jj.size() - 4 : 0; j < jj.size(); ++j)
            positive = positive && jj[j] > 0.0;
        rep.j_rate_slope = positive ? loglog_slope(rr, jj, 4) : 0.0;
    }

    // Right side: C(n-1,p) * beta'-volume of B' * average slice point number.
    // The beta'-volume carries the projection-measure normalization
    // (p!/pi^p) dV_p, i.e. a ball of radius rho has beta'-volume rho^{2p}.
    const Point xs_point(std::vector<cplx>(xsecond.begin(), xsecond.end()));
    double acc = 0.0;
    int used = 0;
    for (const std::vector<cplx>& xp : xgrid) {
        SliceIdentitySample row;
        row.xprime = xp;
        IntegrabilityEvidence ev;
        bool divergent = false;
        try {
            ev = slice_integrability(f, xp, Ball{xs_point.z, std::max(1.0, 4.0 * ladder.r0)}, cfg);
            divergent = ev.verdict == Integrability::divergent;
        } catch (const std::exception&) {
            divergent = true;  // inconclusive counts as taint, not as data
        }
        if (divergent) {
            row.divergent_slice = true;
            rep.tainted = true;
            rep.per_xprime.push_back(row);
            continue;
        }
        const TestFunction sl = slice(f, xp);
        const LelongEstimate le = lelong_point_sphere(sl, xs_point, m - q, ladder, cfg);
        row.slice_limit = le.limit;
        row.quality = le.quality;
        if (le.quality == Quality::unreliable) rep.tainted = true;
        acc += le.limit;
        ++used;
        rep.per_xprime.push_back(row);
    }
    const double mean_slice = used > 0 ? acc / used : 0.0;
    const double beta_prime_volume = std::pow(bprime.radius, 2 * p);
    rep.rhs = binom(n - 1, p) * beta_prime_volume * mean_slice;
    rep.difference = std::abs(rep.lhs - rep.rhs);
    rep.pass = rep.difference <= tol;
    return rep;
}

// ------------------------------------------------------ pointwise identity

std::pair<double, double> point_identity_constants(int n, int m, int p) {
    if (!(0 <= p && p < m && m < n))
        throw std::invalid_argument("point_identity_constants: requires 0 <= p < m < n");
    const double pip = std::pow(std::numbers::pi, p);
    const double a = n - static_cast<double>(n) / m;
    if (a + 1.0 <= 0.0 || a + p + 1.0 <= 0.0)
        throw std::domain_error("point_identity_constants: Gamma argument out of range");
    const double c = pip * std::tgamma(a + 1.0) / std::tgamma(a + p + 1.0);

    const int q = (p == 0) ? 0 : q_min(n, m, p);
    const double x = static_cast<double>(n - p) / (m - q);
    if (n - x + 1.0 <= 0.0 || n - x + p + 1.0 <= 0.0)
        throw std::domain_error("point_identity_constants: Gamma argument out of range");
    const double d = std::tgamma(n - x + p + 1.0) / (pip * std::tgamma(n - x + 1.0));
    return {c, d};
}

PointIdentityReport point_identity_check(const TestFunction& f, const Ball& bprime,
                        std::span<const cplx> xsecond, int m, PointIdentityMode mode,
                        const RadiusLadder& ladder, const EstimatorConfig& cfg,
                        double tol) {
    const int n = f.n();
    const int p = bprime.dim();
    if (!(1 <= p && p < m && m < n))
        throw std::invalid_argument("point_identity_check: requires 1 <= p < m < n");
    const bool integer_case = (m * p) % n == 0;
    if ((mode == PointIdentityMode::integer_case) != integer_case)
        throw std::invalid_argument("point_identity_check: mode does not match whether mp/n is an integer");

    PointIdentityReport rep;
    rep.n = n;
    rep.m = m;
    rep.p = p;
    rep.q = q_min(n, m, p);
    rep.mode = mode;
    const auto [c, d] = point_identity_constants(n, m, p);
    rep.c_constant = c;
    rep.d_constant = d;

    const EstimatorConfig c_est = cfg;
    const double delta = cfg.clamp_radius > 0.0 ? cfg.clamp_radius : ladder.r_min() / 8.0;
    const std::vector<std::vector<cplx>> xs =
        low_discrepancy_ball(bprime, 25, &f.singular(), delta);
    const Point xs_point(std::vector<cplx>(xsecond.begin(), xsecond.end()));

    double maxdiff = 0.0;
    for (const std::vector<cplx>& xp : xs) {
        PointIdentitySample s;
        s.xprime = xp;
        const TestFunction sl = slice(f, xp);
        const LelongEstimate le = lelong_point_sphere(sl, xs_point, m - rep.q, ladder, c_est);
        s.slice_limit = le.limit;
        s.quality = le.quality;
        if (mode == PointIdentityMode::integer_case) {
            Point full = concat(xp, xsecond);
            const LelongEstimate lhs = lelong_point_sphere(f, full, m, ladder, c_est);
            s.lhs = lhs.limit;
            s.rhs = c * binom(n - 1, p) * le.limit;
            if (lhs.quality == Quality::unreliable) s.quality = Quality::unreliable;
            maxdiff = std::max(maxdiff, std::abs(s.lhs - s.rhs));
        } else {
            s.lhs = 0.0;
            s.rhs = 0.0;
            maxdiff = std::max(maxdiff, std::abs(le.limit));
        }
        rep.samples.push_back(s);
    }
    rep.max_difference = maxdiff;
    rep.pass = maxdiff <= tol;
    return rep;
}

// --------------------------------------------------- sampling / exceptional set

std::vector<std::vector<cplx>> low_discrepancy_ball(const Ball& b, int count,
                                                    const SingularSet* avoid,
                                                    double delta) {
    const int p = b.dim();
    if (p < 1) throw std::invalid_argument("low_discrepancy_ball: empty ball");
    static constexpr int primes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    if (2 * p > static_cast<int>(std::size(primes)))
        throw std::invalid_argument("low_discrepancy_ball: dimension too large");

    auto halton = [](int index, int base) {
        double f = 1.0, r = 0.0;
        while (index > 0) {
            f /= base;
            r += f * (index % base);
            index /= base;
        }
        return r;
    };

    std::vector<std::vector<cplx>> out;
    for (int index = 1; static_cast<int>(out.size()) < count && index < 100000; ++index) {
        std::vector<cplx> x(static_cast<size_t>(p));
        double norm2 = 0.0;
        for (int j = 0; j < p; ++j) {
            const double re = 2.0 * halton(index, primes[2 * j]) - 1.0;
            const double im = 2.0 * halton(index, primes[2 * j + 1]) - 1.0;
            x[static_cast<size_t>(j)] = cplx(re, im);
            norm2 += re * re + im * im;
        }
        if (norm2 > 1.0) continue;
        for (int j = 0; j < p; ++j)
            x[static_cast<size_t>(j)] = b.center[static_cast<size_t>(j)] + b.radius * x[static_cast<size_t>(j)];
        if (avoid && avoid->present && !avoid->idx.empty()) {
            // distance of (x', *) to the singular set, restricted to the
            // constraints living in the first p coordinates
            double d2 = 0.0;
            bool constrained = false;
            for (size_t j = 0; j < avoid->idx.size(); ++j)
                if (avoid->idx[j] < p) {
                    constrained = true;
                    d2 += std::norm(x[static_cast<size_t>(avoid->idx[j])] - avoid->val[j]);
                }
            if (constrained && std::sqrt(d2) < delta) continue;
        }
        out.push_back(std::move(x));
    }
    if (static_cast<int>(out.size()) < count)
        throw std::runtime_error("low_discrepancy_ball: could not place the requested points");
    return out;
}

std::vector<ExceptionalCandidate> exceptional_scan(const TestFunction& f, int p,
                                                   int grid, double extent,
                                                   const Ball& omega_second,
                                                   const EstimatorConfig& cfg) {
    if (p < 1 || p >= f.n()) throw std::invalid_argument("exceptional_scan: bad split");
    if (grid < 2) throw std::invalid_argument("exceptional_scan: grid too small");

    std::vector<ExceptionalCandidate> out;
    const double step = 2.0 * extent / (grid - 1);
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            std::vector<cplx> xp(static_cast<size_t>(p), cplx(0.0, 0.0));
            xp[0] = cplx(-extent + step * i, -extent + step * j);
            IntegrabilityEvidence ev;
            try {
                ev = slice_integrability(f, xp, omega_second, cfg);
            } catch (const std::exception&) {
                // inconclusive: report as a candidate so nothing is silently dropped
                ev.verdict = Integrability::divergent;
                ev.final_estimate = std::numeric_limits<double>::quiet_NaN();
            }
            if (ev.verdict == Integrability::divergent) out.push_back({std::move(xp), ev});
        }
    }
    return out;
}

}  // namespace hesslab
