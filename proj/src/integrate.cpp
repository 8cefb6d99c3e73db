#include "hesslab/integrate.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "hesslab/hessian.hpp"
#include "hesslab/rng.hpp"

namespace hesslab {

void EstimatorConfig::validate() const {
    if (samples < 64) throw std::invalid_argument("EstimatorConfig: samples must be >= 64");
    if (clamp_radius < 0.0)
        throw std::invalid_argument("EstimatorConfig: clamp_radius must be >= 0");
}

double ball_volume(int dim_c, double r) {
    double v = 1.0;
    for (int j = 1; j <= dim_c; ++j) v *= std::numbers::pi * r * r / j;
    return v;
}

double sphere_area(int dim_c, double r) {
    // 2 pi^l r^{2l-1} / (l-1)!
    double v = 2.0 * std::numbers::pi * std::pow(r, 2 * dim_c - 1);
    for (int j = 1; j <= dim_c - 1; ++j) v *= std::numbers::pi / j;
    return v;
}

double kappa_form(int n) {
    double v = 1.0;
    for (int j = 1; j <= n; ++j) v *= 2.0 * j;
    return v;  // 2^n n!
}

namespace {

constexpr int kMaxAttempts = 64;

// Compensated (Neumaier) accumulator; summation order is fixed, so results
// are bit-identical across runs.
struct KahanSum {
    double s = 0.0, c = 0.0;
    void add(double x) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x))
            c += (s - t) + x;
        else
            c += (x - t) + s;
        s = t;
    }
    double get() const { return s + c; }
};

struct Moments {
    KahanSum sum, sumsq;
    long count = 0;
    void add(double v) {
        sum.add(v);
        sumsq.add(v * v);
        ++count;
    }
    double mean() const { return sum.get() / count; }
    double std_error() const {
        if (count < 2) return 0.0;
        const double m = mean();
        double var = (sumsq.get() - count * m * m) / (count - 1);
        if (var < 0.0) var = 0.0;
        return std::sqrt(var / count);
    }
};

bool radial_center_match(const TestFunction& f, const Point& a) {
    if (!f.radial() || f.radial()->block != RadialBlock::full) return false;
    double d2 = 0.0;
    for (int j = 0; j < f.n(); ++j)
        d2 += std::norm(a.z[static_cast<size_t>(j)] - f.radial()->center[static_cast<size_t>(j)]);
    return std::sqrt(d2) < 1e-12;
}

[[noreturn]] void starved(const char* who) {
    throw std::runtime_error(std::string(who) + ": all samples clipped by the exclusion shell");
}

}  // namespace

MassEstimate sphere_mean(const TestFunction& f, const Point& a, double r,
                         const EstimatorConfig& cfg) {
    cfg.validate();
    if (a.n() != f.n()) throw std::invalid_argument("sphere_mean: dimension mismatch");
    if (!(r > 0.0)) throw std::invalid_argument("sphere_mean: radius must be positive");
    const double delta = cfg.clamp_radius;
    if (r <= delta) throw std::invalid_argument("sphere_mean: radius must exceed clamp_radius");

    if (cfg.radial_quadrature && radial_center_match(f, a)) {
        MassEstimate e;
        e.value = f.radial()->f(r * r);
        e.samples_used = 1;
        if (!std::isfinite(e.value)) throw std::runtime_error("sphere_mean: non-finite average");
        return e;
    }

    const int n = f.n();
    const CounterRng rng{cfg.seed, streams::sphere};
    Moments mom;
    long clips = 0;
    Point pt = Point::origin(n, a.p);
    std::vector<cplx> dir(static_cast<size_t>(n));

    for (int i = 0; i < cfg.samples; ++i) {
        bool ok = false;
        for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
            const std::uint64_t counter =
                (static_cast<std::uint64_t>(i) << 8) | static_cast<std::uint64_t>(attempt);
            unit_direction(rng, counter, 0, dir);
            for (int j = 0; j < n; ++j)
                pt.z[static_cast<size_t>(j)] = a.z[static_cast<size_t>(j)] + r * dir[static_cast<size_t>(j)];
            if (delta > 0.0 && f.singular().distance(pt) < delta) {
                ++clips;
                continue;
            }
            const double v = f(pt);
            if (!std::isfinite(v))
                throw std::runtime_error("sphere_mean: non-finite sample off the exclusion shell");
            mom.add(v);
            ok = true;
            break;
        }
        if (!ok) starved("sphere_mean");
    }

    MassEstimate e;
    e.value = mom.mean();
    e.std_error = mom.std_error();
    e.samples_used = mom.count;
    e.clipped_fraction = static_cast<double>(clips) / (mom.count + clips);
    if (!std::isfinite(e.value)) throw std::runtime_error("sphere_mean: non-finite average");
    return e;
}

MassEstimate ball_mean(const TestFunction& f, const Point& a, double r,
                       const EstimatorConfig& cfg) {
    cfg.validate();
    if (a.n() != f.n()) throw std::invalid_argument("ball_mean: dimension mismatch");
    if (!(r > 0.0)) throw std::invalid_argument("ball_mean: radius must be positive");
    const double delta = cfg.clamp_radius;
    if (r <= delta) throw std::invalid_argument("ball_mean: radius must exceed clamp_radius");

    if (cfg.radial_quadrature && radial_center_match(f, a)) {
        MassEstimate e;
        e.value = radial_ball_mean(f.radial()->f, f.n(), r);
        e.samples_used = gauss_legendre_64().nodes();
        if (!std::isfinite(e.value)) throw std::runtime_error("ball_mean: non-finite average");
        return e;
    }

    const int n = f.n();
    const CounterRng rng{cfg.seed, streams::ball};
    Moments mom;
    long clips = 0;
    Point pt = Point::origin(n, a.p);
    std::vector<cplx> dir(static_cast<size_t>(n));
    const double exponent = 1.0 / (2.0 * n);

    for (int i = 0; i < cfg.samples; ++i) {
        bool ok = false;
        for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
            const std::uint64_t counter =
                (static_cast<std::uint64_t>(i) << 8) | static_cast<std::uint64_t>(attempt);
            unit_direction(rng, counter, 0, dir);
            double u = rng.uniform(counter, static_cast<std::uint32_t>(4 * n));
            if (cfg.stratified) u = (static_cast<double>(i) + u) / cfg.samples;
            const double t = r * std::pow(u, exponent);
            for (int j = 0; j < n; ++j)
                pt.z[static_cast<size_t>(j)] = a.z[static_cast<size_t>(j)] + t * dir[static_cast<size_t>(j)];
            if (delta > 0.0 && f.singular().distance(pt) < delta) {
                ++clips;
                continue;
            }
            const double v = f(pt);
            if (!std::isfinite(v))
                throw std::runtime_error("ball_mean: non-finite sample off the exclusion shell");
            mom.add(v);
            ok = true;
            break;
        }
        if (!ok) starved("ball_mean");
    }

    MassEstimate e;
    e.value = mom.mean();
    e.std_error = mom.std_error();
    e.samples_used = mom.count;
    e.clipped_fraction = static_cast<double>(clips) / (mom.count + clips);
    if (!std::isfinite(e.value)) throw std::runtime_error("ball_mean: non-finite average");
    return e;
}

HessianMassParts hessian_mass_parts(const TestFunction& f, const Ball& bprime,
                                    std::span<const cplx> xsecond, double r,
                                    const EstimatorConfig& cfg) {
    cfg.validate();
    const int n = f.n();
    const int p = bprime.dim();
    if (p < 1 || p >= n) throw std::invalid_argument("hessian_mass: need 1 <= p < n");
    if (static_cast<int>(xsecond.size()) != n - p)
        throw std::invalid_argument("hessian_mass: x'' must lie in C^{n-p}");
    if (!(r > 0.0) || !(bprime.radius > 0.0))
        throw std::invalid_argument("hessian_mass: radii must be positive");
    const double delta = cfg.clamp_radius;

    const CounterRng rng{cfg.seed, streams::mass};
    Moments mtot, mprime, msecond;
    long clips = 0;
    Point pt = Point::origin(n, p);
    std::vector<cplx> dir(static_cast<size_t>(n));
    const double exp_p = 1.0 / (2.0 * p);
    const double exp_s = 1.0 / (2.0 * (n - p));
    const bool analytic = f.has_analytic_hessian();

    for (int i = 0; i < cfg.samples; ++i) {
        bool ok = false;
        for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
            const std::uint64_t counter =
                (static_cast<std::uint64_t>(i) << 8) | static_cast<std::uint64_t>(attempt);
            unit_direction(rng, counter, 0, {dir.data(), static_cast<size_t>(p)});
            unit_direction(rng, counter, static_cast<std::uint32_t>(2 * p),
                           {dir.data() + p, static_cast<size_t>(n - p)});
            double up = rng.uniform(counter, static_cast<std::uint32_t>(4 * n));
            double us = rng.uniform(counter, static_cast<std::uint32_t>(4 * n + 1));
            if (cfg.stratified) up = (static_cast<double>(i) + up) / cfg.samples;
            const double tp = bprime.radius * std::pow(up, exp_p);
            const double ts = r * std::pow(us, exp_s);
            for (int j = 0; j < p; ++j)
                pt.z[static_cast<size_t>(j)] =
                    bprime.center[static_cast<size_t>(j)] + tp * dir[static_cast<size_t>(j)];
            for (int j = p; j < n; ++j)
                pt.z[static_cast<size_t>(j)] =
                    xsecond[static_cast<size_t>(j - p)] + ts * dir[static_cast<size_t>(j)];
            if (delta > 0.0 && f.singular().distance(pt) < delta) {
                ++clips;
                continue;
            }
            std::vector<double> diag =
                analytic ? f.hessian_diag(pt) : wirtinger_hessian_auto(f, pt).real_diagonal();
            double trp = 0.0, trs = 0.0;
            for (int j = 0; j < p; ++j) trp += diag[static_cast<size_t>(j)];
            for (int j = p; j < n; ++j) trs += diag[static_cast<size_t>(j)];
            if (!std::isfinite(trp) || !std::isfinite(trs))
                throw std::runtime_error("hessian_mass: non-finite Hessian sample");
            mtot.add(trp + trs);
            mprime.add(trp);
            msecond.add(trs);
            ok = true;
            break;
        }
        if (!ok) starved("hessian_mass");
    }

    // Effective region volume: acceptance ratio corrects for the shell.
    const double accept = static_cast<double>(mtot.count) / (mtot.count + clips);
    const double vol =
        kappa_form(n) * ball_volume(p, bprime.radius) * ball_volume(n - p, r) * accept;
    const double clipped = static_cast<double>(clips) / (mtot.count + clips);

    auto finish = [&](const Moments& m) {
        MassEstimate e;
        e.value = vol * m.mean();
        e.std_error = vol * m.std_error();
        e.samples_used = m.count;
        e.clipped_fraction = clipped;
        return e;
    };
    HessianMassParts parts{finish(mtot), finish(mprime), finish(msecond)};
    return parts;
}

MassEstimate trace_ball_mass(const TestFunction& f, const Point& a, double r,
                             const EstimatorConfig& cfg) {
    cfg.validate();
    const int n = f.n();
    if (a.n() != n) throw std::invalid_argument("trace_ball_mass: dimension mismatch");
    if (!(r > 0.0)) throw std::invalid_argument("trace_ball_mass: radius must be positive");
    const double delta = cfg.clamp_radius;

    if (cfg.radial_quadrature && radial_center_match(f, a)) {
        // tr H(t) = n f'(s) + s f''(s) with s = t^2; 1-D radial reduction.
        const RadialProfile fp = f.radial()->fp;
        const RadialProfile fpp = f.radial()->fpp;
        const double integral =
            sphere_area(n, 1.0) * gauss_legendre_64().integrate(0.0, 1.0, [&](double u) {
                const double t = r * u * u;
                if (t == 0.0) return 0.0;
                const double s = t * t;
                return (n * fp(s) + s * fpp(s)) * std::pow(t, 2 * n - 1) * 2.0 * r * u;
            });
        MassEstimate e;
        e.value = integral;
        e.samples_used = gauss_legendre_64().nodes();
        return e;
    }

    const CounterRng rng{cfg.seed, streams::mass};
    Moments mom;
    long clips = 0;
    Point pt = Point::origin(n, a.p);
    std::vector<cplx> dir(static_cast<size_t>(n));
    const double exponent = 1.0 / (2.0 * n);
    const bool analytic = f.has_analytic_hessian();

    for (int i = 0; i < cfg.samples; ++i) {
        bool ok = false;
        for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
            const std::uint64_t counter =
                (static_cast<std::uint64_t>(i) << 8) | static_cast<std::uint64_t>(attempt);
            unit_direction(rng, counter, 0, dir);
            double u = rng.uniform(counter, static_cast<std::uint32_t>(4 * n));
            if (cfg.stratified) u = (static_cast<double>(i) + u) / cfg.samples;
            const double t = r * std::pow(u, exponent);
            for (int j = 0; j < n; ++j)
                pt.z[static_cast<size_t>(j)] = a.z[static_cast<size_t>(j)] + t * dir[static_cast<size_t>(j)];
            if (delta > 0.0 && f.singular().distance(pt) < delta) {
                ++clips;
                continue;
            }
            std::vector<double> diag =
                analytic ? f.hessian_diag(pt) : wirtinger_hessian_auto(f, pt).real_diagonal();
            double tr = 0.0;
            for (double d : diag) tr += d;
            if (!std::isfinite(tr))
                throw std::runtime_error("trace_ball_mass: non-finite Hessian sample");
            mom.add(tr);
            ok = true;
            break;
        }
        if (!ok) starved("trace_ball_mass");
    }

    const double accept = static_cast<double>(mom.count) / (mom.count + clips);
    const double vol = ball_volume(n, r) * accept;
    MassEstimate e;
    e.value = vol * mom.mean();
    e.std_error = vol * mom.std_error();
    e.samples_used = mom.count;
    e.clipped_fraction = static_cast<double>(clips) / (mom.count + clips);
    return e;
}

MassEstimate hessian_mass(const TestFunction& f, const Ball& bprime,
                          std::span<const cplx> xsecond, double r, MassPart part,
                          const EstimatorConfig& cfg) {
    const HessianMassParts parts = hessian_mass_parts(f, bprime, xsecond, r, cfg);
    switch (part) {
        case MassPart::total: return parts.total;
        case MassPart::zprime_trace: return parts.zprime;
        case MassPart::zsecond_trace: return parts.zsecond;
    }
    throw std::logic_error("hessian_mass: bad part");
}

// -------------------------------------------------------------- quadrature

GaussLegendre::GaussLegendre(int nodes) {
    if (nodes < 2) throw std::invalid_argument("GaussLegendre: need at least 2 nodes");
    x_.resize(static_cast<size_t>(nodes));
    w_.resize(static_cast<size_t>(nodes));
    const int m = (nodes + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Newton iteration from the Chebyshev estimate of the i-th root of P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (nodes + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < nodes; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1);
            }
            pp = nodes * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        x_[static_cast<size_t>(i)] = -x;
        x_[static_cast<size_t>(nodes - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        w_[static_cast<size_t>(i)] = w;
        w_[static_cast<size_t>(nodes - 1 - i)] = w;
    }
}

double GaussLegendre::integrate(double a, double b,
                                const std::function<double(double)>& fn) const {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    KahanSum acc;
    for (size_t j = 0; j < x_.size(); ++j) acc.add(w_[j] * fn(mid + half * x_[j]));
    return half * acc.get();
}

const GaussLegendre& gauss_legendre_64() {
    static const GaussLegendre rule(64);
    return rule;
}

double radial_moment(const RadialProfile& f, int dim_c, double r) {
    if (dim_c < 1) throw std::invalid_argument("radial_moment: dimension must be >= 1");
    // integral of f(t^2) t^{2l-1} over [0, r]; substitution t = r u^2 clusters
    // nodes near the (integrable) singular endpoint.
    return gauss_legendre_64().integrate(0.0, 1.0, [&](double u) {
        const double t = r * u * u;
        if (t == 0.0) return 0.0;
        return f(t * t) * std::pow(t, 2 * dim_c - 1) * 2.0 * r * u;
    });
}

double radial_ball_mean(const RadialProfile& f, int dim_c, double r) {
    return 2.0 * dim_c * radial_moment(f, dim_c, r) / std::pow(r, 2 * dim_c);
}

}  // namespace hesslab
