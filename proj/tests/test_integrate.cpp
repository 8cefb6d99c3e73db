#include <doctest.h>

#include <array>
#include <cmath>

#include "hesslab/garding.hpp"
#include "hesslab/integrate.hpp"
#include "hesslab/rng.hpp"

using namespace hesslab;

namespace {

EstimatorConfig small_cfg(int samples = 8192, std::uint64_t seed = 42) {
    EstimatorConfig c;
    c.samples = samples;
    c.seed = seed;
    return c;
}

TestFunction re_z1(int n) {
    TestFunction::Builder b;
    b.n = n;
    b.name = "re_z1";
    b.eval = [](const Point& z) { return z.z[0].real(); };
    return b.build();
}

}  // namespace

TEST_CASE("sphere mean of |z|^2 about the origin is r^2 exactly") {
    const TestFunction f = catalog_lookup("abs_sq", 4);
    for (double r : {0.3, 1.0, 2.5}) {
        const MassEstimate e = sphere_mean(f, Point::origin(4), r, small_cfg(1024));
        CHECK(e.value == doctest::Approx(r * r).epsilon(1e-12));
        CHECK(e.std_error <= 1e-12 * r * r);
        CHECK(e.clipped_fraction == 0.0);
    }
}

TEST_CASE("sphere mean of a radial function equals its profile value") {
    const TestFunction f = catalog_lookup("power_tau", 4, std::array<double, 1>{1.6});
    for (double r : {0.5, 1.0}) {
        const MassEstimate mc = sphere_mean(f, Point::origin(4), r, small_cfg(256));
        const double profile = f.radial()->f(r * r);
        CHECK(mc.value == doctest::Approx(profile).epsilon(1e-12));

        EstimatorConfig quad = small_cfg(64);
        quad.radial_quadrature = true;
        const MassEstimate ex = sphere_mean(f, Point::origin(4), r, quad);
        CHECK(ex.value == doctest::Approx(profile).epsilon(1e-15));
        CHECK(ex.std_error == 0.0);
    }
}

TEST_CASE("sphere mean of an odd function vanishes within noise") {
    const MassEstimate e = sphere_mean(re_z1(3), Point::origin(3), 1.0, small_cfg(16384));
    CHECK(std::abs(e.value) <= 3.0 * e.std_error + 1e-12);
}

TEST_CASE("ball mean of |z|^2 is n r^2 / (n+1)") {
    const int n = 4;
    const TestFunction f = catalog_lookup("abs_sq", n);
    const double r = 1.2;
    const double want = n * r * r / (n + 1.0);
    const MassEstimate e = ball_mean(f, Point::origin(n), r, small_cfg(65536));
    CHECK(std::abs(e.value - want) <= 3.0 * e.std_error);

    EstimatorConfig strat = small_cfg(65536);
    strat.stratified = true;
    const MassEstimate es = ball_mean(f, Point::origin(n), r, strat);
    // stratified sampling stays unbiased; its reported stderr is conservative
    CHECK(std::abs(es.value - want) <= 3.0 * es.std_error + 1e-9);
    CHECK(std::abs(es.value - want) <= std::abs(e.value - want) + 3.0 * e.std_error);
}

TEST_CASE("ball mean of a constant is exact") {
    const TestFunction c = catalog_lookup("custom_radial", 3, std::array<double, 3>{2.5, 0.0, 0.0});
    const MassEstimate e = ball_mean(c, Point::origin(3), 0.7, small_cfg(256));
    CHECK(e.value == doctest::Approx(2.5).epsilon(1e-14));
}

TEST_CASE("ball mean MC agrees with the radial quadrature oracle") {
    const TestFunction f = catalog_lookup("power_tau", 4, std::array<double, 1>{2.0});
    const double r = 1.0;
    EstimatorConfig cfg = small_cfg(65536);
    cfg.clamp_radius = 1e-4;
    const MassEstimate mc = ball_mean(f, Point::origin(4), r, cfg);
    const double oracle = radial_ball_mean(f.radial()->f, 4, r);
    CHECK(std::abs(mc.value - oracle) <= 3.0 * mc.std_error);
}

TEST_CASE("radial quadrature reproduces closed forms") {
    // mean of s^g over the ball: 2l/(2l + 2g) r^{2g}
    for (double g : {1.0, 2.0, 0.5, -0.8}) {
        const RadialProfile prof({{1.0, g, 0}});
        for (int l : {2, 4}) {
            for (double r : {0.5, 1.0, 1.7}) {
                const double want = (2.0 * l) / (2.0 * l + 2.0 * g) * std::pow(r, 2.0 * g);
                CHECK(radial_ball_mean(prof, l, r) == doctest::Approx(want).epsilon(1e-9));
            }
        }
    }
    // mean of log s over the unit ball in C^l: 2 * integral of t^{2l-1} log t^2
    // = -1/l
    for (int l : {1, 2, 5}) {
        const RadialProfile logs({{1.0, 0.0, 1}});
        CHECK(radial_ball_mean(logs, l, 1.0) == doctest::Approx(-1.0 / l).epsilon(1e-7));
    }
}

TEST_CASE("Gauss-Legendre integrates polynomials exactly") {
    const GaussLegendre& gl = gauss_legendre_64();
    const double v = gl.integrate(0.0, 1.0, [](double t) { return t * t * t * t * t; });
    CHECK(v == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    const double w = gl.integrate(-1.0, 2.0, [](double t) { return 3 * t * t; });
    CHECK(w == doctest::Approx(9.0).epsilon(1e-13));
}

TEST_CASE("estimates are deterministic in cfg and sensitive to the seed") {
    const TestFunction f = catalog_lookup("power_tau", 4, std::array<double, 1>{1.7});
    const MassEstimate a = ball_mean(f, Point::origin(4), 1.0, small_cfg(4096, 7));
    const MassEstimate b = ball_mean(f, Point::origin(4), 1.0, small_cfg(4096, 7));
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
    const MassEstimate c = ball_mean(f, Point::origin(4), 1.0, small_cfg(4096, 8));
    CHECK(a.value != c.value);
}

TEST_CASE("stderr scales like samples^{-1/2}") {
    const TestFunction f = catalog_lookup("quadratic_ab", 4, std::array<double, 2>{2.0, -1.0});
    const Point a(std::vector<cplx>{{0.3, 0}, {0.1, 0}, {0, 0}, {0, 0}});
    const MassEstimate e1 = ball_mean(f, a, 1.0, small_cfg(4096));
    const MassEstimate e2 = ball_mean(f, a, 1.0, small_cfg(16384));
    const double ratio = e1.std_error / e2.std_error;  // expect ~2
    CHECK(ratio > 2.0 / 1.5);
    CHECK(ratio < 2.0 * 1.5);
}

TEST_CASE("binomial recombination of the trace weights is exact") {
    unsigned long long state = 11;
    auto next = [&state]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(state >> 11) / static_cast<double>(1ULL << 53) * 4.0 - 2.0;
    };
    auto fact = [](int k) {
        double v = 1.0;
        for (int j = 2; j <= k; ++j) v *= j;
        return v;
    };
    for (int n : {3, 5, 8}) {
        for (int p = 1; p < n; ++p) {
            for (int rep = 0; rep < 20; ++rep) {
                const double trp = next(), trs = next();
                const double lhs = binom(n - 1, p) * fact(p) * fact(n - p - 1) * trs +
                                   binom(n - 1, p - 1) * fact(p - 1) * fact(n - p) * trp;
                const double rhs = fact(n - 1) * (trp + trs);
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("hessian_mass parts: exact zero and exact constant cases") {
    // log_abs_z2 has no z' dependence: the z'-trace part is exactly zero
    const TestFunction f = catalog_lookup("log_abs_z2", 5, {}, 1);
    const Ball bprime{std::vector<cplx>{cplx(0, 0)}, 1.0};
    const std::vector<cplx> xs(4, cplx(0, 0));
    const MassEstimate zp = hessian_mass(f, bprime, xs, 0.5, MassPart::zprime_trace, small_cfg(1024));
    CHECK(zp.value == 0.0);
    CHECK(zp.std_error == 0.0);

    // abs_sq: tr H = n exactly, so total = kappa_form * n * vol with no noise
    const int n = 5;
    const TestFunction g = catalog_lookup("abs_sq", n);
    const double r = 0.4;
    const MassEstimate tot = hessian_mass(g, bprime, xs, r, MassPart::total, small_cfg(1024));
    const double want = kappa_form(n) * n * ball_volume(1, 1.0) * ball_volume(4, r);
    CHECK(tot.value == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("hessian_mass parts share one sample stream") {
    const TestFunction f = catalog_lookup("log_abs", 5);
    const Ball bprime{std::vector<cplx>{cplx(0.2, 0), cplx(0, 0)}, 1.0};
    const std::vector<cplx> xs(3, cplx(0, 0));
    EstimatorConfig cfg = small_cfg(2048);
    cfg.clamp_radius = 1e-3;
    const HessianMassParts parts = hessian_mass_parts(f, bprime, xs, 0.5, cfg);
    const MassEstimate tot = hessian_mass(f, bprime, xs, 0.5, MassPart::total, cfg);
    const MassEstimate zp = hessian_mass(f, bprime, xs, 0.5, MassPart::zprime_trace, cfg);
    CHECK(parts.total.value == tot.value);
    CHECK(parts.zprime.value == zp.value);
    CHECK(parts.total.value == doctest::Approx(parts.zprime.value + parts.zsecond.value)
                                   .epsilon(1e-12));
}

TEST_CASE("mass of dd^c log|z''| over shrinking tubes scales as r^{2(n-p-1)}") {
    const int n = 5, p = 1;
    const TestFunction f = catalog_lookup("log_abs_z2", n, {}, p);
    const Ball bprime{std::vector<cplx>{cplx(0, 0)}, 1.0};
    const std::vector<cplx> xs(static_cast<size_t>(n - p), cplx(0, 0));
    std::vector<double> logs_r, logs_v;
    for (double r : {0.4, 0.2, 0.1}) {
        const MassEstimate e =
            hessian_mass(f, bprime, xs, r, MassPart::zsecond_trace, small_cfg(32768));
        logs_r.push_back(std::log(r));
        logs_v.push_back(std::log(e.value));
    }
    const double slope = (logs_v.front() - logs_v.back()) / (logs_r.front() - logs_r.back());
    CHECK(slope == doctest::Approx(2.0 * (n - p - 1)).epsilon(0.05));
}

TEST_CASE("clipping is reported and flags unreliable estimates") {
    const TestFunction f = catalog_lookup("power_tau", 3, std::array<double, 1>{1.5});
    EstimatorConfig cfg = small_cfg(4096);
    cfg.clamp_radius = 0.9;  // swallow most of the unit ball
    const MassEstimate e = ball_mean(f, Point::origin(3), 1.0, cfg);
    CHECK(e.clipped_fraction > 0.3);
    CHECK(e.samples_used == 4096);
    const bool flag_matches = (e.clipped_fraction >= 0.5) == !e.reliable();
    CHECK(flag_matches);
}

TEST_CASE("counter rng: pure in its key, uniform range, gaussian sanity") {
    const CounterRng a{123, 7}, b{123, 7}, c{124, 7};
    CHECK(a.bits(5, 2) == b.bits(5, 2));
    CHECK(a.bits(5, 2) != a.bits(6, 2));
    CHECK(a.bits(5, 2) != a.bits(5, 3));
    CHECK(a.bits(5, 2) != c.bits(5, 2));
    double lo = 1.0, hi = 0.0, gsum = 0.0;
    for (int i = 0; i < 4096; ++i) {
        const double u = a.uniform(static_cast<std::uint64_t>(i), 0);
        lo = std::min(lo, u);
        hi = std::max(hi, u);
        gsum += a.gaussian(static_cast<std::uint64_t>(i), 1);
    }
    CHECK(lo > 0.0);
    CHECK(hi < 1.0);
    CHECK(std::abs(gsum / 4096.0) < 0.06);  // ~3.8 sigma band for N(0,1) means
}

TEST_CASE("config validation") {
    EstimatorConfig c;
    c.samples = 32;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    const TestFunction f = catalog_lookup("abs_sq", 3);
    CHECK_THROWS_AS(sphere_mean(f, Point::origin(3), -1.0, small_cfg()), std::invalid_argument);
    CHECK_THROWS_AS(sphere_mean(f, Point::origin(4), 1.0, small_cfg()), std::invalid_argument);
}
