#include <doctest.h>

#include <array>
#include <cmath>

#include "hesslab/catalog.hpp"
#include "hesslab/hessian.hpp"

using namespace hesslab;

namespace {

Point pt(std::vector<cplx> z, int p = 0) { return Point(std::move(z), p); }

}  // namespace

TEST_CASE("abs_sq evaluates and has the identity Hessian") {
    const TestFunction f = catalog_lookup("abs_sq", 3);
    CHECK(f(pt({{1, 0}, {0, 0}, {0, 0}})) == doctest::Approx(1.0));
    CHECK(f(pt({{1, 2}, {0, 1}, {3, 0}})) == doctest::Approx(1 + 4 + 1 + 9));
    const HermitianMatrix H = f.hessian(pt({{0.3, 0.1}, {0, 0}, {1, 1}}));
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
            CHECK(std::abs(H.at(j, k) - (j == k ? cplx(1, 0) : cplx(0, 0))) < 1e-15);
}

TEST_CASE("quadratic_ab matches its closed form") {
    const TestFunction f = catalog_lookup("quadratic_ab", 5, std::array<double, 2>{2.0, -1.0});
    const Point z = pt({{1, 1}, {2, 0}, {0, 1}, {1, 0}, {0, 0}});
    // 2|z1|^2 - |z2|^2 + |z3|^2 + |z4|^2 + |z5|^2
    CHECK(f(z) == doctest::Approx(2 * 2.0 - 4.0 + 1.0 + 1.0 + 0.0));
    CHECK(f(Point::origin(5)) == 0.0);

    const Spectrum sp = spectrum(f.hessian(z));
    const std::vector<double> want{-1, 1, 1, 1, 2};
    REQUIRE(sp.eigenvalues.size() == 5);
    for (size_t j = 0; j < 5; ++j) CHECK(sp.eigenvalues[j] == doctest::Approx(want[j]));
}

TEST_CASE("power_tau profile values") {
    const TestFunction f = catalog_lookup("power_tau", 4, std::array<double, 1>{2.0});
    // phi(s) = -s^{1-tau}/(tau-1); tau = 2: phi(1) = -1, phi(4) = -1/4
    CHECK(f(pt({{1, 0}, {0, 0}, {0, 0}, {0, 0}})) == doctest::Approx(-1.0));
    CHECK(f(pt({{2, 0}, {0, 0}, {0, 0}, {0, 0}})) == doctest::Approx(-0.25));
    CHECK(f(Point::origin(4)) == kMinusInf);

    // coincides with the fundamental solution at (n, m) = (4, 2)
    const TestFunction phi = catalog_lookup("fundamental", 4, std::array<double, 1>{2.0});
    for (double t : {0.3, 0.9, 1.7}) {
        const Point z = pt({{t, 0.1}, {0, t}, {0.2, 0}, {0, 0}});
        CHECK(f(z) == doctest::Approx(phi(z)).epsilon(1e-14));
    }
}

TEST_CASE("log families: values and singular sets") {
    const TestFunction lp = catalog_lookup("log_abs_zprime", 4, {}, 1);
    CHECK(lp(pt({{0, 0}, {1, 0}, {1, 0}, {0, 0}}, 1)) == kMinusInf);
    CHECK(lp(pt({{2, 0}, {5, 0}, {0, 0}, {0, 0}}, 1)) == doctest::Approx(std::log(2.0)));
    CHECK(lp.singular().distance(pt({{0.3, 0.4}, {9, 9}, {0, 0}, {0, 0}}, 1)) ==
          doctest::Approx(0.5));

    const TestFunction ls = catalog_lookup("log_abs_z2", 4, {}, 1);
    CHECK(ls(pt({{7, 0}, {1, 0}, {0, 0}, {0, 0}}, 1)) == doctest::Approx(0.0));
    CHECK(ls.singular().distance(pt({{9, 9}, {0, 0}, {0, 0}, {0.3, -0.4}}, 1)) ==
          doctest::Approx(0.5));

    const TestFunction lg = catalog_lookup("log_abs", 3);
    CHECK(lg(pt({{std::exp(1.0), 0}, {0, 0}, {0, 0}})) == doctest::Approx(1.0));
    CHECK(lg(Point::origin(3)) == kMinusInf);
}

TEST_CASE("catalog errors") {
    CHECK_THROWS_AS(catalog_lookup("no_such_family", 4), std::invalid_argument);
    CHECK_THROWS_AS(catalog_lookup("power_tau", 4, std::array<double, 1>{1.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(catalog_lookup("power_tau", 4, std::array<double, 1>{0.5}),
                    std::invalid_argument);
    CHECK_THROWS_AS(catalog_lookup("fundamental", 3, std::array<double, 1>{3.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(catalog_lookup("log_abs_zprime", 4, {}, 0), std::invalid_argument);

    const TestFunction f = catalog_lookup("abs_sq", 3);
    CHECK_THROWS_AS(f(Point::origin(4)), std::invalid_argument);
    CHECK_THROWS_AS(eval(f, Point::origin(2)), std::invalid_argument);
}

TEST_CASE("analytic Hessians are exactly Hermitian") {
    const std::vector<TestFunction> fams = {
        catalog_lookup("abs_sq", 4),
        catalog_lookup("power_tau", 4, std::array<double, 1>{1.7}),
        catalog_lookup("log_abs", 4),
        catalog_lookup("log_abs_z2", 4, {}, 2),
        catalog_lookup("quadratic_ab", 4, std::array<double, 2>{3.0, -2.0}),
    };
    const Point z = pt({{0.4, -0.2}, {1.1, 0.3}, {-0.5, 0.8}, {0.2, 0.9}}, 2);
    for (const TestFunction& f : fams) {
        const HermitianMatrix H = f.hessian(z);
        CHECK(H.hermitian_defect() == 0.0);
        // fast diagonal agrees with the full matrix
        const std::vector<double> d = f.hessian_diag(z);
        for (int j = 0; j < 4; ++j) CHECK(d[size_t(j)] == doctest::Approx(H.at(j, j).real()));
    }
}

TEST_CASE("radial profile derivatives against 1-D central differences") {
    // f(s) = 2 s^{1.5} - 0.7 log s + 0.3 s^{-0.5}
    const RadialProfile f({{2.0, 1.5, 0}, {-0.7, 0.0, 1}, {0.3, -0.5, 0}});
    const RadialProfile fp = f.derivative();
    const RadialProfile fpp = fp.derivative();
    for (double s : {0.2, 0.8, 1.9, 4.2}) {
        const double h1 = 1e-6;
        const double dfd = (f(s + h1) - f(s - h1)) / (2 * h1);
        CHECK(fp(s) == doctest::Approx(dfd).epsilon(1e-7));
        const double h2 = 1e-4;  // larger step: second differences amplify rounding
        const double d2fd = (f(s + h2) - 2 * f(s) + f(s - h2)) / (h2 * h2);
        CHECK(fpp(s) == doctest::Approx(d2fd).epsilon(1e-5));
    }
}

TEST_CASE("custom_radial builds the profile and the singular set") {
    // f(s) = s^2 (smooth): no singular set
    const TestFunction q = catalog_lookup("custom_radial", 3, std::array<double, 3>{1.0, 2.0, 0.0});
    CHECK_FALSE(q.singular().present);
    CHECK(q(pt({{1, 0}, {1, 0}, {0, 0}})) == doctest::Approx(4.0));

    // f(s) = log s: singular at 0
    const TestFunction lg = catalog_lookup("custom_radial", 3, std::array<double, 3>{1.0, 0.0, 1.0});
    CHECK(lg.singular().present);
    CHECK(lg(Point::origin(3)) == kMinusInf);

    CHECK_THROWS_AS(catalog_lookup("custom_radial", 3, std::array<double, 2>{1.0, 2.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(catalog_lookup("custom_radial", 3, std::array<double, 3>{1.0, 2.0, 2.0}),
                    std::invalid_argument);
}

TEST_CASE("Point validates its invariants") {
    CHECK_THROWS_AS(Point(std::vector<cplx>{}), std::invalid_argument);
    CHECK_THROWS_AS(Point(std::vector<cplx>{{1, 0}}, 1), std::invalid_argument);
    CHECK_THROWS_AS(Point(std::vector<cplx>{{1, 0}, {0, 0}}, -1), std::invalid_argument);
    const Point z(std::vector<cplx>{{1, 0}, {2, 0}, {3, 0}}, 1);
    CHECK(z.zprime().size() == 1);
    CHECK(z.zsecond().size() == 2);
}

TEST_CASE("eval is finite off the singular set") {
    const std::vector<TestFunction> fams = {
        catalog_lookup("abs_sq", 4),
        catalog_lookup("quadratic_ab", 4, std::array<double, 2>{-3.0, 7.0}),
        catalog_lookup("power_tau", 4, std::array<double, 1>{2.3}),
        catalog_lookup("fundamental", 4, std::array<double, 1>{3.0}),
        catalog_lookup("log_abs", 4),
        catalog_lookup("log_abs_zprime", 4, {}, 2),
        catalog_lookup("log_abs_z2", 4, {}, 2),
    };
    unsigned long long state = 99;
    auto next = [&state]() {
        state = state * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(state >> 11) / static_cast<double>(1ULL << 53) * 4.0 - 2.0;
    };
    for (const TestFunction& f : fams) {
        for (int rep = 0; rep < 50; ++rep) {
            Point z = Point::origin(4, f.split());
            for (auto& c : z.z) c = cplx(next(), next());
            if (f.singular().distance(z) <= 1e-9) continue;
            CHECK(std::isfinite(f(z)));
        }
    }
}

TEST_CASE("radial profile limits at s = 0") {
    CHECK(RadialProfile({{1.0, 1.0, 0}})(0.0) == 0.0);          // s -> 0
    CHECK(RadialProfile({{1.0, 0.0, 0}})(0.0) == 1.0);          // constant
    CHECK(RadialProfile({{0.5, 0.0, 1}})(0.0) == kMinusInf);    // log s
    CHECK(RadialProfile({{-1.0, -0.5, 0}})(0.0) == kMinusInf);  // -s^{-1/2}
    CHECK(RadialProfile({{1.0, 2.0, 1}})(0.0) == 0.0);          // s^2 log s
}
