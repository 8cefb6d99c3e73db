#include "hesslab/catalog.hpp"

#include <cmath>
#include <stdexcept>

namespace hesslab {

// ---------------------------------------------------------------- SingularSet

SingularSet SingularSet::point_at(std::vector<cplx> a) {
    SingularSet s;
    s.present = true;
    s.idx.resize(a.size());
    for (size_t j = 0; j < a.size(); ++j) s.idx[j] = static_cast<int>(j);
    s.val = std::move(a);
    return s;
}

SingularSet SingularSet::coordinate_plane(int first, std::vector<cplx> vals) {
    SingularSet s;
    s.present = true;
    s.idx.resize(vals.size());
    for (size_t j = 0; j < vals.size(); ++j) s.idx[j] = first + static_cast<int>(j);
    s.val = std::move(vals);
    return s;
}

double SingularSet::distance(const Point& z) const {
    if (!present) return std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (size_t j = 0; j < idx.size(); ++j) {
        const int i = idx[j];
        if (i < 0 || i >= z.n()) throw std::invalid_argument("SingularSet: index out of range");
        s += std::norm(z.z[static_cast<size_t>(i)] - val[j]);
    }
    return std::sqrt(s);
}

// -------------------------------------------------------------- RadialProfile

double RadialProfile::operator()(double s) const {
    if (s < 0.0) throw std::invalid_argument("RadialProfile: negative argument");
    double acc = 0.0;
    for (const RadialTerm& t : terms_) {
        if (t.coeff == 0.0) continue;
        double v;
        if (s == 0.0) {
            // limits as s -> 0+ of s^gamma log^L s
            if (t.gamma > 0.0)
                v = 0.0;
            else if (t.gamma == 0.0)
                v = (t.logpow != 0) ? kMinusInf : 1.0;
            else
                v = (t.logpow != 0) ? kMinusInf : std::numeric_limits<double>::infinity();
        } else {
            v = std::pow(s, t.gamma);
            if (t.logpow != 0) v *= std::log(s);
        }
        acc += t.coeff * v;
    }
    return acc;
}

RadialProfile RadialProfile::derivative() const {
    std::vector<RadialTerm> out;
    out.reserve(2 * terms_.size());
    for (const RadialTerm& t : terms_) {
        // d/ds [c s^g log^L s] = c g s^{g-1} log^L s + c L s^{g-1} log^{L-1} s
        if (t.gamma != 0.0) out.push_back({t.coeff * t.gamma, t.gamma - 1.0, t.logpow});
        if (t.logpow != 0) out.push_back({t.coeff * t.logpow, t.gamma - 1.0, t.logpow - 1});
    }
    return RadialProfile(std::move(out));
}

bool RadialProfile::singular_at_zero() const {
    for (const RadialTerm& t : terms_)
        if (t.coeff != 0.0 && (t.gamma < 0.0 || (t.logpow != 0 && t.gamma == 0.0)))
            return true;
    return false;
}

// --------------------------------------------------------------- TestFunction

TestFunction TestFunction::Builder::build() const {
    if (n <= 0) throw std::invalid_argument("TestFunction: dimension must be positive");
    if (p < 0 || p >= n) throw std::invalid_argument("TestFunction: split out of range");
    if (!eval) throw std::invalid_argument("TestFunction: missing evaluator");
    TestFunction f;
    f.n_ = n;
    f.p_ = p;
    f.name_ = name;
    f.params_ = params;
    f.eval_ = eval;
    f.hess_ = hess;
    f.diag_ = diag;
    f.singular_ = singular;
    f.radial_ = radial;
    return f;
}

double TestFunction::operator()(const Point& z) const {
    if (z.n() != n_) throw std::invalid_argument("TestFunction: dimension mismatch");
    return eval_(z);
}

HermitianMatrix TestFunction::hessian(const Point& z) const {
    if (z.n() != n_) throw std::invalid_argument("TestFunction: dimension mismatch");
    if (!hess_) throw std::logic_error("TestFunction: no analytic Hessian for " + name_);
    return hess_(z);
}

std::vector<double> TestFunction::hessian_diag(const Point& z) const {
    if (z.n() != n_) throw std::invalid_argument("TestFunction: dimension mismatch");
    if (diag_) return diag_(z);
    return hessian(z).real_diagonal();
}

double eval(const TestFunction& f, const Point& z) { return f(z); }

// ------------------------------------------------------------ catalog helpers

namespace {

// Hessian of profile(|w|^2), w = z[first..first+b) - center:
//   H_jk = f'(s) delta_jk + f''(s) conj(w_j) w_k  on the block, 0 elsewhere.
HermitianMatrix radial_hessian(const RadialStructure& rs, int n, int first, const Point& z) {
    const int b = static_cast<int>(rs.center.size());
    std::vector<cplx> w(static_cast<size_t>(b));
    double s = 0.0;
    for (int j = 0; j < b; ++j) {
        w[static_cast<size_t>(j)] = z.z[static_cast<size_t>(first + j)] - rs.center[static_cast<size_t>(j)];
        s += std::norm(w[static_cast<size_t>(j)]);
    }
    const double fp = rs.fp(s);
    const double fpp = rs.fpp(s);
    if (!std::isfinite(fp) || !std::isfinite(fpp))
        throw std::domain_error("radial Hessian evaluated on the singular set");
    HermitianMatrix H(n);
    for (int j = 0; j < b; ++j) {
        H.at(first + j, first + j) = fp + fpp * std::norm(w[static_cast<size_t>(j)]);
        for (int k = j + 1; k < b; ++k) {
            const cplx v = fpp * std::conj(w[static_cast<size_t>(j)]) * w[static_cast<size_t>(k)];
            H.at(first + j, first + k) = v;
            H.at(first + k, first + j) = std::conj(v);
        }
    }
    return H;
}

std::vector<double> radial_diag(const RadialStructure& rs, int n, int first, const Point& z) {
    const int b = static_cast<int>(rs.center.size());
    double s = 0.0;
    for (int j = 0; j < b; ++j)
        s += std::norm(z.z[static_cast<size_t>(first + j)] - rs.center[static_cast<size_t>(j)]);
    const double fp = rs.fp(s);
    const double fpp = rs.fpp(s);
    if (!std::isfinite(fp) || !std::isfinite(fpp))
        throw std::domain_error("radial Hessian evaluated on the singular set");
    std::vector<double> d(static_cast<size_t>(n), 0.0);
    for (int j = 0; j < b; ++j) {
        const double w2 = std::norm(z.z[static_cast<size_t>(first + j)] - rs.center[static_cast<size_t>(j)]);
        d[static_cast<size_t>(first + j)] = fp + fpp * w2;
    }
    return d;
}

TestFunction make_radial(const std::string& name, int n, int p, RadialBlock block,
                         RadialProfile f, std::vector<double> params,
                         SingularSet singular) {
    const int first = (block == RadialBlock::zsecond) ? p : 0;
    const int b = (block == RadialBlock::full) ? n : (block == RadialBlock::zprime ? p : n - p);
    RadialStructure rs;
    rs.block = block;
    rs.center.assign(static_cast<size_t>(b), cplx(0.0, 0.0));
    rs.f = f;
    rs.fp = f.derivative();
    rs.fpp = rs.fp.derivative();

    TestFunction::Builder builder;
    builder.n = n;
    builder.p = p;
    builder.name = name;
    builder.params = std::move(params);
    builder.singular = std::move(singular);
    builder.radial = rs;
    builder.eval = [rs, first, b](const Point& z) {
        double s = 0.0;
        for (int j = 0; j < b; ++j)
            s += std::norm(z.z[static_cast<size_t>(first + j)] - rs.center[static_cast<size_t>(j)]);
        return rs.f(s);
    };
    builder.hess = [rs, first, n](const Point& z) { return radial_hessian(rs, n, first, z); };
    builder.diag = [rs, first, n](const Point& z) { return radial_diag(rs, n, first, z); };
    return builder.build();
}

TestFunction make_quadratic_ab(int n, int p, double a, double b) {
    TestFunction::Builder builder;
    builder.n = n;
    builder.p = p;
    builder.name = "quadratic_ab";
    builder.params = {a, b};
    builder.singular = SingularSet::none();
    builder.eval = [a, b](const Point& z) {
        double v = a * std::norm(z.z[0]) + b * std::norm(z.z[1]);
        for (size_t j = 2; j < z.z.size(); ++j) v += std::norm(z.z[j]);
        return v;
    };
    builder.hess = [a, b, n](const Point&) {
        std::vector<double> d(static_cast<size_t>(n), 1.0);
        d[0] = a;
        d[1] = b;
        return HermitianMatrix::diagonal(d);
    };
    builder.diag = [a, b, n](const Point&) {
        std::vector<double> d(static_cast<size_t>(n), 1.0);
        d[0] = a;
        d[1] = b;
        return d;
    };
    return builder.build();
}

[[noreturn]] void bad_params(const std::string& name, const std::string& why) {
    throw std::invalid_argument("catalog_lookup(" + name + "): " + why);
}

}  // namespace

TestFunction catalog_lookup(const std::string& name, int n, std::span<const double> params,
                            int p) {
    if (n <= 0) bad_params(name, "dimension must be positive");

    if (name == "abs_sq") {
        return make_radial("abs_sq", n, p, RadialBlock::full,
                           RadialProfile({{1.0, 1.0, 0}}), {}, SingularSet::none());
    }

    if (name == "quadratic_ab") {
        if (params.size() != 2) bad_params(name, "expected params (a, b)");
        if (n < 2) bad_params(name, "needs n >= 2");
        return make_quadratic_ab(n, p, params[0], params[1]);
    }

    if (name == "power_tau" || name == "fundamental") {
        double tau;
        std::vector<double> rec;
        if (name == "fundamental") {
            if (params.size() != 1) bad_params(name, "expected params (m)");
            const int m = static_cast<int>(params[0]);
            if (m < 1 || m >= n) bad_params(name, "requires 1 <= m < n");
            tau = static_cast<double>(n) / m;
            rec = {static_cast<double>(m)};
        } else {
            if (params.size() != 1) bad_params(name, "expected params (tau)");
            tau = params[0];
            if (!(tau > 1.0)) bad_params(name, "requires tau > 1");
            rec = {tau};
        }
        // f(s) = -s^{1-tau} / (tau-1)
        RadialProfile prof({{-1.0 / (tau - 1.0), 1.0 - tau, 0}});
        return make_radial(name, n, p, RadialBlock::full, prof, rec,
                           SingularSet::point_at(std::vector<cplx>(static_cast<size_t>(n))));
    }

    if (name == "log_abs") {
        return make_radial("log_abs", n, p, RadialBlock::full,
                           RadialProfile({{0.5, 0.0, 1}}), {},
                           SingularSet::point_at(std::vector<cplx>(static_cast<size_t>(n))));
    }

    if (name == "log_abs_zprime") {
        if (p < 1 || p >= n) bad_params(name, "requires split 1 <= p < n");
        return make_radial("log_abs_zprime", n, p, RadialBlock::zprime,
                           RadialProfile({{0.5, 0.0, 1}}), {},
                           SingularSet::coordinate_plane(0, std::vector<cplx>(static_cast<size_t>(p))));
    }

    if (name == "log_abs_z2") {
        if (p < 1 || p >= n) bad_params(name, "requires split 1 <= p < n");
        return make_radial("log_abs_z2", n, p, RadialBlock::zsecond,
                           RadialProfile({{0.5, 0.0, 1}}), {},
                           SingularSet::coordinate_plane(p, std::vector<cplx>(static_cast<size_t>(n - p))));
    }

    if (name == "custom_radial") {
        if (params.empty() || params.size() % 3 != 0)
            bad_params(name, "expected flat term triples (coeff, gamma, logpow)*");
        std::vector<RadialTerm> terms;
        for (size_t j = 0; j < params.size(); j += 3) {
            const int lp = static_cast<int>(params[j + 2]);
            if (lp != 0 && lp != 1) bad_params(name, "logpow must be 0 or 1");
            terms.push_back({params[j], params[j + 1], lp});
        }
        RadialProfile prof(terms);
        SingularSet sing = prof.singular_at_zero()
                               ? SingularSet::point_at(std::vector<cplx>(static_cast<size_t>(n)))
                               : SingularSet::none();
        return make_radial("custom_radial", n, p, RadialBlock::full, prof,
                           std::vector<double>(params.begin(), params.end()), std::move(sing));
    }

    throw std::invalid_argument("catalog_lookup: unknown function name '" + name + "'");
}

TestFunction custom_block_radial(int n, int p, RadialBlock block,
                                 std::span<const RadialTerm> terms) {
    RadialProfile prof(std::vector<RadialTerm>(terms.begin(), terms.end()));
    SingularSet sing = SingularSet::none();
    if (prof.singular_at_zero()) {
        switch (block) {
            case RadialBlock::full:
                sing = SingularSet::point_at(std::vector<cplx>(static_cast<size_t>(n)));
                break;
            case RadialBlock::zprime:
                sing = SingularSet::coordinate_plane(0, std::vector<cplx>(static_cast<size_t>(p)));
                break;
            case RadialBlock::zsecond:
                sing = SingularSet::coordinate_plane(p, std::vector<cplx>(static_cast<size_t>(n - p)));
                break;
        }
    }
    if (block != RadialBlock::full && (p < 1 || p >= n))
        throw std::invalid_argument("custom_block_radial: requires split 1 <= p < n");
    std::vector<double> rec;
    for (const RadialTerm& t : terms) {
        rec.push_back(t.coeff);
        rec.push_back(t.gamma);
        rec.push_back(static_cast<double>(t.logpow));
    }
    return make_radial("custom_block_radial", n, p, block, prof, std::move(rec),
                       std::move(sing));
}

}  // namespace hesslab
