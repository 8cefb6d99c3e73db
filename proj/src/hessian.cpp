#include "hesslab/hessian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hesslab/catalog.hpp"

namespace hesslab {

// ------------------------------------------------------------ HermitianMatrix

double HermitianMatrix::trace() const {
    double t = 0.0;
    for (int j = 0; j < n_; ++j) t += at(j, j).real();
    return t;
}

double HermitianMatrix::frobenius() const {
    double s = 0.0;
    for (const cplx& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double HermitianMatrix::hermitian_defect() const {
    double d = 0.0;
    for (int j = 0; j < n_; ++j)
        for (int k = j; k < n_; ++k)
            d = std::max(d, std::abs(at(j, k) - std::conj(at(k, j))));
    return d;
}

void HermitianMatrix::symmetrize() {
    for (int j = 0; j < n_; ++j) {
        at(j, j) = cplx(at(j, j).real(), 0.0);
        for (int k = j + 1; k < n_; ++k) {
            const cplx v = 0.5 * (at(j, k) + std::conj(at(k, j)));
            at(j, k) = v;
            at(k, j) = std::conj(v);
        }
    }
}

std::vector<double> HermitianMatrix::real_diagonal() const {
    std::vector<double> d(static_cast<size_t>(n_));
    for (int j = 0; j < n_; ++j) d[static_cast<size_t>(j)] = at(j, j).real();
    return d;
}

HermitianMatrix HermitianMatrix::identity(int n) {
    HermitianMatrix H(n);
    for (int j = 0; j < n; ++j) H.at(j, j) = 1.0;
    return H;
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> d) {
    HermitianMatrix H(static_cast<int>(d.size()));
    for (int j = 0; j < H.size(); ++j) H.at(j, j) = d[static_cast<size_t>(j)];
    return H;
}

// ------------------------------------------------------------------- spectrum

namespace {

double offdiag_norm(const HermitianMatrix& H) {
    double s = 0.0;
    for (int j = 0; j < H.size(); ++j)
        for (int k = 0; k < H.size(); ++k)
            if (j != k) s += std::norm(H.at(j, k));
    return std::sqrt(s);
}

}  // namespace

Spectrum spectrum_checked(const HermitianMatrix& input, double* reconstruction_rel) {
    const int n = input.size();
    const double scale = input.frobenius();
    if (input.hermitian_defect() > 1e-6 * std::max(scale, 1e-300))
        throw std::invalid_argument("spectrum: matrix is not Hermitian within tolerance");

    HermitianMatrix H = input;
    H.symmetrize();

    // Accumulated unitary basis, row-major.
    std::vector<cplx> Q(static_cast<size_t>(n) * n, cplx(0.0, 0.0));
    for (int j = 0; j < n; ++j) Q[static_cast<size_t>(j) * n + j] = 1.0;

    const double target = 1e-13 * std::max(scale, 1e-300);
    const int max_sweeps = 60;
    for (int sweep = 0; sweep < max_sweeps && offdiag_norm(H) > target; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const cplx apq = H.at(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const double app = H.at(p, p).real();
                const double aqq = H.at(q, q).real();
                // Phase factor reduces the pivot to the real symmetric case.
                const cplx e = apq / mag;
                const double tau = (aqq - app) / (2.0 * mag);
                const double t =
                    (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // H <- U* H U with U[p][p]=c, U[p][q]=s e, U[q][p]=-s conj(e), U[q][q]=c
                for (int j = 0; j < n; ++j) {
                    const cplx hjp = H.at(j, p);
                    const cplx hjq = H.at(j, q);
                    H.at(j, p) = c * hjp - s * std::conj(e) * hjq;
                    H.at(j, q) = s * e * hjp + c * hjq;
                }
                for (int j = 0; j < n; ++j) {
                    const cplx hpj = H.at(p, j);
                    const cplx hqj = H.at(q, j);
                    H.at(p, j) = c * hpj - s * e * hqj;
                    H.at(q, j) = s * std::conj(e) * hpj + c * hqj;
                }
                H.at(p, q) = 0.0;
                H.at(q, p) = 0.0;
                H.at(p, p) = cplx(H.at(p, p).real(), 0.0);
                H.at(q, q) = cplx(H.at(q, q).real(), 0.0);

                for (int j = 0; j < n; ++j) {
                    const cplx qjp = Q[static_cast<size_t>(j) * n + p];
                    const cplx qjq = Q[static_cast<size_t>(j) * n + q];
                    Q[static_cast<size_t>(j) * n + p] = c * qjp - s * std::conj(e) * qjq;
                    Q[static_cast<size_t>(j) * n + q] = s * e * qjp + c * qjq;
                }
            }
        }
    }
    if (offdiag_norm(H) > 1e3 * target)
        throw std::runtime_error("spectrum: Jacobi iteration failed to converge");

    Spectrum out;
    out.eigenvalues.resize(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) out.eigenvalues[static_cast<size_t>(j)] = H.at(j, j).real();
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end());

    if (reconstruction_rel) {
        // || input - Q L Q* || / || input ||, with L the unsorted diagonal of H.
        double resid = 0.0;
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                cplx acc(0.0, 0.0);
                for (int l = 0; l < n; ++l)
                    acc += Q[static_cast<size_t>(j) * n + l] * H.at(l, l).real() *
                           std::conj(Q[static_cast<size_t>(k) * n + l]);
                resid += std::norm(input.at(j, k) - acc);
            }
        }
        *reconstruction_rel = std::sqrt(resid) / std::max(scale, 1e-300);
    }
    return out;
}

Spectrum spectrum(const HermitianMatrix& H) { return spectrum_checked(H, nullptr); }

// --------------------------------------------------------- Wirtinger Hessian

namespace {

// Evaluate f with real coordinate `a` shifted by da and `b` by db.
// Real coordinate 2j is x_j, 2j+1 is y_j.
double shifted_eval(const TestFunction& f, const Point& z, int a, double da, int b, double db) {
    Point w = z;
    {
        const int j = a / 2;
        cplx& c = w.z[static_cast<size_t>(j)];
        c = (a % 2 == 0) ? c + cplx(da, 0.0) : c + cplx(0.0, da);
    }
    {
        const int j = b / 2;
        cplx& c = w.z[static_cast<size_t>(j)];
        c = (b % 2 == 0) ? c + cplx(db, 0.0) : c + cplx(0.0, db);
    }
    const double v = f(w);
    if (!std::isfinite(v))
        throw std::domain_error("wirtinger_hessian_fd: non-finite sample encountered");
    return v;
}

HermitianMatrix hessian_fd_core(const TestFunction& f, const Point& z, double h) {
    const int n = f.n();
    const int m = 2 * n;
    const double f0 = f(z);
    if (!std::isfinite(f0))
        throw std::domain_error("wirtinger_hessian_fd: non-finite sample encountered");

    // All second differences D_ab over the 2n real coordinates.
    std::vector<double> D(static_cast<size_t>(m) * m, 0.0);
    for (int a = 0; a < m; ++a) {
        const double fp = shifted_eval(f, z, a, h, a, 0.0);
        const double fm = shifted_eval(f, z, a, -h, a, 0.0);
        D[static_cast<size_t>(a) * m + a] = (fp - 2.0 * f0 + fm) / (h * h);
    }
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            const double fpp = shifted_eval(f, z, a, h, b, h);
            const double fpm = shifted_eval(f, z, a, h, b, -h);
            const double fmp = shifted_eval(f, z, a, -h, b, h);
            const double fmm = shifted_eval(f, z, a, -h, b, -h);
            const double d = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
            D[static_cast<size_t>(a) * m + b] = d;
            D[static_cast<size_t>(b) * m + a] = d;
        }

    HermitianMatrix H(n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            const double re = D[static_cast<size_t>(2 * j) * m + 2 * k] +
                              D[static_cast<size_t>(2 * j + 1) * m + 2 * k + 1];
            const double im = D[static_cast<size_t>(2 * j) * m + 2 * k + 1] -
                              D[static_cast<size_t>(2 * j + 1) * m + 2 * k];
            H.at(j, k) = 0.25 * cplx(re, im);
        }
    H.symmetrize();
    return H;
}

}  // namespace

HermitianMatrix wirtinger_hessian_fd(const TestFunction& f, const Point& z, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("wirtinger_hessian_fd: step must be positive");
    if (f.singular().distance(z) <= 10.0 * h)
        throw std::domain_error("wirtinger_hessian_fd: point too close to the singular set");
    return hessian_fd_core(f, z, h);
}

HermitianMatrix wirtinger_hessian_auto(const TestFunction& f, const Point& z) {
    const double h = 1e-4 * std::max(1.0, std::sqrt(abs2(z)));
    const HermitianMatrix H1 = wirtinger_hessian_fd(f, z, h);
    const HermitianMatrix H2 = wirtinger_hessian_fd(f, z, 0.5 * h);

    double diff = 0.0;
    for (int j = 0; j < H1.size(); ++j)
        for (int k = 0; k < H1.size(); ++k) diff += std::norm(H1.at(j, k) - H2.at(j, k));
    diff = std::sqrt(diff);
    const double scale = std::max(H2.frobenius(), 1e-300);

    if (diff <= 1e-5 * scale) return H2;

    // Richardson: central differences carry O(h^2) error, so (4 H2 - H1)/3.
    HermitianMatrix R(H1.size());
    for (int j = 0; j < H1.size(); ++j)
        for (int k = 0; k < H1.size(); ++k)
            R.at(j, k) = (4.0 * H2.at(j, k) - H1.at(j, k)) / 3.0;
    R.symmetrize();
    return R;
}

}  // namespace hesslab
