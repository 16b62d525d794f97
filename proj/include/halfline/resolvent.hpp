#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "halfline/errors.hpp"
#include "halfline/potential.hpp"
#include "halfline/quadrature.hpp"
#include "halfline/specfun.hpp"

namespace hls {

/// sigma in [0, infinity]; sigma = infinity is Dirichlet, sigma = 0 Neumann,
/// finite sigma the Robin condition u'(0) = sigma u(0).
struct BoundaryCondition {
    double sigma = infinity;

    static BoundaryCondition dirichlet() { return {infinity}; }
    static BoundaryCondition neumann() { return {0.0}; }
    static BoundaryCondition robin(double sigma) { return {sigma}; }
    bool is_dirichlet() const { return std::isinf(sigma); }
};

/// lambda off [0, infinity) together with its upper-half-plane square root and
/// the argument theta in (0, 2 pi).
struct SpectralPoint {
    cplx lambda;
    cplx mu;
    double theta;
};

inline double distance_to_positive_axis(cplx lambda) {
    if (lambda.real() >= 0.0) return std::abs(lambda.imag());
    return std::abs(lambda);
}

inline SpectralPoint spectral_point(cplx lambda) {
    if (distance_to_positive_axis(lambda) <= 1e-13 * (1.0 + std::abs(lambda)))
        throw EssentialSpectrumError("lambda lies on the essential spectrum [0, infinity)");
    double theta = std::arg(lambda);
    if (theta <= 0.0) theta += 2.0 * M_PI;
    const cplx mu = std::sqrt(std::abs(lambda)) * std::polar(1.0, 0.5 * theta);
    return {lambda, mu, theta};
}

/// (sigma + i mu)/(sigma - i mu); 1 in the Dirichlet limit. |w| <= 1 whenever
/// Im mu > 0.
inline cplx robin_reflection(const SpectralPoint& sp, const BoundaryCondition& bc) {
    if (bc.is_dirichlet()) return {1.0, 0.0};
    const cplx imu{-sp.mu.imag(), sp.mu.real()};
    return (bc.sigma + imu) / (bc.sigma - imu);
}

/// k(x, y; lambda) = -(1/2 i mu)(e^{i mu |x-y|} - e^{i mu (x+y)}).
inline cplx kernel_dirichlet(double x, double y, const SpectralPoint& sp) {
    if (x < 0.0 || y < 0.0) throw std::domain_error("kernel needs x, y >= 0");
    const cplx i{0.0, 1.0};
    return -(std::exp(i * sp.mu * std::abs(x - y)) - std::exp(i * sp.mu * (x + y))) /
           (2.0 * i * sp.mu);
}

/// Robin kernel with the reflection factor w; reduces to kernel_dirichlet as
/// sigma -> infinity (w -> 1).
inline cplx kernel_robin(double x, double y, const SpectralPoint& sp,
                         const BoundaryCondition& bc) {
    if (x < 0.0 || y < 0.0) throw std::domain_error("kernel needs x, y >= 0");
    const cplx i{0.0, 1.0};
    const cplx w = robin_reflection(sp, bc);
    return -(std::exp(i * sp.mu * std::abs(x - y)) - w * std::exp(i * sp.mu * (x + y))) /
           (2.0 * i * sp.mu);
}

inline cplx kernel(double x, double y, const SpectralPoint& sp, const BoundaryCondition& bc) {
    return bc.is_dirichlet() ? kernel_dirichlet(x, y, sp) : kernel_robin(x, y, sp, bc);
}

/// 1/(|mu| (alpha Im mu)^{1/alpha}): bound on sup_x ||k(x, .; lambda)||_alpha.
inline double row_norm_global_bound(const SpectralPoint& sp, double alpha) {
    if (alpha < 1.0) throw ExponentError("row norm needs alpha >= 1");
    const double m = sp.mu.imag();
    return 1.0 / (std::abs(sp.mu) * std::pow(alpha * m, 1.0 / alpha));
}

/// int_0^infty |e^{i mu |x-y|}|^alpha dy = (2 - e^{-alpha (Im mu) x})/(alpha Im mu).
inline double displayed_integral_reflected(double x, const SpectralPoint& sp, double alpha) {
    const double m = sp.mu.imag();
    return (2.0 - std::exp(-alpha * m * x)) / (alpha * m);
}

/// int_0^infty |e^{i mu (x+y)}|^alpha dy = e^{-alpha (Im mu) x}/(alpha Im mu).
inline double displayed_integral_image(double x, const SpectralPoint& sp, double alpha) {
    const double m = sp.mu.imag();
    return std::exp(-alpha * m * x) / (alpha * m);
}

struct RowNorm {
    double quadrature = 0.0;
    double closed_form_bound = 0.0;
};

/// ||k(x, .; lambda)||_alpha by quadrature (split at the kink y = x) together
/// with the closed-form triangle-inequality bound.
inline RowNorm kernel_row_norm(double x, const SpectralPoint& sp, double alpha,
                               const BoundaryCondition& bc = BoundaryCondition::dirichlet()) {
    if (alpha < 1.0) throw ExponentError("row norm needs alpha >= 1");
    const double m = sp.mu.imag();
    RowNorm out;
    out.closed_form_bound =
        (std::pow(2.0 - std::exp(-alpha * m * x), 1.0 / alpha) + std::exp(-m * x)) /
        (2.0 * std::abs(sp.mu) * std::pow(alpha * m, 1.0 / alpha));
    auto integrand = [&](double y) { return std::pow(std::abs(kernel(x, y, sp, bc)), alpha); };
    const double y_max = x + 45.0 / (m * alpha) + 45.0 / m;
    // the integral scales like bound^alpha, which is far below 1 for large
    // alpha; an absolute tolerance must follow that scale or the relative
    // accuracy of the extracted norm collapses
    const double abstol =
        std::max(1e-12 * std::pow(out.closed_form_bound, alpha), 1e-280);
    double total = 0.0;
    if (x > 0.0) total += integrate(integrand, 0.0, x, abstol, 1e-11).value;
    total += integrate(integrand, x, y_max, abstol, 1e-11).value;
    out.quadrature = std::pow(total, 1.0 / alpha);
    return out;
}

/// sup_x ||k(x, .; lambda)||_infty = (1/2|mu|) g(cot(theta/2)) for Dirichlet,
/// with g_sigma in the Robin case.
inline double row_norm_sup_extremal(const SpectralPoint& sp,
                                    const BoundaryCondition& bc = BoundaryCondition::dirichlet()) {
    const double cot_half = std::cos(0.5 * sp.theta) / std::sin(0.5 * sp.theta);
    const double gv = bc.is_dirichlet() ? g(cot_half).value
                                        : g_sigma(cot_half, bc.sigma, sp.mu).value;
    return gv / (2.0 * std::abs(sp.mu));
}

// -- bordered-resolvent probe ---------------------------------------------

struct ProbeOptions {
    int grid_size = 128;
    int random_starts = 4;
    int ascent_iters = 40;
    std::uint64_t seed = 0x5eed;
    BoundaryCondition bc = BoundaryCondition::dirichlet();
};

/// Empirical lower bound on the L_p -> L_p norm of u -> b K(a u), obtained by
/// discretizing on a graded grid and running a nonlinear power iteration for
/// the p-norm plus random test vectors.
inline double bordered_resolvent_norm_probe(const Factorization& f, const SpectralPoint& sp,
                                            double p, const ProbeOptions& opt = {}) {
    if (!(p > 1.0) || std::isinf(p)) throw ExponentError("probe needs 1 < p < infinity");
    const int n = opt.grid_size;
    double extent = std::max(f.a.support_hint(), f.b.support_hint());
    if (!std::isfinite(extent)) extent = 64.0;
    extent = std::min(5.0 * std::max(extent, 1.0), 400.0);
    // graded grid clustered near 0: x_i = extent * ((1+c)^{i/n} - 1)/c with c fixed
    std::vector<double> xs(n), w(n);
    const double c = 15.0;
    for (int i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / (n - 1);
        xs[i] = extent * (std::exp(c * t) - 1.0) / (std::exp(c) - 1.0);
    }
    for (int i = 0; i < n; ++i) {
        const double left = i == 0 ? xs[0] : 0.5 * (xs[i] - xs[i - 1]);
        const double right = i == n - 1 ? 0.0 : 0.5 * (xs[i + 1] - xs[i]);
        w[i] = left + right;
    }
    std::vector<cplx> av(n), bv(n);
    for (int i = 0; i < n; ++i) {
        av[i] = f.a(xs[i]);
        bv[i] = f.b(xs[i]);
    }
    std::vector<std::vector<cplx>> M(n, std::vector<cplx>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            M[i][j] = bv[i] * kernel(xs[i], xs[j], sp, opt.bc) * av[j] * w[j];

    auto norm_p = [&](const std::vector<cplx>& u) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) s += w[i] * std::pow(std::abs(u[i]), p);
        return std::pow(s, 1.0 / p);
    };
    auto apply = [&](const std::vector<cplx>& u, std::vector<cplx>& out) {
        for (int i = 0; i < n; ++i) {
            cplx s{0.0, 0.0};
            for (int j = 0; j < n; ++j) s += M[i][j] * u[j];
            out[i] = s;
        }
    };
    auto apply_adj = [&](const std::vector<cplx>& u, std::vector<cplx>& out) {
        for (int j = 0; j < n; ++j) {
            cplx s{0.0, 0.0};
            for (int i = 0; i < n; ++i) s += std::conj(M[i][j]) * w[i] / w[j] * u[i];
            out[j] = s;
        }
    };

    const double pp = p / (p - 1.0);
    std::mt19937_64 rng(opt.seed);
    std::normal_distribution<double> gauss;
    double best = 0.0;
    std::vector<cplx> u(n), v(n), z(n);
    for (int start = 0; start < opt.random_starts; ++start) {
        for (int i = 0; i < n; ++i) u[i] = cplx{gauss(rng), gauss(rng)};
        for (int it = 0; it < opt.ascent_iters; ++it) {
            const double nu = norm_p(u);
            if (nu == 0.0) break;
            for (auto& x : u) x /= nu;
            apply(u, v);
            const double nv = norm_p(v);
            best = std::max(best, nv);
            if (nv == 0.0) break;
            // duality map J_p(v), then pull back through the adjoint and J_{p'}
            for (int i = 0; i < n; ++i) {
                const double m = std::abs(v[i]);
                z[i] = m == 0.0 ? cplx{0.0, 0.0} : std::pow(m, p - 1.0) * v[i] / m;
            }
            apply_adj(z, u);
            for (int i = 0; i < n; ++i) {
                const double m = std::abs(u[i]);
                u[i] = m == 0.0 ? cplx{0.0, 0.0} : std::pow(m, pp - 1.0) * u[i] / m;
            }
        }
    }
    return best;
}

} // namespace hls
