#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include "halfline/errors.hpp"
#include "halfline/potential.hpp"
#include "halfline/resolvent.hpp"
#include "halfline/rootfind.hpp"
#include "halfline/scaled_complex.hpp"

namespace hls {

enum class EigMethod { Shooting, DenseFD };

struct Eigenvalue {
    cplx lambda;
    double residual = 0.0;
    EigMethod method = EigMethod::Shooting;
    double truncation_L = 0.0;
    BoundaryCondition bc;
};

namespace eig_detail {

struct State {
    cplx u, du;
};

/// One Dormand-Prince 5(4) step for u'' = (q - lambda) u.
/// Returns the embedded error estimate.
template <typename Rhs>
double dopri_step(const Rhs& rhs, double x, double h, const State& y, State& out) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    auto axpy = [](const State& y0, std::initializer_list<std::pair<double, const State*>> ks,
                   double h) {
        State s = y0;
        for (const auto& [c, k] : ks) {
            s.u += h * c * k->u;
            s.du += h * c * k->du;
        }
        return s;
    };
    State k1 = rhs(x, y);
    State k2 = rhs(x + c2 * h, axpy(y, {{a21, &k1}}, h));
    State k3 = rhs(x + c3 * h, axpy(y, {{a31, &k1}, {a32, &k2}}, h));
    State k4 = rhs(x + c4 * h, axpy(y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, h));
    State k5 = rhs(x + c5 * h, axpy(y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, h));
    State k6 = rhs(x + h,
                   axpy(y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, h));
    out = axpy(y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, h);
    State k7 = rhs(x + h, out);
    const cplx err_u =
        h * (e1 * k1.u + e3 * k3.u + e4 * k4.u + e5 * k5.u + e6 * k6.u + e7 * k7.u);
    const cplx err_du =
        h * (e1 * k1.du + e3 * k3.du + e4 * k4.du + e5 * k5.du + e6 * k6.du + e7 * k7.du);
    const double scale = std::max({std::abs(out.u), std::abs(out.du), std::abs(y.u),
                                   std::abs(y.du), 1e-300});
    return std::max(std::abs(err_u), std::abs(err_du)) / scale;
}

/// Integrates u'' = (q - lambda) u from x = from down to x = to with adaptive
/// steps; rescales the state by powers of two (tracked in log_rescale) to
/// avoid overflow. Splits at the potential's discontinuities.
struct IntegrationResult {
    State y;
    double log_rescale = 0.0;
};

template <typename Q>
IntegrationResult integrate_down(const Q& q, cplx lambda, double from, double to,
                                 State y0, const std::vector<double>& breakpoints,
                                 double reltol = 1e-11) {
    auto rhs = [&](double x, const State& s) {
        return State{s.du, (q(x) - lambda) * s.u};
    };
    std::vector<double> stops{to};
    for (double b : breakpoints)
        if (b > to && b < from) stops.push_back(b);
    stops.push_back(from);
    std::sort(stops.begin(), stops.end(), std::greater<>());

    IntegrationResult res{y0, 0.0};
    for (std::size_t seg = 0; seg + 1 < stops.size(); ++seg) {
        double x = stops[seg];
        const double x_end = stops[seg + 1];
        double h = -std::min(0.1, 0.05 * (x - x_end) + 1e-4);
        int rejected_in_a_row = 0;
        while (x > x_end) {
            if (x + h < x_end) h = x_end - x;
            State next;
            const double err = dopri_step(rhs, x, h, res.y, next);
            if (err <= reltol || std::abs(h) < 1e-14 * (1.0 + std::abs(x))) {
                x += h;
                res.y = next;
                rejected_in_a_row = 0;
                const double m = std::max(std::abs(res.y.u), std::abs(res.y.du));
                if (m > 1e150) {
                    res.y.u /= m;
                    res.y.du /= m;
                    res.log_rescale += std::log(m);
                }
            } else if (++rejected_in_a_row > 60) {
                throw IntegrationError("step control failed to converge");
            }
            const double fac =
                err > 0 ? 0.9 * std::pow(reltol / err, 0.2) : 5.0;
            h *= std::clamp(fac, 0.2, 5.0);
            h = -std::min(std::abs(h), 1.0);
        }
    }
    return res;
}

} // namespace eig_detail

/// Characteristic function of the truncated problem: integrates from the
/// outgoing initialization u(L) = e^{i mu L}, u'(L) = i mu e^{i mu L} down to
/// 0 and returns F = u(0) (Dirichlet) or u'(0) - sigma u(0) (Robin), on the
/// scale fixed by that initialization.
inline ScaledComplex shoot_characteristic(const Potential& q, cplx lambda, double L,
                                          const BoundaryCondition& bc) {
    const SpectralPoint sp = spectral_point(lambda);
    const cplx i{0.0, 1.0};
    // start from w(L) = 1, w'(L) = i mu; the true initialization e^{i mu L}
    // is reattached in log form at the end
    eig_detail::State y0{cplx{1.0, 0.0}, i * sp.mu};
    auto res = eig_detail::integrate_down([&q](double x) { return q(x); }, lambda, L, 0.0,
                                          y0, q.breakpoints());
    cplx f = bc.is_dirichlet() ? res.y.u : res.y.du - bc.sigma * res.y.u;
    ScaledComplex out(f, res.log_rescale);
    // multiply by e^{i mu L}: log-magnitude -Im(mu) L, phase Re(mu) L
    out *= std::polar(1.0, sp.mu.real() * L);
    out.mul_exp(-sp.mu.imag() * L);
    return out;
}

struct SolverSettings {
    double L = 0.0;            // 0: auto from the support hint
    double margin = 1e-3;      // exclusion distance from [0, infinity)
    int max_count = 64;
    double residual_tol = 1e-10;
    double isolate_diameter = 0.8;
};

inline double default_truncation(const Potential& q) {
    double s = q.support_hint();
    if (!std::isfinite(s)) s = 13.0;
    return std::max(3.0 * s, 10.0);
}

namespace eig_detail {

/// Splits a box into sub-boxes avoiding the strip around [0, infinity).
inline std::vector<Box> split_off_essential(const Box& b, double margin) {
    std::vector<Box> parts;
    const double cut_x = -margin; // forbidden region: { x >= -margin, |y| <= margin }
    const bool strip_overlap = b.x1 > cut_x && b.y0 < margin && b.y1 > -margin;
    if (!strip_overlap) {
        parts.push_back(b);
        return parts;
    }
    if (b.y1 > margin) parts.push_back({std::max(b.x0, cut_x), b.x1, margin, b.y1});
    if (b.y0 < -margin) parts.push_back({std::max(b.x0, cut_x), b.x1, b.y0, -margin});
    if (b.x0 < cut_x) parts.push_back({b.x0, cut_x, b.y0, b.y1});
    // drop degenerate slivers
    std::vector<Box> ok;
    for (const auto& p : parts)
        if (p.width() > 1e-9 && p.height() > 1e-9) ok.push_back(p);
    return ok;
}

} // namespace eig_detail

/// Winding number of the characteristic function along the box contour.
inline int count_in_contour(const Potential& q, const Box& contour,
                            const BoundaryCondition& bc, double L = 0.0,
                            double margin = 1e-3) {
    const double trunc = L > 0.0 ? L : default_truncation(q);
    // the contour must avoid the strip { x >= -margin, |y| <= margin }
    if (contour.x1 >= -margin && contour.y0 <= margin && contour.y1 >= -margin)
        throw EssentialSpectrumError("contour crosses the [0, infinity) margin");
    AnalyticFn F = [&](cplx z) -> ScaledComplex {
        try {
            return shoot_characteristic(q, z, trunc, bc);
        } catch (const EssentialSpectrumError&) {
            // contour refinement may step onto [0, infinity); let the winding
            // machinery treat it like any other contour-through-zero event
            throw ContourThroughZero("contour touches [0, infinity)");
        }
    };
    WindingOptions wopt;
    wopt.phase_rate = [trunc](cplx z) {
        return 1.0 + 0.5 * trunc / std::sqrt(std::max(std::abs(z), 1e-4));
    };
    return winding_number(F, contour, wopt);
}

/// Eigenvalues of H_sigma inside the search box, sorted by modulus.
inline std::vector<Eigenvalue> find_eigenvalues(const Potential& q, const Box& search_box,
                                                const BoundaryCondition& bc,
                                                const SolverSettings& settings = {},
                                                bool* truncated_flag = nullptr) {
    const double L = settings.L > 0.0 ? settings.L : default_truncation(q);
    AnalyticFn F = [&](cplx z) -> ScaledComplex {
        try {
            return shoot_characteristic(q, z, L, bc);
        } catch (const EssentialSpectrumError&) {
            // inflated retry contours can cross [0, infinity); recover via the
            // root finder's contour-through-zero path instead of aborting
            throw ContourThroughZero("contour touches [0, infinity)");
        }
    };
    RootFindOptions opt;
    opt.max_count = settings.max_count;
    opt.residual_tol = settings.residual_tol;
    opt.isolate_diameter = settings.isolate_diameter;
    // the characteristic function oscillates like e^{i mu L}; tell the contour
    // sampler so large boxes cannot alias the winding count
    opt.winding.phase_rate = [L](cplx z) {
        return 1.0 + 0.5 * L / std::sqrt(std::max(std::abs(z), 1e-4));
    };
    std::vector<Eigenvalue> eigs;
    bool truncated = false;
    for (const Box& part : eig_detail::split_off_essential(search_box, settings.margin)) {
        bool part_truncated = false;
        for (const RootResult& r : find_roots(F, part, opt, &part_truncated)) {
            if (!r.converged) continue;
            if (distance_to_positive_axis(r.z) <= settings.margin) continue;
            eigs.push_back({r.z, r.residual, EigMethod::Shooting, L, bc});
        }
        truncated = truncated || part_truncated;
    }
    std::sort(eigs.begin(), eigs.end(), [](const Eigenvalue& a, const Eigenvalue& b) {
        return std::abs(a.lambda) < std::abs(b.lambda);
    });
    if (truncated_flag) *truncated_flag = truncated;
    return eigs;
}

// -- finite-difference oracle ----------------------------------------------

/// Characteristic determinant det(T - lambda I) of the n x n second-order
/// central-difference matrix on [0, L], Dirichlet at L and the requested
/// condition at 0, via the tridiagonal three-term recurrence with scaled
/// arithmetic.
inline ScaledComplex fd_characteristic(const Potential& q, double L, int n,
                                       const BoundaryCondition& bc, cplx lambda) {
    if (n < 2) throw std::invalid_argument("fd_characteristic needs n >= 2");
    const double h = L / (n + 1);
    const double inv_h2 = 1.0 / (h * h);
    const std::vector<double> kinks = q.breakpoints();
    auto q_node = [&](double x) -> cplx {
        // a jump sitting exactly on a node needs the averaged value to keep
        // the scheme second order
        for (double b : kinks)
            if (std::abs(x - b) < 0.25 * h)
                return 0.5 * (q(std::max(0.0, b - 0.25 * h)) + q(b + 0.25 * h));
        return q(x);
    };
    auto diag = [&](int j) -> cplx {
        // interior nodes x_j = j h, j = 1..n
        cplx d = 2.0 * inv_h2 + q_node(j * h);
        if (j == 1 && !bc.is_dirichlet()) {
            // eliminate the boundary node via (u_1 - u_0)/h = sigma u_0
            d -= inv_h2 / (1.0 + bc.sigma * h);
        }
        return d;
    };
    const double off2 = inv_h2 * inv_h2; // e_j^2 with e_j = -1/h^2
    ScaledComplex p_prev{cplx{1.0, 0.0}, 0.0};            // D_0
    ScaledComplex p_cur{diag(1) - lambda, 0.0};           // D_1
    for (int j = 2; j <= n; ++j) {
        // D_j = (d_j - lambda) D_{j-1} - e^2 D_{j-2}
        const double ref = std::max(p_cur.logmag, p_prev.logmag);
        const cplx a = (diag(j) - lambda) * p_cur.value_rel(ref);
        const cplx b = off2 * p_prev.value_rel(ref);
        p_prev = p_cur;
        p_cur = ScaledComplex(a - b, ref);
    }
    return p_cur;
}

struct FdEigenvalue {
    cplx lambda;
    double richardson_delta = 0.0; // |lambda_n - lambda_{2n}| when computed
    bool converged = true;
};

struct FdOptions {
    double margin = 1e-3;
    bool richardson_check = true;
    double richardson_tol = 1e-4;
    int max_count = 64;
};

/// Eigenvalues of the FD matrix inside the search region (kept away from
/// [0, infinity) by the margin), found as zeros of the characteristic
/// determinant; optionally compared against the 2n-point matrix.
inline std::vector<FdEigenvalue> dense_fd_eigs(const Potential& q, double L, int n,
                                               const BoundaryCondition& bc,
                                               const Box& search_box,
                                               const FdOptions& opt = {}) {
    if (n < 64) throw std::invalid_argument("dense_fd_eigs needs n >= 64");
    AnalyticFn F = [&](cplx z) { return fd_characteristic(q, L, n, bc, z); };
    RootFindOptions ropt;
    ropt.max_count = opt.max_count;
    ropt.residual_tol = infinity; // determinant scale is arbitrary; accept Newton fixpoints
    std::vector<FdEigenvalue> out;
    for (const Box& part : eig_detail::split_off_essential(search_box, opt.margin)) {
        for (const RootResult& r : find_roots(F, part, ropt)) {
            if (distance_to_positive_axis(r.z) <= opt.margin) continue;
            FdEigenvalue fe{r.z, 0.0, true};
            if (opt.richardson_check) {
                AnalyticFn F2 = [&](cplx z) { return fd_characteristic(q, L, 2 * n, bc, z); };
                const double rad = std::max(1e-4, 1e-2 * (1.0 + std::abs(r.z)));
                Box small{r.z.real() - rad, r.z.real() + rad, r.z.imag() - rad,
                          r.z.imag() + rad};
                auto fine = find_roots(F2, small, ropt);
                if (fine.empty()) {
                    fe.converged = false;
                } else {
                    double best = infinity;
                    for (const auto& f2 : fine)
                        best = std::min(best, std::abs(f2.z - r.z));
                    fe.richardson_delta = best;
                    fe.converged = best <= opt.richardson_tol;
                }
            }
            out.push_back(fe);
        }
    }
    std::sort(out.begin(), out.end(), [](const FdEigenvalue& a, const FdEigenvalue& b) {
        return std::abs(a.lambda) < std::abs(b.lambda);
    });
    return out;
}

} // namespace hls
