#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <queue>
#include <vector>

#include "halfline/errors.hpp"

namespace hls {

namespace quad_detail {

// Gauss 7 / Kronrod 15 pair on [-1, 1].
inline constexpr std::array<double, 8> kronrod_nodes = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};

inline constexpr std::array<double, 8> kronrod_weights = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};

inline constexpr std::array<double, 4> gauss_weights = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <typename T, typename F>
void gk15(const F& f, double a, double b, T& integral, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    T resk{};
    T resg{};
    for (int i = 0; i < 8; ++i) {
        const double xi = kronrod_nodes[i];
        T v;
        if (i == 7) {
            v = f(c);
        } else {
            v = f(c - h * xi) + f(c + h * xi);
        }
        resk += kronrod_weights[i] * v;
        if (i % 2 == 1) resg += gauss_weights[i / 2] * v;
        else if (i == 7) resg += gauss_weights[3] * v;
    }
    integral = resk * h;
    const double diff = std::abs(resk - resg) * std::abs(h);
    err = diff;
    if (diff > 0) {
        // standard QUADPACK-style sharpening of the raw G-K difference
        err = std::min(diff, std::pow(200.0 * diff, 1.5));
    }
}

} // namespace quad_detail

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
};

/// Adaptive Gauss-Kronrod integration of a real-valued integrand on [a, b].
template <typename F>
QuadResult integrate(const F& f, double a, double b, double abstol = 1e-12,
                     double reltol = 1e-10, int max_intervals = 4000) {
    if (a == b) return {0.0, 0.0};
    struct Interval {
        double a, b, value, error;
        bool operator<(const Interval& o) const { return error < o.error; }
    };
    std::priority_queue<Interval> heap;
    double value, err;
    quad_detail::gk15(f, a, b, value, err);
    heap.push({a, b, value, err});
    double total = value, total_err = err;
    int n = 1;
    while (total_err > std::max(abstol, reltol * std::abs(total)) && n < max_intervals) {
        Interval worst = heap.top();
        heap.pop();
        const double m = 0.5 * (worst.a + worst.b);
        double v1, e1, v2, e2;
        quad_detail::gk15(f, worst.a, m, v1, e1);
        quad_detail::gk15(f, m, worst.b, v2, e2);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push({worst.a, m, v1, e1});
        heap.push({m, worst.b, v2, e2});
        ++n;
        if (m == worst.a || m == worst.b) break; // interval at machine resolution
    }
    return {total, std::max(total_err, 0.0)};
}

/// Adaptive integration of a complex-valued integrand on [a, b].
/// Integrates real and imaginary parts separately.
template <typename F>
std::complex<double> integrate_complex(const F& f, double a, double b,
                                       double abstol = 1e-12, double reltol = 1e-10) {
    auto re = integrate([&](double x) { return f(x).real(); }, a, b, abstol, reltol);
    auto im = integrate([&](double x) { return f(x).imag(); }, a, b, abstol, reltol);
    return {re.value, im.value};
}

/// Describes how |q| behaves beyond the effective support.
struct TailModel {
    enum class Kind { Compact, Exponential, Power };
    Kind kind = Kind::Compact;
    double rate = 0.0; // decay rate kappa in e^{-kappa x}, or exponent rho in x^{-rho}

    TailModel powered(double r) const {
        TailModel t = *this;
        t.rate *= r;
        return t;
    }
};

/// Integrates f over [a, infinity) by summing adaptive blocks whose layout is
/// guided by the tail model; detects divergence from non-decaying block sums.
/// Throws NormDiverges when the block sums fail to decay.
template <typename F>
QuadResult integrate_tail(const F& f, double a, const TailModel& tail,
                          double abstol = 1e-13, double reltol = 1e-11) {
    if (tail.kind == TailModel::Kind::Compact) return {0.0, 0.0};
    double total = 0.0, total_err = 0.0;
    if (tail.kind == TailModel::Kind::Exponential) {
        const double rate = tail.rate;
        if (rate <= 0.0)
            throw NormDiverges("exponential tail with non-positive decay rate");
        const double step = std::clamp(6.0 / rate, 1e-3, 1e6);
        double x = a;
        double prev_block = std::numeric_limits<double>::infinity();
        for (int k = 0; k < 120; ++k) {
            auto blk = integrate(f, x, x + step, abstol, reltol);
            total += blk.value;
            total_err += blk.error;
            x += step;
            const double b = std::abs(blk.value);
            if (b <= std::max(abstol, reltol * std::abs(total))) return {total, total_err};
            if (k > 8 && b >= 0.98 * prev_block)
                throw NormDiverges("tail blocks do not decay (exponential model)");
            prev_block = b;
        }
        throw NormDiverges("tail integral did not converge within block budget");
    }
    // Power-law tail: geometric block doubling with geometric-remainder closure.
    double x0 = std::max(a, 1e-8);
    double prev_block = -1.0;
    for (int k = 0; k < 80; ++k) {
        const double x1 = 2.0 * x0;
        auto blk = integrate(f, x0, x1, abstol, reltol);
        total += blk.value;
        total_err += blk.error;
        const double b = std::abs(blk.value);
        if (prev_block >= 0.0) {
            const double ratio = prev_block > 0 ? b / prev_block : 0.0;
            if (ratio >= 0.995)
                throw NormDiverges("tail blocks do not decay (power model)");
            if (ratio < 1.0 && b * ratio / (1.0 - ratio) <
                                   std::max(abstol, reltol * std::abs(total))) {
                total += b * ratio / (1.0 - ratio); // geometric remainder
                return {total, total_err + b * ratio / (1.0 - ratio)};
            }
        }
        prev_block = b;
        x0 = x1;
        if (b <= std::max(abstol, 1e-16 * std::abs(total))) return {total, total_err};
    }
    throw NormDiverges("power tail integral did not converge within block budget");
}

} // namespace hls
