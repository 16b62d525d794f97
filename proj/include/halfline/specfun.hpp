#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "halfline/errors.hpp"

namespace hls {

/// Result of maximizing |e^{iay} - w e^{-y}| over y >= 0.
struct GEval {
    double argument = 0.0;
    double value = 1.0;
    double maximizer_y = std::numeric_limits<double>::infinity();
};

namespace specfun_detail {

/// Squared modulus |e^{iay} - w e^{-y}|^2 for complex w.
inline double h2(double a, std::complex<double> w, double y) {
    const double e = std::exp(-y);
    const double wr = w.real(), wi = w.imag();
    const double c = std::cos(a * y), s = std::sin(a * y);
    // |e^{iay} - w e^{-y}|^2 = 1 + |w|^2 e^{-2y} - 2 e^{-y} Re(w e^{-iay})
    return 1.0 + (wr * wr + wi * wi) * e * e - 2.0 * e * (wr * c + wi * s);
}

inline GEval maximize(double a, std::complex<double> w) {
    GEval out;
    out.argument = a;
    // the y -> infinity limit of the modulus is 1
    double best = 1.0;
    double best_y = std::numeric_limits<double>::infinity();
    const double aa = std::abs(a);
    const double Y = aa > 1e-12 ? std::max(20.0, 6.0 * M_PI / aa) : 40.0;
    int n = 2048;
    // keep roughly >= 40 samples per oscillation of cos(ay)
    const double oscillations = aa * Y / (2.0 * M_PI);
    n = std::max(n, static_cast<int>(40.0 * oscillations) + 1);
    n = std::min(n, 4'000'000);
    const double h = Y / n;
    double prev2 = h2(a, w, 0.0), prev1 = h2(a, w, h);
    if (prev2 > best) {
        best = prev2;
        best_y = 0.0;
    }
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int i = 2; i <= n; ++i) {
        const double cur = h2(a, w, i * h);
        if (prev1 >= prev2 && prev1 >= cur) {
            // local maximum near y = (i-1) h: golden-section refinement
            double lo = (i - 2) * h, hi = i * h;
            double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
            double f1 = h2(a, w, x1), f2 = h2(a, w, x2);
            for (int k = 0; k < 80 && hi - lo > 1e-12; ++k) {
                if (f1 < f2) {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + gr * (hi - lo);
                    f2 = h2(a, w, x2);
                } else {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - gr * (hi - lo);
                    f1 = h2(a, w, x1);
                }
            }
            const double ym = 0.5 * (lo + hi);
            const double fm = h2(a, w, ym);
            if (fm > best) {
                best = fm;
                best_y = ym;
            }
        }
        prev2 = prev1;
        prev1 = cur;
    }
    out.value = std::sqrt(best);
    out.maximizer_y = best_y;
    return out;
}

} // namespace specfun_detail

/// g(a) = sup_{y >= 0} |e^{iay} - e^{-y}|; even in a, with values in [1, 2].
inline GEval g(double a) {
    GEval out = specfun_detail::maximize(std::abs(a), {1.0, 0.0});
    out.argument = a;
    return out;
}

/// g_sigma(a): the Robin analogue, sup_{y >= 0} |e^{-iay} - w e^{-y}| with
/// w = (sigma + i mu)/(sigma - i mu); sigma = infinity gives w = 1 (Dirichlet).
/// The conjugated phase comes from factoring sup_{x,y} |e^{i mu |x-y|} -
/// w e^{i mu (x+y)}| down to sup_{t>0} |1 - w e^{2 i mu t}| and pulling out the
/// unimodular e^{i a y}; for complex w the sign of a is not symmetric.
inline GEval g_sigma(double a, double sigma, std::complex<double> mu) {
    if (!(mu.imag() > 0.0)) throw BranchError("g_sigma needs Im mu > 0");
    if (sigma < 0.0) throw std::invalid_argument("g_sigma needs sigma >= 0");
    std::complex<double> w{1.0, 0.0};
    if (!std::isinf(sigma)) {
        const std::complex<double> imu{-mu.imag(), mu.real()};
        w = (sigma + imu) / (sigma - imu);
    }
    GEval out = specfun_detail::maximize(-a, w);
    out.argument = a;
    return out;
}

} // namespace hls
