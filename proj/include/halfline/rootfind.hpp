#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <list>
#include <optional>
#include <vector>

#include "halfline/errors.hpp"
#include "halfline/scaled_complex.hpp"

namespace hls {

using AnalyticFn = std::function<ScaledComplex(std::complex<double>)>;

struct Box {
    double x0, x1, y0, y1;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double diameter() const { return std::hypot(width(), height()); }
    std::complex<double> center() const { return {0.5 * (x0 + x1), 0.5 * (y0 + y1)}; }
    bool contains(std::complex<double> z) const {
        return z.real() >= x0 && z.real() <= x1 && z.imag() >= y0 && z.imag() <= y1;
    }
};

struct WindingOptions {
    int initial_per_edge = 16;
    int max_samples = 60000;
    double log_floor_drop = 27.6; // ~1e-12 below the contour median triggers ContourThroughZero
    // Upper bound on |d arg F / dz| at z, used to densify the initial contour
    // sampling. Without it, a strongly oscillatory F on a large contour can
    // alias past the adaptive refinement (wrapped increments look small while
    // the true phase spins through full turns).
    std::function<double(std::complex<double>)> phase_rate;
};

namespace rootfind_detail {

inline std::complex<double> box_point(const Box& b, double t) {
    // t in [0, 4): edges bottom, right, top, left (counterclockwise)
    const double s = t - std::floor(t / 4.0) * 4.0;
    if (s < 1.0) return {b.x0 + s * (b.x1 - b.x0), b.y0};
    if (s < 2.0) return {b.x1, b.y0 + (s - 1.0) * (b.y1 - b.y0)};
    if (s < 3.0) return {b.x1 - (s - 2.0) * (b.x1 - b.x0), b.y1};
    return {b.x0, b.y1 - (s - 3.0) * (b.y1 - b.y0)};
}

inline double wrap_phase(double d) {
    while (d > M_PI) d -= 2.0 * M_PI;
    while (d < -M_PI) d += 2.0 * M_PI;
    return d;
}

} // namespace rootfind_detail

/// Winding number of F around 0 along the box contour, by adaptive phase
/// tracking: segments are refined until consecutive phase increments are below
/// pi/2. Throws ContourThroughZero if |F| dips far below its contour median.
inline int winding_number(const AnalyticFn& F, const Box& box,
                          const WindingOptions& opt = {}) {
    struct Sample {
        double t;
        double phase;
        double logabs;
    };
    std::list<Sample> samples;
    int count = 0;
    {
        auto push = [&](double t) {
            const ScaledComplex v = F(rootfind_detail::box_point(box, t));
            if (v.is_zero()) throw ContourThroughZero("F vanished on the contour");
            samples.push_back({t, v.arg(), v.log_abs()});
            ++count;
        };
        const double dt_cap = 1.0 / opt.initial_per_edge;
        double t = 0.0;
        while (t < 4.0) {
            push(t);
            double dt = dt_cap;
            if (opt.phase_rate) {
                // edge length converts |dz/dt| to the phase budget of ~0.8 rad
                const double len = (static_cast<int>(t) % 2 == 0) ? box.width() : box.height();
                const double rate = opt.phase_rate(rootfind_detail::box_point(box, t));
                if (rate * len > 0.0) dt = std::min(dt, 0.8 / (rate * len));
                dt = std::max(dt, 8.0 / opt.max_samples);
            }
            if (count > opt.max_samples)
                throw ContourThroughZero("contour sampling budget exhausted");
            // never step across a corner: each edge gets its own endpoint sample
            const double corner = std::floor(t) + 1.0;
            t = std::min({t + dt, corner, 4.0});
        }
        push(4.0);
    }
    auto needs_split = [](const Sample& a, const Sample& b) {
        return std::abs(rootfind_detail::wrap_phase(b.phase - a.phase)) > 0.5 * M_PI;
    };
    auto sample_at = [&](double t) -> Sample {
        const ScaledComplex v = F(rootfind_detail::box_point(box, t));
        if (v.is_zero()) throw ContourThroughZero("F vanished on the contour");
        return {t, v.arg(), v.log_abs()};
    };
    auto refine = [&] {
        for (auto it = samples.begin(); std::next(it) != samples.end();) {
            auto nx = std::next(it);
            if (needs_split(*it, *nx)) {
                if (count >= opt.max_samples)
                    throw ContourThroughZero("contour refinement budget exhausted");
                if (nx->t - it->t < 1e-12)
                    throw ContourThroughZero("phase jump persists at machine resolution");
                samples.insert(nx, sample_at(0.5 * (it->t + nx->t)));
                ++count;
            } else {
                ++it;
            }
        }
    };
    // Refine until wrapped increments are small, then audit each interval with
    // a midpoint sample: a phase that spins by ~2 pi between samples wraps to
    // a small increment and would otherwise go unnoticed (large contours with
    // oscillatory F). The audit halves become new intervals, so a dirty pass
    // feeds back into refinement.
    // A single clean pass can still alias (each audit half spinning by a full
    // turn), so demand two in a row; every pass halves the intervals, which
    // breaks any periodic aliasing in practice.
    const int audits_required = opt.phase_rate ? 1 : 2;
    for (int consecutive_clean = 0; consecutive_clean < audits_required;) {
        refine();
        bool clean = true;
        for (auto it = samples.begin(); std::next(it) != samples.end(); ++it) {
            auto nx = std::next(it);
            if (count >= opt.max_samples)
                throw ContourThroughZero("contour refinement budget exhausted");
            if (nx->t - it->t < 1e-12) continue;
            const Sample mid = sample_at(0.5 * (it->t + nx->t));
            const bool hidden = needs_split(*it, mid) || needs_split(mid, *nx);
            samples.insert(nx, mid);
            ++count;
            ++it; // skip the freshly inserted midpoint
            if (hidden) clean = false;
        }
        consecutive_clean = clean ? consecutive_clean + 1 : 0;
    }
    // relative smallness check against the contour median of log|F|
    std::vector<double> logs;
    logs.reserve(samples.size());
    for (const auto& s : samples) logs.push_back(s.logabs);
    std::nth_element(logs.begin(), logs.begin() + logs.size() / 2, logs.end());
    const double median = logs[logs.size() / 2];
    for (const auto& s : samples)
        if (s.logabs < median - opt.log_floor_drop)
            throw ContourThroughZero("F nearly vanishes on the contour");
    double total = 0.0;
    for (auto it = samples.begin(); std::next(it) != samples.end(); ++it)
        total += rootfind_detail::wrap_phase(std::next(it)->phase - it->phase);
    return static_cast<int>(std::lround(total / (2.0 * M_PI)));
}

struct RootResult {
    std::complex<double> z;
    double residual = 0.0; // |F(z)| on the natural scale of F
    bool converged = false;
};

struct RootFindOptions {
    double isolate_diameter = 0.5; // subdivide until a counted box is this small
    double min_diameter = 1e-6;
    double newton_step_scale = 1e-7;
    double newton_tol = 1e-12;
    double residual_tol = 1e-10;
    int newton_max_iters = 60;
    int max_count = 64;
    WindingOptions winding;
};

namespace rootfind_detail {

inline std::optional<RootResult> newton_polish(const AnalyticFn& F, std::complex<double> z0,
                                               const Box& box, const RootFindOptions& opt) {
    std::complex<double> z = z0;
    for (int it = 0; it < opt.newton_max_iters; ++it) {
        const double h = opt.newton_step_scale * (1.0 + std::abs(z));
        const ScaledComplex f0 = F(z);
        const ScaledComplex fp = F(z + h);
        const ScaledComplex fm = F(z - h);
        const double ref = std::max({f0.log_abs(), fp.log_abs(), fm.log_abs()});
        if (!std::isfinite(ref)) return std::nullopt;
        const std::complex<double> v0 = f0.value_rel(ref);
        const std::complex<double> der = (fp.value_rel(ref) - fm.value_rel(ref)) / (2.0 * h);
        if (der == std::complex<double>(0.0, 0.0)) return std::nullopt;
        const std::complex<double> step = v0 / der;
        z -= step;
        if (!box.contains(z)) {
            // clamp back toward the box; if Newton insists on leaving, give up
            if (std::abs(step) > box.diameter()) return std::nullopt;
        }
        if (std::abs(step) <= opt.newton_tol * (1.0 + std::abs(z))) {
            RootResult r;
            r.z = z;
            r.residual = std::abs(F(z).value());
            r.converged = r.residual <= opt.residual_tol;
            return r;
        }
    }
    return std::nullopt;
}

inline int winding_retry(const AnalyticFn& F, Box box, const WindingOptions& opt) {
    for (int attempt = 0;; ++attempt) {
        try {
            return winding_number(F, box, opt);
        } catch (const ContourThroughZero&) {
            if (attempt >= 2) throw;
            const double dx = 0.0137 * box.width(), dy = 0.0171 * box.height();
            box = {box.x0 - dx, box.x1 + dx, box.y0 - dy, box.y1 + dy};
        }
    }
}

inline void find_roots_rec(const AnalyticFn& F, const Box& box, const RootFindOptions& opt,
                           std::vector<RootResult>& out, bool& truncated, int depth) {
    if (static_cast<int>(out.size()) >= opt.max_count) {
        truncated = true;
        return;
    }
    int n;
    try {
        n = winding_retry(F, box, opt.winding);
    } catch (const ContourThroughZero&) {
        if (box.diameter() < opt.min_diameter) return;
        n = -1; // unknown: subdivide blindly
    }
    if (n == 0) return;
    if (n == 1 && box.diameter() <= opt.isolate_diameter) {
        auto r = newton_polish(F, box.center(), box, opt);
        if (r && box.contains(r->z)) {
            out.push_back(*r);
            return;
        }
        // fall through to subdivision when Newton leaves the isolating box
    }
    if (box.diameter() < opt.min_diameter) {
        RootResult r;
        r.z = box.center();
        r.residual = std::abs(F(r.z).value());
        r.converged = false;
        out.push_back(r);
        return;
    }
    // Asymmetric split: a symmetric box would put the cut on the real axis,
    // exactly where zeros of real-potential problems sit; a contour through a
    // zero is the worst case for the winding count.
    const double xm = box.x0 + 0.513 * box.width(), ym = box.y0 + 0.487 * box.height();
    const Box quads[4] = {{box.x0, xm, box.y0, ym},
                          {xm, box.x1, box.y0, ym},
                          {box.x0, xm, ym, box.y1},
                          {xm, box.x1, ym, box.y1}};
    for (const auto& q : quads)
        find_roots_rec(F, q, opt, out, truncated, depth + 1);
}

} // namespace rootfind_detail

/// All zeros of F in the box, by recursive quadrisection guided by the
/// argument principle and Newton polishing in isolating sub-boxes.
inline std::vector<RootResult> find_roots(const AnalyticFn& F, const Box& box,
                                          const RootFindOptions& opt = {},
                                          bool* truncated_flag = nullptr) {
    std::vector<RootResult> out;
    bool truncated = false;
    rootfind_detail::find_roots_rec(F, box, opt, out, truncated, 0);
    // dedupe roots that ended up on shared sub-box boundaries
    std::sort(out.begin(), out.end(), [](const RootResult& a, const RootResult& b) {
        return std::abs(a.z) < std::abs(b.z);
    });
    std::vector<RootResult> dedup;
    for (const auto& r : out) {
        bool dup = false;
        for (auto& d : dedup)
            if (std::abs(d.z - r.z) < 1e-6 * (1.0 + std::abs(r.z))) {
                dup = true;
                // keep the better representative of the pair
                const bool better = (r.converged && !d.converged) ||
                                    (r.converged == d.converged && r.residual < d.residual);
                if (better) d = r;
            }
        if (!dup) dedup.push_back(r);
    }
    if (truncated_flag) *truncated_flag = truncated;
    return dedup;
}

} // namespace hls
