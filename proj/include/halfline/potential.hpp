#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "halfline/errors.hpp"
#include "halfline/quadrature.hpp"

namespace hls {

using cplx = std::complex<double>;

inline constexpr double infinity = std::numeric_limits<double>::infinity();

enum class NormKind { Lebesgue, Weighted, Weak, Lorentz };

struct NormValue {
    double value = 0.0;
    NormKind kind = NormKind::Lebesgue;
    double p = 0.0; // primary exponent (r for Lebesgue/weak, p for Lorentz)
    double r = 0.0; // secondary exponent (Lorentz r, weight tau)
    double quadrature_error_estimate = 0.0;
};

/// A complex-valued potential on the half-line. Closed-form families carry
/// exact norm and distribution-function hooks; sampled and derived potentials
/// fall back to quadrature and grid measures.
class Potential {
public:
    struct Impl {
        std::function<cplx(double)> eval;
        std::function<double(double)> abs_eval;
        double support_hint = infinity;
        TailModel tail;
        double max_abs = 0.0;
        bool abs_nonincreasing = false;
        // x with |q(x)| = t for non-increasing |q|; defined for t in (0, max_abs)
        std::function<double(double)> abs_inverse;
        // r -> ||q||_r in closed form (may throw NormDiverges)
        std::function<double(double)> lebesgue_closed;
        std::vector<double> breakpoints; // interior discontinuities of q
        std::string name = "potential";

        mutable std::once_flag table_once;
        mutable std::vector<double> abs_table; // sorted |q| samples for grid measure
        mutable double table_h = 0.0;
        mutable double table_extent = 0.0;
    };

    explicit Potential(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

    cplx operator()(double x) const {
        if (x < 0.0) throw std::domain_error("potential evaluated at x < 0");
        return impl_->eval(x);
    }

    double abs(double x) const {
        if (x < 0.0) throw std::domain_error("potential evaluated at x < 0");
        return impl_->abs_eval(x);
    }

    double support_hint() const { return impl_->support_hint; }
    const TailModel& tail() const { return impl_->tail; }
    double max_abs() const { return impl_->max_abs; }
    bool abs_nonincreasing() const { return impl_->abs_nonincreasing; }
    const std::vector<double>& breakpoints() const { return impl_->breakpoints; }
    const std::string& name() const { return impl_->name; }
    bool has_closed_norm() const { return static_cast<bool>(impl_->lebesgue_closed); }
    bool has_abs_inverse() const { return static_cast<bool>(impl_->abs_inverse); }
    const Impl& impl() const { return *impl_; }

    // -- constructors ------------------------------------------------------

    static Potential zero() {
        auto im = std::make_shared<Impl>();
        im->eval = [](double) { return cplx{0.0, 0.0}; };
        im->abs_eval = [](double) { return 0.0; };
        im->support_hint = 0.0;
        im->tail = {TailModel::Kind::Compact, 0.0};
        im->max_abs = 0.0;
        im->abs_nonincreasing = true;
        im->abs_inverse = [](double) { return 0.0; };
        im->lebesgue_closed = [](double) { return 0.0; };
        im->name = "zero";
        return Potential(std::move(im));
    }

    /// q(x) = amplitude * e^{i phase} * e^{-rate x}, amplitude >= 0, rate > 0.
    static Potential exponential(double amplitude, double phase, double rate) {
        if (amplitude < 0.0 || rate <= 0.0)
            throw std::invalid_argument("exponential potential needs amplitude >= 0, rate > 0");
        if (amplitude == 0.0) return zero();
        const cplx coeff = amplitude * std::polar(1.0, phase);
        auto im = std::make_shared<Impl>();
        im->eval = [coeff, rate](double x) { return coeff * std::exp(-rate * x); };
        im->abs_eval = [amplitude, rate](double x) { return amplitude * std::exp(-rate * x); };
        im->support_hint = std::log(1.0 / std::numeric_limits<double>::epsilon()) / rate;
        im->tail = {TailModel::Kind::Exponential, rate};
        im->max_abs = amplitude;
        im->abs_nonincreasing = true;
        im->abs_inverse = [amplitude, rate](double t) {
            return std::log(amplitude / t) / rate;
        };
        im->lebesgue_closed = [amplitude, rate](double r) {
            return amplitude * std::pow(r * rate, -1.0 / r);
        };
        im->name = "exponential";
        return Potential(std::move(im));
    }

    /// q(x) = -depth * e^{i phase} * 1_{[0, width]}.
    static Potential square_well(double depth, double phase, double width) {
        if (depth < 0.0 || width <= 0.0)
            throw std::invalid_argument("square well needs depth >= 0, width > 0");
        if (depth == 0.0) return zero();
        const cplx coeff = -depth * std::polar(1.0, phase);
        auto im = std::make_shared<Impl>();
        im->eval = [coeff, width](double x) { return x <= width ? coeff : cplx{0.0, 0.0}; };
        im->abs_eval = [depth, width](double x) { return x <= width ? depth : 0.0; };
        im->support_hint = width;
        im->tail = {TailModel::Kind::Compact, 0.0};
        im->max_abs = depth;
        im->abs_nonincreasing = true;
        im->abs_inverse = [depth, width](double t) { return t < depth ? width : 0.0; };
        im->lebesgue_closed = [depth, width](double r) {
            return depth * std::pow(width, 1.0 / r);
        };
        im->breakpoints = {width};
        im->name = "square_well";
        return Potential(std::move(im));
    }

    /// q(x) = amplitude * e^{i phase} * (1+x)^{-rho}, rho > 0.
    static Potential power_decay(double amplitude, double phase, double rho) {
        if (amplitude < 0.0 || rho <= 0.0)
            throw std::invalid_argument("power potential needs amplitude >= 0, rho > 0");
        if (amplitude == 0.0) return zero();
        const cplx coeff = amplitude * std::polar(1.0, phase);
        auto im = std::make_shared<Impl>();
        im->eval = [coeff, rho](double x) { return coeff * std::pow(1.0 + x, -rho); };
        im->abs_eval = [amplitude, rho](double x) { return amplitude * std::pow(1.0 + x, -rho); };
        im->support_hint =
            std::pow(1.0 / std::numeric_limits<double>::epsilon(), 1.0 / rho) - 1.0;
        im->tail = {TailModel::Kind::Power, rho};
        im->max_abs = amplitude;
        im->abs_nonincreasing = true;
        im->abs_inverse = [amplitude, rho](double t) {
            return std::pow(amplitude / t, 1.0 / rho) - 1.0;
        };
        im->lebesgue_closed = [amplitude, rho](double r) {
            const double m = r * rho;
            if (m <= 1.0) throw NormDiverges("(1+x)^{-rho} not in L_r: r*rho <= 1");
            return amplitude * std::pow(m - 1.0, -1.0 / r);
        };
        im->name = "power_decay";
        return Potential(std::move(im));
    }

    /// q(x) = sum_k c_k e^{-kappa_k x}, all kappa_k > 0.
    static Potential custom(std::vector<std::pair<cplx, double>> terms) {
        terms.erase(std::remove_if(terms.begin(), terms.end(),
                                   [](const auto& t) { return t.first == cplx{0.0, 0.0}; }),
                    terms.end());
        if (terms.empty()) return zero();
        double min_rate = infinity;
        for (const auto& [c, k] : terms) {
            if (k <= 0.0) throw std::invalid_argument("custom term needs rate > 0");
            min_rate = std::min(min_rate, k);
        }
        auto eval = [terms](double x) {
            cplx s{0.0, 0.0};
            for (const auto& [c, k] : terms) s += c * std::exp(-k * x);
            return s;
        };
        auto im = std::make_shared<Impl>();
        im->eval = eval;
        im->abs_eval = [eval](double x) { return std::abs(eval(x)); };
        im->support_hint = std::log(1.0 / std::numeric_limits<double>::epsilon()) / min_rate;
        im->tail = {TailModel::Kind::Exponential, min_rate};
        double m = 0.0;
        for (int i = 0; i <= 4096; ++i)
            m = std::max(m, std::abs(eval(im->support_hint * i / 4096.0)));
        im->max_abs = m;
        im->abs_nonincreasing = false;
        im->name = "custom";
        return Potential(std::move(im));
    }

    /// Sampled potential: linear interpolation inside the grid, exponential
    /// decay at rate tail_rate beyond the last grid point.
    static Potential sampled(std::vector<double> xs, std::vector<cplx> vals,
                             double tail_rate) {
        if (xs.size() != vals.size() || xs.size() < 2)
            throw std::invalid_argument("sampled potential needs >= 2 grid points");
        if (!std::is_sorted(xs.begin(), xs.end()))
            throw std::invalid_argument("sampled grid must be increasing");
        if (tail_rate <= 0.0)
            throw std::invalid_argument("sampled potential needs tail_rate > 0");
        auto grid = std::make_shared<std::pair<std::vector<double>, std::vector<cplx>>>(
            std::move(xs), std::move(vals));
        auto eval = [grid, tail_rate](double x) -> cplx {
            const auto& gx = grid->first;
            const auto& gv = grid->second;
            if (x <= gx.front()) return gv.front();
            if (x >= gx.back())
                return gv.back() * std::exp(-tail_rate * (x - gx.back()));
            auto it = std::upper_bound(gx.begin(), gx.end(), x);
            const std::size_t i = static_cast<std::size_t>(it - gx.begin());
            const double w = (x - gx[i - 1]) / (gx[i] - gx[i - 1]);
            return gv[i - 1] * (1.0 - w) + gv[i] * w;
        };
        auto im = std::make_shared<Impl>();
        im->eval = eval;
        im->abs_eval = [eval](double x) { return std::abs(eval(x)); };
        double m = 0.0;
        for (const auto& v : grid->second) m = std::max(m, std::abs(v));
        im->max_abs = m; // grid max; a lower bound on the essential sup
        im->support_hint = grid->first.back() +
                           std::log(1.0 / std::numeric_limits<double>::epsilon()) / tail_rate;
        im->tail = {TailModel::Kind::Exponential, tail_rate};
        im->name = "sampled";
        return Potential(std::move(im));
    }

    /// Fully specified potential (used for factorization products and tests).
    static Potential from_function(std::function<cplx(double)> eval,
                                   std::function<double(double)> abs_eval,
                                   double support_hint, TailModel tail, double max_abs,
                                   bool abs_nonincreasing = false,
                                   std::function<double(double)> abs_inverse = nullptr,
                                   std::function<double(double)> lebesgue_closed = nullptr,
                                   std::vector<double> breakpoints = {},
                                   std::string name = "derived") {
        auto im = std::make_shared<Impl>();
        im->eval = std::move(eval);
        im->abs_eval = std::move(abs_eval);
        im->support_hint = support_hint;
        im->tail = tail;
        im->max_abs = max_abs;
        im->abs_nonincreasing = abs_nonincreasing;
        im->abs_inverse = std::move(abs_inverse);
        im->lebesgue_closed = std::move(lebesgue_closed);
        im->breakpoints = std::move(breakpoints);
        im->name = std::move(name);
        return Potential(std::move(im));
    }

private:
    std::shared_ptr<const Impl> impl_;
};

inline cplx eval(const Potential& p, double x) { return p(x); }

// -- Lebesgue norms --------------------------------------------------------

namespace potential_detail {

/// Start of the analytic-tail region for quadrature purposes.
inline double quad_core_extent(const Potential& f) {
    double s = f.support_hint();
    if (!std::isfinite(s)) s = 64.0;
    if (f.tail().kind == TailModel::Kind::Power) s = std::min(s, 64.0);
    return std::max(s, 1e-6);
}

inline QuadResult integrate_abs_power(const Potential& f, double r, double abstol,
                                      double reltol) {
    const double core = quad_core_extent(f);
    auto integrand = [&f, r](double x) { return std::pow(f.abs(x), r); };
    std::vector<double> cuts{0.0};
    for (double b : f.breakpoints())
        if (b > 0.0 && b < core) cuts.push_back(b);
    cuts.push_back(core);
    std::sort(cuts.begin(), cuts.end());
    QuadResult total;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        auto piece = integrate(integrand, cuts[i], cuts[i + 1], abstol, reltol);
        total.value += piece.value;
        total.error += piece.error;
    }
    auto t = integrate_tail(integrand, core, f.tail().powered(r), abstol, reltol);
    total.value += t.value;
    total.error += t.error;
    return total;
}

} // namespace potential_detail

/// (int_0^inf |f|^r dx)^{1/r}; essential sup for r = infinity. Forced
/// quadrature bypasses the closed-form shortcut (used by oracle tests).
inline NormValue lebesgue_norm(const Potential& f, double r, bool force_quadrature = false) {
    if (r <= 0.0) throw ExponentError("Lebesgue norm needs r > 0");
    NormValue nv;
    nv.kind = NormKind::Lebesgue;
    nv.p = r;
    if (std::isinf(r)) {
        nv.value = f.max_abs();
        return nv;
    }
    if (!force_quadrature && f.has_closed_norm()) {
        nv.value = f.impl().lebesgue_closed(r);
        return nv;
    }
    auto q = potential_detail::integrate_abs_power(f, r, 1e-12, 1e-10);
    nv.value = std::pow(q.value, 1.0 / r);
    if (q.value > 0.0)
        nv.quadrature_error_estimate = nv.value * q.error / (r * q.value);
    return nv;
}

// -- Distribution function -------------------------------------------------

namespace potential_detail {

inline void build_table(const Potential::Impl& im) {
    std::call_once(im.table_once, [&im] {
        double extent = im.support_hint;
        if (!std::isfinite(extent)) extent = 64.0;
        if (im.tail.kind == TailModel::Kind::Power) extent = std::min(extent, 4096.0);
        extent = std::max(extent, 1e-6);
        const std::size_t n = 1 << 18;
        im.table_h = extent / static_cast<double>(n);
        im.table_extent = extent;
        im.abs_table.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            im.abs_table[i] = im.abs_eval((static_cast<double>(i) + 0.5) * im.table_h);
        std::sort(im.abs_table.begin(), im.abs_table.end());
    });
}

/// Measure of the superlevel set beyond x0 for a decaying tail.
inline double tail_superlevel(const Potential& f, double x0, double t) {
    if (f.abs(x0) <= t) return 0.0;
    // |f| decays beyond the table; find the crossing by doubling + bisection
    double lo = x0, hi = std::max(2.0 * x0, x0 + 1.0);
    int guard = 0;
    while (f.abs(hi) > t) {
        lo = hi;
        hi *= 2.0;
        if (++guard > 200) return infinity;
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f.abs(mid) > t ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi) - x0;
}

} // namespace potential_detail

/// lambda_f(t): Lebesgue measure of {x : |f(x)| > t}. Returns +infinity when
/// the superlevel set is unbounded.
inline double distribution_function(const Potential& f, double t) {
    if (t <= 0.0) throw std::domain_error("distribution function needs t > 0");
    if (t >= f.max_abs() && f.abs_nonincreasing()) return 0.0;
    if (f.abs_nonincreasing() && f.has_abs_inverse()) {
        if (t >= f.max_abs()) return 0.0;
        return f.impl().abs_inverse(t);
    }
    const auto& im = f.impl();
    potential_detail::build_table(im);
    // grid measure: number of cells with |f| > t (midpoint rule on sorted values)
    auto it = std::upper_bound(im.abs_table.begin(), im.abs_table.end(), t);
    double measure = static_cast<double>(im.abs_table.end() - it) * im.table_h;
    const double tail_part = potential_detail::tail_superlevel(f, im.table_extent, t);
    if (std::isinf(tail_part)) return infinity;
    return measure + tail_part;
}

/// Grid-measure evaluation even when an analytic inverse exists (oracle hook).
inline double distribution_function_grid(const Potential& f, double t) {
    if (t <= 0.0) throw std::domain_error("distribution function needs t > 0");
    const auto& im = f.impl();
    potential_detail::build_table(im);
    auto it = std::upper_bound(im.abs_table.begin(), im.abs_table.end(), t);
    double measure = static_cast<double>(im.abs_table.end() - it) * im.table_h;
    const double tail_part = potential_detail::tail_superlevel(f, im.table_extent, t);
    if (std::isinf(tail_part)) return infinity;
    return measure + tail_part;
}

// -- Weak and Lorentz norms ------------------------------------------------

namespace potential_detail {

/// phi(t) = (t^r lambda_f(t))^{1/r}, computed as t * lambda^{1/r}.
inline double weak_objective(const Potential& f, double r, double t) {
    const double lam = distribution_function(f, t);
    if (std::isinf(lam)) throw NormDiverges("unbounded superlevel set in weak norm");
    return t * std::pow(lam, 1.0 / r);
}

/// Golden-section maximization over log t on [lo, hi].
inline double golden_max(const std::function<double(double)>& phi, double lo, double hi,
                         int iters = 90) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = std::log(lo), b = std::log(hi);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = phi(std::exp(x1)), f2 = phi(std::exp(x2));
    double best = std::max(f1, f2);
    for (int i = 0; i < iters; ++i) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = phi(std::exp(x2));
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = phi(std::exp(x1));
        }
        best = std::max({best, f1, f2});
    }
    return best;
}

} // namespace potential_detail

/// ||f||_{r,w} = sup_{t>0} (t^r lambda_f(t))^{1/r}, by a log-spaced scan with
/// golden-section refinement; the scan window is extended downward when the
/// supremum sits at the small-t boundary.
inline NormValue weak_norm(const Potential& f, double r) {
    if (!(r > 0.0) || std::isinf(r)) throw ExponentError("weak norm needs 0 < r < infinity");
    NormValue nv;
    nv.kind = NormKind::Weak;
    nv.p = r;
    const double M = f.max_abs();
    if (M == 0.0) return nv;
    auto phi = [&](double t) { return potential_detail::weak_objective(f, r, t); };
    const int n = 400;
    double t_lo = M * 1e-8, t_hi = M;
    double best = 0.0;
    int best_k = 0;
    for (int k = 0; k < n; ++k) {
        const double t = t_lo * std::pow(t_hi / t_lo, static_cast<double>(k) / (n - 1));
        const double v = phi(t);
        if (v > best) {
            best = v;
            best_k = k;
        }
    }
    auto grid_t = [&](int k) {
        return t_lo * std::pow(t_hi / t_lo, static_cast<double>(k) / (n - 1));
    };
    const double lo = grid_t(std::max(0, best_k - 1));
    const double hi = grid_t(std::min(n - 1, best_k + 1));
    best = std::max(best, potential_detail::golden_max(phi, lo, hi));
    if (best_k <= 1) {
        // supremum may sit in the t -> 0 limit; walk down in decades
        double t = t_lo;
        for (int i = 0; i < 80 && t > 1e-290; ++i) {
            t *= 1e-4;
            const double v = phi(t);
            if (v <= best * (1.0 + 1e-14)) break;
            best = v;
        }
    }
    nv.value = best;
    return nv;
}

/// ||f||_{p,r} with the layer-cake normalization (r * int t^{r-1}
/// lambda_f(t)^{r/p} dt)^{1/r}, so that L_{r,r} agrees with L_r exactly.
/// p = infinity falls back to the essential sup norm.
inline NormValue lorentz_norm(const Potential& f, double p, double r) {
    if (!(r > 0.0) || std::isinf(r)) throw ExponentError("Lorentz norm needs 0 < r < infinity");
    if (!(p > 0.0)) throw ExponentError("Lorentz norm needs p > 0");
    NormValue nv;
    nv.kind = NormKind::Lorentz;
    nv.p = p;
    nv.r = r;
    if (std::isinf(p)) {
        nv.value = f.max_abs();
        return nv;
    }
    const double M = f.max_abs();
    if (M == 0.0) return nv;
    // divergence probe at small t
    for (int k = 2; k <= 14; k += 3) {
        const double t = M * std::pow(10.0, -k);
        const double lam = distribution_function(f, t);
        if (std::isinf(lam)) throw NormDiverges("unbounded superlevel set in Lorentz norm");
        const double g = std::pow(t, r) * std::pow(lam, r / p);
        if (k >= 11 && g > 1e6 * std::pow(M, r)) throw NormDiverges("Lorentz integrand blows up at t -> 0");
    }
    // substitute t = M u^{1/r}: value^r = int_0^1 M^r lambda(M u^{1/r})^{r/p} du
    auto integrand = [&](double u) {
        const double t = M * std::pow(u, 1.0 / r);
        const double lam = distribution_function(f, t);
        return std::pow(M, r) * std::pow(lam, r / p);
    };
    auto q = integrate(integrand, 0.0, 1.0, 1e-14, 1e-11, 8000);
    nv.value = std::pow(q.value, 1.0 / r);
    if (q.value > 0.0) nv.quadrature_error_estimate = nv.value * q.error / (r * q.value);
    return nv;
}

// -- Factorizations --------------------------------------------------------

struct Factorization {
    Potential a;
    Potential b;
    double r = 0.0;
    double s = 0.0;
};

enum class FactorScheme { SqrtSplit, PowerWeight, ExpWeight };

namespace potential_detail {

inline double numeric_max_abs(const std::function<double(double)>& a, double extent) {
    double m = 0.0;
    for (int i = 0; i <= 8192; ++i)
        m = std::max(m, a(extent * i / 8192.0));
    return m;
}

} // namespace potential_detail

/// q = a b with a = |q|^{1/2}, b = (sgn q)|q|^{1/2}.
inline Factorization factorize_sqrt(const Potential& q) {
    TailModel half = q.tail();
    half.rate *= 0.5;
    auto abs_a = [q](double x) { return std::sqrt(q.abs(x)); };
    std::function<double(double)> inv;
    if (q.abs_nonincreasing() && q.has_abs_inverse()) {
        inv = [q](double t) { return q.impl().abs_inverse(t * t); };
    }
    std::function<double(double)> closed;
    if (q.has_closed_norm()) {
        closed = [q](double r) { return std::sqrt(q.impl().lebesgue_closed(r / 2.0)); };
    }
    Potential a = Potential::from_function(
        [abs_a](double x) { return cplx{abs_a(x), 0.0}; }, abs_a, q.support_hint(), half,
        std::sqrt(q.max_abs()), q.abs_nonincreasing(), inv, closed, q.breakpoints(),
        q.name() + "|sqrt_a");
    Potential b = Potential::from_function(
        [q, abs_a](double x) {
            const cplx v = q(x);
            const double m = std::abs(v);
            if (m == 0.0) return cplx{0.0, 0.0};
            return v / m * abs_a(x);
        },
        abs_a, q.support_hint(), half, std::sqrt(q.max_abs()), q.abs_nonincreasing(), inv,
        closed, q.breakpoints(), q.name() + "|sqrt_b");
    return {a, b, 0.0, 0.0};
}

/// q = a b with a = (1+x)^{-tau}, b = (1+x)^{tau} q.
inline Factorization factorize_power_weight(const Potential& q, double tau) {
    if (tau <= 0.0) throw std::invalid_argument("power weight needs tau > 0");
    Potential a = Potential::power_decay(1.0, 0.0, tau);
    TailModel bt = q.tail();
    if (bt.kind == TailModel::Kind::Power) {
        bt.rate -= tau;
        if (bt.rate <= 0.0) bt = {TailModel::Kind::Power, 1e-12};
    }
    auto abs_b = [q, tau](double x) { return std::pow(1.0 + x, tau) * q.abs(x); };
    const double extent = std::isfinite(q.support_hint()) ? std::max(q.support_hint(), 1.0) : 64.0;
    Potential b = Potential::from_function(
        [q, tau](double x) { return std::pow(1.0 + x, tau) * q(x); }, abs_b,
        q.support_hint(), bt, potential_detail::numeric_max_abs(abs_b, extent), false,
        nullptr, nullptr, q.breakpoints(), q.name() + "|powweight_b");
    return {a, b, 0.0, 0.0};
}

/// q = a b with a = e^{-tau x}, b = e^{tau x} q.
inline Factorization factorize_exp_weight(const Potential& q, double tau) {
    if (tau <= 0.0) throw std::invalid_argument("exp weight needs tau > 0");
    Potential a = Potential::exponential(1.0, 0.0, tau);
    TailModel bt = q.tail();
    if (bt.kind == TailModel::Kind::Exponential) bt.rate -= tau;
    auto abs_b = [q, tau](double x) { return std::exp(tau * x) * q.abs(x); };
    const double extent = std::isfinite(q.support_hint()) ? std::max(q.support_hint(), 1.0) : 64.0;
    Potential b = Potential::from_function(
        [q, tau](double x) { return std::exp(tau * x) * q(x); }, abs_b, q.support_hint(),
        bt, potential_detail::numeric_max_abs(abs_b, extent), false, nullptr, nullptr,
        q.breakpoints(), q.name() + "|expweight_b");
    return {a, b, 0.0, 0.0};
}

inline Factorization factorize(const Potential& q, FactorScheme scheme, double tau = 0.0) {
    switch (scheme) {
        case FactorScheme::SqrtSplit: return factorize_sqrt(q);
        case FactorScheme::PowerWeight: return factorize_power_weight(q, tau);
        case FactorScheme::ExpWeight: return factorize_exp_weight(q, tau);
    }
    throw std::logic_error("unknown factorization scheme");
}

} // namespace hls
