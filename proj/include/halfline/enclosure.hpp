#pragma once

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "halfline/errors.hpp"
#include "halfline/potential.hpp"
#include "halfline/resolvent.hpp"
#include "halfline/specfun.hpp"

namespace hls {

/// Marker for the extremal regime r^{-1} + s^{-1} = 1 (alpha = infinity).
struct ExtremalMarker {};

struct AlphaExponent {
    bool extremal = false;
    double alpha = 0.0;
};

/// alpha = (1 - r^{-1} - s^{-1})^{-1}; the extremal marker when
/// r^{-1} + s^{-1} = 1 within 1e-14.
inline AlphaExponent alpha_exponent(double r, double s) {
    if (!(r > 0.0) || !(s > 0.0)) throw InadmissibleExponents("need r, s in (0, infinity]");
    const double inv = (std::isinf(r) ? 0.0 : 1.0 / r) + (std::isinf(s) ? 0.0 : 1.0 / s);
    if (std::abs(inv - 1.0) <= 1e-14) return {true, infinity};
    if (inv > 1.0) throw InadmissibleExponents("r^{-1} + s^{-1} > 1");
    return {false, 1.0 / (1.0 - inv)};
}

/// The Riesz-Thorin interpolation pair: 1/beta = (1-theta) + theta/alpha',
/// 1/gamma = (1-theta)/alpha. Satisfies alpha^{-1} + beta^{-1} = gamma^{-1} + 1.
inline std::pair<double, double> interpolation_exponents(double alpha, double theta_param) {
    if (!(alpha >= 1.0) || std::isinf(alpha))
        throw ExponentError("interpolation needs 1 <= alpha < infinity");
    if (!(theta_param > 0.0 && theta_param < 1.0))
        throw ExponentError("interpolation parameter must lie in (0, 1)");
    const double alpha_conj = alpha / (alpha - 1.0); // +inf when alpha = 1
    const double inv_beta =
        (1.0 - theta_param) + (alpha == 1.0 ? 0.0 : theta_param / alpha_conj);
    const double inv_gamma = (1.0 - theta_param) / alpha;
    return {1.0 / inv_beta, 1.0 / inv_gamma};
}

struct ExponentConfig {
    double p = 2.0;
    double r = 4.0;
    double s = 4.0;

    AlphaExponent alpha() const { return alpha_exponent(r, s); }

    /// Theorem-1 regime: finite alpha and p <= s.
    void require_thm1() const {
        const auto a = alpha();
        if (a.extremal) throw InadmissibleExponents("extremal exponents: use the g-function bound");
        if (!(p > 1.0) || std::isinf(p)) throw InadmissibleExponents("need 1 < p < infinity");
        if (!(p <= s)) throw InadmissibleExponents("Theorem-1 regime needs p <= s");
    }
};

inline double conjugate_exponent(double p) {
    if (!(p > 1.0)) throw ExponentError("conjugate exponent needs p > 1");
    return std::isinf(p) ? 1.0 : p / (p - 1.0);
}

// -- radius formulas -------------------------------------------------------

/// |lambda|^{1+alpha} <= (alpha sin(theta/2))^{-2} (||a||_r ||b||_s)^{2 alpha}.
inline double bound_thm1(double norm_a, double norm_b, const ExponentConfig& cfg,
                         double theta) {
    cfg.require_thm1();
    if (!(theta > 0.0 && theta < 2.0 * M_PI)) throw std::domain_error("theta must lie in (0, 2 pi)");
    const double alpha = cfg.alpha().alpha;
    const double sh = std::sin(0.5 * theta);
    const double rhs = std::pow(alpha * sh, -2.0) * std::pow(norm_a * norm_b, 2.0 * alpha);
    return std::pow(rhs, 1.0 / (1.0 + alpha));
}

/// |lambda|^{1/2} <= (1/2) g(cot(theta/2)) ||a||_p ||b||_{p'}.
inline double bound_thm2(double norm_a, double norm_b, double theta) {
    if (!(theta > 0.0 && theta < 2.0 * M_PI)) throw std::domain_error("theta must lie in (0, 2 pi)");
    const double cot_half = std::cos(0.5 * theta) / std::sin(0.5 * theta);
    const double root = 0.5 * g(cot_half).value * norm_a * norm_b;
    return root * root;
}

inline void require_cor1(double r, double p) {
    if (p > 2.0) {
        if (!(r >= p)) throw InadmissibleExponents("Corollary-1 regime needs p <= r for p > 2");
    } else {
        if (!(r > 2.0)) throw InadmissibleExponents("Corollary-1 regime needs r > 2 for p <= 2");
    }
    if (!(r > 2.0)) throw InadmissibleExponents("Corollary-1 radius needs r > 2");
}

/// |lambda|^{r-1} <= (r/(r-2) sin(theta/2))^{2-r} ||a||_r^r ||b||_r^r.
inline double bound_cor1(double norm_a, double norm_b, double r, double theta,
                         double p = 2.0) {
    require_cor1(r, p);
    const double sh = std::sin(0.5 * theta);
    const double rhs = std::pow(r / (r - 2.0) * sh, 2.0 - r) *
                       std::pow(norm_a, r) * std::pow(norm_b, r);
    return std::pow(rhs, 1.0 / (r - 1.0));
}

inline void require_cor2(double gamma, double p) {
    if (p > 2.0) {
        if (!(2.0 * gamma >= p - 1.0))
            throw InadmissibleExponents("Corollary-2 regime needs 2 gamma >= p - 1 for p > 2");
    } else {
        if (!(gamma > 0.5)) throw InadmissibleExponents("Corollary-2 regime needs gamma > 1/2");
    }
    if (!(gamma > 0.5)) throw InadmissibleExponents("Corollary-2 radius needs gamma > 1/2");
}

/// |lambda|^gamma <= ((2 gamma + 1)/(2 gamma - 1) sin(theta/2))^{1/2 - gamma}
///                   int |q|^{gamma + 1/2}.
inline double bound_cor2(double q_power_integral, double gamma, double theta,
                         double p = 2.0) {
    require_cor2(gamma, p);
    const double sh = std::sin(0.5 * theta);
    const double rhs =
        std::pow((2.0 * gamma + 1.0) / (2.0 * gamma - 1.0) * sh, 0.5 - gamma) *
        q_power_integral;
    return std::pow(rhs, 1.0 / gamma);
}

/// The theta = pi specialization of Corollary 2 (self-adjoint case).
inline double bound_rem1(double q_power_integral, double gamma) {
    if (!(gamma > 0.5)) throw InadmissibleExponents("needs gamma > 1/2");
    const double rhs =
        std::pow((2.0 * gamma - 1.0) / (2.0 * gamma + 1.0), gamma - 0.5) * q_power_integral;
    return std::pow(rhs, 1.0 / gamma);
}

/// |lambda|^{r-1} <= (tau r - 1)^{-1} (r/(r-2) sin(theta/2))^{2-r}
///                   int |(1+x)^tau q|^r.
inline double bound_cor3(double weighted_integral, double r, double tau, double theta,
                         double p = 2.0) {
    require_cor1(r, p);
    if (!(tau * r > 1.0)) throw InadmissibleExponents("Corollary-3 needs tau r > 1");
    const double sh = std::sin(0.5 * theta);
    const double rhs = std::pow(r / (r - 2.0) * sh, 2.0 - r) / (tau * r - 1.0) *
                       weighted_integral;
    return std::pow(rhs, 1.0 / (r - 1.0));
}

/// |lambda|^{r-1} <= (tau r)^{-1} (r/(r-2) sin(theta/2))^{2-r}
///                   int e^{tau r x} |q|^r.
inline double bound_cor4(double exp_weighted_integral, double r, double tau, double theta,
                         double p = 2.0) {
    require_cor1(r, p);
    if (!(tau > 0.0)) throw InadmissibleExponents("Corollary-4 needs tau > 0");
    const double sh = std::sin(0.5 * theta);
    const double rhs =
        std::pow(r / (r - 2.0) * sh, 2.0 - r) / (tau * r) * exp_weighted_integral;
    return std::pow(rhs, 1.0 / (r - 1.0));
}

/// Negative-eigenvalue form for H_sigma: |lambda|^{1+alpha} <= alpha^{-2}
/// (||a||_r ||b||_s)^{2 alpha}.
inline double bound_thm3_negative(double norm_a, double norm_b, const ExponentConfig& cfg) {
    cfg.require_thm1();
    const double alpha = cfg.alpha().alpha;
    const double rhs = std::pow(alpha, -2.0) * std::pow(norm_a * norm_b, 2.0 * alpha);
    return std::pow(rhs, 1.0 / (1.0 + alpha));
}

enum class Thm4Variant { Printed, HolderConsistent };

/// |lambda|^{1/2} <= (1/2) g_sigma(cot(theta/2)) ||a|| ||b||; since g_sigma
/// depends on mu(lambda), the radius is the fixed point of the ray-wise map,
/// damped by averaging with the previous iterate.
inline double bound_thm4(double norm_product, double sigma, double theta) {
    if (!(theta > 0.0 && theta < 2.0 * M_PI)) throw std::domain_error("theta must lie in (0, 2 pi)");
    if (std::isinf(sigma)) return bound_thm2(norm_product, 1.0, theta);
    const double cot_half = std::cos(0.5 * theta) / std::sin(0.5 * theta);
    double R = std::pow(0.75 * norm_product, 2.0);
    if (norm_product == 0.0) return 0.0;
    for (int it = 0; it < 200; ++it) {
        const cplx lambda = R * std::polar(1.0, theta);
        const cplx mu = std::sqrt(R) * std::polar(1.0, 0.5 * theta);
        (void)lambda;
        const double gv = g_sigma(cot_half, sigma, mu).value;
        const double next = std::pow(0.5 * gv * norm_product, 2.0);
        const double damped = 0.5 * (R + next);
        if (std::abs(damped - R) <= 1e-12 * (1.0 + R)) return damped;
        R = damped;
    }
    throw ConvergenceError("Theorem-4 fixed point did not converge in 200 iterations");
}

/// |lambda|^{1+alpha} <= C (alpha sin(theta/2))^{-2}
///                       (||a||_{r,w} ||b||_{s,w})^{2 alpha}.
inline double bound_thm5_weak(double weak_a, double weak_b, const ExponentConfig& cfg,
                              double theta, double C) {
    cfg.require_thm1();
    if (!(C > 0.0)) throw std::invalid_argument("Theorem-5 constant must be positive");
    const double alpha = cfg.alpha().alpha;
    const double sh = std::sin(0.5 * theta);
    const double rhs =
        C * std::pow(alpha * sh, -2.0) * std::pow(weak_a * weak_b, 2.0 * alpha);
    return std::pow(rhs, 1.0 / (1.0 + alpha));
}

/// Corollary 5: |lambda|^gamma <= C sup_t t^{gamma+1/2} lambda_q(t); the sup
/// equals ||q||_{gamma+1/2, w}^{gamma+1/2}.
inline double bound_cor5(double weak_sup, double gamma, double C, double p = 2.0) {
    require_cor2(gamma, p);
    if (!(C > 0.0)) throw std::invalid_argument("Corollary-5 constant must be positive");
    return std::pow(C * weak_sup, 1.0 / gamma);
}

/// Remark 3: |lambda|^{1/2} <= (1/2) g(cot(theta/2)) (p' tau - 1)^{-1/p'}
///                             ||(1+x)^tau q||_p.
inline double bound_rem3(double weighted_p_norm, double p, double tau, double theta) {
    const double pc = conjugate_exponent(p);
    if (!(pc * tau > 1.0)) throw InadmissibleExponents("Remark-3 needs p' tau > 1");
    const double cot_half = std::cos(0.5 * theta) / std::sin(0.5 * theta);
    const double root = 0.5 * g(cot_half).value * std::pow(pc * tau - 1.0, -1.0 / pc) *
                        weighted_p_norm;
    return root * root;
}

// -- regions ---------------------------------------------------------------

enum class Provenance {
    Thm1,
    Thm2,
    Thm3Neg,
    Thm4,
    Thm5Weak,
    Cor1,
    Cor2,
    Cor3,
    Cor4,
    Cor5,
    Rem1,
    Rem3
};

inline const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Thm1: return "thm1";
        case Provenance::Thm2: return "thm2";
        case Provenance::Thm3Neg: return "thm3neg";
        case Provenance::Thm4: return "thm4";
        case Provenance::Thm5Weak: return "thm5weak";
        case Provenance::Cor1: return "cor1";
        case Provenance::Cor2: return "cor2";
        case Provenance::Cor3: return "cor3";
        case Provenance::Cor4: return "cor4";
        case Provenance::Cor5: return "cor5";
        case Provenance::Rem1: return "rem1";
        case Provenance::Rem3: return "rem3";
    }
    return "unknown";
}

struct EnclosureRegion {
    std::vector<double> thetas; // increasing, in (0, 2 pi)
    std::vector<double> radii;  // +infinity marks inadmissible angles
    Provenance provenance = Provenance::Thm1;
    std::map<std::string, double> parameters;
};

struct ThetaGrid {
    int count = 720;
    double exclusion = 1e-3; // width of the excluded zone at 0 and 2 pi
};

/// Samples theta -> R(theta) over the grid; the radius function must throw
/// for inadmissible parameters (propagated) and may return +infinity.
template <typename RadiusFn>
EnclosureRegion enclosure_region(RadiusFn radius, Provenance prov,
                                 const ThetaGrid& grid = {}) {
    EnclosureRegion region;
    region.provenance = prov;
    region.thetas.reserve(grid.count);
    region.radii.reserve(grid.count);
    for (int i = 0; i < grid.count; ++i) {
        const double t = grid.exclusion +
                         (2.0 * M_PI - 2.0 * grid.exclusion) * i / (grid.count - 1);
        region.thetas.push_back(t);
        region.radii.push_back(radius(t));
    }
    return region;
}

inline double region_radius_at(const EnclosureRegion& region, double theta) {
    const auto& ts = region.thetas;
    if (ts.empty()) throw std::logic_error("empty enclosure region");
    if (theta <= ts.front()) return region.radii.front();
    if (theta >= ts.back()) return region.radii.back();
    auto it = std::upper_bound(ts.begin(), ts.end(), theta);
    const std::size_t i = static_cast<std::size_t>(it - ts.begin());
    const double w = (theta - ts[i - 1]) / (ts[i] - ts[i - 1]);
    const double r0 = region.radii[i - 1], r1 = region.radii[i];
    if (std::isinf(r0) || std::isinf(r1)) return infinity;
    return r0 * (1.0 - w) + r1 * w;
}

/// true iff |lambda| <= R(theta(lambda)), with R interpolated linearly in
/// theta between grid samples (closed region).
inline bool contains(const EnclosureRegion& region, cplx lambda) {
    const SpectralPoint sp = spectral_point(lambda);
    return std::abs(lambda) <= region_radius_at(region, sp.theta);
}

} // namespace hls
