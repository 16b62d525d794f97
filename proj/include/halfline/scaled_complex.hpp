#pragma once

#include <cmath>
#include <complex>

namespace hls {

/// A complex number stored as significand * exp(logmag), so that quantities
/// spanning thousands of orders of magnitude (characteristic determinants,
/// shooting solutions) stay representable. The significand is kept with
/// modulus in [1, 2) by normalize(); a zero value has sig == 0, logmag == 0.
struct ScaledComplex {
    std::complex<double> sig{0.0, 0.0};
    double logmag = 0.0;

    ScaledComplex() = default;
    ScaledComplex(std::complex<double> v) : sig(v) { normalize(); }
    ScaledComplex(std::complex<double> s, double lm) : sig(s), logmag(lm) { normalize(); }

    void normalize() {
        const double m = std::abs(sig);
        if (m == 0.0 || !std::isfinite(m)) {
            logmag = 0.0;
            return;
        }
        const double l = std::log(m);
        sig /= m;
        logmag += l;
    }

    bool is_zero() const { return sig == std::complex<double>(0.0, 0.0); }

    /// log |value|; -inf for zero.
    double log_abs() const {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        return logmag;
    }

    double arg() const { return std::arg(sig); }

    /// Plain complex value; overflows to inf (underflows to 0) when logmag
    /// exceeds the double range.
    std::complex<double> value() const { return sig * std::exp(logmag); }

    /// Value relative to a reference log-magnitude (i.e. value * exp(-ref)).
    std::complex<double> value_rel(double ref_logmag) const {
        return sig * std::exp(logmag - ref_logmag);
    }

    ScaledComplex& operator*=(std::complex<double> w) {
        sig *= w;
        normalize();
        return *this;
    }

    ScaledComplex& mul_exp(double log_factor) {
        if (!is_zero()) logmag += log_factor;
        return *this;
    }
};

inline ScaledComplex operator*(ScaledComplex a, const ScaledComplex& b) {
    a.sig *= b.sig;
    a.logmag += b.logmag;
    a.normalize();
    return a;
}

} // namespace hls
