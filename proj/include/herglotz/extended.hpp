#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace herglotz {

using Complex = std::complex<double>;

/// A point of the extended reals R-bar = R + {inf} (one-point
/// compactification; a single point at infinity, no sign).
class ExtendedReal {
public:
    static ExtendedReal infinity() { return ExtendedReal(true, 0.0); }

    ExtendedReal() : inf_(false), value_(0.0) {}
    explicit ExtendedReal(double v) : inf_(false), value_(v) {
        if (!std::isfinite(v))
            throw std::invalid_argument("ExtendedReal: finite variant requires a finite value");
    }

    bool is_infinite() const { return inf_; }
    bool is_finite() const { return !inf_; }

    /// Finite value; only valid on the finite variant.
    double value() const {
        if (inf_) throw std::logic_error("ExtendedReal: value() on infinity");
        return value_;
    }

    friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
        if (a.inf_ != b.inf_) return false;
        return a.inf_ || a.value_ == b.value_;
    }
    friend bool operator!=(const ExtendedReal& a, const ExtendedReal& b) { return !(a == b); }

    /// Total order with infinity last; used to keep atom lists sorted.
    friend bool operator<(const ExtendedReal& a, const ExtendedReal& b) {
        if (a.inf_) return false;
        if (b.inf_) return true;
        return a.value_ < b.value_;
    }

private:
    ExtendedReal(bool inf, double v) : inf_(inf), value_(v) {}
    bool inf_;
    double value_;
};

/// A point of the Riemann sphere: a finite complex number or infinity.
class ExtComplex {
public:
    static ExtComplex infinity() { return ExtComplex(true, Complex(0, 0)); }

    ExtComplex() : inf_(false), value_(0, 0) {}
    ExtComplex(Complex v) : inf_(false), value_(v) {}  // NOLINT: implicit by design
    explicit ExtComplex(const ExtendedReal& s)
        : inf_(s.is_infinite()), value_(s.is_infinite() ? Complex(0, 0) : Complex(s.value(), 0)) {}

    bool is_infinite() const { return inf_; }
    bool is_finite() const { return !inf_; }
    Complex value() const {
        if (inf_) throw std::logic_error("ExtComplex: value() on infinity");
        return value_;
    }

private:
    ExtComplex(bool inf, Complex v) : inf_(inf), value_(v) {}
    bool inf_;
    Complex value_;
};

/// Chordal (spherical) distance, range [0, 2].
inline double chordal_distance(const ExtComplex& a, const ExtComplex& b) {
    auto lift = [](const ExtComplex& p) { return p.is_infinite() ? 0.0 : 1.0 / std::sqrt(1.0 + std::norm(p.value())); };
    if (a.is_infinite() && b.is_infinite()) return 0.0;
    if (a.is_infinite()) return 2.0 * lift(b);
    if (b.is_infinite()) return 2.0 * lift(a);
    return 2.0 * std::abs(a.value() - b.value()) * lift(a) * lift(b);
}

inline bool in_upper_half_plane(Complex z) { return z.imag() > 0.0; }

}  // namespace herglotz
