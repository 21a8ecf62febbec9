#pragma once

#include <optional>
#include <variant>

#include "herglotz/extended.hpp"

namespace herglotz {

/// Circle or extended line on the Riemann sphere; the image M.R-bar of the
/// boundary under a Moebius map.
struct Circle {
    Complex center;
    double radius;  // > 0
};
struct Line {
    Complex point;
    Complex direction;  // unit modulus
};
using Circline = std::variant<Circle, Line>;

bool circline_contains(const Circline& c, const ExtComplex& p, double tol = 1e-9);

/// Invertible 2x2 complex matrix acting by (az+b)/(cz+d). Construction
/// normalizes to unit Frobenius norm and rotates the first entry of modulus
/// > 1e-12 to the positive real axis, so proportional matrices compare equal
/// and the limits at s = +/-infinity of left translation are well defined.
class Matrix2C {
public:
    Matrix2C();  // identity
    Matrix2C(Complex a, Complex b, Complex c, Complex d);

    Complex a() const { return a_; }
    Complex b() const { return b_; }
    Complex c() const { return c_; }
    Complex d() const { return d_; }
    Complex det() const { return a_ * d_ - b_ * c_; }

    Matrix2C inverse() const;
    /// Entrywise proportionality test after normalization.
    bool proportional_to(const Matrix2C& other, double tol = 1e-9) const;
    /// True when the matrix is a complex scalar times a real matrix; the
    /// normalization rotates that scalar away, so this tests Im parts.
    bool is_real_proportional(double tol = 1e-10) const;
    /// The real representative (valid when is_real_proportional()).
    void real_entries(double& a, double& b, double& c, double& d) const;

    friend Matrix2C operator*(const Matrix2C& x, const Matrix2C& y);

private:
    Complex a_, b_, c_, d_;
};

/// Moebius action with infinity handled projectively.
ExtComplex moebius_apply(const Matrix2C& m, const ExtComplex& z);
Complex moebius_apply(const Matrix2C& m, Complex z);
ExtComplex moebius_apply(const Matrix2C& m, const ExtendedReal& s);

/// The matrix of the atomic endofunction phi_s = (1+sz)/(s-z); the identity
/// for s = infinity.
Matrix2C atomic_matrix(const ExtendedReal& s);

/// The inversion z -> -1/z.
Matrix2C inversion_matrix();

/// Exact circline through M.0, M.1, M.infinity (computed from the closed-form
/// image equation of the real axis; the three-point incidence is an invariant
/// checked by tests). Line variant when the pole of the map is real or absent.
Circline boundary_image(const Matrix2C& m);

/// True iff the boundary image lies in the closed upper half-plane and M.i
/// lies in the open one. For real-proportional matrices this reduces to a
/// positive determinant of the real representative.
bool is_endomatrix(const Matrix2C& m);

/// kappa = radius / Im(center) in (0,1]; 1 for horizontal lines; nullopt for
/// real-proportional matrices (the real orbit, where kappa is undefined).
std::optional<double> contact_degree_of(const Matrix2C& m);

struct RealOrbit {};
struct NonContact {
    double kappa;  // in (0,1)
    Circle disk;
};
struct ContactCircle {
    double tangency;  // the point of R where the image circle touches
    Circle disk;
};
struct ContactLine {
    double offset;  // image boundary is R + i*offset
};
using EndoClass = std::variant<RealOrbit, NonContact, ContactCircle, ContactLine>;

/// Complete orbit invariant of the GL+(2,R) biaction. Throws NotEndomatrix.
EndoClass classify(const Matrix2C& m);

/// An endomatrix certified at construction, carrying its classification.
class Endomatrix {
public:
    explicit Endomatrix(const Matrix2C& m);
    const Matrix2C& matrix() const { return m_; }
    const EndoClass& endo_class() const { return class_; }
    bool is_real_orbit() const { return std::holds_alternative<RealOrbit>(class_); }

private:
    Matrix2C m_;
    EndoClass class_;
};

/// nullopt is the real-orbit marker (kappa is undefined there).
std::optional<double> contact_degree(const Endomatrix& m);

/// (1+s^2)^(-1/2) [[s,1],[-1,s]] M for finite s; projectively M itself at
/// s = infinity.
Matrix2C left_translate(const Matrix2C& m, const ExtendedReal& s);

/// Decomposition phi_{sM} = p phi_t + q of the unbounded contact case,
/// with p > 0, Im q >= 0 and t = M^{-1}.s.
struct ContactDecomposition {
    double p;
    Complex q;
    ExtendedReal t;
};

/// Valid when the left translate by s has an unbounded boundary image, i.e.
/// s lies on M.R-bar (always true on the real orbit; the single tangency
/// point for contact matrices). Throws NotUnboundedCase otherwise.
ContactDecomposition contact_decompose(const Endomatrix& m, const ExtendedReal& s);

}  // namespace herglotz
