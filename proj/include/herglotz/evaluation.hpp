#pragma once

#include "herglotz/measure.hpp"
#include "herglotz/moebius.hpp"

namespace herglotz {

/// A point of the open upper half-plane.
struct UpperHalfPoint {
    explicit UpperHalfPoint(Complex z_) : z(z_) {
        if (!(z.imag() > 0.0)) throw std::invalid_argument("UpperHalfPoint: Im z must be > 0");
    }
    Complex z;
};

/// phi_s(z) = (1+sz)/(s-z) for finite s; phi_inf(z) = z. Maps the upper
/// half-plane into itself and fixes i for every s.
Complex eval_atomic(const ExtendedReal& s, Complex z);

/// alpha + mass_at_inf * z + sum of atoms + density integral, with quadrature
/// error at most tol on the density part. z must not be real.
Complex eval(const HerglotzFunction& phi, Complex z, double tol = 1e-10);

/// eval(phi, M.z); the reference side of the measure-transform identity.
Complex eval_composed(const HerglotzFunction& phi, const Endomatrix& m, Complex z,
                      double tol = 1e-10);

}  // namespace herglotz
