#pragma once

#include "herglotz/measure.hpp"

namespace herglotz {

/// w = i(1-z)/(1+z): unit disk onto the upper half-plane.
Complex disk_to_halfplane(Complex z);
/// z = (i-w)/(i+w): the inverse map.
Complex halfplane_to_disk(Complex w);

/// Boundary parametrization s = tan(t/2) for t in (-pi, pi]; t = pi is the
/// point at infinity.
ExtendedReal boundary_param(double t);

/// Finite positive measure on the unit circle, parametrized by angle:
/// atoms plus an optional piecewise-linear density on angles (nodes strictly
/// inside (-pi, pi)).
struct DiskMeasure {
    struct Atom {
        double angle;  // in (-pi, pi]
        double mass;
    };
    std::vector<Atom> atoms;
    std::vector<double> density_nodes;
    std::vector<double> density_values;

    double total_mass() const;
};

/// Herglotz-Riesz evaluation on the disk:
/// i imag_at_zero + (1/2pi) integral of (zeta + z)/(zeta - z) dmu(zeta).
Complex eval_disk(const DiskMeasure& mu, double imag_at_zero, Complex z, double tol = 1e-10);

/// Transfer mu/(2 pi) to the half-plane picture: atoms move to tan(t/2), the
/// density becomes a grid density, and alpha = Re phi(i) = -imag_at_zero
/// (fixed by the identity phi(w) = i phi_disk(z); asserted by tests rather
/// than trusted blindly).
HerglotzFunction transfer_disk_measure(const DiskMeasure& mu, double imag_at_zero);

}  // namespace herglotz
