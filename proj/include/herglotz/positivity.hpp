#pragma once

#include "herglotz/inversion.hpp"

namespace herglotz {

/// Endofunction criterion for a/(z+c) + b (a != 0):
/// Im b >= 0, Im c >= 0 and |a| + Re a <= 2 Im(b) Im(c). At Im b Im c = 0 the
/// inequality itself forces a to be a negative real.
bool linear_fractional_check(Complex a, Complex b, Complex c);

/// The proof's rephrasing for Im b Im c > 0: positive semidefiniteness of
/// beta x^2 + x Im a + (beta gamma^2 - gamma Re a). Kept as an independent
/// algebraic route for property tests.
bool linear_fractional_check_quadratic(Complex a, Complex b, Complex c);

/// Endofunction criterion for a z + b: a real positive and Im b >= 0.
bool affine_check(Complex a, Complex b);

struct PositivityReport {
    bool pass = true;
    double min_imag = 0.0;
    Complex witness{0.0, 1.0};
    std::size_t samples = 0;
};

/// Samples Im(evaluator) on a strip of height `margin` around the estimated
/// boundary support (with the w = -1/z chart at infinity). A Pass is
/// sampling-based evidence for boundary positivity, not a proof; a Fail
/// carries a concrete witness.
PositivityReport localized_positivity_check(const Evaluator& phi,
                                            const BoundarySupportEstimate& support, double margin,
                                            int grid_density,
                                            ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace herglotz
