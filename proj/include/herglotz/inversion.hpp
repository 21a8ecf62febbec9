#pragma once

#include <functional>
#include <vector>

#include "herglotz/measure.hpp"
#include "herglotz/parallel.hpp"

namespace herglotz {

/// Black-box evaluable function on C \ R (only upper half-plane probes used).
using Evaluator = std::function<Complex(Complex)>;

/// Nontangential cone |x - apex| < y tan(aperture); apex may be infinity.
struct StoltzSector {
    ExtendedReal apex;
    double aperture;  // in (0, pi/2)
    StoltzSector(ExtendedReal apex_, double aperture_) : apex(apex_), aperture(aperture_) {
        if (!(aperture > 0.0 && aperture < 1.5707963267948966))
            throw std::invalid_argument("StoltzSector: aperture must lie in (0, pi/2)");
    }
};

struct ExtrapolatedValue {
    double value;
    double error;  // difference of the last two extrapolants
};

/// Geometric y-sequence used by the boundary-limit extrapolations
/// (ratio 1/2, 12 levels from 0.1 by default).
std::vector<double> geometric_levels(double y0 = 1e-1, double ratio = 0.5, int levels = 12);

/// Boundary density d(x) = lim Im phi(x+iy) / (pi (1+x^2)) by Richardson
/// extrapolation along y_seq (strictly decreasing, length >= 3). Throws
/// NoConvergence when the extrapolants diverge (an atom at x).
ExtrapolatedValue density_at(const Evaluator& phi, double x,
                             const std::vector<double>& y_seq = geometric_levels());

/// lambda({inf}) = lim Im phi(iy)/y along a geometric y-sequence.
ExtrapolatedValue mass_at_infinity(const Evaluator& phi, int levels = 16);

/// lambda({c}) = lim y phi(c+iy) / (i (1+c^2)).
ExtrapolatedValue atom_mass_at(const Evaluator& phi, double c,
                               const std::vector<double>& y_seq = geometric_levels());

struct StoltzReport {
    std::vector<double> decade_max;  // max residual per probed decade, outward/inward order
    double innermost;                // first probed decade
    double outermost;                // last probed decade (the limit end)
    double sup_bounded_set;          // sup over the Proposition's bounded family
    Complex worst_point;
};

/// Samples the nontangential limit residuals along in-sector rays:
///   apex infinity: (phi(z) - lambda({inf}) z)/y -> 0 as z -> inf,
///   apex c:        y (phi(z) + lambda({c})(1+c^2)/(z-c)) -> 0 as z -> c.
/// Asserts decade-wise decay below threshold at the limit end; throws
/// ViolationDetected with the witnessing point otherwise. b splits the
/// bounded-set checks (y >= b vs y <= b).
StoltzReport stoltz_verify(const Evaluator& phi, const BoundaryMeasure& lambda,
                           const StoltzSector& sector, int samples = 200,
                           double threshold = 1e-3, double b = 1.0);

/// Heuristic boundary-support estimate: grid nodes where Im phi(x + i y_probe)
/// or the atom-mass probe exceeds the threshold, merged into intervals, plus
/// the point at infinity when mass_at_infinity exceeds it.
struct BoundarySupportEstimate {
    std::vector<std::pair<double, double>> intervals;  // closed, disjoint, sorted
    bool contains_infinity = false;
    double threshold = 0.0;
};

BoundarySupportEstimate support_estimate(const Evaluator& phi, const std::vector<double>& grid,
                                         double y_probe, double threshold,
                                         ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace herglotz
