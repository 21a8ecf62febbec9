#pragma once

#include <functional>
#include <optional>
#include <variant>
#include <vector>

#include "herglotz/extended.hpp"
#include "herglotz/polynomial.hpp"

namespace herglotz {

/// Densities arising from the Moebius kernel calculus have the factored form
/// Im(up(x) conj(lo(x))) / (pi (1+x^2) |lo(x)|^2) with complex polynomials up,
/// lo. Evaluating through the factors is stable arbitrarily close to a real
/// root of |lo|^2, where the expanded real coefficients of the same function
/// cancel catastrophically. Sums of such terms stay in the class.
struct FactoredDensityTerm {
    CPoly up;
    CPoly lo;
};

/// Absolutely continuous part given as a ratio of real polynomials.
/// Constraints: den has no real roots, num/den >= 0 on R, and
/// deg num <= deg den - 2 (which forces integrability).
struct RationalDensity {
    Poly num;
    Poly den;
    /// x-locations where the density is sharply peaked (near-real poles of the
    /// generating function); quadrature seeds panel boundaries here. Not part
    /// of the value; never serialized.
    std::vector<double> split_hints{};
    /// When nonempty, evaluation sums these factored terms instead of running
    /// Horner on the coefficient polynomials (which stay authoritative for
    /// serialization and algebra).
    std::vector<FactoredDensityTerm> stable{};
};

/// Piecewise-linear density on [nodes.front(), nodes.back()] with the tail
/// model tail / (pi (1 + x^2)) beyond the node range.
struct GridDensity {
    std::vector<double> nodes;   // strictly increasing
    std::vector<double> values;  // >= 0, same length
    double tail = 0.0;           // >= 0
};

using DensitySpec = std::variant<RationalDensity, GridDensity>;

double density_value(const RationalDensity& d, double x);
double density_value(const GridDensity& d, double x);
double density_value(const DensitySpec& d, double x);
/// Exact or high-accuracy integral of the density over R.
double density_integral(const DensitySpec& d, double tol);
/// lim |x|->inf of pi (1+x^2) d(x); the Cauchy-tail coefficient.
double density_tail_constant(const DensitySpec& d);

/// A finite positive measure on R-bar: point masses (possibly at infinity)
/// plus an optional absolutely continuous part on R. Immutable after
/// construction; singular continuous parts are not representable.
class BoundaryMeasure {
public:
    struct Atom {
        ExtendedReal location;
        double mass;
    };

    BoundaryMeasure() = default;
    /// Validating constructor. Atoms with duplicate locations are merged by
    /// summing masses; the density invariants are checked (the nonnegativity
    /// check is sampled, not proven).
    BoundaryMeasure(std::vector<Atom> atoms, std::optional<DensitySpec> density,
                    double tol = 1e-12);

    static BoundaryMeasure point_mass(const ExtendedReal& where, double mass);

    /// Fast path for measures whose invariants hold by construction (the
    /// closed-form kernel families). Skips density validation; when
    /// known_total_mass >= 0 it also skips the mass quadrature.
    static BoundaryMeasure trusted(std::vector<Atom> atoms, std::optional<DensitySpec> density,
                                   double known_total_mass = -1.0);

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::optional<DensitySpec>& density() const { return density_; }
    double total_mass() const { return total_mass_; }
    double mass_at_infinity() const;
    /// Mass of the atom at a finite location (exact location match).
    double atom_mass(double x) const;
    bool is_zero() const { return atoms_.empty() && !density_; }

private:
    void merge_atoms(std::vector<Atom> atoms);

    std::vector<Atom> atoms_;
    std::optional<DensitySpec> density_;
    double total_mass_ = 0.0;
};

using BoundaryFunction = std::function<Complex(const ExtendedReal&)>;

/// Adapt a function on R plus its limit at infinity to a BoundaryFunction.
BoundaryFunction with_limit(std::function<Complex(double)> on_real, Complex at_infinity);

/// integral of f d(measure) = sum over atoms + integral against the density,
/// with absolute quadrature error at most tol on the density part.
/// split_hints mark x-locations where the integrand is sharply peaked.
Complex integrate(const BoundaryMeasure& measure, const BoundaryFunction& f, double tol = 1e-10,
                  const std::vector<double>& split_hints = {});

inline double total_mass(const BoundaryMeasure& m) { return m.total_mass(); }

/// alpha = Re phi(i) together with the representing measure; evaluable at any
/// non-real point (see evaluation.hpp).
struct HerglotzFunction {
    double alpha = 0.0;
    BoundaryMeasure measure;
};

}  // namespace herglotz
