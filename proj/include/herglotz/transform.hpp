#pragma once

#include <vector>

#include "herglotz/evaluation.hpp"
#include "herglotz/measure.hpp"
#include "herglotz/moebius.hpp"
#include "herglotz/parallel.hpp"

namespace herglotz {

/// Pushforward lambda^A of a measure under a real automatrix A (det > 0):
/// atoms move to A^{-1}.s with the closed-form weight, rational densities map
/// to rational densities by the substitution s = A.t, grid densities map
/// node-wise. Throws NotRealAutomatrix otherwise.
BoundaryMeasure pushforward_real(const BoundaryMeasure& lambda, const Matrix2C& a);

/// Representing measure mu_{sM} of the left translate phi_s(M.z), by the
/// three-case formula: an atom on the real orbit, a rational density when the
/// translated image is a bounded circle, and atom + Cauchy density in the
/// unbounded contact case.
BoundaryMeasure mu_family(const Endomatrix& m, const ExtendedReal& s);

/// The measure family s -> mu_{sM} behind the Markov operator: total mass at
/// s equals Im phi_s(M.i).
struct KernelFamily {
    Endomatrix m;
    BoundaryMeasure measure_at(const ExtendedReal& s) const { return mu_family(m, s); }
};

/// (Lambda_M f)(s) = mu_{sM}(f). Positivity-preserving; unital iff M.i = i.
Complex markov_apply(const Endomatrix& m, const BoundaryFunction& f, const ExtendedReal& s,
                     double tol = 1e-10);

/// (Lambda_M f) on a grid of boundary points; grid entries are independent,
/// so the loop parallelizes with deterministic per-index results.
std::vector<Complex> markov_apply_grid(const Endomatrix& m, const BoundaryFunction& f,
                                       const std::vector<ExtendedReal>& grid, double tol = 1e-10,
                                       ExecPolicy policy = ExecPolicy::Parallel);

struct TransformedRepresentation {
    double alpha;
    BoundaryMeasure measure;
};

/// Representation data of phi(M.z) from that of phi:
///   alpha_M = alpha + integral of Re phi_s(M.i) lambda(ds),
///   lambda_M(f) = integral of lambda(ds) mu_{sM}(f).
/// Atoms of lambda contribute exact mu_{sM} components. A rational density
/// transforms exactly (the residue form of its Herglotz transform composes
/// with the Moebius map); a grid density is resampled onto a fresh grid with
/// curvature-equidistributed nodes derived from tol. The resampling loop is
/// the parallel kernel. On the real orbit everything maps exactly.
TransformedRepresentation transform_measure(const BoundaryMeasure& lambda, double alpha,
                                            const Endomatrix& m, double tol = 1e-8,
                                            ExecPolicy policy = ExecPolicy::Parallel);


/// max over the grid of |(Lambda_MN f)(s) - (Lambda_M Lambda_N f)(s)|.
double semigroup_check(const Endomatrix& m, const Endomatrix& n, const BoundaryFunction& f,
                       const std::vector<ExtendedReal>& grid, double tol = 1e-8,
                       ExecPolicy policy = ExecPolicy::Parallel);

}  // namespace herglotz
