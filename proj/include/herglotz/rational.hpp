#pragma once

#include <optional>
#include <string>
#include <vector>

#include "herglotz/measure.hpp"
#include "herglotz/polynomial.hpp"

namespace herglotz {

/// Ratio of complex polynomials, reduced on construction: the denominator is
/// made monic and common roots (within 1e-10 clustering) are deflated.
class RationalFunction {
public:
    RationalFunction(CPoly num, CPoly den);

    const CPoly& num() const { return num_; }
    const CPoly& den() const { return den_; }
    Complex operator()(Complex z) const;
    /// All coefficients real after the monic normalization.
    bool is_real(double tol = 1e-12) const;
    int num_degree() const { return poly::degree(num_); }
    int den_degree() const { return poly::degree(den_); }

private:
    CPoly num_, den_;
};

/// f(z) = a z + b + sum c/(s - z)^order + psi(z), with real simple-or-higher
/// poles listed explicitly and psi collecting the lower-half-plane poles
/// (psi -> 0 at infinity).
struct PartialFractionForm {
    struct PoleTerm {
        double location;     // s, on R
        double coefficient;  // c, the coefficient of 1/(s - z)^order
        int order;           // >= 1
    };
    double a = 0.0;
    Complex b{0.0, 0.0};
    std::vector<PoleTerm> poles;
    RationalFunction psi;
};

/// Denominator root-finding plus residue extraction. Real poles are snapped
/// (|Im| < 1e-9 relative); lower-half-plane poles fold into psi. Throws
/// RootFindingFailure, PoleInUpperHalfPlane (immediate refutation shortcut),
/// or FormDecompositionError when the shape cannot hold (polynomial part of
/// degree >= 2, non-real z-coefficient, complex residue at a real pole).
PartialFractionForm partial_fractions(const RationalFunction& f);

struct EndofunctionCertificate {
    bool verdict = false;
    /// For true verdicts: the representation (alpha = Re f(i), measure).
    std::optional<HerglotzFunction> representation;
    /// For false verdicts: a point of C+ with Im f < 0, when the sampler finds one.
    std::optional<Complex> witness;
    std::string reason;
    std::vector<std::string> warnings;
};

/// Real-coefficient criterion: all poles real and simple, a >= 0, residues
/// positive, f non-constant; the measure is a pure atomic one.
/// Refutations are certificates, not errors.
EndofunctionCertificate check_real_rational(const RationalFunction& f);

/// Non-real criterion: real poles as above plus c >= -min over R of Im psi,
/// where c = Im(constant term). The minimum is located through the real
/// critical points of Im psi (companion-matrix roots, refined by bisection).
/// On true the measure gains the density (c + Im psi(x)) / (pi (1+x^2)).
EndofunctionCertificate check_nonreal_rational(const RationalFunction& f);

/// Dispatches on is_real().
EndofunctionCertificate check_rational(const RationalFunction& f);

/// Global minimum of Im psi over R-bar (the value at infinity is 0) together
/// with an argmin. Exposed for tests of the critical-point machinery.
std::pair<double, double> min_imag_on_real_line(const RationalFunction& psi);

}  // namespace herglotz
