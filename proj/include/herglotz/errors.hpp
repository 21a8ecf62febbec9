#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace herglotz {

/// Adaptive quadrature exhausted its subdivision budget above tolerance.
struct NonConvergentQuadrature : std::runtime_error {
    NonConvergentQuadrature(double achieved, double requested)
        : std::runtime_error("quadrature did not converge: estimated error " + std::to_string(achieved) +
                             " > tol " + std::to_string(requested)),
          achieved_error(achieved), requested_tol(requested) {}
    double achieved_error;
    double requested_tol;
};

struct SingularMatrix : std::runtime_error {
    explicit SingularMatrix(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateImage : std::runtime_error {
    explicit DegenerateImage(const std::string& what) : std::runtime_error(what) {}
};

struct NotEndomatrix : std::runtime_error {
    explicit NotEndomatrix(const std::string& what) : std::runtime_error(what) {}
};

struct NotRealAutomatrix : std::runtime_error {
    explicit NotRealAutomatrix(const std::string& what) : std::runtime_error(what) {}
};

struct NotUnboundedCase : std::runtime_error {
    explicit NotUnboundedCase(const std::string& what) : std::runtime_error(what) {}
};

/// Boundary-limit extrapolation diverged (typically an atom at the probe point).
struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

/// A nontangential-limit check failed; carries the witnessing point.
struct ViolationDetected : std::runtime_error {
    ViolationDetected(const std::string& what, std::complex<double> w)
        : std::runtime_error(what), witness(w) {}
    std::complex<double> witness;
};

struct RootFindingFailure : std::runtime_error {
    explicit RootFindingFailure(const std::string& what) : std::runtime_error(what) {}
};

struct CriticalPointFailure : std::runtime_error {
    explicit CriticalPointFailure(const std::string& what) : std::runtime_error(what) {}
};

struct PoleInUpperHalfPlane : std::runtime_error {
    PoleInUpperHalfPlane(const std::string& what, std::complex<double> p)
        : std::runtime_error(what), pole(p) {}
    std::complex<double> pole;
};

/// A rational function does not fit the affine + simple-real-poles + remainder shape.
struct FormDecompositionError : std::runtime_error {
    explicit FormDecompositionError(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidMeasure : std::runtime_error {
    explicit InvalidMeasure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace herglotz
