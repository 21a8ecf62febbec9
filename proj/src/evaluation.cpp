#include "herglotz/evaluation.hpp"

#include <cmath>

#include "herglotz/errors.hpp"

namespace herglotz {

Complex eval_atomic(const ExtendedReal& s, Complex z) {
    if (s.is_infinite()) return z;
    const double sv = s.value();
    return (1.0 + sv * z) / (sv - z);
}

Complex eval(const HerglotzFunction& phi, Complex z, double tol) {
    if (z.imag() == 0.0) throw std::invalid_argument("eval: z must not be real");
    auto kernel = [z](const ExtendedReal& s) { return eval_atomic(s, z); };
    // The kernel peaks over a width of Im z around Re z; seed a panel edge there.
    std::vector<double> hints;
    if (phi.measure.density() && std::abs(z.imag()) < 1e-2) hints.push_back(z.real());
    return phi.alpha + integrate(phi.measure, kernel, tol, hints);
}

Complex eval_composed(const HerglotzFunction& phi, const Endomatrix& m, Complex z, double tol) {
    if (!(z.imag() > 0.0)) throw std::invalid_argument("eval_composed: z must lie in C+");
    const ExtComplex w = moebius_apply(m.matrix(), ExtComplex(z));
    if (w.is_infinite()) throw DegenerateImage("endomatrix sent an interior point to infinity");
    return eval(phi, w.value(), tol);
}

}  // namespace herglotz
