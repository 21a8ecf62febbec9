#include "herglotz/moebius.hpp"

#include <array>
#include <cmath>

#include "herglotz/errors.hpp"

namespace herglotz {

namespace {
constexpr double kLineTol = 1e-12;     // |Im(d c~)| below this: image treated as a line
constexpr double kContactBand = 1e-9;  // |kappa - 1| band for tangency

double frobenius(Complex a, Complex b, Complex c, Complex d) {
    return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
}
}  // namespace

Matrix2C::Matrix2C() : Matrix2C(1.0, 0.0, 0.0, 1.0) {}

Matrix2C::Matrix2C(Complex a, Complex b, Complex c, Complex d) : a_(a), b_(b), c_(c), d_(d) {
    const double norm = frobenius(a_, b_, c_, d_);
    if (!(norm > 0.0) || !std::isfinite(norm)) throw SingularMatrix("matrix has no finite norm");
    a_ /= norm;
    b_ /= norm;
    c_ /= norm;
    d_ /= norm;
    for (Complex e : {a_, b_, c_, d_}) {
        if (std::abs(e) > 1e-12) {
            const Complex phase = std::conj(e) / std::abs(e);
            a_ *= phase;
            b_ *= phase;
            c_ *= phase;
            d_ *= phase;
            break;
        }
    }
    if (std::abs(det()) <= 1e-14) throw SingularMatrix("matrix is singular after normalization");
}

Matrix2C Matrix2C::inverse() const { return Matrix2C(d_, -b_, -c_, a_); }

bool Matrix2C::proportional_to(const Matrix2C& other, double tol) const {
    const double diff = std::max(std::max(std::abs(a_ - other.a_), std::abs(b_ - other.b_)),
                                 std::max(std::abs(c_ - other.c_), std::abs(d_ - other.d_)));
    return diff <= tol;
}

bool Matrix2C::is_real_proportional(double tol) const {
    return std::max(std::max(std::abs(a_.imag()), std::abs(b_.imag())),
                    std::max(std::abs(c_.imag()), std::abs(d_.imag()))) <= tol;
}

void Matrix2C::real_entries(double& a, double& b, double& c, double& d) const {
    a = a_.real();
    b = b_.real();
    c = c_.real();
    d = d_.real();
}

Matrix2C operator*(const Matrix2C& x, const Matrix2C& y) {
    return Matrix2C(x.a_ * y.a_ + x.b_ * y.c_, x.a_ * y.b_ + x.b_ * y.d_,
                    x.c_ * y.a_ + x.d_ * y.c_, x.c_ * y.b_ + x.d_ * y.d_);
}

ExtComplex moebius_apply(const Matrix2C& m, const ExtComplex& z) {
    if (z.is_infinite()) {
        if (std::abs(m.c()) <= 1e-300) return ExtComplex::infinity();
        return ExtComplex(m.a() / m.c());
    }
    const Complex num = m.a() * z.value() + m.b();
    const Complex den = m.c() * z.value() + m.d();
    if (std::abs(den) == 0.0) return ExtComplex::infinity();
    const Complex w = num / den;
    if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) return ExtComplex::infinity();
    return ExtComplex(w);
}

Complex moebius_apply(const Matrix2C& m, Complex z) {
    const ExtComplex w = moebius_apply(m, ExtComplex(z));
    if (w.is_infinite()) throw DegenerateImage("Moebius image is the point at infinity");
    return w.value();
}

ExtComplex moebius_apply(const Matrix2C& m, const ExtendedReal& s) { return moebius_apply(m, ExtComplex(s)); }

Matrix2C atomic_matrix(const ExtendedReal& s) {
    if (s.is_infinite()) return Matrix2C();
    return Matrix2C(s.value(), 1.0, -1.0, s.value());
}

Matrix2C inversion_matrix() { return Matrix2C(0.0, 1.0, -1.0, 0.0); }

bool circline_contains(const Circline& c, const ExtComplex& p, double tol) {
    if (const auto* circle = std::get_if<Circle>(&c)) {
        if (p.is_infinite()) return false;
        const double scale = std::max(1.0, std::abs(circle->center)) + circle->radius;
        return std::abs(std::abs(p.value() - circle->center) - circle->radius) <= tol * scale;
    }
    const auto& line = std::get<Line>(c);
    if (p.is_infinite()) return true;
    const Complex rel = p.value() - line.point;
    const double scale = std::max(1.0, std::abs(rel));
    return std::abs((rel * std::conj(line.direction)).imag()) <= tol * scale;
}

Circline boundary_image(const Matrix2C& m) {
    const Complex a = m.a(), b = m.b(), c = m.c(), d = m.d();
    // w = M.s with s real satisfies K|w|^2 - u1 Re(w) - u2 Im(w) + u0 = 0.
    const double K = (d * std::conj(c)).imag();
    const double u1 = (d * std::conj(a)).imag() + (b * std::conj(c)).imag();
    const double u2 = (d * std::conj(a)).real() - (b * std::conj(c)).real();
    const double u0 = (b * std::conj(a)).imag();
    if (std::abs(K) > kLineTol) {
        const Complex center{u1 / (2.0 * K), u2 / (2.0 * K)};
        const double r2 = (u1 * u1 + u2 * u2) / (4.0 * K * K) - u0 / K;
        if (!(r2 > 0.0)) throw DegenerateImage("image circle has nonpositive radius");
        return Circle{center, std::sqrt(r2)};
    }
    // Line: direction from the two most separated finite probe images.
    const std::array<ExtComplex, 6> probes = {
        moebius_apply(m, ExtComplex(Complex(0, 0))), moebius_apply(m, ExtComplex(Complex(1, 0))),
        moebius_apply(m, ExtComplex::infinity()),    moebius_apply(m, ExtComplex(Complex(-1, 0))),
        moebius_apply(m, ExtComplex(Complex(2, 0))), moebius_apply(m, ExtComplex(Complex(-2, 0)))};
    Complex best_p{0, 0}, best_q{0, 0};
    double best_sep = -1.0;
    for (size_t i = 0; i < probes.size(); ++i) {
        if (probes[i].is_infinite()) continue;
        for (size_t j = i + 1; j < probes.size(); ++j) {
            if (probes[j].is_infinite()) continue;
            const double sep = std::abs(probes[i].value() - probes[j].value());
            if (sep > best_sep) {
                best_sep = sep;
                best_p = probes[i].value();
                best_q = probes[j].value();
            }
        }
    }
    if (best_sep <= 1e-12) throw DegenerateImage("boundary image collapsed to a point");
    Complex dir = (best_q - best_p) / best_sep;
    if (dir.real() < 0.0 || (std::abs(dir.real()) < 1e-12 && dir.imag() < 0.0)) dir = -dir;
    return Line{best_p, dir};
}

bool is_endomatrix(const Matrix2C& m) {
    if (m.is_real_proportional()) {
        double a, b, c, d;
        m.real_entries(a, b, c, d);
        return a * d - b * c > 0.0;
    }
    Circline image;
    try {
        image = boundary_image(m);
    } catch (const DegenerateImage&) {
        return false;
    }
    if (const auto* circle = std::get_if<Circle>(&image)) {
        if (circle->center.imag() - circle->radius < -kContactBand * std::max(1.0, circle->radius))
            return false;
    } else {
        const auto& line = std::get<Line>(image);
        if (std::abs(line.direction.imag()) > 1e-9) return false;
        if (line.point.imag() < -1e-12) return false;
    }
    const ExtComplex mi = moebius_apply(m, ExtComplex(Complex(0, 1)));
    return mi.is_finite() && mi.value().imag() > 0.0;
}

std::optional<double> contact_degree_of(const Matrix2C& m) {
    if (m.is_real_proportional()) return std::nullopt;
    const Circline image = boundary_image(m);
    if (std::holds_alternative<Line>(image)) return 1.0;
    const auto& circle = std::get<Circle>(image);
    return circle.radius / circle.center.imag();
}

EndoClass classify(const Matrix2C& m) {
    if (!is_endomatrix(m)) throw NotEndomatrix("matrix does not map the upper half-plane into itself");
    if (m.is_real_proportional()) return RealOrbit{};
    const Circline image = boundary_image(m);
    if (const auto* line = std::get_if<Line>(&image))
        return ContactLine{std::max(0.0, line->point.imag())};
    const auto& circle = std::get<Circle>(image);
    const double kappa = circle.radius / circle.center.imag();
    if (std::abs(kappa - 1.0) <= kContactBand)
        return ContactCircle{circle.center.real(), circle};
    return NonContact{kappa, circle};
}

Endomatrix::Endomatrix(const Matrix2C& m) : m_(m), class_(classify(m)) {}

std::optional<double> contact_degree(const Endomatrix& m) {
    if (m.is_real_orbit()) return std::nullopt;
    if (std::holds_alternative<ContactLine>(m.endo_class())) return 1.0;
    if (const auto* cc = std::get_if<ContactCircle>(&m.endo_class()))
        return cc->disk.radius / cc->disk.center.imag();
    const auto& nc = std::get<NonContact>(m.endo_class());
    return nc.kappa;
}

Matrix2C left_translate(const Matrix2C& m, const ExtendedReal& s) {
    if (s.is_infinite()) return m;  // the +/- sign dies under projective normalization
    const double sv = s.value();
    return Matrix2C(sv * m.a() + m.c(), sv * m.b() + m.d(), -m.a() + sv * m.c(),
                    -m.b() + sv * m.d());
}

ContactDecomposition contact_decompose(const Endomatrix& em, const ExtendedReal& s) {
    const Matrix2C& m = em.matrix();
    const Complex a = m.a(), b = m.b(), c = m.c(), d = m.d();

    // t = M^{-1}.s must land on R-bar; chordal tolerance keeps the test
    // meaningful for huge |t|.
    Complex num, den;
    if (s.is_infinite()) {
        num = d;
        den = -c;
    } else {
        num = d * s.value() - b;
        den = -c * s.value() + a;
    }
    ExtendedReal t = ExtendedReal::infinity();
    if (std::abs(den) > 1e-9 * (std::abs(num) + std::abs(den))) {
        const Complex tc = num / den;
        if (std::abs(tc.imag()) > 1e-7 * (1.0 + std::norm(tc)))
            throw NotUnboundedCase("left translate by s has a bounded boundary image");
        t = ExtendedReal(tc.real());
    }

    Complex pc, qc;
    if (s.is_infinite()) {
        const Complex den2 = c * c + d * d;
        if (std::abs(den2) < 1e-14) throw NotUnboundedCase("degenerate contact configuration");
        pc = m.det() / den2;
        qc = (a * c + b * d) / den2;
    } else {
        const double sv = s.value();
        const Complex e1 = c * sv - a, e2 = d * sv - b;
        const Complex den2 = e1 * e1 + e2 * e2;
        if (std::abs(den2) < 1e-14) throw NotUnboundedCase("degenerate contact configuration");
        pc = m.det() * (1.0 + sv * sv) / den2;
        qc = ((a * c + b * d) * (sv * sv - 1.0) + (c * c + d * d - a * a - b * b) * sv) / den2;
    }
    if (!(pc.real() > 0.0) || std::abs(pc.imag()) > 1e-6 * std::abs(pc))
        throw NotUnboundedCase("decomposition does not yield a positive gain p");
    return ContactDecomposition{pc.real(), qc, t};
}

}  // namespace herglotz
