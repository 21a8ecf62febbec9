#include "herglotz/rational.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "herglotz/errors.hpp"

namespace herglotz {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSnapTol = 1e-9;  // relative |Im| below which a pole is real

/// Taylor coefficients of p at c: out[j] = p^(j)(c)/j!, by repeated synthetic
/// division.
CPoly taylor_shift(const CPoly& p, Complex c) {
    CPoly rest = p;
    CPoly out;
    out.reserve(p.size());
    while (!rest.empty()) {
        // divide rest by (z - c): Horner carry is the remainder
        CPoly quot(rest.size() > 1 ? rest.size() - 1 : 0);
        Complex carry{0.0, 0.0};
        for (size_t i = rest.size(); i-- > 0;) {
            const Complex coef = rest[i] + carry * c;
            if (i > 0)
                quot[i - 1] = coef;
            else
                out.push_back(coef);
            carry = coef;
        }
        rest = std::move(quot);
    }
    return out;
}

double eval_magnitude(const CPoly& p, Complex z) {
    double acc = 0.0, pw = 1.0;
    const double az = std::abs(z);
    for (const Complex& c : p) {
        acc += std::abs(c) * pw;
        pw *= az;
    }
    return acc;
}

struct PoleGroup {
    Complex location;
    std::vector<Complex> coeffs;  // coeffs[l-1] = A_l of A_l/(z - p)^l
    double snap_residual = 0.0;   // |Im| removed when the pole was snapped to R
};

struct RawDecomposition {
    CPoly poly_part;
    std::vector<PoleGroup> groups;
};

/// Cluster den roots into multiplicity groups and extract the Laurent
/// coefficients A_l at each pole through local power series.
RawDecomposition decompose(const RationalFunction& f) {
    RawDecomposition out;
    auto [quot, rem] = poly::divmod(f.num(), f.den());
    out.poly_part = quot;

    std::vector<Complex> rts = poly::roots(f.den());
    std::vector<char> used(rts.size(), 0);
    for (size_t i = 0; i < rts.size(); ++i) {
        if (used[i]) continue;
        std::vector<Complex> cluster{rts[i]};
        used[i] = 1;
        for (size_t j = i + 1; j < rts.size(); ++j) {
            if (used[j]) continue;
            if (std::abs(rts[j] - rts[i]) < 1e-7 * (1.0 + std::abs(rts[i]))) {
                cluster.push_back(rts[j]);
                used[j] = 1;
            }
        }
        Complex center{0.0, 0.0};
        for (Complex r : cluster) center += r;
        center /= static_cast<double>(cluster.size());
        double snapped = 0.0;
        if (std::abs(center.imag()) < kSnapTol * (1.0 + std::abs(center.real()))) {
            snapped = std::abs(center.imag());
            center = Complex(center.real(), 0.0);
        }
        const int k = static_cast<int>(cluster.size());

        // den = (z - p)^k * rest; Taylor-expand num/rest at p.
        CPoly rest = f.den();
        for (int l = 0; l < k; ++l) rest = poly::deflate(rest, center);
        const CPoly num_series = taylor_shift(rem.empty() ? f.num() : rem, center);
        const CPoly rest_series = taylor_shift(rest, center);
        if (rest_series.empty() || std::abs(rest_series[0]) == 0.0)
            throw RootFindingFailure("pole cluster collapsed during residue extraction");
        std::vector<Complex> series(static_cast<size_t>(k), Complex{});
        for (int j = 0; j < k; ++j) {
            Complex acc = j < static_cast<int>(num_series.size()) ? num_series[static_cast<size_t>(j)]
                                                                  : Complex{};
            for (int l = 0; l < j; ++l)
                acc -= series[static_cast<size_t>(l)] *
                       (j - l < static_cast<int>(rest_series.size())
                            ? rest_series[static_cast<size_t>(j - l)]
                            : Complex{});
            series[static_cast<size_t>(j)] = acc / rest_series[0];
        }
        PoleGroup group;
        group.location = center;
        group.snap_residual = snapped;
        group.coeffs.resize(static_cast<size_t>(k));
        // g(p + w) = sum_j e_j w^j, and A_l = e_{k-l}.
        for (int l = 1; l <= k; ++l)
            group.coeffs[static_cast<size_t>(l - 1)] = series[static_cast<size_t>(k - l)];
        out.groups.push_back(std::move(group));
    }
    return out;
}

/// Rebuild a rational function from pole groups (used for psi).
RationalFunction from_groups(const std::vector<const PoleGroup*>& groups) {
    CPoly den{1.0};
    for (const auto* g : groups) {
        const CPoly lin{-g->location, 1.0};
        for (size_t l = 0; l < g->coeffs.size(); ++l) den = poly::mul(den, lin);
    }
    CPoly num;
    for (const auto* g : groups) {
        for (size_t l = 1; l <= g->coeffs.size(); ++l) {
            if (std::abs(g->coeffs[l - 1]) == 0.0) continue;
            // A_l/(z-p)^l * den = A_l (z-p)^(k-l) * (other factors)
            CPoly term{g->coeffs[l - 1]};
            for (const auto* h : groups) {
                const size_t reps = (h == g) ? h->coeffs.size() - l : h->coeffs.size();
                const CPoly lin{-h->location, 1.0};
                for (size_t r = 0; r < reps; ++r) term = poly::mul(term, lin);
            }
            num = poly::add(num, term);
        }
    }
    if (num.empty()) num = {Complex{0.0, 0.0}};
    return RationalFunction(std::move(num), std::move(den));
}

/// Bounded search for a point of C+ with Im f < 0; hint locations get dense
/// local rings. Used to attach verifiable witnesses to refutations.
std::optional<Complex> negative_witness(const RationalFunction& f,
                                        const std::vector<double>& hints) {
    auto bad = [&](Complex z) {
        const Complex v = f(z);
        return std::isfinite(v.imag()) && v.imag() < -1e-12 * (1.0 + std::abs(v));
    };
    for (double h : hints) {
        for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5})
            for (int a = 1; a < 16; ++a) {
                const double th = kPi * a / 16.0;
                const Complex z{h + eps * std::cos(th), eps * std::sin(th)};
                if (bad(z)) return z;
            }
    }
    for (double y : {1e-4, 1e-3, 1e-2, 1e-1, 1.0})
        for (int i = 0; i <= 200; ++i) {
            const Complex z{-50.0 + 0.5 * i, y};
            if (bad(z)) return z;
        }
    for (double r : {1e2, 1e4, 1e6})
        for (int a = 1; a < 32; ++a) {
            const Complex z = r * Complex(std::cos(kPi * a / 32.0), std::sin(kPi * a / 32.0));
            if (bad(z)) return z;
        }
    return std::nullopt;
}

EndofunctionCertificate refute(const RationalFunction& f, std::string reason,
                               std::vector<double> hints) {
    EndofunctionCertificate cert;
    cert.verdict = false;
    cert.reason = std::move(reason);
    cert.witness = negative_witness(f, hints);
    return cert;
}

}  // namespace

RationalFunction::RationalFunction(CPoly num, CPoly den)
    : num_(poly::trim(std::move(num), 0.0)), den_(poly::trim(std::move(den), 0.0)) {
    if (poly::degree(den_) < 0) throw std::invalid_argument("rational function: zero denominator");
    if (num_.empty()) num_ = {Complex{0.0, 0.0}};
    // Reduce: deflate common roots within the clustering tolerance.
    bool changed = true;
    while (changed && poly::degree(den_) > 0 && poly::degree(num_) > 0) {
        changed = false;
        for (const Complex& r : poly::roots(den_)) {
            const double mag = eval_magnitude(num_, r);
            if (std::abs(poly::eval(num_, r)) <= 1e-10 * (mag + 1e-300)) {
                num_ = poly::trim(poly::deflate(num_, r), 1e-14);
                den_ = poly::trim(poly::deflate(den_, r), 1e-14);
                if (num_.empty()) num_ = {Complex{0.0, 0.0}};
                changed = true;
                break;
            }
        }
    }
    const Complex lead = den_[static_cast<size_t>(poly::degree(den_))];
    num_ = poly::scale(std::move(num_), 1.0 / lead);
    den_ = poly::scale(std::move(den_), 1.0 / lead);
}

Complex RationalFunction::operator()(Complex z) const {
    return poly::eval(num_, z) / poly::eval(den_, z);
}

bool RationalFunction::is_real(double tol) const {
    return poly::imag_magnitude(num_) <= tol && poly::imag_magnitude(den_) <= tol;
}

PartialFractionForm partial_fractions(const RationalFunction& f) {
    const RawDecomposition raw = decompose(f);
    if (poly::degree(raw.poly_part) > 1)
        throw FormDecompositionError("polynomial part has degree >= 2");
    PartialFractionForm form{0.0, Complex{0.0, 0.0}, {}, RationalFunction({Complex{0.0, 0.0}}, {Complex{1.0, 0.0}})};
    if (raw.poly_part.size() >= 2) {
        const Complex ac = raw.poly_part[1];
        if (std::abs(ac.imag()) > 1e-9 * (1.0 + std::abs(ac)))
            throw FormDecompositionError("non-real coefficient of z");
        form.a = ac.real();
    }
    if (!raw.poly_part.empty()) form.b = raw.poly_part[0];

    std::vector<const PoleGroup*> lower;
    for (const auto& g : raw.groups) {
        if (g.location.imag() > 0.0)
            throw PoleInUpperHalfPlane("denominator root in the open upper half-plane", g.location);
        if (g.location.imag() < 0.0) {
            lower.push_back(&g);
            continue;
        }
        for (size_t l = 1; l <= g.coeffs.size(); ++l) {
            const Complex al = g.coeffs[l - 1];
            if (std::abs(al) <= 1e-12) continue;
            // Convert A_l/(z-s)^l to c_l/(s-z)^l.
            const Complex cl = (l % 2 == 1) ? -al : al;
            if (std::abs(cl.imag()) > 1e-8 * (1.0 + std::abs(cl)))
                throw FormDecompositionError("complex coefficient at a real pole");
            form.poles.push_back({g.location.real(), cl.real(), static_cast<int>(l)});
        }
    }
    if (!lower.empty()) form.psi = from_groups(lower);
    std::sort(form.poles.begin(), form.poles.end(), [](const auto& x, const auto& y) {
        return x.location != y.location ? x.location < y.location : x.order < y.order;
    });
    return form;
}

std::pair<double, double> min_imag_on_real_line(const RationalFunction& psi) {
    namespace hp = herglotz::poly;
    // Im psi = P/Q with P = Im(num conj(den)) and Q = |den|^2, coefficientwise.
    const CPoly prod = hp::mul(psi.num(), hp::conjugate(psi.den()));
    Poly p(prod.size());
    for (size_t i = 0; i < prod.size(); ++i) p[i] = prod[i].imag();
    const CPoly qq = hp::mul(psi.den(), hp::conjugate(psi.den()));
    Poly q(qq.size());
    for (size_t i = 0; i < qq.size(); ++i) q[i] = qq[i].real();
    p = hp::trim(std::move(p), 1e-15);
    q = hp::trim(std::move(q), 1e-15);
    if (hp::degree(p) < 0) return {0.0, 0.0};  // Im psi identically zero

    // Critical points: real roots of P'Q - PQ'.
    Poly crit = hp::add(hp::mul(hp::derivative(p), q), hp::scale(hp::mul(p, hp::derivative(q)), -1.0));
    crit = hp::trim(std::move(crit), 1e-14);
    double best = 0.0, arg = 0.0;  // value 0 at infinity is always admissible
    std::vector<Complex> rts;
    try {
        rts = hp::roots(crit);
    } catch (const RootFindingFailure& e) {
        throw CriticalPointFailure(std::string("critical-point root finding failed: ") + e.what());
    }
    for (const Complex& r : rts) {
        if (std::abs(r.imag()) > 1e-7 * (1.0 + std::abs(r.real()))) continue;
        const double x = r.real();
        const double v = hp::eval(p, x) / hp::eval(q, x);
        if (v < best) {
            best = v;
            arg = x;
        }
    }
    return {best, arg};
}

EndofunctionCertificate check_real_rational(const RationalFunction& f) {
    if (!f.is_real()) throw std::invalid_argument("check_real_rational: coefficients are not real");
    const RawDecomposition raw = decompose(f);

    if (poly::degree(raw.poly_part) > 1)
        return refute(f, "polynomial part of degree >= 2", {0.0});
    double a = 0.0;
    if (raw.poly_part.size() >= 2) a = raw.poly_part[1].real();
    if (a < 0.0) return refute(f, "negative coefficient of z", {});

    std::vector<BoundaryMeasure::Atom> atoms;
    if (a > 0.0) atoms.push_back({ExtendedReal::infinity(), a});
    for (const auto& g : raw.groups) {
        // Real coefficients force conjugate pole pairs, so any pole off the
        // snap band has a mirror image in the upper half-plane.
        if (g.location.imag() != 0.0)
            return refute(f, "non-real pole of a real rational function", {g.location.real()});
        if (g.coeffs.size() > 1)
            return refute(f, "non-simple real pole", {g.location.real()});
        const double c = -g.coeffs[0].real();  // A_1/(z-s) = c/(s-z) with c = -A_1
        if (!(c > 0.0)) return refute(f, "nonpositive residue at a real pole", {g.location.real()});
        const double s = g.location.real();
        atoms.push_back({ExtendedReal(s), c / (1.0 + s * s)});
    }
    if (atoms.empty()) return refute(f, "real constant is not an endofunction", {});

    EndofunctionCertificate cert;
    cert.verdict = true;
    const double alpha = f(Complex(0.0, 1.0)).real();
    cert.representation = HerglotzFunction{alpha, BoundaryMeasure(std::move(atoms), std::nullopt)};
    cert.reason = "all poles real and simple with positive residues, a >= 0";
    for (const auto& g : raw.groups)
        if (g.snap_residual > 1e-12 * (1.0 + std::abs(g.location.real())))
            cert.warnings.push_back("borderline pole snapped to R at " +
                                    std::to_string(g.location.real()) + " (|Im| was " +
                                    std::to_string(g.snap_residual) + ")");
    return cert;
}

EndofunctionCertificate check_nonreal_rational(const RationalFunction& f) {
    const RawDecomposition raw = decompose(f);

    if (poly::degree(raw.poly_part) > 1)
        return refute(f, "polynomial part of degree >= 2", {0.0});
    double a = 0.0;
    if (raw.poly_part.size() >= 2) {
        const Complex ac = raw.poly_part[1];
        if (std::abs(ac.imag()) > 1e-9 * (1.0 + std::abs(ac)))
            return refute(f, "non-real coefficient of z", {});
        a = ac.real();
    }
    if (a < 0.0) return refute(f, "negative coefficient of z", {});
    const Complex b_full = raw.poly_part.empty() ? Complex{0.0, 0.0} : raw.poly_part[0];
    const double c_im = b_full.imag();

    std::vector<BoundaryMeasure::Atom> atoms;
    if (a > 0.0) atoms.push_back({ExtendedReal::infinity(), a});
    std::vector<const PoleGroup*> lower;
    for (const auto& g : raw.groups) {
        if (g.location.imag() > 0.0)
            return refute(f, "pole in the upper half-plane", {g.location.real()});
        if (g.location.imag() < 0.0) {
            lower.push_back(&g);
            continue;
        }
        if (g.coeffs.size() > 1)
            return refute(f, "non-simple real pole", {g.location.real()});
        const Complex a1 = g.coeffs[0];
        if (std::abs(a1.imag()) > 1e-8 * (1.0 + std::abs(a1)))
            return refute(f, "non-real residue at a real pole", {g.location.real()});
        const double c = -a1.real();
        if (!(c > 0.0)) return refute(f, "nonpositive residue at a real pole", {g.location.real()});
        const double s = g.location.real();
        atoms.push_back({ExtendedReal(s), c / (1.0 + s * s)});
    }

    RationalFunction psi = lower.empty()
                               ? RationalFunction({Complex{0.0, 0.0}}, {Complex{1.0, 0.0}})
                               : from_groups(lower);
    const auto [min_im, argmin] = min_imag_on_real_line(psi);
    if (c_im < -min_im - 1e-9 * (1.0 + std::abs(min_im))) {
        auto cert = refute(f, "constant imaginary part below -min Im psi", {argmin});
        cert.warnings.push_back("min Im psi = " + std::to_string(min_im) + " at x = " +
                                std::to_string(argmin));
        return cert;
    }

    // Density (c + Im psi(x)) / (pi (1+x^2)) as a real rational.
    namespace hp = herglotz::poly;
    const CPoly prod = hp::mul(psi.num(), hp::conjugate(psi.den()));
    Poly p(prod.size());
    for (size_t i = 0; i < prod.size(); ++i) p[i] = prod[i].imag();
    const CPoly qq = hp::mul(psi.den(), hp::conjugate(psi.den()));
    Poly q(qq.size());
    for (size_t i = 0; i < qq.size(); ++i) q[i] = qq[i].real();
    Poly dens_num = hp::trim(hp::add(hp::scale(q, c_im), p), 1e-15);
    Poly dens_den = hp::mul(hp::scale(q, kPi), {1.0, 0.0, 1.0});

    std::optional<DensitySpec> density;
    if (hp::degree(dens_num) >= 0) {
        std::vector<double> hints;
        for (const auto* g : lower)
            if (std::abs(g->location.imag()) < 0.3) hints.push_back(g->location.real());
        // Stable factored form: c + Im psi = Im((psi_num + i c psi_den) conj(psi_den)) / |psi_den|^2.
        const CPoly up = hp::add(psi.num(), hp::scale(psi.den(), Complex(0.0, c_im)));
        density = RationalDensity{std::move(dens_num), std::move(dens_den), std::move(hints),
                                  {FactoredDensityTerm{up, psi.den()}}};
    }

    EndofunctionCertificate cert;
    cert.verdict = true;
    const double alpha = f(Complex(0.0, 1.0)).real();
    cert.representation =
        HerglotzFunction{alpha, BoundaryMeasure::trusted(std::move(atoms), std::move(density))};
    cert.reason = "real poles simple and positive, c >= -min Im psi";
    for (const auto& g : raw.groups)
        if (g.location.imag() == 0.0 &&
            g.snap_residual > 1e-12 * (1.0 + std::abs(g.location.real())))
            cert.warnings.push_back("borderline pole snapped to R at " +
                                    std::to_string(g.location.real()) + " (|Im| was " +
                                    std::to_string(g.snap_residual) + ")");
    if (c_im + min_im < 1e-9)
        cert.warnings.push_back("boundary case: c + min Im psi = " + std::to_string(c_im + min_im));
    return cert;
}

EndofunctionCertificate check_rational(const RationalFunction& f) {
    return f.is_real() ? check_real_rational(f) : check_nonreal_rational(f);
}

}  // namespace herglotz
