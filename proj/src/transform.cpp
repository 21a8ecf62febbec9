#include "herglotz/transform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "herglotz/errors.hpp"
#include "herglotz/quadrature.hpp"

namespace herglotz {

namespace {
constexpr double kPi = std::numbers::pi;

/// Moebius image of a boundary point under a real matrix, kept on R-bar.
ExtendedReal real_moebius(double a, double b, double c, double d, const ExtendedReal& s) {
    double num, den;
    if (s.is_infinite()) {
        num = a;
        den = c;
    } else {
        num = a * s.value() + b;
        den = c * s.value() + d;
    }
    if (std::abs(den) <= 1e-13 * (std::abs(num) + std::abs(den))) return ExtendedReal::infinity();
    return ExtendedReal(num / den);
}

/// Atom weight of the real-orbit kernel: the gain p of phi_{sA} = p phi_t + q,
/// equal to (ad-bc)(1+s^2) / ((cs-a)^2 + (ds-b)^2). Scale-invariant.
double real_atom_weight(double a, double b, double c, double d, const ExtendedReal& s) {
    const double det = a * d - b * c;
    if (s.is_infinite()) return det / (c * c + d * d);
    const double sv = s.value();
    const double e1 = c * sv - a, e2 = d * sv - b;
    return det * (1.0 + sv * sv) / (e1 * e1 + e2 * e2);
}

void require_real_automatrix(const Matrix2C& m, double& a, double& b, double& c, double& d) {
    if (!m.is_real_proportional())
        throw NotRealAutomatrix("matrix is not proportional to a real one");
    m.real_entries(a, b, c, d);
    if (!(a * d - b * c > 0.0)) throw NotRealAutomatrix("real representative has det <= 0");
}

RationalDensity pushforward_rational(const RationalDensity& dens, double a, double b, double c,
                                     double d) {
    // e(t) = dens(A.t) (1 + (A.t)^2) / (1 + t^2), cleared to a polynomial
    // ratio. Every numerator term carries (ct+d)^2, which cancels the real
    // root the naive substitution would introduce.
    namespace hp = herglotz::poly;
    const Poly num = hp::trim(dens.num, 0.0);
    const Poly den = hp::trim(dens.den, 0.0);
    const int n = hp::degree(den);
    const Poly lin1{b, a}, lin2{d, c};
    const Poly lin1_sq = hp::mul(lin1, lin1);
    const Poly lin2_sq = hp::mul(lin2, lin2);
    Poly out_num = hp::mul(hp::compose_moebius_cleared(num, n - 2, a, b, c, d),
                           hp::add(lin1_sq, lin2_sq));
    const Poly one_plus_t2{1.0, 0.0, 1.0};
    Poly out_den = hp::mul(hp::compose_moebius_cleared(den, n, a, b, c, d), one_plus_t2);
    if (out_den.back() < 0.0) {
        out_num = hp::scale(std::move(out_num), -1.0);
        out_den = hp::scale(std::move(out_den), -1.0);
    }
    std::vector<double> hints;
    for (double h : dens.split_hints) {
        const ExtendedReal back = real_moebius(d, -b, -c, a, ExtendedReal(h));
        if (back.is_finite()) hints.push_back(back.value());
    }
    // Factored terms compose stably: with up, lo cleared to a common level,
    // the real (ct+d) powers cancel against the jacobian weight.
    std::vector<FactoredDensityTerm> stable;
    for (const auto& term : dens.stable) {
        const int level = std::max(hp::degree(term.up), hp::degree(term.lo));
        if (level < 0) continue;
        stable.push_back(FactoredDensityTerm{
            hp::compose_moebius_cleared(term.up, level, a, b, c, d),
            hp::compose_moebius_cleared(term.lo, level, a, b, c, d)});
    }
    return RationalDensity{hp::trim(std::move(out_num), 1e-14), hp::trim(std::move(out_den), 1e-14),
                           std::move(hints), std::move(stable)};
}

GridDensity pushforward_grid(const GridDensity& g, double a, double b, double c, double d) {
    std::vector<std::pair<double, double>> mapped;
    mapped.reserve(g.nodes.size());
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        const ExtendedReal u = real_moebius(d, -b, -c, a, ExtendedReal(g.nodes[i]));
        if (u.is_infinite()) continue;
        const double s = g.nodes[i], t = u.value();
        mapped.emplace_back(t, g.values[i] * (1.0 + s * s) / (1.0 + t * t));
    }
    std::sort(mapped.begin(), mapped.end());
    mapped.erase(std::unique(mapped.begin(), mapped.end(),
                             [](const auto& x, const auto& y) { return x.first == y.first; }),
                 mapped.end());
    if (mapped.size() < 2) throw InvalidMeasure("grid pushforward collapsed");
    GridDensity out;
    for (const auto& [t, v] : mapped) {
        out.nodes.push_back(t);
        out.values.push_back(v);
    }
    // New tail: t -> inf corresponds to s -> A.inf.
    if (std::abs(c) < 1e-13) {
        out.tail = g.tail;
    } else {
        const double pole = a / c;
        out.tail = kPi * (1.0 + pole * pole) * density_value(g, pole);
    }
    return out;
}
}  // namespace

BoundaryMeasure pushforward_real(const BoundaryMeasure& lambda, const Matrix2C& m) {
    double a, b, c, d;
    require_real_automatrix(m, a, b, c, d);
    std::vector<BoundaryMeasure::Atom> atoms;
    for (const auto& atom : lambda.atoms()) {
        const ExtendedReal t = real_moebius(d, -b, -c, a, atom.location);
        atoms.push_back({t, atom.mass * real_atom_weight(a, b, c, d, atom.location)});
    }
    std::optional<DensitySpec> density;
    if (lambda.density()) {
        if (const auto* r = std::get_if<RationalDensity>(&*lambda.density()))
            density = pushforward_rational(*r, a, b, c, d);
        else
            density = pushforward_grid(std::get<GridDensity>(*lambda.density()), a, b, c, d);
    }
    return BoundaryMeasure::trusted(std::move(atoms), std::move(density));
}

BoundaryMeasure mu_family(const Endomatrix& m, const ExtendedReal& s) {
    if (m.is_real_orbit()) {
        double a, b, c, d;
        m.matrix().real_entries(a, b, c, d);
        const double det = a * d - b * c;
        const double sgn = det > 0.0 ? 1.0 : -1.0;  // representative sign is projective
        const ExtendedReal t = real_moebius(sgn * d, sgn * -b, sgn * -c, sgn * a, s);
        const double w = real_atom_weight(sgn * a, sgn * b, sgn * c, sgn * d, s);
        return BoundaryMeasure::trusted({{t, w}}, std::nullopt, w);
    }
    // Unbounded contact configuration: s on M.(R-bar).
    try {
        const ContactDecomposition dec = contact_decompose(m, s);
        std::vector<BoundaryMeasure::Atom> atoms{{dec.t, dec.p}};
        std::optional<DensitySpec> density;
        const double imq = dec.q.imag();
        if (imq > 1e-14)
            density = RationalDensity{{imq / kPi},
                                      {1.0, 0.0, 1.0},
                                      {},
                                      {FactoredDensityTerm{{Complex(0.0, imq)}, {Complex(1.0, 0.0)}}}};
        return BoundaryMeasure::trusted(std::move(atoms), std::move(density),
                                        dec.p + std::max(0.0, imq));
    } catch (const NotUnboundedCase&) {
        // Bounded image: pure rational density Im phi_{sM}(x) / (pi (1+x^2)).
    }
    const Matrix2C ms = left_translate(m.matrix(), s);
    const Complex A = ms.a(), B = ms.b(), C = ms.c(), D = ms.d();
    Poly num{(B * std::conj(D)).imag(), (A * std::conj(D)).imag() + (B * std::conj(C)).imag(),
             (A * std::conj(C)).imag()};
    const Poly quad{std::norm(D), 2.0 * (C * std::conj(D)).real(), std::norm(C)};
    const Poly cauchy_den{kPi, 0.0, kPi};
    Poly den = poly::mul(quad, cauchy_den);
    num = poly::trim(std::move(num), 1e-16);
    std::vector<double> hints;
    if (std::abs(C) > 1e-12) {
        // A panel boundary at the peak whenever the pole is chordally close to
        // R-bar; the absolute Im part alone misses far-out peaks that are
        // razor thin in the compactified angle.
        const Complex pole = -D / C;
        if (std::abs(pole.imag()) < 0.05 * (1.0 + std::norm(pole))) hints.push_back(pole.real());
    }
    const ExtComplex mi = moebius_apply(m.matrix(), ExtComplex(Complex(0.0, 1.0)));
    const double mass = eval_atomic(s, mi.value()).imag();
    return BoundaryMeasure::trusted(
        {},
        RationalDensity{std::move(num), std::move(den), std::move(hints),
                        {FactoredDensityTerm{{B, A}, {D, C}}}},
        mass);
}

Complex markov_apply(const Endomatrix& m, const BoundaryFunction& f, const ExtendedReal& s,
                     double tol) {
    return integrate(mu_family(m, s), f, tol);
}

std::vector<Complex> markov_apply_grid(const Endomatrix& m, const BoundaryFunction& f,
                                       const std::vector<ExtendedReal>& grid, double tol,
                                       ExecPolicy policy) {
    std::vector<Complex> out(grid.size());
    parallel_for(grid.size(), policy, [&](size_t i) { out[i] = markov_apply(m, f, grid[i], tol); });
    return out;
}


namespace {
/// Density of the transformed measure at node x, for non-real M:
/// Im phi_dens(M.x) / (pi (1+x^2)) with the Poisson limit at tangency points.
double transformed_density_value(const HerglotzFunction& dens_part, const DensitySpec& dens,
                                 const Matrix2C& m, double x, double tol) {
    const ExtComplex w = moebius_apply(m, ExtComplex(Complex(x, 0.0)));
    const double denom = kPi * (1.0 + x * x);
    if (w.is_infinite()) return density_tail_constant(dens) / denom;
    const Complex wv = w.value();
    if (wv.imag() <= 1e-12) {
        const double u = wv.real();
        return (1.0 + u * u) * density_value(dens, u) / (1.0 + x * x);
    }
    return eval(dens_part, wv, tol).imag() / denom;
}

RationalDensity sum_rational(const std::vector<RationalDensity>& parts) {
    namespace hp = herglotz::poly;
    Poly den{1.0};
    for (const auto& p : parts) den = hp::mul(den, p.den);
    Poly num;
    std::vector<double> hints;
    std::vector<FactoredDensityTerm> stable;
    bool all_stable = true;
    for (size_t i = 0; i < parts.size(); ++i) {
        Poly term = parts[i].num;
        for (size_t j = 0; j < parts.size(); ++j)
            if (j != i) term = hp::mul(term, parts[j].den);
        num = hp::add(num, term);
        hints.insert(hints.end(), parts[i].split_hints.begin(), parts[i].split_hints.end());
        if (parts[i].stable.empty())
            all_stable = false;
        else
            stable.insert(stable.end(), parts[i].stable.begin(), parts[i].stable.end());
    }
    if (!all_stable) stable.clear();
    return RationalDensity{hp::trim(std::move(num), 1e-15), hp::trim(std::move(den), 1e-15),
                           std::move(hints), std::move(stable)};
}

/// The Herglotz transform of a rational density, Phi(w) = integral of
/// phi_s(w) d(s) ds for w in C+, is itself rational: closing the contour
/// downward picks up only the residues at the lower-half-plane poles of d.
/// With G_p(s) = d(s) (s-p)^m and Taylor coefficients delta_i of G_p at p,
///   Res_{s=p} phi_s(w) d(s) = delta_{m-1} w + (1+w^2) sum_j (-1)^j
///                             delta_{m-1-j} / (p-w)^{j+1},
/// so Phi(w) = -2 pi i sum_p Res_p, a rational function with denominator
/// prod_p (p-w)^{m_p}. Composing with w = M.x and taking the imaginary part
/// on R gives the transformed density exactly.
struct RationalHerglotzTransform {
    CPoly num;  // Phi = num/den on C+
    CPoly den;
};

RationalHerglotzTransform herglotz_transform_of(const RationalDensity& dens) {
    namespace hp = herglotz::poly;
    const CPoly p_c = hp::to_complex(hp::trim(dens.num, 0.0));
    const CPoly q_c = hp::to_complex(hp::trim(dens.den, 0.0));

    // Cluster the lower-half-plane roots of the denominator.
    std::vector<Complex> roots = hp::roots(q_c);
    std::vector<std::pair<Complex, int>> lower;
    std::vector<char> used(roots.size(), 0);
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i] || roots[i].imag() >= 0.0) continue;
        Complex center = roots[i];
        int mult = 1;
        used[i] = 1;
        for (size_t j = i + 1; j < roots.size(); ++j) {
            if (used[j] || roots[j].imag() >= 0.0) continue;
            if (std::abs(roots[j] - roots[i]) < 1e-7 * (1.0 + std::abs(roots[i]))) {
                center += roots[j];
                used[j] = 1;
                ++mult;
            }
        }
        lower.emplace_back(center / static_cast<double>(mult), mult);
    }

    // den(w) = prod (p - w)^m
    CPoly den{Complex{1.0, 0.0}};
    for (const auto& [p, m] : lower)
        for (int r = 0; r < m; ++r) den = hp::mul(den, {p, Complex{-1.0, 0.0}});

    const Complex minus_2pii{0.0, -2.0 * kPi};
    CPoly num;
    for (const auto& [p, m] : lower) {
        // Taylor coefficients of G_p = num / (den / (s-p)^m) at p by series division.
        CPoly rest = q_c;
        for (int r = 0; r < m; ++r) rest = hp::deflate(rest, p);
        // Taylor shift via repeated synthetic division.
        auto shift = [](CPoly poly, Complex at) {
            CPoly out;
            while (!poly.empty()) {
                Complex carry{0.0, 0.0};
                CPoly quot(poly.size() > 1 ? poly.size() - 1 : 0);
                for (size_t i = poly.size(); i-- > 0;) {
                    const Complex coef = poly[i] + carry * at;
                    if (i > 0)
                        quot[i - 1] = coef;
                    else
                        out.push_back(coef);
                    carry = coef;
                }
                poly = std::move(quot);
            }
            return out;
        };
        const CPoly num_series = shift(p_c, p);
        const CPoly rest_series = shift(rest, p);
        std::vector<Complex> delta(static_cast<size_t>(m), Complex{});
        for (int j = 0; j < m; ++j) {
            Complex acc = j < static_cast<int>(num_series.size()) ? num_series[static_cast<size_t>(j)]
                                                                  : Complex{};
            for (int l = 0; l < j; ++l)
                acc -= delta[static_cast<size_t>(l)] *
                       (j - l < static_cast<int>(rest_series.size())
                            ? rest_series[static_cast<size_t>(j - l)]
                            : Complex{});
            delta[static_cast<size_t>(j)] = acc / rest_series[0];
        }
        // den with (p-w)^{j+1} removed, as a polynomial factor.
        CPoly deflated = den;
        for (int j = 0; j < m; ++j) {
            // deflated currently = den / (p-w)^j; strip one more (p - w).
            // (p - w) has root w = p with leading coefficient -1.
            deflated = hp::scale(hp::deflate(deflated, p), Complex{-1.0, 0.0});
            const Complex coef = minus_2pii * (j % 2 == 0 ? 1.0 : -1.0) *
                                 delta[static_cast<size_t>(m - 1 - j)];
            // (1+w^2) * coef * deflated
            num = hp::add(num, hp::scale(hp::mul({Complex{1.0, 0.0}, Complex{0.0, 0.0}, Complex{1.0, 0.0}},
                                                 deflated),
                                         coef));
        }
        // the linear term delta_{m-1} w over the full denominator
        num = hp::add(num, hp::scale(hp::mul({Complex{0.0, 0.0}, Complex{1.0, 0.0}}, den),
                                     minus_2pii * delta[static_cast<size_t>(m - 1)]));
    }
    // Phi is bounded at infinity, so the top coefficient cancels; trim it.
    num = hp::trim(std::move(num), 1e-10);
    if (hp::degree(num) > hp::degree(den)) num.resize(den.size());
    return {std::move(num), std::move(den)};
}

/// Exact transformed density of the density part of lambda under a non-real
/// endomatrix: Im Phi(M.x) / (pi (1+x^2)) as a real rational function.
RationalDensity transform_rational_density(const RationalDensity& dens, const Matrix2C& m) {
    namespace hp = herglotz::poly;
    const auto phi = herglotz_transform_of(dens);
    const int level = hp::degree(phi.den);
    const CPoly nstar =
        hp::compose_moebius_cleared(phi.num, level, m.a(), m.b(), m.c(), m.d());
    const CPoly dstar =
        hp::compose_moebius_cleared(phi.den, level, m.a(), m.b(), m.c(), m.d());
    const CPoly cross = hp::mul(nstar, hp::conjugate(dstar));
    Poly num(cross.size());
    for (size_t i = 0; i < cross.size(); ++i) num[i] = cross[i].imag();
    const CPoly densq = hp::mul(dstar, hp::conjugate(dstar));
    Poly habs(densq.size());
    for (size_t i = 0; i < densq.size(); ++i) habs[i] = densq[i].real();
    const Poly one_plus_x2{1.0, 0.0, 1.0};
    Poly den = hp::mul(hp::scale(habs, kPi), one_plus_x2);
    return RationalDensity{hp::trim(std::move(num), 1e-14), hp::trim(std::move(den), 1e-14),
                           {},
                           {FactoredDensityTerm{nstar, dstar}}};
}

/// Output nodes for the grid density. Piecewise-linear interpolation of a
/// Cauchy-type tail needs spacing proportional to (1+s^2)^(2/3) for the L1
/// error to be equidistributed; uniform tangent spacing would concentrate all
/// the error in the outermost intervals.
std::vector<double> transform_output_nodes(double step) {
    std::vector<double> half{0.0};
    double s = 0.0;
    while (true) {
        s += step * std::pow(1.0 + s * s, 2.0 / 3.0);
        if (s > 1e5 || half.size() > 60000) break;
        half.push_back(s);
    }
    std::vector<double> nodes;
    nodes.reserve(2 * half.size());
    for (size_t i = half.size(); i-- > 1;) nodes.push_back(-half[i]);
    for (double v : half) nodes.push_back(v);
    return nodes;
}
}  // namespace

TransformedRepresentation transform_measure(const BoundaryMeasure& lambda, double alpha,
                                            const Endomatrix& m, double tol, ExecPolicy policy) {
    const ExtComplex mi_e = moebius_apply(m.matrix(), ExtComplex(Complex(0.0, 1.0)));
    const Complex mi = mi_e.value();
    // One pass gives both the constant shift (real part) and the total mass of
    // the output (imaginary part).
    const Complex moments =
        integrate(lambda, [mi](const ExtendedReal& s) { return eval_atomic(s, mi); }, tol * 0.25);
    const double alpha_m = alpha + moments.real();
    const double mass_m = moments.imag();

    if (m.is_real_orbit())
        return {alpha_m, pushforward_real(lambda, m.matrix())};

    std::vector<BoundaryMeasure::Atom> atoms;
    std::vector<RationalDensity> rational_parts;
    for (const auto& atom : lambda.atoms()) {
        const BoundaryMeasure mu = mu_family(m, atom.location);
        for (const auto& out : mu.atoms()) atoms.push_back({out.location, atom.mass * out.mass});
        if (mu.density()) {
            RationalDensity part = std::get<RationalDensity>(*mu.density());
            part.num = poly::scale(std::move(part.num), atom.mass);
            for (auto& term : part.stable) term.up = poly::scale(std::move(term.up), atom.mass);
            rational_parts.push_back(std::move(part));
        }
    }

    // The density part contributes no atoms: mu_{sM} has one only on the
    // measure-zero tangency locus s = M.t. Rational densities transform to
    // exact rational densities through the residue form of their Herglotz
    // transform; grid densities are resampled onto a fresh grid.
    std::optional<GridDensity> grid_part;
    if (lambda.density()) {
        const DensitySpec& dens = *lambda.density();
        if (const auto* rd = std::get_if<RationalDensity>(&dens)) {
            rational_parts.push_back(transform_rational_density(*rd, m.matrix()));
        } else {
            const HerglotzFunction dens_part{0.0, BoundaryMeasure::trusted({}, dens)};
            const double scale = std::max(1.0, lambda.total_mass());
            const double step = std::sqrt(std::max(tol, 1e-12) / scale);
            GridDensity grid;
            grid.nodes = transform_output_nodes(step);
            grid.values.resize(grid.nodes.size());
            const double node_tol = tol * 0.125;
            const Matrix2C mat = m.matrix();
            parallel_for(grid.nodes.size(), policy, [&](size_t k) {
                grid.values[k] = std::max(
                    0.0, transformed_density_value(dens_part, dens, mat, grid.nodes[k], node_tol));
            });
            const ExtComplex winf = moebius_apply(mat, ExtComplex::infinity());
            if (winf.is_infinite())
                grid.tail = density_tail_constant(dens);
            else if (winf.value().imag() <= 1e-12) {
                const double u = winf.value().real();
                grid.tail = kPi * (1.0 + u * u) * density_value(dens, u);
            } else {
                grid.tail = std::max(0.0, eval(dens_part, winf.value(), node_tol).imag());
            }
            grid_part = std::move(grid);
        }
    }

    std::optional<DensitySpec> density;
    if (grid_part) {
        // The data model holds one density, so exact rational components are
        // folded onto the grid here (narrow kernel peaks lose resolution; the
        // all-rational path above avoids this whenever the input allows).
        if (!rational_parts.empty()) {
            const RationalDensity rat = sum_rational(rational_parts);
            for (size_t k = 0; k < grid_part->nodes.size(); ++k)
                grid_part->values[k] += std::max(0.0, density_value(rat, grid_part->nodes[k]));
            grid_part->tail += density_tail_constant(DensitySpec(rat));
        }
        density = std::move(*grid_part);
    } else if (!rational_parts.empty()) {
        density = sum_rational(rational_parts);
    }
    return {alpha_m, BoundaryMeasure::trusted(std::move(atoms), std::move(density), mass_m)};
}

double semigroup_check(const Endomatrix& m, const Endomatrix& n, const BoundaryFunction& f,
                       const std::vector<ExtendedReal>& grid, double tol, ExecPolicy policy) {
    const Endomatrix mn(m.matrix() * n.matrix());
    // The outer adaptive pass cannot certify below the jitter of the inner
    // values, so the inner tolerance sits three decades under the outer one.
    const double inner_tol = std::max(tol * 1e-3, 1e-13);
    std::vector<double> deviation(grid.size());
    parallel_for(grid.size(), policy, [&](size_t i) {
        const Complex lhs = markov_apply(mn, f, grid[i], tol);
        const BoundaryFunction inner = [&](const ExtendedReal& t) {
            return markov_apply(n, f, t, inner_tol);
        };
        const Complex rhs = integrate(mu_family(m, grid[i]), inner, tol);
        deviation[i] = std::abs(lhs - rhs);
    });
    double worst = 0.0;
    for (double d : deviation) worst = std::max(worst, d);
    return worst;
}

}  // namespace herglotz
