#include "herglotz/polynomial.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "herglotz/errors.hpp"

namespace herglotz::poly {

namespace {
template <typename T>
int degree_impl(const std::vector<T>& p) {
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
        if (std::abs(p[static_cast<size_t>(i)]) != 0.0) return i;
    return -1;
}

template <typename T>
std::vector<T> trim_impl(std::vector<T> p, double eps) {
    double scale = 0.0;
    for (const auto& c : p) scale = std::max(scale, std::abs(c));
    while (!p.empty() && std::abs(p.back()) <= eps * scale) p.pop_back();
    return p;
}

template <typename T, typename X>
auto eval_impl(const std::vector<T>& p, X x) {
    using R = decltype(T{} * x);
    R acc{};
    for (size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

template <typename T>
std::vector<T> add_impl(const std::vector<T>& a, const std::vector<T>& b) {
    std::vector<T> r(std::max(a.size(), b.size()), T{});
    for (size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

template <typename T>
std::vector<T> mul_impl(const std::vector<T>& a, const std::vector<T>& b) {
    if (a.empty() || b.empty()) return {};
    std::vector<T> r(a.size() + b.size() - 1, T{});
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

template <typename T>
std::vector<T> derivative_impl(const std::vector<T>& p) {
    if (p.size() <= 1) return {};
    std::vector<T> r(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) r[i - 1] = p[i] * static_cast<double>(i);
    return r;
}
}  // namespace

int degree(const Poly& p) { return degree_impl(p); }
int degree(const CPoly& p) { return degree_impl(p); }

Poly trim(Poly p, double eps) { return trim_impl(std::move(p), eps); }
CPoly trim(CPoly p, double eps) { return trim_impl(std::move(p), eps); }

double eval(const Poly& p, double x) { return eval_impl(p, x); }
Complex eval(const Poly& p, Complex z) { return eval_impl(p, z); }
Complex eval(const CPoly& p, Complex z) { return eval_impl(p, z); }

Poly add(const Poly& a, const Poly& b) { return add_impl(a, b); }
CPoly add(const CPoly& a, const CPoly& b) { return add_impl(a, b); }
Poly mul(const Poly& a, const Poly& b) { return mul_impl(a, b); }
CPoly mul(const CPoly& a, const CPoly& b) { return mul_impl(a, b); }

Poly scale(Poly p, double k) {
    for (auto& c : p) c *= k;
    return p;
}
CPoly scale(CPoly p, Complex k) {
    for (auto& c : p) c *= k;
    return p;
}

Poly derivative(const Poly& p) { return derivative_impl(p); }
CPoly derivative(const CPoly& p) { return derivative_impl(p); }

CPoly to_complex(const Poly& p) { return CPoly(p.begin(), p.end()); }

double imag_magnitude(const CPoly& p) {
    double scale = 0.0, im = 0.0;
    for (const auto& c : p) {
        scale = std::max(scale, std::abs(c));
        im = std::max(im, std::abs(c.imag()));
    }
    return scale > 0.0 ? im / scale : 0.0;
}

Poly real_part(const CPoly& p) {
    Poly r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[i] = p[i].real();
    return r;
}

CPoly conjugate(const CPoly& p) {
    CPoly r(p.size());
    for (size_t i = 0; i < p.size(); ++i) r[i] = std::conj(p[i]);
    return r;
}

std::pair<CPoly, CPoly> divmod(const CPoly& a, const CPoly& b) {
    CPoly num = trim(a, 0.0), den = trim(b, 0.0);
    if (den.empty()) throw std::invalid_argument("polynomial division by zero");
    const int dn = degree(num), dd = degree(den);
    if (dn < dd) return {{}, num};
    CPoly q(static_cast<size_t>(dn - dd) + 1, Complex{});
    CPoly r = num;
    for (int k = dn - dd; k >= 0; --k) {
        Complex coef = r[static_cast<size_t>(k + dd)] / den.back();
        q[static_cast<size_t>(k)] = coef;
        for (int j = 0; j <= dd; ++j) r[static_cast<size_t>(k + j)] -= coef * den[static_cast<size_t>(j)];
    }
    r.resize(static_cast<size_t>(std::max(dd, 1)));
    return {trim(std::move(q), 0.0), trim(std::move(r), 1e-14)};
}

CPoly deflate(const CPoly& p, Complex root) {
    const int d = degree(p);
    if (d < 1) return {};
    CPoly q(static_cast<size_t>(d), Complex{});
    Complex carry = p[static_cast<size_t>(d)];
    for (int i = d - 1; i >= 0; --i) {
        q[static_cast<size_t>(i)] = carry;
        carry = p[static_cast<size_t>(i)] + carry * root;
    }
    return q;
}

namespace {
template <typename T>
std::vector<T> compose_cleared_impl(const std::vector<T>& p, int n, T a, T b, T c, T d) {
    const std::vector<T> lin1{b, a};  // a t + b
    const std::vector<T> lin2{d, c};  // c t + d
    std::vector<std::vector<T>> pow1(static_cast<size_t>(n) + 1), pow2(static_cast<size_t>(n) + 1);
    pow1[0] = {T{1.0}};
    pow2[0] = {T{1.0}};
    for (int k = 1; k <= n; ++k) {
        pow1[static_cast<size_t>(k)] = mul_impl(pow1[static_cast<size_t>(k - 1)], lin1);
        pow2[static_cast<size_t>(k)] = mul_impl(pow2[static_cast<size_t>(k - 1)], lin2);
    }
    std::vector<T> acc;
    for (int k = 0; k <= n && k < static_cast<int>(p.size()); ++k) {
        if (std::abs(p[static_cast<size_t>(k)]) == 0.0) continue;
        auto term = mul_impl(pow1[static_cast<size_t>(k)], pow2[static_cast<size_t>(n - k)]);
        for (auto& coef : term) coef *= p[static_cast<size_t>(k)];
        acc = add_impl(acc, term);
    }
    return acc;
}
}  // namespace

Poly compose_moebius_cleared(const Poly& p, int n, double a, double b, double c, double d) {
    return compose_cleared_impl<double>(p, n, a, b, c, d);
}

CPoly compose_moebius_cleared(const CPoly& p, int n, Complex a, Complex b, Complex c, Complex d) {
    return compose_cleared_impl<Complex>(p, n, a, b, c, d);
}

std::vector<Complex> roots(const CPoly& p_in) {
    CPoly p = trim(p_in, 1e-300);
    const int d = degree(p);
    if (d <= 0) return {};
    if (d == 1) return {-p[0] / p[1]};
    // Monic companion matrix; Eigen's Schur decomposition handles balancing.
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -p[static_cast<size_t>(i)] / p[static_cast<size_t>(d)];
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw RootFindingFailure("companion-matrix eigensolver failed (degree " + std::to_string(d) + ")");
    std::vector<Complex> out(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) out[static_cast<size_t>(i)] = solver.eigenvalues()(i);
    std::sort(out.begin(), out.end(), [](Complex x, Complex y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    return out;
}

std::vector<Complex> roots(const Poly& p) { return roots(to_complex(p)); }

}  // namespace herglotz::poly
