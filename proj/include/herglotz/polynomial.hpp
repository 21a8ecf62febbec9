#pragma once

#include <complex>
#include <vector>

#include "herglotz/extended.hpp"

namespace herglotz {

// Polynomials are coefficient vectors in ascending degree; an empty vector is zero.
using Poly = std::vector<double>;
using CPoly = std::vector<Complex>;

namespace poly {

int degree(const Poly& p);
int degree(const CPoly& p);

Poly trim(Poly p, double eps = 0.0);
CPoly trim(CPoly p, double eps = 0.0);

double eval(const Poly& p, double x);
Complex eval(const Poly& p, Complex z);
Complex eval(const CPoly& p, Complex z);

Poly add(const Poly& a, const Poly& b);
CPoly add(const CPoly& a, const CPoly& b);
Poly mul(const Poly& a, const Poly& b);
CPoly mul(const CPoly& a, const CPoly& b);
Poly scale(Poly p, double k);
CPoly scale(CPoly p, Complex k);

Poly derivative(const Poly& p);
CPoly derivative(const CPoly& p);

CPoly to_complex(const Poly& p);
/// Real part check: max |Im coeff| relative to the largest coefficient.
double imag_magnitude(const CPoly& p);
Poly real_part(const CPoly& p);
CPoly conjugate(const CPoly& p);

/// Quotient and remainder of a / b.
std::pair<CPoly, CPoly> divmod(const CPoly& a, const CPoly& b);

/// Synthetic division by (z - root); the remainder is dropped.
CPoly deflate(const CPoly& p, Complex root);

/// sum_k p_k (a t + b)^k (c t + d)^(n-k) for n >= deg p; clears the denominator
/// of p((a t + b)/(c t + d)).
Poly compose_moebius_cleared(const Poly& p, int n, double a, double b, double c, double d);
CPoly compose_moebius_cleared(const CPoly& p, int n, Complex a, Complex b, Complex c, Complex d);

/// All complex roots, via the companion-matrix eigenproblem.
std::vector<Complex> roots(const CPoly& p);
std::vector<Complex> roots(const Poly& p);

}  // namespace poly
}  // namespace herglotz
