///
/// \file polynomial.hpp
///
/// Small dense polynomial helpers. Coefficients are stored in ascending order,
/// p(z) = c[0] + c[1] z + ... + c[n] z^n.
///

#ifndef HARDY_POLYNOMIAL_HPP
#define HARDY_POLYNOMIAL_HPP

#include <vector>

#include <hardy/hardy_core.hpp>

namespace hardy
{

using Polynomial = std::vector<Complex>;

Polynomial poly_multiply(const Polynomial& a, const Polynomial& b);

/// scale * prod_j (roots[j] - z).
Polynomial poly_from_factors(const std::vector<Complex>& roots, Complex scale);

Complex poly_eval(const Polynomial& p, Complex z);

///
/// Roots of p as eigenvalues of the companion matrix. Trailing zero
/// coefficients (degree drop) are stripped first; zero roots are deflated
/// exactly. Throws std::invalid_argument for the zero polynomial.
///
std::vector<Complex> poly_roots(Polynomial p);

/// First `order` Taylor coefficients of num / den, den[0] != 0.
HardyVector series_quotient(const Polynomial& num, const Polynomial& den,
                            Index order);

} // namespace hardy

#endif /* HARDY_POLYNOMIAL_HPP */
