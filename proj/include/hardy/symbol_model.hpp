///
/// \file symbol_model.hpp
///
/// Rational symbols u(z) = poly(z) + sum_k c_k / (1 - conj(b_k) z)^{m_k} with
/// every |b_k| < 1. Their Hankel operators have finite rank (Kronecker) and
/// their Fourier coefficients are available in closed form.
///

#ifndef HARDY_SYMBOL_MODEL_HPP
#define HARDY_SYMBOL_MODEL_HPP

#include <vector>

#include <hardy/hardy_core.hpp>

namespace hardy
{

class BlaschkeProduct;

struct PoleTerm
{
    Complex b;  ///< |b| < 1; the pole itself sits at 1 / conj(b)
    int m = 1;  ///< multiplicity, 1 <= m <= 4
    Complex c;  ///< coefficient
};

inline constexpr int max_pole_multiplicity = 4;

class RationalSymbol
{
public:
    /// The zero symbol.
    RationalSymbol() = default;

    /// Throws std::invalid_argument naming the offending pole when |b| >= 1 or
    /// the multiplicity is outside [1, 4].
    RationalSymbol(std::vector<Complex> poly, std::vector<PoleTerm> poles);

    /// A raw coefficient list, treated as a polynomial symbol.
    static RationalSymbol from_coefficients(const HardyVector& coeffs);

    const std::vector<Complex>& poly() const
    {
        return m_poly;
    }

    const std::vector<PoleTerm>& poles() const
    {
        return m_poles;
    }

    bool is_zero() const;

    /// Closed-form value, valid on the closed unit disk.
    Complex operator()(Complex z) const;

    /// Degree of the polynomial part, -1 for an empty polynomial part.
    Index poly_degree() const;

    /// Upper bound for rank H_u: (deg(poly) + 1) + sum_k m_k.
    Index kronecker_rank_bound() const;

private:
    std::vector<Complex> m_poly;
    std::vector<PoleTerm> m_poles;
};

/// u_hat(n) for 0 <= n < order.
HardyVector fourier_coefficients(const RationalSymbol& sym, Index order);

/// l2 norm bound of (u_hat(n))_{n >= order}; sum of per-term bounds.
double tail_bound(const RationalSymbol& sym, Index order);

///
/// Rational form of u = S^* theta. Pole terms are recovered by a least-squares
/// partial-fraction fit against the exact Taylor coefficients of theta over
/// max(2 * order, 64) coefficients; throws std::runtime_error if the fit does
/// not reproduce them to 1e-10 (relative), and std::invalid_argument when a
/// zero has multiplicity above 4.
///
RationalSymbol symbol_from_inner(const BlaschkeProduct& theta, Index order);

} // namespace hardy

#endif /* HARDY_SYMBOL_MODEL_HPP */
