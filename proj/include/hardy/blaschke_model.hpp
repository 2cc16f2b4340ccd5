///
/// \file blaschke_model.hpp
///
/// Finite Blaschke products, model spaces K_B = H^2 (-) B H^2, Frostman shifts
/// and Mobius conjugation.
///
/// Factor convention: a zero at a contributes (a - z) / (1 - conj(a) z), so a
/// zero at the origin contributes -z. A BlaschkeProduct is
/// phase * prod_j (a_j - z) / (1 - conj(a_j) z).
///

#ifndef HARDY_BLASCHKE_MODEL_HPP
#define HARDY_BLASCHKE_MODEL_HPP

#include <vector>

#include <hardy/hardy_core.hpp>
#include <hardy/polynomial.hpp>

namespace hardy
{

class RationalSymbol;

inline constexpr Index max_root_degree = 8;

class BlaschkeProduct
{
public:
    /// The constant 1 (degree zero).
    BlaschkeProduct() = default;

    /// Throws std::invalid_argument if |phase| != 1 (to 1e-12) or some
    /// |zero| >= 1.
    BlaschkeProduct(Complex phase, std::vector<Complex> zeros);

    /// z^d, i.e. d zeros at the origin with phase (-1)^d.
    static BlaschkeProduct monomial(Index degree);

    Complex phase() const
    {
        return m_phase;
    }

    const std::vector<Complex>& zeros() const
    {
        return m_zeros;
    }

    Index degree() const
    {
        return static_cast<Index>(m_zeros.size());
    }

    /// Same zeros, phase replaced.
    BlaschkeProduct with_phase(Complex phase) const;

    /// phase * prod_j (a_j - z)
    Polynomial numerator() const;

    /// prod_j (1 - conj(a_j) z)
    Polynomial denominator() const;

    HardyVector coefficients(Index order) const;

private:
    Complex m_phase = 1.0;
    std::vector<Complex> m_zeros;
};

/// Value at |z| <= 1 (throws std::domain_error outside the closed disk).
Complex blaschke_eval(const BlaschkeProduct& b, Complex z);

/// max over the boundary grid of ||B| - 1|.
double boundary_modulus_deviation(const BlaschkeProduct& b, Index grid_size);

///
/// Takenaka-Malmquist orthonormal basis of K_B as the columns of an
/// order x degree matrix:
///   e_k = sqrt(1 - |a_k|^2) / (1 - conj(a_k) z) * prod_{j<k} b_{a_j}(z).
/// Throws std::invalid_argument when the coefficient tail of some e_k beyond
/// `order` exceeds 1e-10.
///
CMatrix tm_basis(const BlaschkeProduct& b, Index order);

/// Distance from h to K_B (computed with tm_basis at the order of h).
double distance_to_model_space(const BlaschkeProduct& b, const HardyVector& h);

///
/// h -> conj(z) B conj(h), computed on the boundary and projected. The input
/// must lie within 1e-8 (relative) of K_B, otherwise std::invalid_argument.
///
HardyVector conjugation_c_theta(const BlaschkeProduct& b, const HardyVector& h,
                                Index oversample = 2);

/// Unimodular c minimising sum_k |target_k - c * base_k|^2 over the grid.
Complex fit_phase(const BoundaryGrid& target, const BoundaryGrid& base);

struct FrostmanShift
{
    BlaschkeProduct shifted;  ///< B_alpha = (alpha - B) / (1 - conj(alpha) B)
    HardyVector g;            ///< (1 - conj(alpha) B) / sqrt(1 - |alpha|^2)
    double fit_residual = 0;  ///< max grid deviation of B_alpha from its definition
};

///
/// Frostman shift at |alpha| < 1. The zeros of B_alpha are the roots of
/// numerator - alpha * denominator; the phase is fitted on the boundary.
/// Throws std::runtime_error when a root lands on (or within 1e-10 of) the
/// unit circle or the fit residual exceeds 1e-9.
///
FrostmanShift frostman_shift(const BlaschkeProduct& b, Complex alpha,
                             Index order);

/// Involutive disk automorphism mu(z) = (alpha - z) / (1 - conj(alpha) z).
class MobiusMap
{
public:
    explicit MobiusMap(Complex alpha);

    Complex alpha() const
    {
        return m_alpha;
    }

    Complex operator()(Complex z) const
    {
        return (m_alpha - z) / (1.0 - std::conj(m_alpha) * z);
    }

    /// sqrt(1 - |alpha|^2) / (1 - conj(alpha) z), the weight of U_mu.
    Complex weight(Complex z) const
    {
        return std::sqrt(1.0 - std::norm(m_alpha)) / (1.0 - std::conj(m_alpha) * z);
    }

private:
    Complex m_alpha;
};

/// B o mu: zeros mu(a_j), phase fitted on the boundary.
BlaschkeProduct compose_with_mobius(const BlaschkeProduct& b, const MobiusMap& mu);

///
/// U_mu f = sqrt(1 - |alpha|^2) / (1 - conj(alpha) z) * f(mu(z)), returned to
/// `order` coefficients. The grid is chosen large enough for both the input
/// order and the output order.
///
Projection mobius_conjugate_function(const HardyVector& f, const MobiusMap& mu,
                                     Index order, Index oversample = 2);

/// (f o mu) truncated to `order`, used for identities on multipliers.
Projection compose_function(const HardyVector& f, const MobiusMap& mu,
                            Index order, Index oversample = 2);

///
/// Coefficients of w = -S^*((S u) o mu), the symbol of U_mu H_u U_mu. u is
/// evaluated in closed form on the boundary; the grid grows with the decay
/// rate max_k |mu(b_k)| so that aliasing stays below double precision.
///
Projection mobius_conjugate_symbol(const RationalSymbol& sym, const MobiusMap& mu,
                                   Index order);

} // namespace hardy

#endif /* HARDY_BLASCHKE_MODEL_HPP */
