///
/// \file hankel_ops.hpp
///
/// Truncated Hankel matrices Gamma_{nm} = u_hat(n + m) and the operators they
/// realise on H^2:
///
///   H_u f = P(u conj(f))  ->  Gamma * conj(f)      (anti-linear)
///   G_u f = P(u J f)      ->  Gamma * f            (linear, G_u = H_u C)
///   H_u^2                 ->  Gamma * conj(Gamma)  (= Gamma Gamma^*)
///

#ifndef HARDY_HANKEL_OPS_HPP
#define HARDY_HANKEL_OPS_HPP

#include <hardy/hardy_core.hpp>
#include <hardy/symbol_model.hpp>

namespace hardy
{

class HankelMatrix
{
public:
    HankelMatrix() = default;

    /// From at least 2N - 1 symbol coefficients.
    static HankelMatrix from_coefficients(const HardyVector& coeffs, Index order,
                                          double tail = 0.0);

    Index order() const
    {
        return m_entries.rows();
    }

    const CMatrix& entries() const
    {
        return m_entries;
    }

    /// Truncation bound of the symbol coefficients beyond the window.
    double tail() const
    {
        return m_tail;
    }

    /// Copy with Gamma(0, 1) shifted by eps: breaks the symmetry, for fault
    /// injection in the verification suite.
    HankelMatrix with_asymmetric_perturbation(double eps) const;

private:
    CMatrix m_entries;
    double m_tail = 0.0;
};

HankelMatrix build_hankel_matrix(const RationalSymbol& sym, Index order);

/// Gamma * conj(f)
HardyVector hankel_apply(const HankelMatrix& gamma, const HardyVector& f);

/// Gamma * conj(Gamma), Hermitian positive semidefinite.
CMatrix hankel_square(const HankelMatrix& gamma);

/// Gamma * f
HardyVector linear_hankel_apply(const HankelMatrix& gamma, const HardyVector& f);

/// (C f)(z) = conj(f(conj(z))): entrywise conjugation of coefficients.
HardyVector conjugation_C(const HardyVector& f);

/// Boundary route for H_u f: sample u and conj(f), multiply, project.
Projection hankel_apply_boundary(const RationalSymbol& sym, const HardyVector& f,
                                 Index oversample = 2);

/// Spectral norm.
double operator_norm(const CMatrix& a);

/// Lower-triangular Toeplitz matrix of multiplication by an analytic p.
CMatrix analytic_toeplitz(const HardyVector& p, Index rows, Index cols);

struct IdentityResiduals
{
    double shift_intertwining = 0;  ///< S^* H_u = H_u S
    double square_shift       = 0;  ///< S^* H_u^2 S = H_u^2 - (., u) u
    double commutator         = 0;  ///< S^* H_u^2 - H_u^2 S^* = (.,1) S^* H_u u - (., S u) u
    double symmetry           = 0;  ///< (H_u f, g) = (H_u g, f)
    double toeplitz           = 0;  ///< S^* T_v S = T_v
    double tail               = 0;
    double threshold          = 0;  ///< max(1e-10, 10 * tail)

    bool pass() const
    {
        return shift_intertwining <= threshold && square_shift <= threshold &&
               commutator <= threshold && symmetry <= threshold &&
               toeplitz <= threshold;
    }
};

///
/// Operator-norm residuals of the Hankel identities on interior blocks (size
/// N - 1 for one shift, N - 2 for two). `u` is the symbol coefficient vector
/// (at least N entries); the Toeplitz relation uses T_u.
///
IdentityResiduals identity_residuals(const HankelMatrix& gamma, const HardyVector& u);

IdentityResiduals identity_residuals(const RationalSymbol& sym, Index order);

} // namespace hardy

#endif /* HARDY_HANKEL_OPS_HPP */
