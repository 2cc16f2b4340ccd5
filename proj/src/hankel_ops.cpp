#include <hardy/hankel_ops.hpp>

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace hardy
{

HankelMatrix HankelMatrix::from_coefficients(const HardyVector& coeffs, Index order,
                                             double tail)
{
    if (order > 0 && coeffs.order() < 2 * order - 1)
    {
        throw std::invalid_argument(
            "HankelMatrix: need at least 2N - 1 symbol coefficients");
    }
    HankelMatrix h;
    h.m_entries.resize(order, order);
    for (Index m = 0; m < order; ++m)
    {
        for (Index n = 0; n < order; ++n)
        {
            h.m_entries(n, m) = coeffs[n + m];
        }
    }
    h.m_tail = tail;
    return h;
}

HankelMatrix HankelMatrix::with_asymmetric_perturbation(double eps) const
{
    HankelMatrix h = *this;
    if (order() >= 2)
    {
        h.m_entries(0, 1) += eps;
    }
    return h;
}

HankelMatrix build_hankel_matrix(const RationalSymbol& sym, Index order)
{
    const Index len = std::max<Index>(2 * order - 1, 0);
    return HankelMatrix::from_coefficients(fourier_coefficients(sym, len), order,
                                           tail_bound(sym, order));
}

HardyVector hankel_apply(const HankelMatrix& gamma, const HardyVector& f)
{
    if (f.order() != gamma.order())
    {
        throw std::invalid_argument("hankel_apply: order mismatch");
    }
    return HardyVector(gamma.entries() * f.coeffs().conjugate());
}

CMatrix hankel_square(const HankelMatrix& gamma)
{
    return gamma.entries() * gamma.entries().conjugate();
}

HardyVector linear_hankel_apply(const HankelMatrix& gamma, const HardyVector& f)
{
    if (f.order() != gamma.order())
    {
        throw std::invalid_argument("linear_hankel_apply: order mismatch");
    }
    return HardyVector(gamma.entries() * f.coeffs());
}

HardyVector conjugation_C(const HardyVector& f)
{
    return HardyVector(CVector(f.coeffs().conjugate()));
}

Projection hankel_apply_boundary(const RationalSymbol& sym, const HardyVector& f,
                                 Index oversample)
{
    const Index m         = default_grid_size(f.order(), oversample);
    const BoundaryGrid fs = sample(f, m);
    const auto pts        = grid_points(m);
    BoundaryGrid g;
    g.samples.resize(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k)
    {
        g.samples[k] = sym(pts[k]) * std::conj(fs.samples[k]);
    }
    return boundary_to_coefficients(g, f.order());
}

double operator_norm(const CMatrix& a)
{
    if (a.size() == 0)
    {
        return 0.0;
    }
    const CMatrix gram = a.rows() >= a.cols() ? CMatrix(a.adjoint() * a)
                                              : CMatrix(a * a.adjoint());
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(gram, Eigen::EigenvaluesOnly);
    return std::sqrt(std::max(solver.eigenvalues().maxCoeff(), 0.0));
}

CMatrix analytic_toeplitz(const HardyVector& p, Index rows, Index cols)
{
    CMatrix t = CMatrix::Zero(rows, cols);
    for (Index k = 0; k < cols; ++k)
    {
        const Index len = std::min(rows - k, p.order());
        if (len > 0)
        {
            t.col(k).segment(k, len) = p.coeffs().head(len);
        }
    }
    return t;
}

IdentityResiduals identity_residuals(const HankelMatrix& gamma, const HardyVector& u)
{
    const Index n = gamma.order();
    if (u.order() < n)
    {
        throw std::invalid_argument("identity_residuals: symbol vector too short");
    }
    IdentityResiduals r;
    r.tail      = gamma.tail();
    r.threshold = std::max(1e-10, 10.0 * r.tail);
    if (n < 3)
    {
        r.symmetry = operator_norm(gamma.entries() - gamma.entries().transpose());
        return r;
    }
    const CMatrix& g = gamma.entries();
    const CVector uu = u.coeffs().head(n);

    // S^* H_u f = Gamma_{n+1, m} conj(f_m),  H_u S f = Gamma_{n, m+1} conj(f_m)
    r.shift_intertwining =
        operator_norm(g.block(1, 0, n - 1, n - 1) - g.block(0, 1, n - 1, n - 1));

    const CMatrix a = hankel_square(gamma);
    const Index k   = n - 2;
    {
        const CMatrix lhs = a.block(1, 1, k, k);
        const CMatrix rhs = a.block(0, 0, k, k) - uu.head(k) * uu.head(k).adjoint();
        r.square_shift    = operator_norm(lhs - rhs);
    }
    {
        const CVector hu = g * uu.conjugate();  // H_u u
        CMatrix lhs      = a.block(1, 0, k, k);
        lhs.rightCols(k - 1) -= a.block(0, 0, k, k - 1);
        CMatrix rhs  = CMatrix::Zero(k, k);
        rhs.col(0)   = hu.segment(1, k);
        rhs.rightCols(k - 1) -= uu.head(k) * uu.head(k - 1).adjoint();
        r.commutator = operator_norm(lhs - rhs);
    }
    r.symmetry = operator_norm(g - g.transpose());

    const CMatrix t = analytic_toeplitz(u, n, n);
    r.toeplitz = operator_norm(t.block(1, 1, n - 1, n - 1) - t.block(0, 0, n - 1, n - 1));
    return r;
}

IdentityResiduals identity_residuals(const RationalSymbol& sym, Index order)
{
    return identity_residuals(build_hankel_matrix(sym, order),
                              fourier_coefficients(sym, order));
}

} // namespace hardy
