#include <hardy/schmidt_spectral.hpp>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace hardy
{

namespace
{

struct SortedEigen
{
    Eigen::VectorXd values;  // descending
    CMatrix vectors;
};

/// Eigendecomposition of Gamma Gamma^* in descending order, each eigenvector
/// rotated so that its first non-negligible component is real positive.
SortedEigen sorted_square_eigen(const CMatrix& gamma)
{
    const CMatrix a = gamma * gamma.conjugate();
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(a);
    if (solver.info() != Eigen::Success)
    {
        throw std::runtime_error("Hermitian eigensolver failed");
    }
    const Index n = a.rows();
    SortedEigen out{Eigen::VectorXd(n), CMatrix(n, n)};
    for (Index j = 0; j < n; ++j)
    {
        out.values[j]     = solver.eigenvalues()[n - 1 - j];
        CVector v         = solver.eigenvectors().col(n - 1 - j);
        for (Index i = 0; i < n; ++i)
        {
            if (std::abs(v[i]) > 1e-10)
            {
                v *= std::conj(v[i]) / std::abs(v[i]);
                break;
            }
        }
        out.vectors.col(j) = v;
    }
    return out;
}

} // namespace

SchmidtDecomposition schmidt_decompose(const HankelMatrix& gamma, double cluster_tol)
{
    if (!(cluster_tol > 0.0 && cluster_tol < 1.0))
    {
        throw std::invalid_argument("schmidt_decompose: cluster_tol must be in (0, 1)");
    }
    SchmidtDecomposition out;
    const Index n = gamma.order();
    out.kernel_dimension = n;
    if (n == 0)
    {
        return out;
    }
    const SortedEigen eig = sorted_square_eigen(gamma.entries());
    for (Index k = 0; k < n; ++k)
    {
        out.singular_values.push_back(std::sqrt(std::max(eig.values[k], 0.0)));
    }
    const double lmax = eig.values[0];
    if (!(lmax > 0.0))
    {
        return out;
    }
    const double cut = cluster_tol * lmax;

    struct Range
    {
        Index begin, end;
    };
    std::vector<Range> clusters;
    Index i = 0;
    while (i < n && eig.values[i] >= cut)
    {
        const double top = eig.values[i];
        Index j          = i + 1;
        while (j < n && eig.values[j] >= cut && (top - eig.values[j]) / top < cluster_tol)
        {
            ++j;
        }
        clusters.push_back({i, j});
        i = j;
    }
    const Index rank          = i;
    out.kernel_dimension      = n - rank;
    const double kernel_top   = rank < n ? std::max(eig.values[rank], 0.0) : 0.0;

    for (std::size_t c = 0; c < clusters.size(); ++c)
    {
        const auto [b, e]  = clusters[c];
        const double top   = eig.values[b];
        const double bot   = eig.values[e - 1];
        SchmidtBlock block;
        block.s      = std::sqrt(eig.values.segment(b, e - b).mean());
        block.basis  = eig.vectors.middleCols(b, e - b);
        block.spread = (top - bot) / top;

        const double below = c + 1 < clusters.size() ? eig.values[clusters[c + 1].begin]
                                                      : kernel_top;
        double gap = (bot - below) / bot;
        if (c > 0)
        {
            const double above_bot = eig.values[clusters[c - 1].end - 1];
            gap = std::min(gap, (above_bot - top) / above_bot);
        }
        block.gap            = gap;
        block.well_separated = gap >= 10.0 * std::max(block.spread, cluster_tol);
        if (!block.well_separated)
        {
            std::ostringstream msg;
            msg.precision(6);
            msg << "singular value " << block.s << " (multiplicity "
                << block.multiplicity() << ") is ill-separated: relative gap " << gap
                << ", spread " << block.spread;
            out.warnings.push_back(msg.str());
        }
        out.blocks.push_back(std::move(block));
    }
    return out;
}

double eigenspace_residual(const HankelMatrix& gamma, const SchmidtBlock& block)
{
    const double s2 = block.s * block.s;
    const CMatrix r = hankel_square(gamma) * block.basis - s2 * block.basis;
    return operator_norm(r) / s2;
}

double invariance_residual(const HankelMatrix& gamma, const SchmidtBlock& block)
{
    const CMatrix& v = block.basis;
    const CMatrix w  = gamma.entries() * v.conjugate();
    return operator_norm(w - v * (v.adjoint() * w)) / block.s;
}

//------------------------------------------------------------------------------

TakagiFactorization takagi_small(const CMatrix& m)
{
    const Index d = m.rows();
    TakagiFactorization out{CMatrix::Identity(d, d), Eigen::VectorXd::Zero(d), 0.0};
    if (d == 0)
    {
        return out;
    }
    Eigen::MatrixXd k(2 * d, 2 * d);
    k.topLeftCorner(d, d)     = m.real();
    k.topRightCorner(d, d)    = m.imag();
    k.bottomLeftCorner(d, d)  = m.imag();
    k.bottomRightCorner(d, d) = -m.real();
    k = 0.5 * (k + k.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(k);
    if (solver.info() != Eigen::Success)
    {
        throw std::runtime_error("takagi_small: eigensolver failed");
    }
    // Eigenpairs (sigma, [x; y]) with sigma >= 0 give Takagi vectors x + i y.
    for (Index j = 0; j < d; ++j)
    {
        const Index src = 2 * d - 1 - j;
        out.sigma[j]    = std::max(solver.eigenvalues()[src], 0.0);
        const auto v    = solver.eigenvectors().col(src);
        for (Index r = 0; r < d; ++r)
        {
            out.u(r, j) = Complex(v[r], v[d + r]);
        }
    }
    // Null directions pair up with their negatives and may mix; replace them
    // by an orthonormal complement of the resolved columns.
    const double tau = 1e-13 * std::max(out.sigma[0], 1e-300);
    Index good       = 0;
    while (good < d && out.sigma[good] > tau)
    {
        ++good;
    }
    if (good < d)
    {
        CMatrix full = CMatrix::Identity(d, d);
        if (good > 0)
        {
            Eigen::HouseholderQR<CMatrix> qr(out.u.leftCols(good));
            full = qr.householderQ() * CMatrix::Identity(d, d);
            full.leftCols(good) = out.u.leftCols(good);
        }
        out.u.rightCols(d - good) = full.rightCols(d - good);
    }
    return out;
}

TakagiFactorization takagi_factorize(const CMatrix& gamma)
{
    const Index n = gamma.rows();
    if (gamma.cols() != n)
    {
        throw std::invalid_argument("takagi_factorize: matrix must be square");
    }
    const double asym = operator_norm(gamma - gamma.transpose());
    const double norm = operator_norm(gamma);
    if (asym > 1e-12 * std::max(norm, 1e-300))
    {
        throw std::invalid_argument("takagi_factorize: matrix is not symmetric");
    }
    TakagiFactorization out{CMatrix::Identity(n, n), Eigen::VectorXd::Zero(n), 0.0};
    if (n == 0)
    {
        return out;
    }
    const SortedEigen eig = sorted_square_eigen(gamma);
    const double lmax     = std::max(eig.values[0], 0.0);

    // Coarse grouping: a gap of 1e-6 lambda_max keeps eigenvector leakage
    // between groups at rounding level; the small Takagi problem resolves
    // whatever distinct values remain inside a group.
    CMatrix u(n, n);
    Eigen::VectorXd sigma(n);
    Index begin = 0;
    while (begin < n)
    {
        Index end = begin + 1;
        while (end < n && eig.values[end - 1] - eig.values[end] < 1e-6 * lmax)
        {
            ++end;
        }
        const CMatrix v = eig.vectors.middleCols(begin, end - begin);
        CMatrix m       = v.adjoint() * gamma * v.conjugate();
        m               = 0.5 * (m + m.transpose()).eval();
        const auto small = takagi_small(m);
        u.middleCols(begin, end - begin) = v * small.u;
        sigma.segment(begin, end - begin) = small.sigma;
        begin = end;
    }

    std::vector<Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), Index(0));
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return sigma[a] > sigma[b]; });
    for (Index j = 0; j < n; ++j)
    {
        out.u.col(j)  = u.col(order[static_cast<std::size_t>(j)]);
        out.sigma[j]  = sigma[order[static_cast<std::size_t>(j)]];
    }
    const CMatrix rebuilt = out.u * out.sigma.asDiagonal() * out.u.transpose();
    out.residual          = norm > 0.0 ? operator_norm(gamma - rebuilt) / norm : 0.0;
    if (out.residual > 1e-10)
    {
        std::ostringstream msg;
        msg << "takagi_factorize: reconstruction residual " << out.residual;
        throw std::runtime_error(msg.str());
    }
    return out;
}

//------------------------------------------------------------------------------

CMatrix orthonormalize(const CMatrix& a)
{
    if (a.cols() == 0)
    {
        return CMatrix(a.rows(), 0);
    }
    Eigen::ColPivHouseholderQR<CMatrix> qr(a);
    qr.setThreshold(1e-12);
    const Index r   = qr.rank();
    const CMatrix q = qr.householderQ() * CMatrix::Identity(a.rows(), r);
    return q;
}

double subspace_gap(const CMatrix& a, const CMatrix& b)
{
    if (a.rows() != b.rows())
    {
        throw std::invalid_argument("subspace_gap: ambient orders differ");
    }
    const auto check = [](const CMatrix& x, const char* name) {
        const CMatrix g = x.adjoint() * x - CMatrix::Identity(x.cols(), x.cols());
        const double r  = operator_norm(g);
        if (r > 1e-8)
        {
            std::ostringstream msg;
            msg << "subspace_gap: basis " << name << " is not orthonormal (Gram residual "
                << r << ")";
            throw std::invalid_argument(msg.str());
        }
    };
    check(a, "A");
    check(b, "B");
    if (a.cols() != b.cols())
    {
        return 1.0;
    }
    if (a.cols() == 0)
    {
        return 0.0;
    }
    const CMatrix r = b - a * (a.adjoint() * b);
    return std::min(operator_norm(r), 1.0);
}

CMatrix orthogonal_complement_in(const CMatrix& v, const CVector& w)
{
    const Index d = v.cols();
    const CVector r = v.adjoint() * w;  // conj of the row w^* V
    if (d == 0 || r.norm() <= 1e-14 * std::max(w.norm(), 1e-300))
    {
        return v;
    }
    Eigen::HouseholderQR<CMatrix> qr{CMatrix(r)};
    const CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
    return v * q.rightCols(d - 1);
}

} // namespace hardy
