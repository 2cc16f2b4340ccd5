///
/// \file schmidt_spectral.hpp
///
/// Schmidt subspaces E(s) = Ker(H_u^2 - s^2) from the Hermitian
/// eigendecomposition of Gamma Gamma^*, Takagi factorisation of the complex
/// symmetric Gamma, and the gap metric between subspaces.
///

#ifndef HARDY_SCHMIDT_SPECTRAL_HPP
#define HARDY_SCHMIDT_SPECTRAL_HPP

#include <string>
#include <vector>

#include <hardy/hankel_ops.hpp>

namespace hardy
{

struct SchmidtBlock
{
    double s = 0.0;
    CMatrix basis;  ///< order x d, orthonormal columns spanning E(s)
    /// max relative spread of the clustered eigenvalues of Gamma Gamma^*
    double spread = 0.0;
    /// relative eigenvalue gap to the neighbouring clusters (or the kernel)
    double gap = 0.0;
    bool well_separated = true;

    Index multiplicity() const
    {
        return basis.cols();
    }
};

struct SchmidtDecomposition
{
    std::vector<SchmidtBlock> blocks;  ///< descending s
    Index kernel_dimension = 0;
    /// All N singular values of Gamma, descending (kernel included).
    std::vector<double> singular_values;
    std::vector<std::string> warnings;
};

///
/// Eigenvalues below cluster_tol * lambda_max are treated as the kernel; the
/// rest are grouped into clusters of relative spread < cluster_tol. A block
/// is flagged (and a warning recorded) when its gap to a neighbouring cluster
/// is below 10 * max(spread, cluster_tol).
///
SchmidtDecomposition schmidt_decompose(const HankelMatrix& gamma,
                                       double cluster_tol = 1e-8);

/// Residual ||H_u^2 V - s^2 V|| of a block (relative to s^2).
double eigenspace_residual(const HankelMatrix& gamma, const SchmidtBlock& block);

/// ||(I - V V^*) Gamma conj(V)|| relative to s: invariance of E(s) under H_u.
double invariance_residual(const HankelMatrix& gamma, const SchmidtBlock& block);

struct TakagiFactorization
{
    CMatrix u;              ///< unitary, Gamma = U diag(sigma) U^T
    Eigen::VectorXd sigma;  ///< nonincreasing
    double residual = 0.0;  ///< ||Gamma - U diag(sigma) U^T|| / ||Gamma||
};

///
/// Takagi factorisation of a complex symmetric matrix. Eigenvectors of
/// Gamma Gamma^* are grouped into clusters; within each cluster V the
/// restricted form M = V^* Gamma conj(V) (symmetric) is diagonalised by a
/// unitary rotation Q with M = Q diag(sigma) Q^T, and U = V Q. Throws
/// std::runtime_error if the reconstruction residual exceeds 1e-10.
///
TakagiFactorization takagi_factorize(const CMatrix& gamma);

inline TakagiFactorization takagi_factorize(const HankelMatrix& gamma)
{
    return takagi_factorize(gamma.entries());
}

/// Takagi factorisation of a small symmetric matrix through the real
/// symmetric embedding [[Re M, Im M], [Im M, -Re M]].
TakagiFactorization takagi_small(const CMatrix& m);

/// Orthonormal basis of the column span (rank decided at rel. tol 1e-12).
CMatrix orthonormalize(const CMatrix& a);

///
/// ||P_A - P_B|| for orthonormal bases A, B (columns). Returns 1 when the
/// dimensions differ. Throws std::invalid_argument if either Gram residual
/// exceeds 1e-8.
///
double subspace_gap(const CMatrix& a, const CMatrix& b);

/// Orthonormal basis of {V x : w^* V x = 0}, the part of span(V) orthogonal
/// to w.
CMatrix orthogonal_complement_in(const CMatrix& v, const CVector& w);

} // namespace hardy

#endif /* HARDY_SCHMIDT_SPECTRAL_HPP */
