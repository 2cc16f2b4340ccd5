///
/// \file structure_extract.hpp
///
/// Constructive form of the Schmidt subspace structure theorem: every
/// Schmidt subspace E(s) of H_u equals p K_theta for an isometric multiplier
/// p on K_theta and an inner theta, and
///
///     H_u(p h) = s e^{i phi} p conj(z) theta conj(h),   h in K_theta.
///
/// Representations are returned in canonical form: theta(0) = 0 with theta
/// stored as a phase-one product of factors (a - z) / (1 - conj(a) z),
/// p(0) >= 0, phi in (-pi, pi].
///
/// Two routes produce the triple:
///  - direct: the block is not orthogonal to 1; p is the normalised
///    projection of 1 onto the block.
///  - mobius: the block is (numerically) orthogonal to 1; a base point alpha
///    where the block does not vanish is chosen and the problem is solved in
///    the frame conjugated by U_mu, mu(z) = (alpha - z) / (1 - conj(alpha) z).
///    The conjugation is applied analytically: U_mu maps 1 to the normalised
///    Szego kernel at alpha, so the conjugated-frame multiplier pulled back
///    by mu is q (1 - conj(alpha) z) / (|q| sqrt(1 - |alpha|^2)), where q is
///    the projection of that kernel onto the block. A final Frostman shift
///    restores theta(0) = 0.
///

#ifndef HARDY_STRUCTURE_EXTRACT_HPP
#define HARDY_STRUCTURE_EXTRACT_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <hardy/blaschke_model.hpp>
#include <hardy/schmidt_spectral.hpp>

namespace hardy
{

class ExtractionError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

enum class Branch
{
    direct,
    mobius,
};

std::string to_string(Branch b);

struct Representation
{
    HardyVector p;
    BlaschkeProduct theta;
    double phi = 0.0;
    Complex canonicalized_at = 0.0;  ///< base point alpha, 0 for the direct route
    Branch branch            = Branch::direct;
};

struct ExtremalProjection
{
    HardyVector q;
    double norm = 0.0;
};

///
/// Projection onto the block of the normalised Szego kernel at `base`
/// (the constant 1 when base = 0).
///
ExtremalProjection extremal_projection(const SchmidtBlock& block, Complex base = 0.0);

/// sum_j |f_j(alpha)|^2 over the block basis.
double block_point_mass(const SchmidtBlock& block, Complex alpha);

///
/// Base point for the extraction. Returns 0 when the projection of 1 onto the
/// block has norm above `direct_threshold`; otherwise the maximiser of
/// block_point_mass over rings of radii 0, 0.15, ..., 0.75 with 16 angles.
/// Throws ExtractionError if the maximum does not exceed 1e-6.
///
Complex base_point_select(const SchmidtBlock& block, double direct_threshold = 0.1);

/// Base points in the order extract_representation tries them: the
/// base_point_select choice first, then the remaining ring points by
/// decreasing mass (at most six), with alpha = 0 moved to second place
/// whenever |P_E 1| > 1e-3.
std::vector<Complex> base_point_candidates(const SchmidtBlock& block,
                                           double direct_threshold = 0.1);

struct ThetaRecovery
{
    BlaschkeProduct theta;    ///< phase one, theta(base) = 0
    double phi = 0.0;
    double fit_residual = 0.0;  ///< max grid deviation of the phase fit
    double innerness    = 0.0;  ///< max grid deviation of |Nu / D| from 1
};

///
/// Recovers theta from image = H_u(p k_base) where k_base is the normalised
/// Szego kernel at `base` (image = H_u p for base = 0). Writing
/// e^{i phi} theta = (z - base) Nt / D with deg Nt < d, deg D <= d, the
/// relation (z - base)(p Nt - h D) = 0 (mod z^N), h = image / (s sqrt(1 -
/// |base|^2)), is a homogeneous linear system in the coefficients of Nt and
/// D; its null vector gives theta without truncating any infinite series. Throws ExtractionError if Nu / D is not
/// inner to 1e-6 on the grid or a root leaves the disk; std::invalid_argument
/// if N < 4d + 4.
///
ThetaRecovery recover_theta(const HardyVector& p, const HardyVector& image, double s,
                            Index degree, Complex base = 0.0);

struct ExtractOptions
{
    double tol              = 1e-6;
    double direct_threshold = 0.1;
    /// Skip base point selection and use this alpha (alpha = 0 forces the
    /// direct route).
    std::optional<Complex> force_base_point;
    Index oversample = 2;
};

///
/// Extracts (p, theta, phi) for one block. Without a forced base point the
/// candidates of base_point_candidates are tried in order and the first
/// extraction that passes its own checks is returned; the error of the first
/// candidate is rethrown if none does.
///
Representation extract_representation(const HankelMatrix& gamma,
                                      const SchmidtBlock& block,
                                      const ExtractOptions& options = {});

struct VerificationReport
{
    double subspace_gap    = 0;  ///< E vs orthonormalised p * tm_basis(theta)
    double isometry        = 0;  ///< max_k | ||p e_k|| - 1 |
    double action          = 0;  ///< max_k ||H_u(p e_k) - s e^{i phi} p C_theta e_k|| / s
    double near_invariance = 0;  ///< S^*(E cap 1^perp) inside E cap u^perp
    bool near_invariance_applicable = false;  ///< |p(0)| > 1e-3
    double linear_form  = 0;  ///< G_u C(p e_k) = s p conj(z) theta conj(e_k); G_u^*G_u C(p e_k) = s^2 C(p e_k)
    double us_cross_check = 0;  ///< u_s = s e^{i phi} p(0) p S^*theta (reported only)
    double innerness = 0;
    double p0        = 0;  ///< |p(0)|

    bool pass(double tol) const
    {
        return subspace_gap <= tol && isometry <= tol && action <= tol &&
               (!near_invariance_applicable || near_invariance <= tol) &&
               linear_form <= tol;
    }
};

VerificationReport verify_representation(const HankelMatrix& gamma,
                                         const SchmidtBlock& block,
                                         const Representation& rep,
                                         Index oversample = 2);

} // namespace hardy

#endif /* HARDY_STRUCTURE_EXTRACT_HPP */
