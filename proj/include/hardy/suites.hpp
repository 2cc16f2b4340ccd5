///
/// \file suites.hpp
///
/// Seeded property suites over random symbols and Blaschke products. Each
/// suite returns one residual per case together with the threshold that case
/// is judged against; `verify` and the acceptance binary both report from
/// these.
///

#ifndef HARDY_SUITES_HPP
#define HARDY_SUITES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <hardy/sampling.hpp>
#include <hardy/structure_extract.hpp>

namespace hardy
{

struct CaseResult
{
    double residual  = 0.0;
    double threshold = 0.0;

    bool passed() const
    {
        return residual <= threshold;
    }
};

struct SuiteResult
{
    std::string name;
    std::vector<CaseResult> cases;

    Index passed() const;
    Index failed() const
    {
        return static_cast<Index>(cases.size()) - passed();
    }
    double max_residual() const;
    void add(double residual, double threshold)
    {
        cases.push_back({residual, threshold});
    }
};

struct SuiteSizes
{
    Index identity_symbols  = 50;
    Index model_space_products  = 30;
    Index frostman_products = 30;
    Index frostman_alphas   = 3;
    Index mobius_multiplier_cases     = 10;
    Index mobius_symbols    = 20;
    Index representation_symbols  = 100;
};

struct SuiteConfig
{
    Index order            = 128;
    Index grid_oversample  = 2;
    double cluster_tol     = 1e-8;
    double verify_tol      = 1e-6;
    std::uint64_t seed     = 1;
    /// Added to entry (0, 1) of every Hankel matrix in the identity suite.
    double perturb = 0.0;
    SuiteSizes sizes;
};

/// Shift intertwining, the square-shift and commutator identities for H_u^2,
/// symmetry and S^* T_v S = T_v; threshold max(1e-10, 10 tail_bound) per
/// symbol.
std::vector<SuiteResult> identity_suite(const SuiteConfig& config);

/// S^*(K_B cap 1^perp) = K_B cap (S^* B)^perp as a subspace gap.
double model_space_gap(const BlaschkeProduct& b, Index order);
SuiteResult model_space_suite(const SuiteConfig& config);

struct FrostmanResiduals
{
    double subspace_gap      = 0.0;  ///< K_B vs g_alpha K_{B_alpha}
    double boundary_identity = 0.0;  ///< max |g_alpha B_alpha + B conj(g_alpha)| on the grid
    double isometry          = 0.0;  ///< max | ||g_alpha h|| - 1 | over an orthonormal basis of K_{B_alpha}
};

FrostmanResiduals frostman_residuals(const BlaschkeProduct& b, Complex alpha, Index order,
                                     Index oversample = 2);
std::vector<SuiteResult> frostman_suite(const SuiteConfig& config);

/// U_mu(p K_B) vs (p o mu) K_{B o mu}.
double mobius_multiplier_gap(const HardyVector& p, const BlaschkeProduct& b, const MobiusMap& mu,
                   Index order, Index oversample = 2);
SuiteResult mobius_multiplier_suite(const SuiteConfig& config);

struct MobiusResiduals
{
    double singular_values     = 0.0;
    double sv_threshold        = 0.0;  ///< 1e-6 + tail terms
    double schmidt_bases       = 0.0;  ///< worst gap over well-separated blocks
    double double_conjugation  = 0.0;
};

/// Smallest order >= `order` (doubling, at most 8x) at which the conjugated
/// symbol's coefficients, decaying like max(|alpha|, |mu(b_k)|)^n, drop
/// below 1e-16.
Index conjugated_order_for(const RationalSymbol& sym, const MobiusMap& mu, Index order);

/// Mobius covariance for one symbol: u at `order`, w = -S^*((Su) o mu) at
/// `conjugated_order` (w decays like max |mu(b)|, more slowly than u).
MobiusResiduals mobius_residuals(const RationalSymbol& sym, const MobiusMap& mu, Index order,
                                 Index conjugated_order, double cluster_tol = 1e-8);
std::vector<SuiteResult> mobius_suite(const SuiteConfig& config);

/// Extraction plus all verify_representation checks on every well-separated
/// block of 100 random symbols.
std::vector<SuiteResult> representation_suite(const SuiteConfig& config);

std::vector<SuiteResult> run_all_suites(const SuiteConfig& config);

} // namespace hardy

#endif /* HARDY_SUITES_HPP */
