#include <doctest.h>

#include <cmath>
#include <numbers>

#include <hardy/blaschke_model.hpp>
#include <hardy/sampling.hpp>
#include <hardy/schmidt_spectral.hpp>

using namespace hardy;

namespace
{

CMatrix column(const HardyVector& f)
{
    return CMatrix(f.coeffs());
}

double takagi_reconstruction(const CMatrix& g, const TakagiFactorization& t)
{
    return (g - t.u * t.sigma.asDiagonal() * t.u.transpose()).norm();
}

CMatrix random_symmetric(Rng& rng, Index n)
{
    CMatrix a(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j)
            a(i, j) = Complex(rng.uniform(-1, 1), rng.uniform(-1, 1));
    return a + a.transpose();
}

} // namespace

TEST_CASE("shift symbol: one double block spanning K_{z^2}")
{
    // oracle: the nonzero corner of Gamma is [[0,1],[1,0]], whose square is I
    const HankelMatrix g = build_hankel_matrix(RationalSymbol({0.0, 1.0}, {}), 32);
    const SchmidtDecomposition d = schmidt_decompose(g);
    REQUIRE(d.blocks.size() == 1);
    CHECK(d.blocks[0].s == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.blocks[0].multiplicity() == 2);
    CHECK(d.kernel_dimension == 30);
    CHECK(subspace_gap(d.blocks[0].basis, tm_basis(BlaschkeProduct::monomial(2), 32)) < 1e-14);
    CHECK(d.singular_values.size() == 32);
}

TEST_CASE("rank one symbol")
{
    const HankelMatrix g = build_hankel_matrix(RationalSymbol({}, {PoleTerm{0.5, 1, 1.0}}), 64);
    const SchmidtDecomposition d = schmidt_decompose(g);
    REQUIRE(d.blocks.size() == 1);
    CHECK(d.blocks[0].s == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    CHECK(d.blocks[0].multiplicity() == 1);
    const CMatrix k = column(std::sqrt(0.75) * HardyVector::szego_kernel(0.5, 64));
    CHECK(subspace_gap(d.blocks[0].basis, k) < 1e-14);
}

TEST_CASE("zero symbol has no blocks")
{
    const SchmidtDecomposition d = schmidt_decompose(build_hankel_matrix(RationalSymbol(), 16));
    CHECK(d.blocks.empty());
    CHECK(d.kernel_dimension == 16);
}

TEST_CASE("block invariants on random symbols")
{
    Rng rng(31);
    for (int t = 0; t < 10; ++t)
    {
        const RationalSymbol sym = random_symbol(rng);
        const HankelMatrix g     = build_hankel_matrix(sym, 128);
        const SchmidtDecomposition d = schmidt_decompose(g);
        Index total = d.kernel_dimension;
        double prev = std::numeric_limits<double>::infinity();
        for (const SchmidtBlock& b : d.blocks)
        {
            total += b.multiplicity();
            CHECK(b.s < prev);
            prev = b.s;
            const CMatrix gram = b.basis.adjoint() * b.basis;
            CHECK((gram - CMatrix::Identity(b.multiplicity(), b.multiplicity())).norm() < 1e-12);
            CHECK(eigenspace_residual(g, b) < 1e-8);
            CHECK(invariance_residual(g, b) < 1e-8);
        }
        CHECK(total == 128);
        // singular values under the relative kernel cut are dropped, so only a bound
        CHECK(static_cast<Index>(d.blocks.size()) <= sym.kronecker_rank_bound());
    }
}

TEST_CASE("clustering and separation warnings")
{
    // u = delta + z: Gamma's corner [[delta, 1], [1, 0]] has singular values
    // (sqrt(delta^2 + 4) +- delta) / 2, relative eigenvalue split about 2 delta.
    SUBCASE("split below tolerance merges")
    {
        const HankelMatrix g = build_hankel_matrix(RationalSymbol({1e-10, 1.0}, {}), 16);
        const SchmidtDecomposition d = schmidt_decompose(g, 1e-8);
        REQUIRE(d.blocks.size() == 1);
        CHECK(d.blocks[0].multiplicity() == 2);
        CHECK(d.blocks[0].well_separated);
        CHECK(d.warnings.empty());
    }
    SUBCASE("split just above tolerance is flagged")
    {
        const HankelMatrix g = build_hankel_matrix(RationalSymbol({2e-8, 1.0}, {}), 16);
        const SchmidtDecomposition d = schmidt_decompose(g, 1e-8);
        REQUIRE(d.blocks.size() == 2);
        CHECK_FALSE(d.blocks[0].well_separated);
        CHECK_FALSE(d.blocks[1].well_separated);
        CHECK_FALSE(d.warnings.empty());
    }
    CHECK_THROWS_AS(schmidt_decompose(build_hankel_matrix(RationalSymbol(), 4), 0.0),
                    std::invalid_argument);
}

TEST_CASE("Takagi factorisation")
{
    SUBCASE("real nonnegative diagonal")
    {
        CMatrix g = CMatrix::Zero(3, 3);
        g.diagonal() << 3.0, 2.0, 0.5;
        const TakagiFactorization t = takagi_factorize(g);
        CHECK((t.u - CMatrix::Identity(3, 3)).norm() < 1e-14);
        CHECK(t.sigma[0] == doctest::Approx(3.0));
        CHECK(t.sigma[2] == doctest::Approx(0.5));
    }
    SUBCASE("swap matrix")
    {
        CMatrix g(2, 2);
        g << 0.0, 1.0, 1.0, 0.0;
        // oracle: the quoted U = [[1, i], [1, -i]] / sqrt 2 satisfies U U^T = g
        CMatrix u(2, 2);
        u << 1.0, Complex(0, 1), 1.0, Complex(0, -1);
        u /= std::sqrt(2.0);
        CHECK((u * u.transpose() - g).norm() < 1e-15);

        const TakagiFactorization t = takagi_factorize(g);
        CHECK(t.sigma[0] == doctest::Approx(1.0));
        CHECK(t.sigma[1] == doctest::Approx(1.0));
        CHECK(takagi_reconstruction(g, t) < 1e-14);
    }
    SUBCASE("random symmetric against SVD")
    {
        Rng rng(44);
        for (int trial = 0; trial < 5; ++trial)
        {
            const CMatrix g = random_symmetric(rng, 12);
            const TakagiFactorization t = takagi_factorize(g);
            const Eigen::JacobiSVD<CMatrix> svd(g);
            CHECK((t.sigma - svd.singularValues()).norm() < 1e-10);
            CHECK(takagi_reconstruction(g, t) < 1e-10 * svd.singularValues()[0]);
            CHECK((t.u.adjoint() * t.u - CMatrix::Identity(12, 12)).norm() < 1e-10);
            // Schmidt-pair fixed point: Gamma conj(v) = sigma v
            for (Index k = 0; k < 12; ++k)
                CHECK((g * t.u.col(k).conjugate() - t.sigma[k] * t.u.col(k)).norm() < 1e-10);
        }
    }
    SUBCASE("Hankel matrices with kernels and multiplicities")
    {
        const HankelMatrix z = build_hankel_matrix(RationalSymbol({0.0, 0.0, 1.0}, {}), 16);
        const TakagiFactorization t = takagi_factorize(z);
        CHECK(takagi_reconstruction(z.entries(), t) < 1e-12);
        Rng rng(45);
        const HankelMatrix h = build_hankel_matrix(random_symbol(rng), 64);
        CHECK(takagi_reconstruction(h.entries(), takagi_factorize(h)) < 1e-10 * operator_norm(h.entries()));
    }
    SUBCASE("non-symmetric input is rejected")
    {
        CMatrix g(2, 2);
        g << 1.0, 2.0, 0.0, 1.0;
        CHECK_THROWS_AS(takagi_factorize(g), std::invalid_argument);
    }
}

TEST_CASE("subspace gap")
{
    const CMatrix one = column(HardyVector::unit(4));
    const CMatrix z   = column(HardyVector::monomial(1, 4));
    CHECK(subspace_gap(one, one) == 0.0);
    CHECK(subspace_gap(one, z) == doctest::Approx(1.0));

    // oracle: the projections onto (1,0) and (cos t, sin t) differ by a
    // matrix with eigenvalues +-|sin t|
    for (double t : {0.1, 0.7, 2.0})
    {
        CMatrix a(2, 1), b(2, 1);
        a << 1.0, 0.0;
        b << std::cos(t), std::sin(t);
        const CMatrix diff = a * a.adjoint() - b * b.adjoint();
        Eigen::SelfAdjointEigenSolver<CMatrix> es(diff);
        const double oracle = es.eigenvalues().cwiseAbs().maxCoeff();
        CHECK(oracle == doctest::Approx(std::abs(std::sin(t))).epsilon(1e-14));
        CHECK(subspace_gap(a, b) == doctest::Approx(std::abs(std::sin(t))).epsilon(1e-13));
    }
    CMatrix bad(2, 1);
    bad << 1.0, 1.0;
    CHECK_THROWS_AS(subspace_gap(bad, bad), std::invalid_argument);
    CHECK(subspace_gap(CMatrix(4, 0), CMatrix(4, 0)) == 0.0);
    CHECK(subspace_gap(CMatrix::Identity(4, 2), one) == 1.0);
}

TEST_CASE("orthonormalize and complements")
{
    CMatrix a(3, 3);
    a << 1, 2, 3,
         0, 1, 1,
         1, 3, 4;  // third column = first + second
    CHECK(orthonormalize(a).cols() == 2);

    const CMatrix v = CMatrix::Identity(4, 3);
    CVector w(4);
    w << 1.0, 1.0, 0.0, 5.0;
    const CMatrix c = orthogonal_complement_in(v, w);
    CHECK(c.cols() == 2);
    CHECK((c.adjoint() * w).norm() < 1e-15);
    CHECK(subspace_gap(orthonormalize(v * (v.adjoint() * c)), c) < 1e-15);
}
