#include <doctest.h>

#include <cmath>
#include <numbers>

#include <hardy/sampling.hpp>
#include <hardy/structure_extract.hpp>
#include <hardy/suites.hpp>

using namespace hardy;

namespace
{

SchmidtBlock block_from(const CMatrix& basis, double s = 1.0)
{
    SchmidtBlock b;
    b.s     = s;
    b.basis = orthonormalize(basis);
    return b;
}

CMatrix block_basis(std::initializer_list<HardyVector> fs)
{
    const auto n = fs.begin()->order();
    CMatrix out(n, static_cast<Index>(fs.size()));
    Index k = 0;
    for (const HardyVector& f : fs)
        out.col(k++) = f.coeffs();
    return out;
}

struct Analysed
{
    HankelMatrix gamma;
    SchmidtDecomposition dec;
};

Analysed analyse(const RationalSymbol& sym, Index n)
{
    Analysed a{build_hankel_matrix(sym, n), {}};
    a.dec = schmidt_decompose(a.gamma);
    return a;
}

CMatrix tm_image(const Representation& rep, Index n)
{
    // built at 4n so that thetas with zeros near the circle are resolved
    const CMatrix x = tm_basis(rep.theta, 4 * n).topRows(n);
    CMatrix out(n, x.cols());
    for (Index k = 0; k < x.cols(); ++k)
        out.col(k) = multiply(rep.p, HardyVector(CVector(x.col(k)))).coeffs();
    return orthonormalize(out);
}

} // namespace

TEST_CASE("projection of 1 onto a block")
{
    const Index n = 32;
    const ExtremalProjection a = extremal_projection(
        block_from(block_basis({HardyVector::unit(n), HardyVector::monomial(1, n)})));
    CHECK((a.q - HardyVector::unit(n)).norm() < 1e-15);
    CHECK(a.norm == doctest::Approx(1.0));

    const ExtremalProjection b = extremal_projection(block_from(block_basis({HardyVector::monomial(1, n)})));
    CHECK(b.norm == 0.0);

    // oracle: e = sqrt(3/4) k_{1/2} is a unit vector with e(0) = sqrt(3/4), so
    // the projection of 1 is sqrt(3/4) e = (3/4) k_{1/2}, of norm sqrt(3)/2.
    const HardyVector e = std::sqrt(0.75) * HardyVector::szego_kernel(0.5, 64);
    CHECK(e.norm() == doctest::Approx(1.0).epsilon(1e-15));
    const ExtremalProjection c = extremal_projection(block_from(block_basis({e})));
    CHECK((c.q - 0.75 * HardyVector::szego_kernel(0.5, 64)).norm() < 1e-15);
    CHECK(c.norm == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
}

TEST_CASE("base point selection")
{
    const Index n = 32;
    CHECK(base_point_select(block_from(block_basis({HardyVector::unit(n), HardyVector::monomial(1, n)}))) ==
          Complex(0.0, 0.0));

    const Complex a = base_point_select(block_from(block_basis({HardyVector::monomial(1, n)})));
    CHECK(std::abs(a) >= 0.15 - 1e-15);
    // |f(alpha)|^2 = |alpha|^2 is largest on the outer ring
    CHECK(std::abs(a) == doctest::Approx(0.75));

    // z (z - 0.3) vanishes at 0 and 0.3 only
    const HardyVector f = multiply(HardyVector::monomial(1, n), HardyVector{-0.3, 1.0}.resized(n));
    const Complex b     = base_point_select(block_from(block_basis({f})));
    CHECK(std::abs(b - 0.3) > 0.1);
    CHECK(std::abs(b) > 0.1);

    CHECK_THROWS_AS(base_point_select(block_from(block_basis({HardyVector::monomial(40, 64)}))),
                    ExtractionError);
}

TEST_CASE("theta recovery on closed forms")
{
    SUBCASE("u = z")
    {
        // H_u 1 = z = 1 * conj(z) z^2 * 1
        const ThetaRecovery r = recover_theta(HardyVector::unit(32), HardyVector::monomial(1, 32), 1.0, 2);
        CHECK(r.theta.degree() == 2);
        for (const Complex& z : r.theta.zeros())
            CHECK(std::abs(z) < 1e-14);
        CHECK(std::abs(r.phi) < 1e-14);
        CHECK(r.innerness < 1e-10);
        CHECK(boundary_modulus_deviation(r.theta, 256) < 1e-10);
    }
    SUBCASE("rank one at a = 1/2")
    {
        const Index n        = 64;
        const HankelMatrix g = build_hankel_matrix(RationalSymbol({}, {PoleTerm{0.5, 1, 1.0}}), n);
        const HardyVector p  = std::sqrt(0.75) * HardyVector::szego_kernel(0.5, n);
        const ThetaRecovery r = recover_theta(p, hankel_apply(g, p), 4.0 / 3.0, 1);
        REQUIRE(r.theta.degree() == 1);
        CHECK(std::abs(r.theta.zeros()[0]) < 1e-14);
        CHECK(r.innerness < 1e-10);
        CHECK(r.fit_residual < 1e-10);
    }
    SUBCASE("non-inner data is rejected")
    {
        HardyVector img{0.0, 1.0, 0.5};
        CHECK_THROWS_AS(recover_theta(HardyVector::unit(32), img.resized(32), 1.0, 2), ExtractionError);
    }
    CHECK_THROWS_AS(recover_theta(HardyVector::unit(8), HardyVector(8), 1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(recover_theta(HardyVector::unit(8), HardyVector(8), 0.0, 1), std::invalid_argument);
}

TEST_CASE("canonical representations of closed forms")
{
    SUBCASE("u = S^* z^3: p constant, theta = z^3")
    {
        const Analysed a = analyse(symbol_from_inner(BlaschkeProduct::monomial(3), 64), 64);
        REQUIRE(a.dec.blocks.size() == 1);
        const SchmidtBlock& b = a.dec.blocks[0];
        CHECK(b.multiplicity() == 3);
        const Representation rep = extract_representation(a.gamma, b);
        CHECK(rep.branch == Branch::direct);
        CHECK((rep.p - HardyVector::unit(64)).norm() < 1e-12);
        REQUIRE(rep.theta.degree() == 3);
        for (const Complex& z : rep.theta.zeros())
            CHECK(std::abs(z) < 1e-12);
        const VerificationReport v = verify_representation(a.gamma, b, rep);
        CHECK(v.action < 1e-9);
        CHECK(v.isometry < 1e-9);
        CHECK(v.near_invariance_applicable);
        CHECK(v.near_invariance < 1e-7);
    }
    SUBCASE("rank one at a = 1/2")
    {
        const Index n    = 64;
        const Analysed a = analyse(RationalSymbol({}, {PoleTerm{0.5, 1, 1.0}}), n);
        REQUIRE(a.dec.blocks.size() == 1);
        const Representation rep = extract_representation(a.gamma, a.dec.blocks[0]);
        // p = sqrt(3)/2 k_{1/2} exactly once p(0) > 0
        CHECK((rep.p - std::sqrt(0.75) * HardyVector::szego_kernel(0.5, n)).norm() < 1e-14);
        REQUIRE(rep.theta.degree() == 1);
        CHECK(std::abs(rep.theta.zeros()[0]) < 1e-14);
        // H_u p = (4/3) p and conj(z) theta = conj(z)(-z) = -1, so e^{i phi} = -1
        const double frozen_phi = std::numbers::pi;
        CHECK(std::abs(std::polar(1.0, rep.phi) - std::polar(1.0, frozen_phi)) < 1e-13);
        CHECK(rep.phi > -std::numbers::pi);
        CHECK(rep.phi <= std::numbers::pi);
        CHECK(verify_representation(a.gamma, a.dec.blocks[0], rep).action < 1e-10);
    }
}

TEST_CASE("pure inner symbols give K_theta")
{
    Rng rng(12);
    for (int t = 0; t < 10; ++t)
    {
        const BlaschkeProduct theta = random_blaschke(rng);
        const Analysed a            = analyse(symbol_from_inner(theta, 128), 128);
        REQUIRE(a.dec.blocks.size() == 1);
        const SchmidtBlock& b = a.dec.blocks[0];
        CHECK(b.s == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(b.multiplicity() == theta.degree());
        const Representation rep = extract_representation(a.gamma, b);
        CHECK(subspace_gap(tm_image(rep, 128), tm_basis(theta, 128)) < 1e-7);
        const VerificationReport v = verify_representation(a.gamma, b, rep);
        CHECK(v.pass(1e-7));
        CHECK(std::abs(blaschke_eval(rep.theta, 0.0)) < 1e-12);
        CHECK(rep.p[0].real() >= 0.0);
        CHECK(rep.p[0].imag() == 0.0);
    }
}

TEST_CASE("random symbols: every separated block verifies")
{
    Rng rng(99);
    for (int t = 0; t < 15; ++t)
    {
        const Analysed a = analyse(random_symbol(rng), 128);
        for (const SchmidtBlock& b : a.dec.blocks)
        {
            if (!b.well_separated)
                continue;
            const Representation rep   = extract_representation(a.gamma, b);
            const VerificationReport v = verify_representation(a.gamma, b, rep);
            CHECK(v.subspace_gap < 1e-6);
            CHECK(v.action < 1e-6);
            CHECK(v.innerness < 1e-8);
            CHECK(v.isometry < 1e-7);
            CHECK(v.linear_form < 1e-6);
            CHECK(v.us_cross_check < 1e-6);
            CHECK(rep.theta.degree() == b.multiplicity());
            if (v.near_invariance_applicable)
                CHECK(v.near_invariance < 1e-7);
        }
    }
}

TEST_CASE("forcing the Mobius route gives the same subspace")
{
    Rng rng(5);
    int exercised = 0;
    for (int t = 0; t < 10; ++t)
    {
        const Analysed a = analyse(random_symbol(rng), 128);
        for (const SchmidtBlock& b : a.dec.blocks)
        {
            const double q = extremal_projection(b).norm;
            if (!b.well_separated || q <= 0.1 || q >= 1.0)
                continue;
            const Representation direct = extract_representation(a.gamma, b);
            ExtractOptions forced;
            // admissible: the block does not vanish identically there
            Complex alpha = rng.disk_point(0.5);
            while (block_point_mass(b, alpha) < 1e-3)
                alpha = rng.disk_point(0.5);
            forced.force_base_point = alpha;
            const Representation mob = extract_representation(a.gamma, b, forced);
            CHECK(mob.branch == Branch::mobius);
            CHECK(verify_representation(a.gamma, b, mob).pass(1e-6));
            CHECK(subspace_gap(tm_image(direct, 128), tm_image(mob, 128)) < 1e-6);
            ++exercised;
        }
    }
    CHECK(exercised > 10);
}

TEST_CASE("conjugated rank-one symbol")
{
    const Index n = 128;
    const RationalSymbol u0({}, {PoleTerm{0.5, 1, 1.0}});
    const MobiusMap mu(0.4);
    const HardyVector w = mobius_conjugate_symbol(u0, mu, 2 * n).value;
    const HankelMatrix gw = HankelMatrix::from_coefficients(w, n);
    const SchmidtDecomposition dw = schmidt_decompose(gw);
    REQUIRE(dw.blocks.size() == 1);
    const Representation rep = extract_representation(gw, dw.blocks[0]);
    CHECK(verify_representation(gw, dw.blocks[0], rep).pass(1e-7));

    const HardyVector e0 = std::sqrt(0.75) * HardyVector::szego_kernel(0.5, n);
    const HardyVector mapped = mobius_conjugate_function(e0, mu, n).value;
    CHECK(subspace_gap(dw.blocks[0].basis, orthonormalize(CMatrix(mapped.coeffs()))) < 1e-7);
}

TEST_CASE("blocks orthogonal to 1 go through the Mobius route")
{
    // Conjugating by mu with alpha at a zero of a one-dimensional block's
    // function makes the conjugated block orthogonal to 1.
    const Index n = 128;
    const RationalSymbol u({}, {PoleTerm{0.5, 1, 1.0}, PoleTerm{-0.4, 1, 1.0}});
    const Analysed a = analyse(u, n);
    REQUIRE(a.dec.blocks.size() == 2);
    // the second Schmidt vector is c1 k_{0.5} + c2 k_{-0.4}, with one zero
    const SchmidtBlock& b = a.dec.blocks[1];
    const HardyVector f(CVector(b.basis.col(0)));
    // oracle for the zero: f(z) (1 - z/2)(1 + 0.4 z) is linear
    const HardyVector lin = multiply(multiply(f, HardyVector{1.0, -0.5}.resized(n)), HardyVector{1.0, 0.4}.resized(n));
    CHECK(lin.coeffs().tail(n - 2).norm() < 1e-12);
    const Complex alpha0 = -lin[0] / lin[1];
    REQUIRE(std::abs(alpha0) < 0.9);
    CHECK(std::abs(evaluate(f, alpha0)) < 1e-12);

    const MobiusMap mu(alpha0);
    const Index nw     = conjugated_order_for(u, mu, n);
    const HardyVector w = mobius_conjugate_symbol(u, mu, 2 * nw).value;
    const HankelMatrix gw = HankelMatrix::from_coefficients(w, nw);
    const SchmidtDecomposition dw = schmidt_decompose(gw);
    REQUIRE(dw.blocks.size() == 2);
    const SchmidtBlock& bw = dw.blocks[1];
    CHECK(extremal_projection(bw).norm < 1e-10);
    const Representation rep = extract_representation(gw, bw);
    CHECK(rep.branch == Branch::mobius);
    const VerificationReport v = verify_representation(gw, bw, rep);
    CHECK(v.pass(1e-7));
    CHECK_FALSE(v.near_invariance_applicable);
    CHECK(v.p0 < 1e-10);
    const HardyVector mapped = mobius_conjugate_function(f, mu, nw).value;
    CHECK(subspace_gap(bw.basis, orthonormalize(CMatrix(mapped.coeffs()))) < 1e-6);
}

TEST_CASE("verification detects a wrong theta")
{
    const Index n    = 128;
    const Analysed a = analyse(symbol_from_inner(BlaschkeProduct(1.0, {0.0, 0.4, Complex(-0.2, 0.3)}), n), n);
    REQUIRE(a.dec.blocks.size() == 1);
    const SchmidtBlock& b = a.dec.blocks[0];
    Representation rep    = extract_representation(a.gamma, b);
    CHECK(verify_representation(a.gamma, b, rep).isometry < 1e-9);

    std::vector<Complex> zeros = rep.theta.zeros();
    zeros.back() += 0.1;
    rep.theta = BlaschkeProduct(rep.theta.phase(), zeros);
    const VerificationReport v = verify_representation(a.gamma, b, rep);
    CHECK(v.subspace_gap > 1e-3);
    CHECK(v.action > 1e-3);
    CHECK_FALSE(v.pass(1e-6));
}

TEST_CASE("base point candidates and fallback")
{
    // smallest block: |P_E 1| is below the direct threshold and the best ring
    // point sits next to the double pole
    const RationalSymbol u({0.3, Complex(0.0, 0.5)},
                           {PoleTerm{Complex(0.6, 0.2), 1, 1.0},
                            PoleTerm{Complex(-0.4, 0.5), 2, Complex(0.2, 0.3)}});
    const Analysed a = analyse(u, 64);
    REQUIRE(a.dec.blocks.size() == 5);
    const SchmidtBlock& b = a.dec.blocks.back();
    REQUIRE(extremal_projection(b).norm < 0.1);

    const std::vector<Complex> cands = base_point_candidates(b);
    REQUIRE(cands.size() >= 2);
    CHECK(cands.front() == base_point_select(b));
    CHECK(std::abs(cands.front()) > 0.5);
    CHECK(cands[1] == Complex(0.0, 0.0));

    const Representation rep = extract_representation(a.gamma, b);
    CHECK(verify_representation(a.gamma, b, rep).pass(1e-6));
    ExtractOptions forced;
    forced.force_base_point = Complex(0.0, 0.0);
    const Representation direct = extract_representation(a.gamma, b, forced);
    CHECK(subspace_gap(tm_image(rep, 64), tm_image(direct, 64)) < 1e-8);

    // nothing meets an impossible tolerance: the first candidate's error surfaces
    ExtractOptions strict;
    strict.tol = 1e-30;
    try
    {
        (void)extract_representation(a.gamma, b, strict);
        FAIL("expected ExtractionError");
    }
    catch (const ExtractionError& e)
    {
        CHECK(std::string(e.what()).find("subspace gap") != std::string::npos);
    }
}

TEST_CASE("canonical theta with a zero nearer the circle than the input")
{
    // K_theta = p K_theta0 with theta0 the Frostman shift of theta at
    // theta(0); for these clustered zeros theta0 has a zero at |z| ~ 0.83,
    // so its Taylor series decays more slowly than anything in u = S^* theta
    const Index n = 128;
    const BlaschkeProduct theta(1.0, {Complex(-0.1993, -0.6678), Complex(-0.0964, -0.3393),
                                      Complex(-0.0465, -0.6360), Complex(0.1037, -0.4819)});
    const Analysed a = analyse(symbol_from_inner(theta, n), n);
    REQUIRE(a.dec.blocks.size() == 1);
    const SchmidtBlock& b    = a.dec.blocks[0];
    const Representation rep = extract_representation(a.gamma, b);
    double outer = 0;
    for (const Complex& z : rep.theta.zeros())
        outer = std::max(outer, std::abs(z));
    CHECK(outer > 0.8);
    CHECK_THROWS_AS(tm_basis(rep.theta, n), std::invalid_argument);

    const VerificationReport v = verify_representation(a.gamma, b, rep);
    CHECK(v.pass(1e-9));
    CHECK(v.innerness < 1e-12);
    CHECK(subspace_gap(tm_image(rep, n), orthonormalize(tm_basis(theta, n))) < 1e-9);
}
