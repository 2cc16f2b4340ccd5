#include <hardy/structure_extract.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <utility>

#include <Eigen/QR>

#include <hardy/polynomial.hpp>

namespace hardy
{

std::string to_string(Branch b)
{
    return b == Branch::direct ? "direct" : "mobius";
}

ExtremalProjection extremal_projection(const SchmidtBlock& block, Complex base)
{
    const Index n = block.basis.rows();
    const double w = std::sqrt(1.0 - std::norm(base));
    CVector k = w * HardyVector::szego_kernel(base, n).coeffs();
    CVector q = block.basis * (block.basis.adjoint() * k);
    ExtremalProjection out;
    out.norm = q.norm();
    out.q    = HardyVector(std::move(q));
    return out;
}

double block_point_mass(const SchmidtBlock& block, Complex alpha)
{
    const Index n = block.basis.rows();
    CVector powers(n);
    Complex zn = 1.0;
    for (Index i = 0; i < n; ++i)
    {
        powers[i] = zn;
        zn *= alpha;
    }
    return (block.basis.transpose() * powers).squaredNorm();
}

std::vector<Complex> base_point_candidates(const SchmidtBlock& block, double direct_threshold)
{
    const double q0 = extremal_projection(block).norm;
    std::vector<std::pair<double, Complex>> ring;
    for (int k = 1; k <= 5; ++k)
    {
        const double r = 0.15 * k;
        for (int j = 0; j < 16; ++j)
        {
            const Complex a = std::polar(r, 2.0 * std::numbers::pi * j / 16.0);
            const double m  = block_point_mass(block, a);
            if (m > 1e-6)
            {
                ring.emplace_back(m, a);
            }
        }
    }
    std::stable_sort(ring.begin(), ring.end(),
                     [](const auto& x, const auto& y) { return x.first > y.first; });

    std::vector<Complex> out;
    const double m0 = q0 * q0;
    if (q0 > direct_threshold || (m0 > 1e-6 && (ring.empty() || m0 >= ring.front().first)))
    {
        out.push_back(0.0);
    }
    for (const auto& [m, a] : ring)
    {
        if (out.size() >= 6)
        {
            break;
        }
        out.push_back(a);
    }
    // The direct route is the best conditioned; keep it as a fallback
    // whenever 1 is not (numerically) orthogonal to the block.
    if (q0 > 1e-3 && std::find(out.begin(), out.end(), Complex(0.0)) == out.end())
    {
        out.insert(out.begin() + std::min<std::size_t>(1, out.size()), Complex(0.0));
    }
    if (out.empty())
    {
        throw ExtractionError("base_point_select: block vanishes on the search grid");
    }
    return out;
}

Complex base_point_select(const SchmidtBlock& block, double direct_threshold)
{
    return base_point_candidates(block, direct_threshold).front();
}

ThetaRecovery recover_theta(const HardyVector& p, const HardyVector& image, double s,
                            Index degree, Complex base)
{
    const Index n = p.order();
    if (image.order() != n)
    {
        throw std::invalid_argument("recover_theta: order mismatch");
    }
    if (!(s > 0.0))
    {
        throw std::invalid_argument("recover_theta: s must be positive");
    }
    if (degree < 1 || n < 4 * degree + 4)
    {
        throw std::invalid_argument("recover_theta: degree too large for the order");
    }

    // With c = e^{i phi} theta = (z - base) Nt / D (theta(base) = 0), p r = h
    // and c = (z - base) r give
    //   (z - base) (p Nt - h D) = 0  (mod z^n),
    // a homogeneous system in the 2d + 1 coefficients of Nt and D that only
    // involves the n known coefficients of p and h.
    const CVector h = image.coeffs() / (s * std::sqrt(1.0 - std::norm(base)));
    const auto times_z_minus_base = [&](const CVector& f) {
        CVector out = -base * f;
        out.tail(n - 1) += f.head(n - 1);
        return out;
    };
    const HardyVector zp(times_z_minus_base(p.coeffs()));
    const HardyVector zh(times_z_minus_base(h));

    const Index d1 = degree + 1;
    const Index cols = degree + d1;
    CMatrix a(n, cols);
    a.leftCols(degree) = analytic_toeplitz(zp, n, degree);
    a.rightCols(d1)    = -analytic_toeplitz(zh, n, d1);
    Eigen::VectorXd scale(cols);
    for (Index j = 0; j < cols; ++j)
    {
        scale[j] = std::max(a.col(j).norm(), 1e-300);
        a.col(j) /= scale[j];
    }
    const Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinV);
    CVector v = svd.matrixV().col(cols - 1);
    for (Index j = 0; j < cols; ++j)
        v[j] /= scale[j];
    if (std::abs(v[degree]) == 0.0)
    {
        throw ExtractionError("recover_theta: denominator vanishes at 0");
    }
    v /= v[degree];

    Polynomial numer{-base, 1.0};
    numer = poly_multiply(numer, Polynomial(v.data(), v.data() + degree));
    Polynomial denom(v.data() + degree, v.data() + cols);

    std::vector<Complex> roots = poly_roots(numer);
    if (static_cast<Index>(roots.size()) != degree)
    {
        std::ostringstream msg;
        msg << "recover_theta: expected " << degree << " zeros, found " << roots.size();
        throw ExtractionError(msg.str());
    }
    for (const Complex& z : roots)
    {
        if (std::abs(z) >= 1.0 - 1e-10)
        {
            std::ostringstream msg;
            msg << "recover_theta: zero " << z << " is not inside the disk";
            throw ExtractionError(msg.str());
        }
    }

    // Nu / D on the boundary; inner iff |Nu| = |D| there.
    const Index grid = next_power_of_two(std::max<Index>(4 * n, 64));
    const std::vector<Complex> zs = grid_points(grid);
    BoundaryGrid target;
    target.samples.reserve(zs.size());
    double innerness = 0.0;
    for (const Complex& z : zs)
    {
        const Complex q = poly_eval(denom, z);
        if (std::abs(q) < 1e-12)
        {
            throw ExtractionError("recover_theta: recovered theta has a pole on the circle");
        }
        target.samples.push_back(poly_eval(numer, z) / q);
        innerness = std::max(innerness, std::abs(std::abs(target.samples.back()) - 1.0));
    }
    if (innerness > 1e-6)
    {
        std::ostringstream msg;
        msg << "recover_theta: recovered theta is not inner (boundary modulus deviation "
            << innerness << ")";
        throw ExtractionError(msg.str());
    }

    ThetaRecovery out;
    out.theta = BlaschkeProduct(1.0, std::move(roots));
    BoundaryGrid model;
    model.samples.reserve(zs.size());
    for (const Complex& z : zs)
        model.samples.push_back(blaschke_eval(out.theta, z));
    const Complex ph = fit_phase(target, model);
    out.phi = std::arg(ph);
    for (Index i = 0; i < grid; ++i)
        out.fit_residual = std::max(out.fit_residual,
                                    std::abs(target.samples[i] - ph * model.samples[i]));
    out.innerness = innerness;
    return out;
}

namespace
{

double wrap_angle(double phi)
{
    const double pi = std::numbers::pi;
    phi = std::remainder(phi, 2.0 * pi);
    if (phi <= -pi)
        phi += 2.0 * pi;
    return phi;
}

} // namespace

namespace
{

Representation extract_at(const HankelMatrix& gamma, const SchmidtBlock& block, Complex alpha,
                          const ExtractOptions& options)
{
    const Index n = gamma.order();
    const Index d = block.multiplicity();
    if (block.basis.rows() != n || d == 0)
    {
        throw std::invalid_argument("extract_representation: block does not match the operator");
    }
    const double s = block.s;

    if (std::abs(alpha) >= 1.0)
    {
        throw std::invalid_argument("extract_representation: base point must lie in the disk");
    }
    const ExtremalProjection ext = extremal_projection(block, alpha);
    if (ext.norm < 1e-8)
    {
        throw ExtractionError("extract_representation: block is orthogonal to the kernel at the base point");
    }

    // p = q (1 - conj(alpha) z) / (|q| sqrt(1 - |alpha|^2)); q / |q| for alpha = 0.
    const double w = std::sqrt(1.0 - std::norm(alpha));
    HardyVector p = ext.q;
    if (alpha != 0.0)
    {
        p -= std::conj(alpha) * shift(ext.q).value;
    }
    p *= 1.0 / (ext.norm * w);

    const HardyVector image = hankel_apply(gamma, ext.q) * (1.0 / ext.norm);
    const ThetaRecovery rec = recover_theta(p, image, s, d, alpha);

    Representation rep;
    rep.canonicalized_at = alpha;
    rep.branch           = alpha == 0.0 ? Branch::direct : Branch::mobius;
    BlaschkeProduct theta = rec.theta;
    double phi            = rec.phi;

    const Complex beta = blaschke_eval(theta, 0.0);
    if (alpha != 0.0 && std::abs(beta) > 1e-14)
    {
        const FrostmanShift fs = frostman_shift(theta, beta, n);
        p   = multiply(p, fs.g);
        phi = phi + std::numbers::pi + std::arg(fs.shifted.phase());
        std::vector<Complex> zeros = fs.shifted.zeros();
        auto smallest = std::min_element(zeros.begin(), zeros.end(), [](Complex x, Complex y) {
            return std::abs(x) < std::abs(y);
        });
        if (std::abs(*smallest) > 1e-6)
        {
            throw ExtractionError("extract_representation: Frostman shift left no zero at the origin");
        }
        *smallest = 0.0;
        theta     = BlaschkeProduct(1.0, std::move(zeros));
    }

    const Complex p0 = p[0];
    if (std::abs(p0) > 1e-12)
    {
        const Complex c = std::conj(p0) / std::abs(p0);
        p *= c;
        phi -= 2.0 * std::arg(c);
    }

    rep.p     = std::move(p);
    rep.theta = std::move(theta);
    rep.phi   = wrap_angle(phi);

    const VerificationReport check = verify_representation(gamma, block, rep, options.oversample);
    if (!(check.subspace_gap <= options.tol))
    {
        std::ostringstream msg;
        msg << "extract_representation: subspace gap " << check.subspace_gap
            << " exceeds tolerance " << options.tol;
        throw ExtractionError(msg.str());
    }
    return rep;
}

} // namespace

Representation extract_representation(const HankelMatrix& gamma,
                                      const SchmidtBlock& block,
                                      const ExtractOptions& options)
{
    if (options.force_base_point)
    {
        return extract_at(gamma, block, *options.force_base_point, options);
    }
    const std::vector<Complex> candidates = base_point_candidates(block, options.direct_threshold);
    std::optional<ExtractionError> first;
    for (Complex alpha : candidates)
    {
        try
        {
            return extract_at(gamma, block, alpha, options);
        }
        catch (const ExtractionError& e)
        {
            if (!first)
            {
                first = e;
            }
        }
    }
    throw *first;
}

namespace
{

// Model-space basis at the first order n, 2n, 4n, ... where it is resolved
// (tail below 1e-10). The canonical theta can have zeros closer to the circle
// than the poles of u, so this may exceed n; callers truncate back to n.
CMatrix resolved_tm_basis(const BlaschkeProduct& theta, Index n)
{
    for (Index m = n;; m *= 2)
    {
        try
        {
            return tm_basis(theta, m);
        }
        catch (const std::invalid_argument&)
        {
            if (m >= 8 * n)
                throw;
        }
    }
}

} // namespace

VerificationReport verify_representation(const HankelMatrix& gamma,
                                         const SchmidtBlock& block,
                                         const Representation& rep,
                                         Index oversample)
{
    const Index n = gamma.order();
    const Index d = block.multiplicity();
    const double s = block.s;
    const CMatrix& g = gamma.entries();
    const Complex eph = std::polar(1.0, rep.phi);
    const HardyVector& p = rep.p.order() == n ? rep.p : rep.p.resized(n);

    VerificationReport out;
    out.p0 = std::abs(p[0]);
    out.innerness = boundary_modulus_deviation(rep.theta, default_grid_size(n, oversample));

    if (rep.theta.degree() != d)
    {
        out.subspace_gap = 1.0;
    }

    const CMatrix xfull = resolved_tm_basis(rep.theta, n);
    const CMatrix x     = xfull.topRows(n);
    CMatrix px(n, x.cols());
    std::vector<HardyVector> pe;
    pe.reserve(static_cast<size_t>(x.cols()));
    for (Index k = 0; k < x.cols(); ++k)
    {
        pe.push_back(multiply(p, HardyVector(CVector(x.col(k)))));
        px.col(k) = pe.back().coeffs();
        out.isometry = std::max(out.isometry, std::abs(pe.back().norm() - 1.0));
    }
    if (rep.theta.degree() == d)
    {
        const CMatrix q = orthonormalize(px);
        out.subspace_gap = q.cols() == d ? subspace_gap(block.basis, q) : 1.0;
    }

    const CMatrix gg = g.adjoint() * g;
    for (Index k = 0; k < x.cols(); ++k)
    {
        const HardyVector ek(CVector(xfull.col(k)));
        const HardyVector ck = conjugation_c_theta(rep.theta, ek, oversample).resized(n);
        const HardyVector predicted = s * eph * multiply(p, ck);

        const HardyVector lhs = hankel_apply(gamma, pe[k]);
        out.action = std::max(out.action, (lhs - predicted).norm() / s);

        const HardyVector cpe = conjugation_C(pe[k]);
        const HardyVector lin = linear_hankel_apply(gamma, cpe);
        out.linear_form = std::max(out.linear_form, (lin - predicted).norm() / s);
        const CVector eig = gg * cpe.coeffs() - s * s * cpe.coeffs();
        out.linear_form = std::max(out.linear_form, eig.norm() / (s * s));
    }

    const CVector u = g.col(0);
    out.near_invariance_applicable = out.p0 > 1e-3;
    const double unorm = u.norm();
    if (d > 0)
    {
        const CMatrix f = orthogonal_complement_in(block.basis, CVector::Unit(n, 0));
        for (Index j = 0; j < f.cols(); ++j)
        {
            const HardyVector sf = coshift(HardyVector(CVector(f.col(j))));
            const CVector outside =
                sf.coeffs() - block.basis * (block.basis.adjoint() * sf.coeffs());
            out.near_invariance = std::max(out.near_invariance, outside.norm());
            if (unorm > 0.0)
            {
                out.near_invariance = std::max(
                    out.near_invariance, std::abs(u.dot(sf.coeffs())) / unorm);
            }
        }
    }

    const CVector us = block.basis * (block.basis.adjoint() * u);
    const HardyVector st = coshift(rep.theta.coefficients(n + 1)).resized(n);
    const HardyVector pred = s * eph * p[0] * multiply(p, st);
    out.us_cross_check = (us - pred.coeffs()).norm() / s;
    return out;
}

} // namespace hardy
