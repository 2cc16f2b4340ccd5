#include <hardy/blaschke_model.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <hardy/symbol_model.hpp>

namespace hardy
{

namespace
{

Complex blaschke_factor(Complex a, Complex z)
{
    return (a - z) / (1.0 - std::conj(a) * z);
}

/// Grid size that resolves g o mu when g has `order` coefficients: the
/// boundary derivative of mu is at most (1 + |alpha|) / (1 - |alpha|).
Index composition_grid_size(Index order, const MobiusMap& mu, Index oversample)
{
    const double r       = std::abs(mu.alpha());
    const double stretch = (1.0 + r) / (1.0 - r);
    const auto width     = static_cast<Index>(std::ceil(stretch * static_cast<double>(std::max<Index>(order, 1))));
    return next_power_of_two(2 * oversample * width);
}

void require_root_degree(Index d, const char* where)
{
    if (d > max_root_degree)
    {
        std::ostringstream msg;
        msg << where << ": degree " << d << " exceeds the supported maximum "
            << max_root_degree;
        throw std::invalid_argument(msg.str());
    }
}

} // namespace

BlaschkeProduct::BlaschkeProduct(Complex phase, std::vector<Complex> zeros)
    : m_phase(phase), m_zeros(std::move(zeros))
{
    if (std::abs(std::abs(m_phase) - 1.0) > 1e-12)
    {
        throw std::invalid_argument("BlaschkeProduct: phase must be unimodular");
    }
    for (std::size_t j = 0; j < m_zeros.size(); ++j)
    {
        if (!(std::abs(m_zeros[j]) < 1.0))
        {
            std::ostringstream msg;
            msg << "BlaschkeProduct: zero " << j << " has modulus "
                << std::abs(m_zeros[j]) << " >= 1";
            throw std::invalid_argument(msg.str());
        }
    }
}

BlaschkeProduct BlaschkeProduct::monomial(Index degree)
{
    return BlaschkeProduct(degree % 2 == 0 ? 1.0 : -1.0,
                           std::vector<Complex>(static_cast<std::size_t>(degree), 0.0));
}

BlaschkeProduct BlaschkeProduct::with_phase(Complex phase) const
{
    return BlaschkeProduct(phase, m_zeros);
}

Polynomial BlaschkeProduct::numerator() const
{
    return poly_from_factors(m_zeros, m_phase);
}

Polynomial BlaschkeProduct::denominator() const
{
    Polynomial q{1.0};
    for (const auto& a : m_zeros)
    {
        q = poly_multiply(q, Polynomial{1.0, -std::conj(a)});
    }
    return q;
}

HardyVector BlaschkeProduct::coefficients(Index order) const
{
    return series_quotient(numerator(), denominator(), order);
}

Complex blaschke_eval(const BlaschkeProduct& b, Complex z)
{
    if (std::abs(z) > 1.0 + 1e-12)
    {
        throw std::domain_error("blaschke_eval: point outside the closed unit disk");
    }
    Complex v = b.phase();
    for (const auto& a : b.zeros())
    {
        v *= blaschke_factor(a, z);
    }
    return v;
}

double boundary_modulus_deviation(const BlaschkeProduct& b, Index grid_size)
{
    double dev = 0.0;
    for (const auto& z : grid_points(grid_size))
    {
        dev = std::max(dev, std::abs(std::abs(blaschke_eval(b, z)) - 1.0));
    }
    return dev;
}

CMatrix tm_basis(const BlaschkeProduct& b, Index order)
{
    const Index d      = b.degree();
    const Index extent = std::max<Index>(4 * order, order + 64);
    CMatrix basis(order, d);
    Polynomial partial_num{1.0};
    Polynomial den{1.0};
    for (Index k = 0; k < d; ++k)
    {
        const Complex a = b.zeros()[static_cast<std::size_t>(k)];
        den = poly_multiply(den, Polynomial{1.0, -std::conj(a)});
        Polynomial num = partial_num;
        for (auto& c : num)
        {
            c *= std::sqrt(1.0 - std::norm(a));
        }
        const HardyVector e = series_quotient(num, den, extent);
        const double tail   = e.coeffs().tail(extent - order).norm();
        if (tail > 1e-10)
        {
            std::ostringstream msg;
            msg << "tm_basis: order " << order << " too small, basis element " << k
                << " has coefficient tail " << tail;
            throw std::invalid_argument(msg.str());
        }
        basis.col(k) = e.coeffs().head(order);
        partial_num  = poly_multiply(partial_num, Polynomial{a, -1.0});
    }
    return basis;
}

double distance_to_model_space(const BlaschkeProduct& b, const HardyVector& h)
{
    const CMatrix x = tm_basis(b, h.order());
    return (h.coeffs() - x * (x.adjoint() * h.coeffs())).norm();
}

HardyVector conjugation_c_theta(const BlaschkeProduct& b, const HardyVector& h,
                                Index oversample)
{
    const double dist = distance_to_model_space(b, h);
    if (dist > 1e-8 * std::max(h.norm(), 1e-300))
    {
        std::ostringstream msg;
        msg << "conjugation_c_theta: input is at distance " << dist
            << " from the model space";
        throw std::invalid_argument(msg.str());
    }
    const Index order = h.order();
    const Index m     = default_grid_size(order, oversample);
    const auto pts    = grid_points(m);
    const BoundaryGrid hs = sample(h, m);
    BoundaryGrid g;
    g.samples.resize(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k)
    {
        g.samples[k] = std::conj(pts[k]) * blaschke_eval(b, pts[k]) * std::conj(hs.samples[k]);
    }
    return boundary_to_coefficients(g, order).value;
}

Complex fit_phase(const BoundaryGrid& target, const BoundaryGrid& base)
{
    Complex acc = 0.0;
    for (std::size_t k = 0; k < target.samples.size(); ++k)
    {
        acc += target.samples[k] * std::conj(base.samples[k]);
    }
    if (std::abs(acc) == 0.0)
    {
        return 1.0;
    }
    return acc / std::abs(acc);
}

namespace
{

double max_deviation(const BoundaryGrid& a, const BoundaryGrid& b, Complex c)
{
    double dev = 0.0;
    for (std::size_t k = 0; k < a.samples.size(); ++k)
    {
        dev = std::max(dev, std::abs(a.samples[k] - c * b.samples[k]));
    }
    return dev;
}

BoundaryGrid sample_blaschke(const BlaschkeProduct& b, Index m)
{
    return sample([&](Complex z) { return blaschke_eval(b, z); }, m);
}

} // namespace

FrostmanShift frostman_shift(const BlaschkeProduct& b, Complex alpha, Index order)
{
    if (!(std::abs(alpha) < 1.0))
    {
        throw std::invalid_argument("frostman_shift: |alpha| must be < 1");
    }
    require_root_degree(b.degree(), "frostman_shift");

    const Polynomial p = b.numerator();
    const Polynomial q = b.denominator();
    Polynomial eq(std::max(p.size(), q.size()), 0.0);
    for (std::size_t k = 0; k < eq.size(); ++k)
    {
        const Complex pk = k < p.size() ? p[k] : Complex(0.0);
        const Complex qk = k < q.size() ? q[k] : Complex(0.0);
        eq[k]            = pk - alpha * qk;
    }
    std::vector<Complex> roots;
    if (b.degree() > 0)
    {
        roots = poly_roots(eq);
    }
    if (static_cast<Index>(roots.size()) != b.degree())
    {
        throw std::runtime_error("frostman_shift: root finder lost a root");
    }
    for (const auto& r : roots)
    {
        if (std::abs(r) > 1.0 - 1e-10)
        {
            std::ostringstream msg;
            msg << "frostman_shift: root " << r << " is not inside the disk";
            throw std::runtime_error(msg.str());
        }
    }

    const Index m         = default_grid_size(std::max<Index>(order, 16));
    const BlaschkeProduct base(1.0, roots);
    const BoundaryGrid target = sample(
        [&](Complex z) {
            const Complex t = blaschke_eval(b, z);
            return (alpha - t) / (1.0 - std::conj(alpha) * t);
        },
        m);
    const BoundaryGrid base_samples = sample_blaschke(base, m);
    const Complex c                 = fit_phase(target, base_samples);

    FrostmanShift out;
    out.shifted      = base.with_phase(c);
    out.fit_residual = max_deviation(target, base_samples, c);
    if (out.fit_residual > 1e-9)
    {
        std::ostringstream msg;
        msg << "frostman_shift: boundary fit residual " << out.fit_residual;
        throw std::runtime_error(msg.str());
    }
    HardyVector g = HardyVector::unit(order) - std::conj(alpha) * b.coefficients(order);
    g *= 1.0 / std::sqrt(1.0 - std::norm(alpha));
    out.g = std::move(g);
    return out;
}

MobiusMap::MobiusMap(Complex alpha) : m_alpha(alpha)
{
    if (!(std::abs(alpha) < 1.0))
    {
        throw std::invalid_argument("MobiusMap: |alpha| must be < 1");
    }
}

BlaschkeProduct compose_with_mobius(const BlaschkeProduct& b, const MobiusMap& mu)
{
    std::vector<Complex> zeros;
    zeros.reserve(b.zeros().size());
    for (const auto& a : b.zeros())
    {
        zeros.push_back(mu(a));
    }
    const BlaschkeProduct base(1.0, zeros);
    const Index m             = default_grid_size(std::max<Index>(4 * b.degree(), 16));
    const BoundaryGrid target = sample([&](Complex z) { return blaschke_eval(b, mu(z)); }, m);
    return base.with_phase(fit_phase(target, sample_blaschke(base, m)));
}

Projection mobius_conjugate_function(const HardyVector& f, const MobiusMap& mu,
                                     Index order, Index oversample)
{
    const Index m = std::max(composition_grid_size(f.order(), mu, oversample),
                             default_grid_size(order, oversample));
    const BoundaryGrid g = sample(
        [&](Complex z) {
            const Complex w = mu(z);
            // |mu(z)| = 1 up to rounding on the circle
            return mu.weight(z) * evaluate(f, w / std::max(1.0, std::abs(w)));
        },
        m);
    return boundary_to_coefficients(g, order);
}

Projection compose_function(const HardyVector& f, const MobiusMap& mu, Index order,
                            Index oversample)
{
    const Index m = std::max(composition_grid_size(f.order(), mu, oversample),
                             default_grid_size(order, oversample));
    const BoundaryGrid g = sample(
        [&](Complex z) {
            const Complex w = mu(z);
            return evaluate(f, w / std::max(1.0, std::abs(w)));
        },
        m);
    return boundary_to_coefficients(g, order);
}

Projection mobius_conjugate_symbol(const RationalSymbol& sym, const MobiusMap& mu,
                                   Index order)
{
    // Decay rate of (S u) o mu: poles at 1 / conj(mu(b_k)) and, through mu
    // itself, at 1 / conj(alpha).
    double rho = std::abs(mu.alpha());
    for (const auto& t : sym.poles())
    {
        rho = std::max(rho, std::abs(mu(t.b)));
    }
    Index needed = default_grid_size(order + 1);
    if (rho > 1e-3)
    {
        const double extra = std::log(1e-18) / std::log(rho);
        needed = std::max(needed, next_power_of_two(order + 1 + static_cast<Index>(std::ceil(extra))));
    }
    needed = std::max(needed, composition_grid_size(sym.poly_degree() + 1, mu, 2));

    const BoundaryGrid g = sample(
        [&](Complex z) {
            Complex w = mu(z);
            w /= std::max(1.0, std::abs(w));
            return w * sym(w);
        },
        needed);
    Projection proj = boundary_to_coefficients(g, order + 1);
    HardyVector w   = coshift(proj.value).resized(order);
    proj.value      = -1.0 * w;
    return proj;
}

} // namespace hardy
