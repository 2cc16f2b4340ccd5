#include <hardy/symbol_model.hpp>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <Eigen/QR>

#include <hardy/blaschke_model.hpp>

namespace hardy
{

namespace
{

/// C(n + m - 1, m - 1), the Taylor weight of (1 - w z)^{-m}.
double binomial_weight(Index n, int m)
{
    double w = 1.0;
    for (int j = 1; j < m; ++j)
    {
        w *= static_cast<double>(n + j) / static_cast<double>(j);
    }
    return w;
}

double pole_term_tail(const PoleTerm& t, Index order)
{
    const double r = std::abs(t.b);
    const double c = std::abs(t.c);
    if (c == 0.0)
    {
        return 0.0;
    }
    if (r == 0.0)
    {
        return order >= 1 ? 0.0 : c;
    }
    if (t.m == 1)
    {
        return c * std::pow(r, static_cast<double>(order)) /
               std::sqrt(1.0 - r * r);
    }
    // Explicit sum of a block of terms, then a geometric bound using the
    // (decreasing) ratio of consecutive terms.
    constexpr Index block = 4096;
    double sum  = 0.0;
    double term = binomial_weight(order, t.m) * std::pow(r, static_cast<double>(order));
    Index n     = order;
    for (Index j = 0; j < block && term > 0.0; ++j, ++n)
    {
        sum += term * term;
        term *= r * static_cast<double>(n + t.m) / static_cast<double>(n + 1);
    }
    const double ratio = r * static_cast<double>(n + t.m) / static_cast<double>(n + 1);
    if (term > 0.0)
    {
        if (ratio >= 1.0)
        {
            return std::numeric_limits<double>::infinity();
        }
        sum += term * term / (1.0 - ratio * ratio);
    }
    return c * std::sqrt(sum);
}

} // namespace

RationalSymbol::RationalSymbol(std::vector<Complex> poly,
                               std::vector<PoleTerm> poles)
    : m_poly(std::move(poly)), m_poles(std::move(poles))
{
    for (std::size_t k = 0; k < m_poly.size(); ++k)
    {
        if (!std::isfinite(m_poly[k].real()) || !std::isfinite(m_poly[k].imag()))
        {
            std::ostringstream msg;
            msg << "polynomial coefficient " << k << " is not finite";
            throw std::invalid_argument(msg.str());
        }
    }
    for (std::size_t k = 0; k < m_poles.size(); ++k)
    {
        const auto& t = m_poles[k];
        if (!(std::abs(t.b) < 1.0))
        {
            std::ostringstream msg;
            msg.precision(17);
            msg << "pole " << k << " has |b| = " << std::abs(t.b)
                << " (b = " << t.b.real() << (t.b.imag() < 0 ? "" : "+")
                << t.b.imag() << "i); poles require |b| < 1";
            throw std::invalid_argument(msg.str());
        }
        if (t.m < 1 || t.m > max_pole_multiplicity)
        {
            std::ostringstream msg;
            msg << "pole " << k << " has multiplicity " << t.m
                << "; supported range is 1.." << max_pole_multiplicity;
            throw std::invalid_argument(msg.str());
        }
        if (!std::isfinite(std::abs(t.c)))
        {
            std::ostringstream msg;
            msg << "pole " << k << " has a non-finite coefficient";
            throw std::invalid_argument(msg.str());
        }
    }
}

RationalSymbol RationalSymbol::from_coefficients(const HardyVector& coeffs)
{
    std::vector<Complex> poly(coeffs.coeffs().begin(), coeffs.coeffs().end());
    return RationalSymbol(std::move(poly), {});
}

bool RationalSymbol::is_zero() const
{
    for (const auto& c : m_poly)
    {
        if (c != Complex(0.0))
        {
            return false;
        }
    }
    for (const auto& t : m_poles)
    {
        if (t.c != Complex(0.0))
        {
            return false;
        }
    }
    return true;
}

Complex RationalSymbol::operator()(Complex z) const
{
    Complex acc = 0.0;
    for (auto it = m_poly.rbegin(); it != m_poly.rend(); ++it)
    {
        acc = acc * z + *it;
    }
    for (const auto& t : m_poles)
    {
        acc += t.c / std::pow(1.0 - std::conj(t.b) * z, t.m);
    }
    return acc;
}

Index RationalSymbol::poly_degree() const
{
    for (Index k = static_cast<Index>(m_poly.size()) - 1; k >= 0; --k)
    {
        if (m_poly[static_cast<std::size_t>(k)] != Complex(0.0))
        {
            return k;
        }
    }
    return -1;
}

Index RationalSymbol::kronecker_rank_bound() const
{
    Index rank = poly_degree() + 1;
    for (const auto& t : m_poles)
    {
        if (t.c != Complex(0.0))
        {
            rank += t.m;
        }
    }
    return rank;
}

HardyVector fourier_coefficients(const RationalSymbol& sym, Index order)
{
    CVector c = CVector::Zero(order);
    const auto& poly = sym.poly();
    for (Index n = 0; n < std::min<Index>(order, static_cast<Index>(poly.size())); ++n)
    {
        c[n] = poly[static_cast<std::size_t>(n)];
    }
    for (const auto& t : sym.poles())
    {
        const Complex w = std::conj(t.b);
        Complex power   = 1.0;
        for (Index n = 0; n < order; ++n)
        {
            c[n] += t.c * binomial_weight(n, t.m) * power;
            power *= w;
        }
    }
    return HardyVector(std::move(c));
}

double tail_bound(const RationalSymbol& sym, Index order)
{
    double bound = 0.0;
    const auto& poly = sym.poly();
    double poly_tail = 0.0;
    for (std::size_t n = static_cast<std::size_t>(std::max<Index>(order, 0)); n < poly.size(); ++n)
    {
        poly_tail += std::norm(poly[n]);
    }
    bound += std::sqrt(poly_tail);
    for (const auto& t : sym.poles())
    {
        bound += pole_term_tail(t, order);
    }
    return bound;
}

RationalSymbol symbol_from_inner(const BlaschkeProduct& theta, Index order)
{
    // Distinct nonzero zeros with multiplicities; zeros at the origin only
    // feed the polynomial part.
    struct Cluster
    {
        Complex b;
        int m;
    };
    std::vector<Cluster> clusters;
    Index origin = 0;
    for (const auto& a : theta.zeros())
    {
        if (std::abs(a) < 1e-14)
        {
            ++origin;
            continue;
        }
        bool merged = false;
        for (auto& cl : clusters)
        {
            if (std::abs(cl.b - a) < 1e-12)
            {
                ++cl.m;
                merged = true;
                break;
            }
        }
        if (!merged)
        {
            clusters.push_back({a, 1});
        }
    }
    for (const auto& cl : clusters)
    {
        if (cl.m > max_pole_multiplicity)
        {
            throw std::invalid_argument(
                "symbol_from_inner: zero multiplicity above 4 is not supported");
        }
    }

    Index unknowns = origin;
    for (const auto& cl : clusters)
    {
        unknowns += cl.m;
    }
    const Index rows = std::max<Index>({2 * order, 64, 4 * unknowns});
    // u_hat(n) = theta_hat(n + 1)
    const HardyVector theta_hat = theta.coefficients(rows + 1);
    CVector target              = theta_hat.coeffs().tail(rows);

    if (unknowns == 0)
    {
        return RationalSymbol();
    }

    CMatrix design = CMatrix::Zero(rows, unknowns);
    Index col      = 0;
    for (Index k = 0; k < origin; ++k)
    {
        design(k, col++) = 1.0;
    }
    for (const auto& cl : clusters)
    {
        for (int j = 1; j <= cl.m; ++j)
        {
            Complex power = 1.0;
            for (Index n = 0; n < rows; ++n)
            {
                design(n, col) = binomial_weight(n, j) * power;
                power *= std::conj(cl.b);
            }
            ++col;
        }
    }
    Eigen::VectorXd scale = design.colwise().norm().transpose();
    for (Index j = 0; j < unknowns; ++j)
    {
        design.col(j) /= scale[j];
    }
    CVector x = design.colPivHouseholderQr().solve(target);
    const double residual = (design * x - target).norm();
    if (residual > 1e-10 * std::max(target.norm(), 1e-300))
    {
        std::ostringstream msg;
        msg << "symbol_from_inner: partial-fraction fit residual " << residual
            << " too large";
        throw std::runtime_error(msg.str());
    }
    for (Index j = 0; j < unknowns; ++j)
    {
        x[j] /= scale[j];
    }

    std::vector<Complex> poly(x.data(), x.data() + origin);
    std::vector<PoleTerm> poles;
    col = origin;
    for (const auto& cl : clusters)
    {
        for (int j = 1; j <= cl.m; ++j)
        {
            poles.push_back({cl.b, j, x[col++]});
        }
    }
    return RationalSymbol(std::move(poly), std::move(poles));
}

} // namespace hardy
