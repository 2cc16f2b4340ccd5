#include <hardy/hardy_core.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/FFT>

namespace hardy
{

namespace
{

void require_finite(const CVector& v)
{
    for (Index n = 0; n < v.size(); ++n)
    {
        if (!std::isfinite(v[n].real()) || !std::isfinite(v[n].imag()))
        {
            throw std::invalid_argument("HardyVector: coefficient " +
                                        std::to_string(n) + " is not finite");
        }
    }
}

} // namespace

HardyVector::HardyVector(Index order) : m_coeffs(CVector::Zero(order))
{
    if (order < 0)
    {
        throw std::invalid_argument("HardyVector: negative order");
    }
}

HardyVector::HardyVector(CVector coeffs) : m_coeffs(std::move(coeffs))
{
    require_finite(m_coeffs);
}

HardyVector::HardyVector(std::initializer_list<Complex> coeffs)
    : m_coeffs(static_cast<Index>(coeffs.size()))
{
    Index n = 0;
    for (const auto& c : coeffs)
    {
        m_coeffs[n++] = c;
    }
    require_finite(m_coeffs);
}

HardyVector HardyVector::unit(Index order)
{
    return monomial(0, order);
}

HardyVector HardyVector::monomial(Index k, Index order)
{
    HardyVector f(order);
    if (k < order)
    {
        f.m_coeffs[k] = 1.0;
    }
    return f;
}

HardyVector HardyVector::szego_kernel(Complex a, Index order)
{
    if (std::abs(a) >= 1.0)
    {
        throw std::domain_error("szego_kernel: |a| must be < 1");
    }
    HardyVector f(order);
    Complex power = 1.0;
    for (Index n = 0; n < order; ++n)
    {
        f.m_coeffs[n] = power;
        power *= std::conj(a);
    }
    return f;
}

HardyVector HardyVector::resized(Index order) const
{
    HardyVector out(order);
    const Index n = std::min(order, m_coeffs.size());
    out.m_coeffs.head(n) = m_coeffs.head(n);
    return out;
}

HardyVector& HardyVector::operator+=(const HardyVector& other)
{
    if (other.order() > order())
    {
        *this = resized(other.order());
    }
    m_coeffs.head(other.order()) += other.m_coeffs;
    return *this;
}

HardyVector& HardyVector::operator-=(const HardyVector& other)
{
    if (other.order() > order())
    {
        *this = resized(other.order());
    }
    m_coeffs.head(other.order()) -= other.m_coeffs;
    return *this;
}

HardyVector& HardyVector::operator*=(Complex scale)
{
    m_coeffs *= scale;
    return *this;
}

HardyVector operator+(HardyVector lhs, const HardyVector& rhs)
{
    return lhs += rhs;
}

HardyVector operator-(HardyVector lhs, const HardyVector& rhs)
{
    return lhs -= rhs;
}

HardyVector operator*(Complex scale, HardyVector f)
{
    return f *= scale;
}

HardyVector operator*(HardyVector f, Complex scale)
{
    return f *= scale;
}

Complex inner_product(const HardyVector& f, const HardyVector& g)
{
    const Index n = std::min(f.order(), g.order());
    // Eigen's dot() conjugates the first argument.
    return g.coeffs().head(n).dot(f.coeffs().head(n));
}

ShiftResult shift(const HardyVector& f)
{
    const Index n = f.order();
    ShiftResult out{HardyVector(n), 0.0};
    if (n == 0)
    {
        return out;
    }
    CVector c        = CVector::Zero(n);
    c.tail(n - 1)    = f.coeffs().head(n - 1);
    out.value        = HardyVector(std::move(c));
    out.truncation_loss = std::abs(f[n - 1]);
    return out;
}

HardyVector coshift(const HardyVector& f)
{
    const Index n = f.order();
    if (n == 0)
    {
        return f;
    }
    CVector c     = CVector::Zero(n);
    c.head(n - 1) = f.coeffs().tail(n - 1);
    return HardyVector(std::move(c));
}

Complex evaluate(const HardyVector& f, Complex z)
{
    if (std::abs(z) > 1.0 + 1e-12)
    {
        throw std::domain_error("evaluate: point outside the closed unit disk");
    }
    Complex acc = 0.0;
    for (Index n = f.order() - 1; n >= 0; --n)
    {
        acc = acc * z + f[n];
    }
    return acc;
}

HardyVector multiply(const HardyVector& f, const HardyVector& g, Index order)
{
    CVector c = CVector::Zero(order);
    const Index nf = std::min(f.order(), order);
    for (Index i = 0; i < nf; ++i)
    {
        const Complex fi = f[i];
        if (fi == Complex(0.0))
        {
            continue;
        }
        const Index ng = std::min(g.order(), order - i);
        c.segment(i, ng) += fi * g.coeffs().head(ng);
    }
    return HardyVector(std::move(c));
}

//------------------------------------------------------------------------------

bool is_power_of_two(Index n)
{
    return n > 0 && (n & (n - 1)) == 0;
}

Index next_power_of_two(Index n)
{
    Index p = 1;
    while (p < n)
    {
        p <<= 1;
    }
    return p;
}

Index default_grid_size(Index order, Index oversample)
{
    return next_power_of_two(2 * oversample * std::max<Index>(order, 1));
}

std::vector<Complex> grid_points(Index grid_size)
{
    std::vector<Complex> pts(static_cast<std::size_t>(grid_size));
    const double step = 2.0 * std::numbers::pi / static_cast<double>(grid_size);
    for (Index k = 0; k < grid_size; ++k)
    {
        pts[static_cast<std::size_t>(k)] = std::polar(1.0, step * static_cast<double>(k));
    }
    return pts;
}

BoundaryGrid sample(const HardyVector& f, Index grid_size)
{
    if (!is_power_of_two(grid_size))
    {
        throw std::invalid_argument("sample: grid size must be a power of two");
    }
    // Fold coefficients beyond the grid size (exact aliasing of z^n on the grid).
    std::vector<Complex> spectrum(static_cast<std::size_t>(grid_size), 0.0);
    for (Index n = 0; n < f.order(); ++n)
    {
        spectrum[static_cast<std::size_t>(n % grid_size)] += f[n];
    }
    Eigen::FFT<double> fft;
    std::vector<Complex> values;
    fft.inv(values, spectrum);
    for (auto& v : values)
    {
        v *= static_cast<double>(grid_size);
    }
    return BoundaryGrid{std::move(values)};
}

BoundaryGrid sample(const std::function<Complex(Complex)>& fn, Index grid_size)
{
    if (!is_power_of_two(grid_size))
    {
        throw std::invalid_argument("sample: grid size must be a power of two");
    }
    BoundaryGrid g;
    g.samples.reserve(static_cast<std::size_t>(grid_size));
    for (const auto& z : grid_points(grid_size))
    {
        g.samples.push_back(fn(z));
    }
    return g;
}

BoundaryGrid pointwise_product(const BoundaryGrid& a, const BoundaryGrid& b)
{
    if (a.size() != b.size())
    {
        throw std::invalid_argument("pointwise_product: grid size mismatch");
    }
    BoundaryGrid out;
    out.samples.resize(a.samples.size());
    for (std::size_t k = 0; k < a.samples.size(); ++k)
    {
        out.samples[k] = a.samples[k] * b.samples[k];
    }
    return out;
}

Projection boundary_to_coefficients(const BoundaryGrid& grid, Index order,
                                    double alias_threshold)
{
    const Index m = grid.size();
    if (!is_power_of_two(m) || m < 2)
    {
        throw std::invalid_argument(
            "boundary_to_coefficients: grid size must be a power of two >= 2");
    }
    if (m < 2 * order)
    {
        throw std::invalid_argument(
            "boundary_to_coefficients: grid size must be at least twice the order");
    }
    Eigen::FFT<double> fft;
    std::vector<Complex> spectrum;
    fft.fwd(spectrum, grid.samples);
    const double scale = 1.0 / static_cast<double>(m);

    Projection out;
    CVector c = CVector::Zero(order);
    double negative = 0.0;
    double tail     = 0.0;
    double alias    = 0.0;
    double total    = 0.0;
    for (Index k = 0; k < m; ++k)
    {
        const Complex v = spectrum[static_cast<std::size_t>(k)] * scale;
        const double e  = std::norm(v);
        total += e;
        if (k < order)
        {
            c[k] = v;
        }
        else if (k < m / 2)
        {
            tail += e;
        }
        else
        {
            negative += e;
        }
        if (k >= std::max(3 * m / 8, order) && k < 5 * m / 8)
        {
            alias += e;
        }
    }
    out.value             = HardyVector(std::move(c));
    out.negative_residual = std::sqrt(negative);
    out.tail_residual     = std::sqrt(tail);
    out.alias_residual    = std::sqrt(alias);
    out.flagged = out.alias_residual > alias_threshold * std::max(std::sqrt(total), 1e-300);
    return out;
}

} // namespace hardy
