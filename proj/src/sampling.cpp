#include <hardy/sampling.hpp>

#include <cmath>
#include <numbers>

namespace hardy
{

double Rng::uniform()
{
    return static_cast<double>(m_engine() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi)
{
    return lo + (hi - lo) * uniform();
}

Index Rng::integer(Index lo, Index hi)
{
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<Index>(m_engine() % span);
}

Complex Rng::disk_point(double radius)
{
    const double r = radius * std::sqrt(uniform());
    return std::polar(r, 2.0 * std::numbers::pi * uniform());
}

Complex Rng::unimodular()
{
    return std::polar(1.0, 2.0 * std::numbers::pi * uniform());
}

namespace
{

template <typename Accept>
Complex draw_separated(Rng& rng, double radius, const Accept& accept)
{
    for (int attempt = 0; attempt < 1000; ++attempt)
    {
        const Complex z = rng.disk_point(radius);
        if (accept(z))
            return z;
    }
    throw std::runtime_error("sampling: could not place a separated point");
}

} // namespace

RationalSymbol random_symbol(Rng& rng, const SymbolDraw& draw)
{
    const Index deg = rng.integer(0, draw.max_poly_degree);
    std::vector<Complex> poly;
    for (Index k = 0; k <= deg; ++k)
        poly.emplace_back(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));

    const Index npoles = rng.integer(0, draw.max_poles);
    std::vector<PoleTerm> poles;
    for (Index k = 0; k < npoles; ++k)
    {
        const Complex b = draw_separated(rng, draw.max_pole_modulus, [&](Complex z) {
            for (const PoleTerm& t : poles)
                if (std::abs(z - t.b) < draw.min_pole_separation)
                    return false;
            return true;
        });
        const Complex c(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        poles.push_back(PoleTerm{b, 1, c});
    }
    return RationalSymbol(std::move(poly), std::move(poles));
}

BlaschkeProduct random_blaschke(Rng& rng, Index max_degree, double max_modulus,
                                double min_separation)
{
    const Index d = rng.integer(1, max_degree);
    std::vector<Complex> zeros;
    for (Index k = 0; k < d; ++k)
    {
        zeros.push_back(draw_separated(rng, max_modulus, [&](Complex z) {
            for (const Complex& a : zeros)
                if (std::abs(z - a) < min_separation)
                    return false;
            return true;
        }));
    }
    return BlaschkeProduct(rng.unimodular(), std::move(zeros));
}

HardyVector random_vector(Rng& rng, Index order)
{
    CVector v(order);
    for (Index i = 0; i < order; ++i)
        v[i] = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
    v /= v.norm();
    return HardyVector(std::move(v));
}

} // namespace hardy
