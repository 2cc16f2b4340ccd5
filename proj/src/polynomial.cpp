#include <hardy/polynomial.hpp>

#include <algorithm>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace hardy
{

Polynomial poly_multiply(const Polynomial& a, const Polynomial& b)
{
    if (a.empty() || b.empty())
    {
        return {};
    }
    Polynomial c(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        for (std::size_t j = 0; j < b.size(); ++j)
        {
            c[i + j] += a[i] * b[j];
        }
    }
    return c;
}

Polynomial poly_from_factors(const std::vector<Complex>& roots, Complex scale)
{
    Polynomial p{scale};
    for (const auto& r : roots)
    {
        p = poly_multiply(p, Polynomial{r, -1.0});
    }
    return p;
}

Complex poly_eval(const Polynomial& p, Complex z)
{
    Complex acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it)
    {
        acc = acc * z + *it;
    }
    return acc;
}

std::vector<Complex> poly_roots(Polynomial p)
{
    double scale = 0.0;
    for (const auto& c : p)
    {
        scale = std::max(scale, std::abs(c));
    }
    if (scale == 0.0)
    {
        throw std::invalid_argument("poly_roots: zero polynomial");
    }
    while (!p.empty() && std::abs(p.back()) <= 1e-15 * scale)
    {
        p.pop_back();
    }
    std::vector<Complex> roots;
    std::size_t lead = 0;
    while (lead < p.size() && p[lead] == Complex(0.0))
    {
        roots.emplace_back(0.0);
        ++lead;
    }
    p.erase(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(lead));
    const Index deg = static_cast<Index>(p.size()) - 1;
    if (deg <= 0)
    {
        return roots;
    }
    CMatrix companion = CMatrix::Zero(deg, deg);
    for (Index i = 1; i < deg; ++i)
    {
        companion(i, i - 1) = 1.0;
    }
    for (Index i = 0; i < deg; ++i)
    {
        companion(i, deg - 1) = -p[static_cast<std::size_t>(i)] / p.back();
    }
    Eigen::ComplexEigenSolver<CMatrix> solver(companion, false);
    if (solver.info() != Eigen::Success)
    {
        throw std::runtime_error("poly_roots: companion eigensolver failed");
    }
    for (Index i = 0; i < deg; ++i)
    {
        roots.push_back(solver.eigenvalues()[i]);
    }
    // Deterministic order: by modulus, then argument.
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        if (std::abs(a) != std::abs(b))
        {
            return std::abs(a) < std::abs(b);
        }
        return std::arg(a) < std::arg(b);
    });
    return roots;
}

HardyVector series_quotient(const Polynomial& num, const Polynomial& den,
                            Index order)
{
    if (den.empty() || den[0] == Complex(0.0))
    {
        throw std::invalid_argument("series_quotient: den(0) must be nonzero");
    }
    CVector c = CVector::Zero(order);
    for (Index n = 0; n < order; ++n)
    {
        Complex acc = static_cast<std::size_t>(n) < num.size()
                          ? num[static_cast<std::size_t>(n)]
                          : Complex(0.0);
        const Index kmax = std::min<Index>(n, static_cast<Index>(den.size()) - 1);
        for (Index k = 1; k <= kmax; ++k)
        {
            acc -= den[static_cast<std::size_t>(k)] * c[n - k];
        }
        c[n] = acc / den[0];
    }
    return HardyVector(std::move(c));
}

} // namespace hardy
