///
/// \file hardy_core.hpp
///
/// Truncated Hardy-space arithmetic on the unit disk.
///
/// An element f of H^2 is stored by its first N Taylor coefficients
/// c_0, ..., c_{N-1}. Products with functions that are only known on the unit
/// circle are realised by sampling on an equispaced boundary grid, multiplying
/// pointwise, and projecting back with an FFT (a discrete Riesz projection).
///

#ifndef HARDY_HARDY_CORE_HPP
#define HARDY_HARDY_CORE_HPP

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace hardy
{

using Index   = Eigen::Index;
using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

///
/// Element of H^2 truncated to order N (coefficients of z^0 ... z^{N-1}).
///
/// All coefficients are finite; construction from a vector containing NaN or
/// Inf throws std::invalid_argument.
///
class HardyVector
{
public:
    HardyVector() = default;

    /// Zero function of the given order.
    explicit HardyVector(Index order);

    explicit HardyVector(CVector coeffs);

    HardyVector(std::initializer_list<Complex> coeffs);

    /// The constant function 1 (the vector e_0).
    static HardyVector unit(Index order);

    static HardyVector monomial(Index k, Index order);

    /// Szego kernel k_a(z) = 1 / (1 - conj(a) z), coefficients conj(a)^n.
    static HardyVector szego_kernel(Complex a, Index order);

    Index order() const
    {
        return m_coeffs.size();
    }

    const CVector& coeffs() const
    {
        return m_coeffs;
    }

    Complex operator[](Index n) const
    {
        return m_coeffs[n];
    }

    double norm() const
    {
        return m_coeffs.norm();
    }

    /// Zero-padded or truncated copy.
    HardyVector resized(Index order) const;

    HardyVector& operator+=(const HardyVector& other);
    HardyVector& operator-=(const HardyVector& other);
    HardyVector& operator*=(Complex scale);

private:
    CVector m_coeffs;
};

HardyVector operator+(HardyVector lhs, const HardyVector& rhs);
HardyVector operator-(HardyVector lhs, const HardyVector& rhs);
HardyVector operator*(Complex scale, HardyVector f);
HardyVector operator*(HardyVector f, Complex scale);

/// H^2 inner product sum_n f_n conj(g_n); the shorter vector is zero padded.
Complex inner_product(const HardyVector& f, const HardyVector& g);

struct ShiftResult
{
    HardyVector value;
    /// |c_{N-1}| of the input, i.e. the coefficient pushed out of the
    /// truncation window.
    double truncation_loss = 0.0;
};

/// Multiplication by z, keeping the order fixed.
ShiftResult shift(const HardyVector& f);

/// Backward shift S^*: (c_0, c_1, ...) -> (c_1, c_2, ..., 0).
HardyVector coshift(const HardyVector& f);

/// Power series value at |z| <= 1 (Horner). Throws std::domain_error outside
/// the closed disk.
Complex evaluate(const HardyVector& f, Complex z);

/// Product of two power series truncated to `order`.
HardyVector multiply(const HardyVector& f, const HardyVector& g, Index order);

inline HardyVector multiply(const HardyVector& f, const HardyVector& g)
{
    return multiply(f, g, f.order());
}

//------------------------------------------------------------------------------
// Boundary grid and discrete Riesz projection
//------------------------------------------------------------------------------

///
/// Values at the M equispaced points exp(2 pi i k / M), k = 0 ... M-1.
/// M is a power of two.
///
struct BoundaryGrid
{
    std::vector<Complex> samples;

    Index size() const
    {
        return static_cast<Index>(samples.size());
    }
};

bool is_power_of_two(Index n);

/// Smallest power of two >= n (n >= 1).
Index next_power_of_two(Index n);

/// Default grid size for an analysis of order N: 2 * oversample * N.
Index default_grid_size(Index order, Index oversample = 2);

/// exp(2 pi i k / M) for k = 0 ... M-1.
std::vector<Complex> grid_points(Index grid_size);

/// Samples of a truncated power series on the boundary grid (FFT).
BoundaryGrid sample(const HardyVector& f, Index grid_size);

/// Samples of an arbitrary function of z on the boundary grid.
BoundaryGrid sample(const std::function<Complex(Complex)>& fn,
                    Index grid_size);

/// Pointwise product of two sampled functions (same grid size).
BoundaryGrid pointwise_product(const BoundaryGrid& a, const BoundaryGrid& b);

struct Projection
{
    HardyVector value;
    /// l2 norm of the negative-frequency part that P discards.
    double negative_residual = 0.0;
    /// l2 norm of the analytic part beyond the truncation order.
    double tail_residual = 0.0;
    /// l2 norm of the band around the Nyquist frequency, [3M/8, 5M/8)
    /// minus the kept coefficients; a resolved function has nothing there.
    double alias_residual = 0.0;
    bool flagged          = false;
};

///
/// Riesz projection of sampled boundary values onto H^2, truncated to
/// `order`. Requires grid size >= 2 * order. `alias_threshold` is relative to
/// the l2 norm of the samples.
///
Projection boundary_to_coefficients(const BoundaryGrid& grid, Index order,
                                    double alias_threshold = 1e-10);

} // namespace hardy

#endif /* HARDY_HARDY_CORE_HPP */
