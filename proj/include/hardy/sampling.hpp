///
/// \file sampling.hpp
///
/// Seeded random symbols, Blaschke products and vectors for the property
/// suites. Draws go through mt19937_64 with explicit conversions, so a seed
/// gives the same sequence on every platform.
///

#ifndef HARDY_SAMPLING_HPP
#define HARDY_SAMPLING_HPP

#include <cstdint>
#include <random>

#include <hardy/blaschke_model.hpp>
#include <hardy/symbol_model.hpp>

namespace hardy
{

class Rng
{
public:
    explicit Rng(std::uint64_t seed) : m_engine(seed) {}

    /// Uniform on [0, 1).
    double uniform();
    double uniform(double lo, double hi);
    /// Uniform integer in [lo, hi].
    Index integer(Index lo, Index hi);
    /// Uniform on the disk of the given radius (area measure).
    Complex disk_point(double radius);
    Complex unimodular();

private:
    std::mt19937_64 m_engine;
};

struct SymbolDraw
{
    Index max_poly_degree = 3;
    Index max_poles       = 4;
    double max_pole_modulus = 0.8;
    /// Minimum distance between poles, so draws stay away from confluent cases.
    double min_pole_separation = 0.05;
};

/// Polynomial part with coefficients in the unit square plus up to
/// `max_poles` simple poles with |b| <= max_pole_modulus.
RationalSymbol random_symbol(Rng& rng, const SymbolDraw& draw = {});

/// Degree in [1, max_degree], zeros with |a| <= max_modulus, random phase.
BlaschkeProduct random_blaschke(Rng& rng, Index max_degree = 5, double max_modulus = 0.7,
                                double min_separation = 0.02);

/// Unit-norm vector of the given order with random coefficients.
HardyVector random_vector(Rng& rng, Index order);

} // namespace hardy

#endif /* HARDY_SAMPLING_HPP */
