#pragma once

// Binary sand/mud rock realizations.
//
// A white-noise field is drawn from a counter-based generator keyed on
// (seed, cell), smoothed with a separable moving average, and thresholded so
// that the requested fraction of cells becomes sand. Ties at the threshold go
// to mud.

#include "darcyflow/types.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace darcyflow::facies {

struct FaciesValues {
    double sand_perm = 2000.0 * 9.869233e-16;  // m^2
    double mud_perm = 20.0 * 9.869233e-16;
    double sand_poro = 0.25;
    double mud_poro = 0.1;
};

/// Smoothing lengths in metres; converted to a box radius in cells per axis
/// as round(length / spacing).
struct CorrelationLength {
    double lateral = 80.0;
    double vertical = 4.0;
};

/// SplitMix64 finaliser applied to seed and counter. Platform independent.
std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t counter);

/// Uniform double in [0, 1) with 53 random bits.
double counter_uniform(std::uint64_t seed, std::uint64_t counter);

/// Smoothed noise field (before thresholding), [k][j][i] order.
std::vector<double> smoothed_noise(std::uint64_t seed, const Grid& grid,
                                   const CorrelationLength& corr);

RockField generate_facies(std::uint64_t seed, const Grid& grid, const CorrelationLength& corr,
                          double sand_fraction, const FaciesValues& values = {});

/// Realizations for seeds seed0 .. seed0 + count - 1, one at a time.
void for_each_realization(std::uint64_t seed0, int count, const Grid& grid,
                          const CorrelationLength& corr, double sand_fraction,
                          const std::function<void(std::uint64_t seed, const RockField&)>& sink,
                          const FaciesValues& values = {});

std::vector<RockField> generate_dataset(std::uint64_t seed0, int count, const Grid& grid,
                                        const CorrelationLength& corr, double sand_fraction,
                                        const FaciesValues& values = {});

/// Fraction of cells carrying the sand permeability.
double sand_fraction_of(const RockField& rock, const FaciesValues& values = {});

} // namespace darcyflow::facies
