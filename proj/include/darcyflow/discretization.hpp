#pragma once

// Seven-point finite-difference residual of the two-phase mass balance and
// the physics loss built on it. For phase l and cell (i,j,k):
//
//   N = T[i+1/2](P[i+1] - P[i]) - T[i-1/2](P[i] - P[i-1])     (same for y, z)
//     + q
//     - phi C S^n rho (P^{n+1} - P^n) / dt
//     - phi rho (S^{n+1} - S^n) / dt
//
// with T = rho K_h kr / mu / d^2, K_h the harmonic mean of the two cell
// permeabilities and kr taken from the upstream cell at the new time level.
// Pressures are P^{n+1}. Faces on the domain boundary carry no flow. q is the
// well mass source per unit bulk volume (negative for production).
//
// Units of N are kg/(m^3 s). The Newton solver works with the scaled
// residual N * dt / rho (bulk-volume fraction per step); see residual_scale().

#include "darcyflow/config.hpp"
#include "darcyflow/types.hpp"

#include <vector>

namespace darcyflow::discretization {

/// 2 ka kb / (ka + kb); 0 when both are 0. Negative input throws.
double harmonic_mean(double ka, double kb);

/// Grouped face factor rho K_h kr(sw_upwind) / mu / d^2 between cells a and b.
/// Returns 0 when b lies outside the grid (no-flow boundary). Throws if a is
/// outside the grid or b is not a face neighbour of a.
double face_coefficient(Phase phase, const SimConfig& cfg, const CellIndex& a,
                        const CellIndex& b, double sw_upwind);

/// True if cell a is upstream of the face between a and b: a has the higher
/// new pressure; on ties the cell with the larger kr, then a.
bool upwind_is_a(Phase phase, const CoreyParams& p, double pressure_a, double pressure_b,
                 double sw_a, double sw_b);

/// Water saturation of the upstream cell, see upwind_is_a.
double upwind_saturation(Phase phase, const CoreyParams& p, double pressure_a,
                         double pressure_b, double sw_a, double sw_b);

/// The individual terms of N for one cell, each with its sign applied so that
/// total() = x_plus + x_minus + y_plus + y_minus + z_plus + z_minus
///         + source + compressibility + accumulation.
struct ResidualTerms {
    double x_plus = 0.0;
    double x_minus = 0.0;
    double y_plus = 0.0;
    double y_minus = 0.0;
    double z_plus = 0.0;
    double z_minus = 0.0;
    double source = 0.0;
    double compressibility = 0.0;
    double accumulation = 0.0;

    double total() const
    {
        return x_plus + x_minus + y_plus + y_minus + z_plus + z_minus + source +
               compressibility + accumulation;
    }
};

/// Term-wise evaluation of N at (i,j,k) using the time step cfg.dt.
ResidualTerms residual_terms(Phase phase, const CellIndex& cell, const State& state_n,
                             const State& state_np1, const SimConfig& cfg);

double residual_cell(Phase phase, const CellIndex& cell, const State& state_n,
                     const State& state_np1, const SimConfig& cfg);

/// Per-cell residual of one phase over the grid, [k][j][i] order.
struct ResidualField {
    std::vector<double> values;  // kg/(m^3 s)

    double max_abs() const;
};

ResidualField residual_field(Phase phase, const State& state_n, const State& state_np1,
                             const SimConfig& cfg);

/// As above with an explicit time step in place of cfg.dt.
ResidualField residual_field(Phase phase, const State& state_n, const State& state_np1,
                             const SimConfig& cfg, double dt);

/// Factor mapping N to the solver's scaled residual: dt / rho.
double residual_scale(Phase phase, const SimConfig& cfg);

/// Per-transition residual statistics from evaluate_series.
struct StepResidual {
    std::size_t step = 0;  // transition step-1 -> step
    double dt = 0.0;
    double max_abs_water = 0.0;
    double max_abs_oil = 0.0;
    double max_abs_scaled = 0.0;
};

struct PhysicsLossReport {
    double loss = 0.0;         // mean of N^2, (kg/(m^3 s))^2
    double scaled_loss = 0.0;  // mean of (N dt / rho)^2
    std::vector<StepResidual> steps;
};

/// Physics loss of a whole series: mean over both phases, all transitions and
/// all cells of the squared residual. Each transition uses its own dt from
/// the series times. Throws if the series has fewer than two slices.
double physics_loss(const FieldSeries& series, const SimConfig& cfg);

PhysicsLossReport evaluate_series(const FieldSeries& series, const SimConfig& cfg);

/// Deterministic pairwise summation.
double pairwise_sum(std::span<const double> values);

} // namespace darcyflow::discretization
