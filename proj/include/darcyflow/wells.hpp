#pragma once

// Peaceman well model with bottom-hole-pressure control.
//
//   rate = 2 pi K dz / ln(r0 / rw) * kr rho / mu * (P - bhp)      [kg/s]
//
// Positive rates leave the reservoir. Producers use the cell's relative
// permeability; water injectors use the water endpoint krw(1 - s_c) and carry
// no oil.

#include "darcyflow/config.hpp"
#include "darcyflow/types.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace darcyflow::wells {

/// Peaceman equivalent radius r0 = 0.14 sqrt(dx^2 + dy^2).
double equivalent_radius(double dx, double dy);

/// Geometric well index 2 pi K dz / ln(r0 / rw) in m^3.
double well_index(double perm, const Grid& grid, double rw);

struct CellState {
    double pressure = 0.0;  // Pa
    double sat_w = 0.0;
    double perm = 0.0;      // m^2
    double dz = 0.0;        // m
};

/// Mass rate (kg/s) of `phase` through one perforation of `well`.
/// Throws std::invalid_argument if `cell` is not perforated by `well`.
double well_rate(Phase phase, const WellSpec& well, const CellIndex& cell,
                 const CellState& state, const SimConfig& cfg);

struct RateDerivatives {
    double rate = 0.0;
    double d_pressure = 0.0;
    double d_sat_w = 0.0;
};

/// Rate and its partial derivatives, without the perforation check.
RateDerivatives perforation_rate(Phase phase, const WellSpec& well, const CellState& state,
                                 const SimConfig& cfg);

/// Sum of all well mass rates of `phase` leaving cell `cell` (kg/s).
RateDerivatives cell_source(Phase phase, const CellIndex& cell, const CellState& state,
                            const SimConfig& cfg);

/// How cumulative mass is accumulated from the per-slice rates.
enum class CumulativeRule {
    implicit,     // rate at the end of each step times dt (matches the solver)
    trapezoidal,  // average of the two slice rates times dt
};

struct PhaseSeries {
    std::vector<double> rate;        // kg/s, one per slice
    std::vector<double> cumulative;  // kg, one per slice, starts at 0
};

struct WellProduction {
    std::string name;
    WellKind kind = WellKind::producer;
    PhaseSeries water;
    PhaseSeries oil;

    const PhaseSeries& phase(Phase p) const { return p == Phase::water ? water : oil; }
};

struct ProductionTable {
    std::vector<double> times;  // s
    std::vector<WellProduction> wells;
};

ProductionTable production_series(const FieldSeries& series, const SimConfig& cfg,
                                  CumulativeRule rule = CumulativeRule::implicit);

/// CSV with header `well,phase,step,time_days,rate_kg_per_s,cumulative_kg`.
void write_production_csv(const ProductionTable& table, std::ostream& os);

/// Parses the CSV emitted by write_production_csv. Well kinds are not stored
/// and come back as producers.
ProductionTable read_production_csv(std::istream& is);

} // namespace darcyflow::wells
