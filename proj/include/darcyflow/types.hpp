#pragma once

// Domain types shared by every module. All values are SI.
// Cell arrays are stored [k][j][i] with i fastest; time series add a leading
// [t] axis.

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace darcyflow {

enum class Phase { water, oil };

inline const char* phase_name(Phase p) { return p == Phase::water ? "water" : "oil"; }

struct CellIndex {
    int i = 0;
    int j = 0;
    int k = 0;

    friend bool operator==(const CellIndex&, const CellIndex&) = default;
    friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

enum class Axis { x, y, z };

struct Grid {
    int nx = 1, ny = 1, nz = 1;
    double dx = 1.0, dy = 1.0, dz = 1.0;  // m

    std::size_t cell_count() const
    {
        return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny) *
               static_cast<std::size_t>(nz);
    }

    std::size_t index(int i, int j, int k) const
    {
        return (static_cast<std::size_t>(k) * static_cast<std::size_t>(ny) +
                static_cast<std::size_t>(j)) * static_cast<std::size_t>(nx) +
               static_cast<std::size_t>(i);
    }
    std::size_t index(const CellIndex& c) const { return index(c.i, c.j, c.k); }

    CellIndex cell(std::size_t idx) const
    {
        const auto nxs = static_cast<std::size_t>(nx);
        const auto nys = static_cast<std::size_t>(ny);
        return {static_cast<int>(idx % nxs), static_cast<int>((idx / nxs) % nys),
                static_cast<int>(idx / (nxs * nys))};
    }

    bool contains(const CellIndex& c) const
    {
        return c.i >= 0 && c.i < nx && c.j >= 0 && c.j < ny && c.k >= 0 && c.k < nz;
    }

    double cell_volume() const { return dx * dy * dz; }

    double spacing(Axis a) const
    {
        switch (a) {
        case Axis::x: return dx;
        case Axis::y: return dy;
        case Axis::z: return dz;
        }
        return dx;
    }

    friend bool operator==(const Grid&, const Grid&) = default;
};

/// Corey power-law closure parameters for one phase.
struct CoreyParams {
    double k_end = 1.0;  // endpoint relative permeability
    double s_c = 0.0;    // critical saturation
    double a = 2.0;      // exponent
};

struct FluidPhase {
    double rho = 1000.0;  // kg/m^3
    double mu = 1e-3;     // Pa s
    double c = 0.0;       // 1/Pa
    CoreyParams corey;
};

/// Isotropic permeability (m^2) and porosity per cell.
struct RockField {
    std::vector<double> perm;
    std::vector<double> poro;
};

/// Pressure and water saturation at one time level.
struct State {
    std::vector<double> pressure;  // Pa
    std::vector<double> sat_w;
};

/// P and S_w at nt+1 time levels, flattened [t][k][j][i].
struct FieldSeries {
    std::size_t cells = 0;  // cells per slice
    std::vector<double> pressure;
    std::vector<double> sat_w;
    std::vector<double> times;  // s

    std::size_t slice_count() const { return times.size(); }

    std::span<const double> pressure_at(std::size_t t) const
    {
        return std::span<const double>(pressure).subspan(t * cells, cells);
    }
    std::span<const double> sat_w_at(std::size_t t) const
    {
        return std::span<const double>(sat_w).subspan(t * cells, cells);
    }

    State slice(std::size_t t) const
    {
        if (t >= slice_count())
            throw std::out_of_range("FieldSeries::slice: index " + std::to_string(t));
        auto p = pressure_at(t);
        auto s = sat_w_at(t);
        return State{{p.begin(), p.end()}, {s.begin(), s.end()}};
    }

    void append(const State& s, double time)
    {
        if (cells == 0)
            cells = s.pressure.size();
        if (s.pressure.size() != cells || s.sat_w.size() != cells)
            throw std::invalid_argument("FieldSeries::append: slice size mismatch");
        pressure.insert(pressure.end(), s.pressure.begin(), s.pressure.end());
        sat_w.insert(sat_w.end(), s.sat_w.begin(), s.sat_w.end());
        times.push_back(time);
    }
};

enum class WellKind { producer, water_injector };

struct WellSpec {
    std::string name;
    WellKind kind = WellKind::producer;
    std::vector<CellIndex> cells;
    double bhp = 0.0;  // Pa
    double rw = 0.1;   // m
};

} // namespace darcyflow
