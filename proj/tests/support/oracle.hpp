#pragma once

// Test-side reference implementations, written straight from the governing
// formulas with plain loops and no library helpers. The library must agree
// with these bit for bit where the arithmetic is the same sequence of
// operations.

#include "darcyflow/config.hpp"
#include "darcyflow/types.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using namespace darcyflow;

inline double corey(double s, double k_end, double s_c, double a)
{
    double x = (s - s_c) / (1.0 - 2.0 * s_c);
    if (x < 0.0)
        x = 0.0;
    if (x > 1.0)
        x = 1.0;
    return k_end * std::pow(x, a);
}

inline double kr(Phase ph, double sw, const FluidPhase& f)
{
    const double s = ph == Phase::water ? sw : 1.0 - sw;
    return corey(s, f.corey.k_end, f.corey.s_c, f.corey.a);
}

inline double hmean(double a, double b)
{
    if (a + b == 0.0)
        return 0.0;
    return 2.0 * a * b / (a + b);
}

// Mass rate leaving cell c through all perforations of all wells.
inline double well_out(Phase ph, const SimConfig& cfg, const State& s, int i, int j, int k)
{
    const Grid& g = cfg.grid;
    const FluidPhase& f = cfg.fluid(ph);
    const std::size_t c = g.index(i, j, k);
    double total = 0.0;
    for (const WellSpec& w : cfg.wells)
        for (const CellIndex& p : w.cells) {
            if (p.i != i || p.j != j || p.k != k)
                continue;
            const double r0 = 0.14 * std::sqrt(g.dx * g.dx + g.dy * g.dy);
            const double wi = 2.0 * std::numbers::pi * cfg.rock.perm[c] * g.dz / std::log(r0 / w.rw);
            double krel;
            if (w.kind == WellKind::water_injector) {
                if (ph == Phase::oil)
                    continue;
                krel = corey(1.0 - f.corey.s_c, f.corey.k_end, f.corey.s_c, f.corey.a);
            } else {
                krel = kr(ph, s.sat_w[c], f);
            }
            total += wi * krel * f.rho / f.mu * (s.pressure[c] - w.bhp);
        }
    return total;
}

// Naive seven-point residual of one phase over the whole grid.
inline std::vector<double> residual(Phase ph, const State& n, const State& np1,
                                    const SimConfig& cfg, double dt)
{
    const Grid& g = cfg.grid;
    const FluidPhase& f = cfg.fluid(ph);
    const auto& P = np1.pressure;
    const auto& S = np1.sat_w;
    auto id = [&](int i, int j, int k) { return g.index(i, j, k); };

    // Transmissibility-times-difference across the face between a (lower
    // index) and b (upper index), flow counted positive into a.
    auto flux = [&](std::size_t a, std::size_t b, double d) {
        std::size_t up;
        if (P[a] > P[b])
            up = a;
        else if (P[b] > P[a])
            up = b;
        else
            up = kr(ph, S[b], f) > kr(ph, S[a], f) ? b : a;
        const double T =
            f.rho * hmean(cfg.rock.perm[a], cfg.rock.perm[b]) * kr(ph, S[up], f) / f.mu / (d * d);
        return T * (P[b] - P[a]);
    };

    std::vector<double> out(g.cell_count());
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i) {
                const std::size_t c = id(i, j, k);
                const double xp = i + 1 < g.nx ? flux(c, id(i + 1, j, k), g.dx) : 0.0;
                const double xm = i > 0 ? -flux(id(i - 1, j, k), c, g.dx) : 0.0;
                const double yp = j + 1 < g.ny ? flux(c, id(i, j + 1, k), g.dy) : 0.0;
                const double ym = j > 0 ? -flux(id(i, j - 1, k), c, g.dy) : 0.0;
                const double zp = k + 1 < g.nz ? flux(c, id(i, j, k + 1), g.dz) : 0.0;
                const double zm = k > 0 ? -flux(id(i, j, k - 1), c, g.dz) : 0.0;
                const double q =
                    cfg.wells.empty() ? 0.0 : -well_out(ph, cfg, np1, i, j, k) / (g.dx * g.dy * g.dz);
                const double s_old = ph == Phase::water ? n.sat_w[c] : 1.0 - n.sat_w[c];
                const double s_new = ph == Phase::water ? S[c] : 1.0 - S[c];
                const double phi = cfg.rock.poro[c];
                const double comp = -(phi * f.c * s_old * f.rho * (P[c] - n.pressure[c]) / dt);
                const double acc = -(phi * f.rho * (s_new - s_old) / dt);
                out[c] = xp + xm + yp + ym + zp + zm + q + comp + acc;
            }
    return out;
}

// Random configuration on `grid`: lognormal permeability, random porosity,
// one producer column and one injector column.
inline SimConfig random_config(const Grid& grid, std::mt19937_64& rng, bool with_wells = true)
{
    SimConfig cfg = reference_config(grid, 1e-13, 0.2);
    std::lognormal_distribution<double> perm(std::log(2e-13), 1.5);
    std::uniform_real_distribution<double> poro(0.05, 0.35);
    for (std::size_t c = 0; c < grid.cell_count(); ++c) {
        cfg.rock.perm[c] = perm(rng);
        cfg.rock.poro[c] = poro(rng);
    }
    cfg.wells.clear();
    if (with_wells) {
        WellSpec p{"P1", WellKind::producer, {}, 300e5, 0.1};
        WellSpec w{"I1", WellKind::water_injector, {}, 380e5, 0.1};
        for (int k = 0; k < grid.nz; ++k) {
            p.cells.push_back({0, 0, k});
            w.cells.push_back({grid.nx - 1, grid.ny - 1, k});
        }
        cfg.wells = {p, w};
    }
    return cfg;
}

// Random state with pressures around 350 bar and saturations over the whole
// [0, 1] range. A fraction of cells copies its -x neighbour's pressure so the
// tie-breaking branch of upwinding is exercised.
inline State random_state(const Grid& grid, std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> p(330e5, 370e5);
    std::uniform_real_distribution<double> s(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    State st;
    st.pressure.resize(grid.cell_count());
    st.sat_w.resize(grid.cell_count());
    for (std::size_t c = 0; c < grid.cell_count(); ++c) {
        st.pressure[c] = p(rng);
        st.sat_w[c] = s(rng);
        if (c > 0 && u(rng) < 0.1)
            st.pressure[c] = st.pressure[c - 1];
    }
    return st;
}

// Mirror i -> nx-1-i of a [k][j][i] field.
inline std::vector<double> mirror_x(const std::vector<double>& v, const Grid& g)
{
    std::vector<double> out(v.size());
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 0; i < g.nx; ++i)
                out[g.index(i, j, k)] = v[g.index(g.nx - 1 - i, j, k)];
    return out;
}

// Water mass in place, kg.
inline double water_mass(const State& s, const SimConfig& cfg)
{
    double m = 0.0;
    const double v = cfg.grid.cell_volume();
    for (std::size_t c = 0; c < s.sat_w.size(); ++c)
        m += cfg.rock.poro[c] * s.sat_w[c] * cfg.water.rho * v;
    return m;
}

inline double oil_mass(const State& s, const SimConfig& cfg)
{
    double m = 0.0;
    const double v = cfg.grid.cell_volume();
    for (std::size_t c = 0; c < s.sat_w.size(); ++c)
        m += cfg.rock.poro[c] * (1.0 - s.sat_w[c]) * cfg.oil.rho * v;
    return m;
}

} // namespace oracle
