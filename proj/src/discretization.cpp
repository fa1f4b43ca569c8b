#include "darcyflow/discretization.hpp"

#include "darcyflow/relperm.hpp"
#include "darcyflow/wells.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace darcyflow::discretization {

double harmonic_mean(double ka, double kb)
{
    if (!(ka >= 0.0) || !(kb >= 0.0))
        throw std::invalid_argument("harmonic_mean: permeabilities must be >= 0");
    const double sum = ka + kb;
    if (sum == 0.0)
        return 0.0;
    return 2.0 * ka * kb / sum;
}

bool upwind_is_a(Phase phase, const CoreyParams& p, double pressure_a, double pressure_b,
                 double sw_a, double sw_b)
{
    if (pressure_a != pressure_b)
        return pressure_a > pressure_b;
    return !(relperm::kr(phase, sw_b, p) > relperm::kr(phase, sw_a, p));
}

double upwind_saturation(Phase phase, const CoreyParams& p, double pressure_a,
                         double pressure_b, double sw_a, double sw_b)
{
    return upwind_is_a(phase, p, pressure_a, pressure_b, sw_a, sw_b) ? sw_a : sw_b;
}

namespace {

std::string to_string(const CellIndex& c)
{
    return "(" + std::to_string(c.i) + "," + std::to_string(c.j) + "," + std::to_string(c.k) +
           ")";
}

struct Kernel {
    Phase phase;
    const SimConfig& cfg;
    const State& n;
    const State& np1;
    double dt;

    const FluidPhase& fluid() const { return cfg.fluid(phase); }

    double sat(const std::vector<double>& sw, std::size_t idx) const
    {
        return phase == Phase::water ? sw[idx] : 1.0 - sw[idx];
    }

    // Flux T (P_hi - P_lo) across the face between `lo` and its +axis
    // neighbour `hi`. Identical bits whichever cell asks for it.
    double face_flux(std::size_t lo, std::size_t hi, double spacing) const
    {
        const FluidPhase& f = fluid();
        const double sw_up = upwind_saturation(phase, f.corey, np1.pressure[lo],
                                               np1.pressure[hi], np1.sat_w[lo], np1.sat_w[hi]);
        const double kh = harmonic_mean(cfg.rock.perm[lo], cfg.rock.perm[hi]);
        const double coef =
            f.rho * kh * relperm::kr(phase, sw_up, f.corey) / f.mu / (spacing * spacing);
        return coef * (np1.pressure[hi] - np1.pressure[lo]);
    }

    ResidualTerms terms(const CellIndex& c) const
    {
        const Grid& g = cfg.grid;
        const FluidPhase& f = fluid();
        const std::size_t idx = g.index(c);
        ResidualTerms t;

        if (c.i + 1 < g.nx)
            t.x_plus = face_flux(idx, g.index(c.i + 1, c.j, c.k), g.dx);
        if (c.i > 0)
            t.x_minus = -face_flux(g.index(c.i - 1, c.j, c.k), idx, g.dx);
        if (c.j + 1 < g.ny)
            t.y_plus = face_flux(idx, g.index(c.i, c.j + 1, c.k), g.dy);
        if (c.j > 0)
            t.y_minus = -face_flux(g.index(c.i, c.j - 1, c.k), idx, g.dy);
        if (c.k + 1 < g.nz)
            t.z_plus = face_flux(idx, g.index(c.i, c.j, c.k + 1), g.dz);
        if (c.k > 0)
            t.z_minus = -face_flux(g.index(c.i, c.j, c.k - 1), idx, g.dz);

        if (!cfg.wells.empty()) {
            const wells::CellState cs{np1.pressure[idx], np1.sat_w[idx], cfg.rock.perm[idx],
                                      g.dz};
            const double rate = wells::cell_source(phase, c, cs, cfg).rate;
            t.source = -rate / g.cell_volume();
        }

        const double phi = cfg.rock.poro[idx];
        t.compressibility = -(phi * f.c * sat(n.sat_w, idx) * f.rho *
                              (np1.pressure[idx] - n.pressure[idx]) / dt);
        t.accumulation = -(phi * f.rho * (sat(np1.sat_w, idx) - sat(n.sat_w, idx)) / dt);
        return t;
    }
};

void check_shapes(const State& n, const State& np1, const SimConfig& cfg)
{
    const std::size_t cells = cfg.grid.cell_count();
    if (n.pressure.size() != cells || n.sat_w.size() != cells || np1.pressure.size() != cells ||
        np1.sat_w.size() != cells)
        throw std::invalid_argument("residual: state shape does not match grid of " +
                                    std::to_string(cells) + " cells");
    if (cfg.rock.perm.size() != cells || cfg.rock.poro.size() != cells)
        throw std::invalid_argument("residual: rock shape does not match grid");
}

} // namespace

double face_coefficient(Phase phase, const SimConfig& cfg, const CellIndex& a,
                        const CellIndex& b, double sw_upwind)
{
    const Grid& g = cfg.grid;
    if (!g.contains(a))
        throw std::out_of_range("face_coefficient: cell " + to_string(a) + " outside grid");
    const int dist = std::abs(a.i - b.i) + std::abs(a.j - b.j) + std::abs(a.k - b.k);
    if (dist != 1)
        throw std::invalid_argument("face_coefficient: cells " + to_string(a) + " and " +
                                    to_string(b) + " are not face neighbours");
    if (!g.contains(b))
        return 0.0;

    const double spacing = a.i != b.i ? g.dx : (a.j != b.j ? g.dy : g.dz);
    const FluidPhase& f = cfg.fluid(phase);
    const double kh = harmonic_mean(cfg.rock.perm[g.index(a)], cfg.rock.perm[g.index(b)]);
    return f.rho * kh * relperm::kr(phase, sw_upwind, f.corey) / f.mu / (spacing * spacing);
}

ResidualTerms residual_terms(Phase phase, const CellIndex& cell, const State& state_n,
                             const State& state_np1, const SimConfig& cfg)
{
    check_shapes(state_n, state_np1, cfg);
    if (!cfg.grid.contains(cell))
        throw std::out_of_range("residual_cell: cell " + to_string(cell) + " outside grid");
    return Kernel{phase, cfg, state_n, state_np1, cfg.dt}.terms(cell);
}

double residual_cell(Phase phase, const CellIndex& cell, const State& state_n,
                     const State& state_np1, const SimConfig& cfg)
{
    return residual_terms(phase, cell, state_n, state_np1, cfg).total();
}

double ResidualField::max_abs() const
{
    double m = 0.0;
    for (double v : values)
        m = std::max(m, std::abs(v));
    return m;
}

namespace {

ResidualField field_with_dt(Phase phase, const State& n, const State& np1, const SimConfig& cfg,
                            double dt)
{
    const Grid& g = cfg.grid;
    const Kernel kernel{phase, cfg, n, np1, dt};
    ResidualField out;
    out.values.resize(g.cell_count());
    for (std::size_t idx = 0; idx < out.values.size(); ++idx)
        out.values[idx] = kernel.terms(g.cell(idx)).total();
    return out;
}

} // namespace

ResidualField residual_field(Phase phase, const State& state_n, const State& state_np1,
                             const SimConfig& cfg)
{
    check_shapes(state_n, state_np1, cfg);
    return field_with_dt(phase, state_n, state_np1, cfg, cfg.dt);
}

ResidualField residual_field(Phase phase, const State& state_n, const State& state_np1,
                             const SimConfig& cfg, double dt)
{
    check_shapes(state_n, state_np1, cfg);
    return field_with_dt(phase, state_n, state_np1, cfg, dt);
}

double residual_scale(Phase phase, const SimConfig& cfg)
{
    return cfg.dt / cfg.fluid(phase).rho;
}

double pairwise_sum(std::span<const double> values)
{
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values)
            s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

PhysicsLossReport evaluate_series(const FieldSeries& series, const SimConfig& cfg)
{
    if (series.slice_count() < 2)
        throw std::invalid_argument("physics_loss: series needs at least 2 time slices, got " +
                                    std::to_string(series.slice_count()));
    if (series.cells != cfg.grid.cell_count())
        throw std::invalid_argument("physics_loss: series does not match grid");

    PhysicsLossReport report;
    std::vector<double> squares;
    std::vector<double> scaled_squares;
    const std::size_t transitions = series.slice_count() - 1;
    squares.reserve(2 * transitions * series.cells);
    scaled_squares.reserve(squares.capacity());

    State prev = series.slice(0);
    for (std::size_t t = 1; t < series.slice_count(); ++t) {
        State next = series.slice(t);
        const double dt = series.times[t] - series.times[t - 1];
        StepResidual sr;
        sr.step = t;
        sr.dt = dt;
        for (Phase phase : {Phase::water, Phase::oil}) {
            const ResidualField f = field_with_dt(phase, prev, next, cfg, dt);
            const double scale = dt / cfg.fluid(phase).rho;
            for (double v : f.values) {
                squares.push_back(v * v);
                scaled_squares.push_back((v * scale) * (v * scale));
            }
            const double m = f.max_abs();
            (phase == Phase::water ? sr.max_abs_water : sr.max_abs_oil) = m;
            sr.max_abs_scaled = std::max(sr.max_abs_scaled, m * scale);
        }
        report.steps.push_back(sr);
        prev = std::move(next);
    }
    const double count = static_cast<double>(squares.size());
    report.loss = pairwise_sum(squares) / count;
    report.scaled_loss = pairwise_sum(scaled_squares) / count;
    return report;
}

double physics_loss(const FieldSeries& series, const SimConfig& cfg)
{
    return evaluate_series(series, cfg).loss;
}

} // namespace darcyflow::discretization
