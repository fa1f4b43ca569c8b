#include "darcyflow/wells.hpp"

#include "darcyflow/relperm.hpp"
#include "darcyflow/units.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace darcyflow::wells {

double equivalent_radius(double dx, double dy)
{
    if (!(dx > 0.0) || !(dy > 0.0))
        throw std::invalid_argument("equivalent_radius: spacings must be positive");
    return 0.14 * std::sqrt(dx * dx + dy * dy);
}

double well_index(double perm, const Grid& grid, double rw)
{
    const double r0 = equivalent_radius(grid.dx, grid.dy);
    return 2.0 * std::numbers::pi * perm * grid.dz / std::log(r0 / rw);
}

RateDerivatives perforation_rate(Phase phase, const WellSpec& well, const CellState& state,
                                 const SimConfig& cfg)
{
    const FluidPhase& fluid = cfg.fluid(phase);
    Grid g = cfg.grid;
    g.dz = state.dz;
    const double wi = well_index(state.perm, g, well.rw);
    const double drawdown = state.pressure - well.bhp;

    RateDerivatives out;
    if (well.kind == WellKind::water_injector) {
        if (phase == Phase::oil)
            return out;
        const double kr = relperm::krw(1.0 - fluid.corey.s_c, fluid.corey);
        const double mob = wi * kr * fluid.rho / fluid.mu;
        out.rate = mob * drawdown;
        out.d_pressure = mob;
        return out;
    }

    const double kr = relperm::kr(phase, state.sat_w, fluid.corey);
    const double dkr = relperm::dkr_dsw(phase, state.sat_w, fluid.corey);
    const double mob = wi * kr * fluid.rho / fluid.mu;
    out.rate = mob * drawdown;
    out.d_pressure = mob;
    out.d_sat_w = wi * dkr * fluid.rho / fluid.mu * drawdown;
    return out;
}

double well_rate(Phase phase, const WellSpec& well, const CellIndex& cell,
                 const CellState& state, const SimConfig& cfg)
{
    if (std::find(well.cells.begin(), well.cells.end(), cell) == well.cells.end())
        throw std::invalid_argument("well_rate: cell (" + std::to_string(cell.i) + "," +
                                    std::to_string(cell.j) + "," + std::to_string(cell.k) +
                                    ") is not perforated by well " + well.name);
    return perforation_rate(phase, well, state, cfg).rate;
}

RateDerivatives cell_source(Phase phase, const CellIndex& cell, const CellState& state,
                            const SimConfig& cfg)
{
    RateDerivatives total;
    for (const auto& well : cfg.wells) {
        for (const auto& c : well.cells) {
            if (c != cell)
                continue;
            const auto r = perforation_rate(phase, well, state, cfg);
            total.rate += r.rate;
            total.d_pressure += r.d_pressure;
            total.d_sat_w += r.d_sat_w;
        }
    }
    return total;
}

ProductionTable production_series(const FieldSeries& series, const SimConfig& cfg,
                                  CumulativeRule rule)
{
    const Grid& g = cfg.grid;
    if (series.cells != g.cell_count())
        throw std::invalid_argument("production_series: series does not match grid");
    if (series.slice_count() == 0)
        throw std::invalid_argument("production_series: empty series");

    ProductionTable table;
    table.times = series.times;
    const std::size_t nt = series.slice_count();

    for (const auto& well : cfg.wells) {
        WellProduction wp;
        wp.name = well.name;
        wp.kind = well.kind;
        for (Phase phase : {Phase::water, Phase::oil}) {
            PhaseSeries& ps = phase == Phase::water ? wp.water : wp.oil;
            ps.rate.assign(nt, 0.0);
            ps.cumulative.assign(nt, 0.0);
            for (std::size_t t = 0; t < nt; ++t) {
                const auto p = series.pressure_at(t);
                const auto s = series.sat_w_at(t);
                double rate = 0.0;
                for (const auto& c : well.cells) {
                    const std::size_t idx = g.index(c);
                    const CellState cs{p[idx], s[idx], cfg.rock.perm[idx], g.dz};
                    rate += perforation_rate(phase, well, cs, cfg).rate;
                }
                ps.rate[t] = rate;
            }
            for (std::size_t t = 1; t < nt; ++t) {
                const double dt = series.times[t] - series.times[t - 1];
                const double inc = rule == CumulativeRule::implicit
                                       ? ps.rate[t] * dt
                                       : 0.5 * (ps.rate[t - 1] + ps.rate[t]) * dt;
                ps.cumulative[t] = ps.cumulative[t - 1] + inc;
            }
        }
        table.wells.push_back(std::move(wp));
    }
    return table;
}

namespace {

std::string format_double(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

void write_production_csv(const ProductionTable& table, std::ostream& os)
{
    os << "well,phase,step,time_days,rate_kg_per_s,cumulative_kg\n";
    for (const auto& w : table.wells) {
        for (Phase phase : {Phase::water, Phase::oil}) {
            const PhaseSeries& ps = w.phase(phase);
            for (std::size_t t = 0; t < table.times.size(); ++t) {
                os << w.name << ',' << phase_name(phase) << ',' << t << ','
                   << format_double(units::s_to_days(table.times[t])) << ','
                   << format_double(ps.rate[t]) << ',' << format_double(ps.cumulative[t])
                   << '\n';
            }
        }
    }
}

ProductionTable read_production_csv(std::istream& is)
{
    std::string line;
    if (!std::getline(is, line) || line != "well,phase,step,time_days,rate_kg_per_s,cumulative_kg")
        throw std::runtime_error("production csv: missing or unexpected header");

    ProductionTable table;
    std::map<std::string, std::size_t> index;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty())
            continue;
        std::vector<std::string> cols;
        std::stringstream ss(line);
        std::string col;
        while (std::getline(ss, col, ','))
            cols.push_back(col);
        if (cols.size() != 6)
            throw std::runtime_error("production csv: line " + std::to_string(lineno) +
                                     " has " + std::to_string(cols.size()) + " columns");
        const Phase phase = cols[1] == "water" ? Phase::water : Phase::oil;
        if (cols[1] != "water" && cols[1] != "oil")
            throw std::runtime_error("production csv: unknown phase '" + cols[1] + "'");
        const auto step = static_cast<std::size_t>(std::stoul(cols[2]));
        const double time = units::days_to_s(std::stod(cols[3]));

        auto [it, inserted] = index.try_emplace(cols[0], table.wells.size());
        if (inserted) {
            table.wells.push_back({});
            table.wells.back().name = cols[0];
        }
        WellProduction& w = table.wells[it->second];
        PhaseSeries& ps = phase == Phase::water ? w.water : w.oil;
        if (ps.rate.size() <= step) {
            ps.rate.resize(step + 1, 0.0);
            ps.cumulative.resize(step + 1, 0.0);
        }
        ps.rate[step] = std::stod(cols[4]);
        ps.cumulative[step] = std::stod(cols[5]);
        if (table.times.size() <= step)
            table.times.resize(step + 1, 0.0);
        table.times[step] = time;
    }
    return table;
}

} // namespace darcyflow::wells
