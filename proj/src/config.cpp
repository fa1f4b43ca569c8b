#include "darcyflow/config.hpp"

#include "darcyflow/facies.hpp"
#include "darcyflow/tensor_file.hpp"
#include "darcyflow/units.hpp"
#include "darcyflow/wells.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace darcyflow {

using nlohmann::json;

bool ValidationReport::mentions(const std::string& field) const
{
    for (const auto& v : violations)
        if (v.field.rfind(field, 0) == 0)
            return true;
    return false;
}

std::string ValidationReport::summary() const
{
    std::ostringstream os;
    for (std::size_t n = 0; n < violations.size(); ++n) {
        if (n)
            os << "; ";
        os << violations[n].field << ": " << violations[n].message;
    }
    return os.str();
}

namespace {

std::string cell_name(const CellIndex& c)
{
    return "(" + std::to_string(c.i) + "," + std::to_string(c.j) + "," + std::to_string(c.k) + ")";
}

std::string num(double v)
{
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

class Checker {
public:
    void require(bool ok, const std::string& field, const std::string& message)
    {
        if (!ok)
            report.violations.push_back({field, message});
    }

    void positive(double v, const std::string& field)
    {
        require(v > 0.0 && std::isfinite(v), field, "must be > 0, got " + num(v));
    }

    // Per-cell checks list at most this many offending cells per field.
    static constexpr int kMaxCellReports = 10;

    ValidationReport report;
};

void check_corey(Checker& ck, const CoreyParams& p, const std::string& prefix)
{
    ck.require(p.k_end > 0.0 && p.k_end <= 1.0, prefix + ".k_end",
               "must lie in (0, 1], got " + num(p.k_end));
    ck.require(p.s_c >= 0.0 && p.s_c < 0.5, prefix + ".s_c",
               "must lie in [0, 0.5), got " + num(p.s_c));
    ck.require(p.a >= 1.0 && std::isfinite(p.a), prefix + ".a", "must be >= 1, got " + num(p.a));
}

void check_fluid(Checker& ck, const FluidPhase& f, const std::string& prefix)
{
    ck.positive(f.rho, prefix + ".rho");
    ck.positive(f.mu, prefix + ".mu");
    ck.require(f.c >= 0.0 && std::isfinite(f.c), prefix + ".c", "must be >= 0, got " + num(f.c));
    check_corey(ck, f.corey, prefix + ".corey");
}

} // namespace

ValidationReport validate_config(const SimConfig& cfg)
{
    Checker ck;
    const Grid& g = cfg.grid;
    ck.require(g.nx >= 1, "grid.nx", "must be >= 1, got " + std::to_string(g.nx));
    ck.require(g.ny >= 1, "grid.ny", "must be >= 1, got " + std::to_string(g.ny));
    ck.require(g.nz >= 1, "grid.nz", "must be >= 1, got " + std::to_string(g.nz));
    ck.positive(g.dx, "grid.dx");
    ck.positive(g.dy, "grid.dy");
    ck.positive(g.dz, "grid.dz");
    const bool grid_ok = ck.report.ok();
    if (grid_ok) {
        // Two unknowns per cell must be addressable with the sparse solver's
        // 32-bit indices.
        const double cells = static_cast<double>(g.nx) * g.ny * g.nz;
        ck.require(cells <= 5e8, "grid", "cell count " + num(cells) + " too large");
    }

    if (grid_ok) {
        const std::size_t n = g.cell_count();
        ck.require(cfg.rock.perm.size() == n, "rock.perm",
                   "has " + std::to_string(cfg.rock.perm.size()) + " values, grid has " +
                       std::to_string(n) + " cells");
        ck.require(cfg.rock.poro.size() == n, "rock.poro",
                   "has " + std::to_string(cfg.rock.poro.size()) + " values, grid has " +
                       std::to_string(n) + " cells");
        if (cfg.rock.perm.size() == n) {
            int bad = 0;
            for (std::size_t c = 0; c < n; ++c) {
                const double k = cfg.rock.perm[c];
                if (!(k > 0.0 && std::isfinite(k)) && bad++ < Checker::kMaxCellReports)
                    ck.require(false, "rock.perm",
                               "cell " + cell_name(g.cell(c)) + " value " + num(k) + " must be > 0");
            }
        }
        if (cfg.rock.poro.size() == n) {
            int bad = 0;
            for (std::size_t c = 0; c < n; ++c) {
                const double p = cfg.rock.poro[c];
                if (!(p > 0.0 && p < 1.0) && bad++ < Checker::kMaxCellReports)
                    ck.require(false, "rock.poro",
                               "cell " + cell_name(g.cell(c)) + " value " + num(p) +
                                   " outside (0, 1)");
            }
        }
    }

    check_fluid(ck, cfg.water, "water");
    check_fluid(ck, cfg.oil, "oil");

    std::set<std::string> names;
    for (std::size_t w = 0; w < cfg.wells.size(); ++w) {
        const WellSpec& ws = cfg.wells[w];
        const std::string prefix = "wells[" + std::to_string(w) + "]";
        ck.require(!ws.name.empty(), prefix + ".name", "must not be empty");
        ck.require(names.insert(ws.name).second, prefix + ".name",
                   "duplicate well name '" + ws.name + "'");
        ck.require(!ws.cells.empty(), prefix + ".cells", "must list at least one perforation");
        if (grid_ok)
            for (const auto& c : ws.cells)
                ck.require(g.contains(c), prefix + ".cells",
                           "perforation " + cell_name(c) + " outside grid");
        ck.positive(ws.bhp, prefix + ".bhp");
        ck.positive(ws.rw, prefix + ".rw");
        if (grid_ok && ws.rw > 0.0) {
            const double r0 = wells::equivalent_radius(g.dx, g.dy);
            ck.require(ws.rw < r0, prefix + ".rw",
                       "wellbore radius " + num(ws.rw) + " must be below r0 = " + num(r0));
        }
    }

    ck.positive(cfg.dt, "dt");
    ck.require(cfg.n_steps >= 1, "n_steps", "must be >= 1, got " + std::to_string(cfg.n_steps));
    ck.positive(cfg.p_init, "p_init");
    const double lo = cfg.water.corey.s_c;
    const double hi = 1.0 - cfg.oil.corey.s_c;
    ck.require(cfg.sw_init >= lo && cfg.sw_init <= hi, "sw_init",
               "must lie in [" + num(lo) + ", " + num(hi) + "], got " + num(cfg.sw_init));

    const SolverOptions& s = cfg.solver;
    ck.positive(s.newton_tol, "solver.newton_tol");
    ck.positive(s.mb_tol, "solver.mb_tol");
    ck.require(s.newton_max_iter >= 1, "solver.newton_max_iter",
               "must be >= 1, got " + std::to_string(s.newton_max_iter));
    ck.positive(s.lin_tol, "solver.lin_tol");
    ck.positive(s.max_dsw, "solver.max_dsw");
    ck.require(s.max_halvings >= 0, "solver.max_halvings", "must be >= 0");
    ck.require(s.max_dt_cuts >= 0, "solver.max_dt_cuts", "must be >= 0");
    return ck.report;
}

void require_valid(const SimConfig& cfg)
{
    const ValidationReport r = validate_config(cfg);
    if (!r.ok())
        throw ConfigError("invalid configuration: " + r.summary());
}

FluidPhase reference_water()
{
    return FluidPhase{1838.0, units::cp_to_pas(0.31), units::per_bar_to_per_pa(9e-5),
                      CoreyParams{0.8, 0.1, 2.0}};
}

FluidPhase reference_oil()
{
    return FluidPhase{787.0, units::cp_to_pas(1.14), units::per_bar_to_per_pa(9e-5),
                      CoreyParams{1.0, 0.1, 2.0}};
}

Grid reference_grid()
{
    return Grid{40, 40, 20, 20.0, 20.0, 2.0};
}

std::vector<WellSpec> default_wells(const Grid& g, double producer_bhp, double injector_bhp,
                                    double rw)
{
    auto column = [&](int i, int j) {
        std::vector<CellIndex> cells;
        for (int k = 0; k < g.nz; ++k)
            cells.push_back({i, j, k});
        return cells;
    };
    std::vector<WellSpec> w;
    w.push_back({"P1", WellKind::producer, column(0, 0), producer_bhp, rw});
    w.push_back({"P2", WellKind::producer, column(g.nx - 1, 0), producer_bhp, rw});
    w.push_back({"P3", WellKind::producer, column(0, g.ny - 1), producer_bhp, rw});
    w.push_back({"P4", WellKind::producer, column(g.nx - 1, g.ny - 1), producer_bhp, rw});
    w.push_back({"I1", WellKind::water_injector, column(g.nx / 2, g.ny / 2), injector_bhp, rw});
    return w;
}

SimConfig reference_config(const Grid& grid, double perm, double poro)
{
    SimConfig cfg;
    cfg.grid = grid;
    cfg.rock.perm.assign(grid.cell_count(), perm);
    cfg.rock.poro.assign(grid.cell_count(), poro);
    cfg.water = reference_water();
    cfg.oil = reference_oil();
    cfg.wells = default_wells(grid);
    cfg.dt = units::days_to_s(50.0);
    cfg.n_steps = 21;
    cfg.p_init = units::bar_to_pa(350.0);
    cfg.sw_init = 0.1;
    return cfg;
}

// ---------------------------------------------------------------------------
// Configuration documents

namespace {

void allow_keys(const json& obj, const std::string& section, std::initializer_list<const char*> keys)
{
    if (!obj.is_object())
        throw ConfigError("config: section '" + section + "' must be an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : keys)
            known = known || it.key() == k;
        if (!known)
            throw ConfigError("config: unknown key '" + it.key() + "' in section '" + section + "'");
    }
}

template <typename T>
T get_or(const json& obj, const char* key, T fallback)
{
    if (!obj.contains(key))
        return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: bad value for '") + key + "': " + e.what());
    }
}

json fluid_echo(const json& in, const FluidPhase& def, const std::string& section)
{
    allow_keys(in, section, {"rho_kg_m3", "mu_cp", "c_per_bar", "corey"});
    const json corey_in = in.value("corey", json::object());
    allow_keys(corey_in, section + ".corey", {"k_end", "s_c", "a"});
    return json{
        {"rho_kg_m3", get_or(in, "rho_kg_m3", def.rho)},
        {"mu_cp", get_or(in, "mu_cp", units::pas_to_cp(def.mu))},
        {"c_per_bar", get_or(in, "c_per_bar", units::per_pa_to_per_bar(def.c))},
        {"corey",
         {{"k_end", get_or(corey_in, "k_end", def.corey.k_end)},
          {"s_c", get_or(corey_in, "s_c", def.corey.s_c)},
          {"a", get_or(corey_in, "a", def.corey.a)}}}};
}

FluidPhase fluid_from_echo(const json& e)
{
    FluidPhase f;
    f.rho = e.at("rho_kg_m3").get<double>();
    f.mu = units::cp_to_pas(e.at("mu_cp").get<double>());
    f.c = units::per_bar_to_per_pa(e.at("c_per_bar").get<double>());
    f.corey = {e.at("corey").at("k_end").get<double>(), e.at("corey").at("s_c").get<double>(),
               e.at("corey").at("a").get<double>()};
    return f;
}

const char* kind_name(WellKind k) { return k == WellKind::producer ? "producer" : "water_injector"; }

WellKind kind_from(const std::string& s)
{
    if (s == "producer")
        return WellKind::producer;
    if (s == "water_injector")
        return WellKind::water_injector;
    throw ConfigError("config: unknown well kind '" + s + "'");
}

json wells_echo(const json& in, const Grid& g)
{
    const json defaults_in = in.value("well_defaults", json::object());
    allow_keys(defaults_in, "well_defaults", {"producer_bhp_bar", "injector_bhp_bar", "rw_m"});
    const double prod_bhp = get_or(defaults_in, "producer_bhp_bar", 310.0);
    const double inj_bhp = get_or(defaults_in, "injector_bhp_bar", 350.0);
    const double rw = get_or(defaults_in, "rw_m", 0.1);

    json out = json::array();
    const json wells_in = in.value("wells", json("default"));
    if (wells_in.is_string()) {
        if (wells_in.get<std::string>() == "none")
            return out;
        if (wells_in.get<std::string>() != "default")
            throw ConfigError("config: 'wells' must be a list, \"default\" or \"none\"");
        for (const auto& w : default_wells(g, units::bar_to_pa(prod_bhp), units::bar_to_pa(inj_bhp), rw)) {
            json cells = json::array();
            for (const auto& c : w.cells)
                cells.push_back({c.i, c.j, c.k});
            out.push_back({{"name", w.name},
                           {"kind", kind_name(w.kind)},
                           {"cells", cells},
                           {"bhp_bar", w.kind == WellKind::producer ? prod_bhp : inj_bhp},
                           {"rw_m", rw}});
        }
        return out;
    }
    if (!wells_in.is_array())
        throw ConfigError("config: 'wells' must be a list, \"default\" or \"none\"");
    for (const auto& w : wells_in) {
        allow_keys(w, "wells[]", {"name", "kind", "cells", "column", "bhp_bar", "rw_m"});
        const std::string kind = get_or<std::string>(w, "kind", "producer");
        kind_from(kind);
        json cells = json::array();
        if (w.contains("column")) {
            const auto col = w.at("column").get<std::vector<int>>();
            if (col.size() != 2)
                throw ConfigError("config: well 'column' needs [i, j]");
            for (int k = 0; k < g.nz; ++k)
                cells.push_back({col[0], col[1], k});
        }
        if (w.contains("cells"))
            for (const auto& c : w.at("cells")) {
                const auto v = c.get<std::vector<int>>();
                if (v.size() != 3)
                    throw ConfigError("config: well cell needs [i, j, k]");
                cells.push_back(v);
            }
        out.push_back({{"name", get_or<std::string>(w, "name", "W" + std::to_string(out.size() + 1))},
                       {"kind", kind},
                       {"cells", cells},
                       {"bhp_bar", get_or(w, "bhp_bar", kind == "producer" ? prod_bhp : inj_bhp)},
                       {"rw_m", get_or(w, "rw_m", rw)}});
    }
    return out;
}

RockField rock_from_echo(const json& r, const Grid& g)
{
    const std::string kind = r.at("kind").get<std::string>();
    if (kind == "uniform") {
        return RockField{std::vector<double>(g.cell_count(), units::md_to_m2(r.at("perm_md").get<double>())),
                         std::vector<double>(g.cell_count(), r.at("poro").get<double>())};
    }
    if (kind == "facies") {
        facies::FaciesValues v;
        v.sand_perm = units::md_to_m2(r.at("sand_perm_md").get<double>());
        v.mud_perm = units::md_to_m2(r.at("mud_perm_md").get<double>());
        v.sand_poro = r.at("sand_poro").get<double>();
        v.mud_poro = r.at("mud_poro").get<double>();
        const facies::CorrelationLength corr{r.at("corr_len_lateral_m").get<double>(),
                                             r.at("corr_len_vertical_m").get<double>()};
        return facies::generate_facies(r.at("seed").get<std::uint64_t>(), g, corr,
                                       r.at("sand_fraction").get<double>(), v);
    }
    if (kind == "file") {
        const io::RockFile f = io::read_rock(r.at("perm").get<std::string>(),
                                             r.at("poro").get<std::string>());
        if (f.grid.nx != g.nx || f.grid.ny != g.ny || f.grid.nz != g.nz)
            throw ConfigError("config: rock files do not match the grid dimensions");
        return f.rock;
    }
    throw ConfigError("config: unknown rock kind '" + kind + "'");
}

json rock_echo(const json& in, const std::filesystem::path& base_dir)
{
    const std::string kind = get_or<std::string>(in, "kind", "facies");
    if (kind == "uniform") {
        allow_keys(in, "rock", {"kind", "perm_md", "poro"});
        return json{{"kind", kind}, {"perm_md", get_or(in, "perm_md", 2000.0)},
                    {"poro", get_or(in, "poro", 0.25)}};
    }
    if (kind == "facies") {
        allow_keys(in, "rock", {"kind", "seed", "sand_fraction", "corr_len_lateral_m",
                                "corr_len_vertical_m", "sand_perm_md", "mud_perm_md", "sand_poro",
                                "mud_poro"});
        return json{{"kind", kind},
                    {"seed", get_or<std::uint64_t>(in, "seed", 1)},
                    {"sand_fraction", get_or(in, "sand_fraction", 0.5)},
                    {"corr_len_lateral_m", get_or(in, "corr_len_lateral_m", 80.0)},
                    {"corr_len_vertical_m", get_or(in, "corr_len_vertical_m", 4.0)},
                    {"sand_perm_md", get_or(in, "sand_perm_md", 2000.0)},
                    {"mud_perm_md", get_or(in, "mud_perm_md", 20.0)},
                    {"sand_poro", get_or(in, "sand_poro", 0.25)},
                    {"mud_poro", get_or(in, "mud_poro", 0.1)}};
    }
    if (kind == "file") {
        allow_keys(in, "rock", {"kind", "perm", "poro"});
        auto resolve = [&](const char* key) {
            std::filesystem::path p = in.at(key).get<std::string>();
            if (p.is_relative() && !base_dir.empty())
                p = base_dir / p;
            return std::filesystem::absolute(p).lexically_normal().string();
        };
        if (!in.contains("perm") || !in.contains("poro"))
            throw ConfigError("config: rock kind 'file' needs 'perm' and 'poro' paths");
        return json{{"kind", kind}, {"perm", resolve("perm")}, {"poro", resolve("poro")}};
    }
    throw ConfigError("config: unknown rock kind '" + kind + "'");
}

} // namespace

LoadedConfig parse_config(const json& doc, const std::filesystem::path& base_dir)
{
    allow_keys(doc, "<root>",
               {"grid", "rock", "fluids", "wells", "well_defaults", "schedule", "initial", "solver"});
    LoadedConfig out;
    json& echo = out.field_echo;
    try {
        const Grid pg = reference_grid();
        const json grid_in = doc.value("grid", json::object());
        allow_keys(grid_in, "grid", {"nx", "ny", "nz", "dx_m", "dy_m", "dz_m"});
        echo["grid"] = {{"nx", get_or(grid_in, "nx", pg.nx)},      {"ny", get_or(grid_in, "ny", pg.ny)},
                        {"nz", get_or(grid_in, "nz", pg.nz)},      {"dx_m", get_or(grid_in, "dx_m", pg.dx)},
                        {"dy_m", get_or(grid_in, "dy_m", pg.dy)},  {"dz_m", get_or(grid_in, "dz_m", pg.dz)}};
        SimConfig& cfg = out.config;
        cfg.grid = io::grid_from_json(echo["grid"]);
        if (cfg.grid.nx < 1 || cfg.grid.ny < 1 || cfg.grid.nz < 1)
            throw ConfigError("config: grid dimensions must be >= 1");

        echo["rock"] = rock_echo(doc.value("rock", json::object()), base_dir);

        const json fluids_in = doc.value("fluids", json::object());
        allow_keys(fluids_in, "fluids", {"water", "oil"});
        echo["fluids"] = {
            {"water", fluid_echo(fluids_in.value("water", json::object()), reference_water(), "fluids.water")},
            {"oil", fluid_echo(fluids_in.value("oil", json::object()), reference_oil(), "fluids.oil")}};

        echo["wells"] = wells_echo(doc, cfg.grid);

        const json sched = doc.value("schedule", json::object());
        allow_keys(sched, "schedule", {"dt_days", "n_steps"});
        echo["schedule"] = {{"dt_days", get_or(sched, "dt_days", 50.0)},
                            {"n_steps", get_or(sched, "n_steps", 21)}};

        const json init = doc.value("initial", json::object());
        allow_keys(init, "initial", {"p_bar", "sw"});
        echo["initial"] = {{"p_bar", get_or(init, "p_bar", 350.0)}, {"sw", get_or(init, "sw", 0.1)}};

        const SolverOptions sd;
        const json sol = doc.value("solver", json::object());
        allow_keys(sol, "solver", {"newton_tol", "mb_tol", "newton_max_iter", "lin_tol", "max_dsw",
                                   "max_halvings", "max_dt_cuts", "linear_solver",
                                   "direct_cell_limit"});
        echo["solver"] = {{"newton_tol", get_or(sol, "newton_tol", sd.newton_tol)},
                          {"mb_tol", get_or(sol, "mb_tol", sd.mb_tol)},
                          {"newton_max_iter", get_or(sol, "newton_max_iter", sd.newton_max_iter)},
                          {"lin_tol", get_or(sol, "lin_tol", sd.lin_tol)},
                          {"max_dsw", get_or(sol, "max_dsw", sd.max_dsw)},
                          {"max_halvings", get_or(sol, "max_halvings", sd.max_halvings)},
                          {"max_dt_cuts", get_or(sol, "max_dt_cuts", sd.max_dt_cuts)},
                          {"linear_solver", get_or<std::string>(sol, "linear_solver", "auto")},
                          {"direct_cell_limit", get_or(sol, "direct_cell_limit", sd.direct_cell_limit)}};

        // Build the SI config from the echo only, so the echo is sufficient.
        cfg.rock = rock_from_echo(echo["rock"], cfg.grid);
        cfg.water = fluid_from_echo(echo["fluids"]["water"]);
        cfg.oil = fluid_from_echo(echo["fluids"]["oil"]);
        for (const auto& w : echo["wells"]) {
            WellSpec ws;
            ws.name = w.at("name").get<std::string>();
            ws.kind = kind_from(w.at("kind").get<std::string>());
            for (const auto& c : w.at("cells")) {
                const auto v = c.get<std::vector<int>>();
                ws.cells.push_back({v[0], v[1], v[2]});
            }
            ws.bhp = units::bar_to_pa(w.at("bhp_bar").get<double>());
            ws.rw = w.at("rw_m").get<double>();
            cfg.wells.push_back(std::move(ws));
        }
        cfg.dt = units::days_to_s(echo["schedule"]["dt_days"].get<double>());
        cfg.n_steps = echo["schedule"]["n_steps"].get<int>();
        cfg.p_init = units::bar_to_pa(echo["initial"]["p_bar"].get<double>());
        cfg.sw_init = echo["initial"]["sw"].get<double>();
        const json& s = echo["solver"];
        cfg.solver.newton_tol = s["newton_tol"].get<double>();
        cfg.solver.mb_tol = s["mb_tol"].get<double>();
        cfg.solver.newton_max_iter = s["newton_max_iter"].get<int>();
        cfg.solver.lin_tol = s["lin_tol"].get<double>();
        cfg.solver.max_dsw = s["max_dsw"].get<double>();
        cfg.solver.max_halvings = s["max_halvings"].get<int>();
        cfg.solver.max_dt_cuts = s["max_dt_cuts"].get<int>();
        cfg.solver.direct_cell_limit = s["direct_cell_limit"].get<std::size_t>();
        const std::string ls = s["linear_solver"].get<std::string>();
        if (ls == "auto")
            cfg.solver.linear_solver = LinearSolverKind::automatic;
        else if (ls == "direct")
            cfg.solver.linear_solver = LinearSolverKind::direct;
        else if (ls == "iterative")
            cfg.solver.linear_solver = LinearSolverKind::iterative;
        else
            throw ConfigError("config: linear_solver must be auto, direct or iterative");
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return out;
}

LoadedConfig load_config(const std::filesystem::path& path)
{
    std::ifstream is(path);
    if (!is)
        throw ConfigError("config: cannot open " + path.string());
    json doc;
    try {
        doc = json::parse(is, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::exception& e) {
        throw ConfigError("config: " + path.string() + ": " + e.what());
    }
    return parse_config(doc, path.parent_path());
}

json si_echo(const SimConfig& cfg)
{
    auto fluid = [](const FluidPhase& f) {
        return json{{"rho_kg_m3", f.rho},
                    {"mu_pa_s", f.mu},
                    {"c_per_pa", f.c},
                    {"corey", {{"k_end", f.corey.k_end}, {"s_c", f.corey.s_c}, {"a", f.corey.a}}}};
    };
    json wells = json::array();
    for (const auto& w : cfg.wells) {
        json cells = json::array();
        for (const auto& c : w.cells)
            cells.push_back({c.i, c.j, c.k});
        wells.push_back({{"name", w.name},
                         {"kind", kind_name(w.kind)},
                         {"cells", cells},
                         {"bhp_pa", w.bhp},
                         {"rw_m", w.rw}});
    }
    double kmin = 0, kmax = 0, pmin = 0, pmax = 0;
    if (!cfg.rock.perm.empty()) {
        kmin = *std::min_element(cfg.rock.perm.begin(), cfg.rock.perm.end());
        kmax = *std::max_element(cfg.rock.perm.begin(), cfg.rock.perm.end());
    }
    if (!cfg.rock.poro.empty()) {
        pmin = *std::min_element(cfg.rock.poro.begin(), cfg.rock.poro.end());
        pmax = *std::max_element(cfg.rock.poro.begin(), cfg.rock.poro.end());
    }
    return json{{"grid", io::grid_to_json(cfg.grid)},
                {"rock", {{"perm_min_m2", kmin}, {"perm_max_m2", kmax},
                          {"poro_min", pmin}, {"poro_max", pmax}}},
                {"water", fluid(cfg.water)},
                {"oil", fluid(cfg.oil)},
                {"wells", wells},
                {"dt_s", cfg.dt},
                {"n_steps", cfg.n_steps},
                {"p_init_pa", cfg.p_init},
                {"sw_init", cfg.sw_init},
                {"newton_tol", cfg.solver.newton_tol},
                {"mb_tol", cfg.solver.mb_tol},
                {"newton_max_iter", cfg.solver.newton_max_iter},
                {"lin_tol", cfg.solver.lin_tol},
                {"notes",
                 {"compressibility read as 1/bar in config files",
                  "newton_tol applies to the residual scaled by dt/rho"}}};
}

} // namespace darcyflow
