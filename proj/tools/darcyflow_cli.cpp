// darcyflow command-line front end. Each subcommand is a thin wrapper over the
// library; on failure it prints one JSON line {"error": ..., "message": ...}
// to stderr and exits nonzero.

#include "darcyflow/config.hpp"
#include "darcyflow/discretization.hpp"
#include "darcyflow/facies.hpp"
#include "darcyflow/metrics.hpp"
#include "darcyflow/plot.hpp"
#include "darcyflow/simulator.hpp"
#include "darcyflow/tensor_file.hpp"
#include "darcyflow/units.hpp"
#include "darcyflow/wells.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace darcyflow;

namespace {

constexpr const char* kToolVersion = "1.0.0";

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json read_json_file(const fs::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    return json::parse(in, nullptr, true, true);
}

// The config document with command-line overrides applied. Everything a run
// depends on ends up in the parsed echo.
struct ConfigInput {
    json doc = json::object();
    fs::path base_dir;
};

ConfigInput config_input(const std::string& path)
{
    ConfigInput in;
    if (!path.empty()) {
        in.doc = read_json_file(path);
        in.base_dir = fs::path(path).parent_path();
    }
    return in;
}

void override_seed(ConfigInput& in, std::optional<std::uint64_t> seed)
{
    if (!seed)
        return;
    json& rock = in.doc["rock"];
    if (rock.is_null())
        rock = json::object();
    if (rock.value("kind", std::string("facies")) != "facies")
        throw UsageError("--seed only applies to facies rock");
    rock["seed"] = *seed;
}

void override_rock_files(ConfigInput& in, const std::string& perm, const std::string& poro)
{
    if (perm.empty() && poro.empty())
        return;
    if (perm.empty() || poro.empty())
        throw UsageError("--perm and --poro must be given together");
    in.doc["rock"] = {{"kind", "file"},
                      {"perm", fs::absolute(perm).string()},
                      {"poro", fs::absolute(poro).string()}};
}

json provenance(const std::string& command, const json& options, const LoadedConfig* cfg)
{
    json p{{"tool", "darcyflow"}, {"version", kToolVersion}, {"command", command},
           {"options", options}};
    if (cfg) {
        p["config"] = cfg->field_echo;
        p["si"] = si_echo(cfg->config);
    }
    return p;
}

void write_json(const fs::path& path, const json& j)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    io::write_text_atomic(path, j.dump(2) + "\n");
}

void check_grid(const Grid& series_grid, const Grid& cfg_grid)
{
    if (!(series_grid == cfg_grid))
        throw std::invalid_argument("series grid " + io::grid_to_json(series_grid).dump() +
                                    " differs from config grid " +
                                    io::grid_to_json(cfg_grid).dump());
}

// ---- generate --------------------------------------------------------------

struct GenerateArgs {
    std::string config;
    std::string out = "facies";
    std::optional<std::uint64_t> seed;
    int count = 1;
};

json run_generate(const GenerateArgs& a)
{
    ConfigInput in = config_input(a.config);
    in.doc.erase("wells");
    in.doc["wells"] = "none";
    override_seed(in, a.seed);
    LoadedConfig loaded = parse_config(in.doc, in.base_dir);
    const json& rock = loaded.field_echo.at("rock");
    if (rock.at("kind") != "facies")
        throw UsageError("generate needs facies rock, got " + rock.at("kind").get<std::string>());
    if (a.count < 1)
        throw UsageError("--count must be >= 1");

    const std::uint64_t seed0 = rock.at("seed").get<std::uint64_t>();
    const Grid& grid = loaded.config.grid;
    facies::FaciesValues values;
    values.sand_perm = units::md_to_m2(rock.at("sand_perm_md").get<double>());
    values.mud_perm = units::md_to_m2(rock.at("mud_perm_md").get<double>());
    values.sand_poro = rock.at("sand_poro").get<double>();
    values.mud_poro = rock.at("mud_poro").get<double>();
    const facies::CorrelationLength corr{rock.at("corr_len_lateral_m").get<double>(),
                                         rock.at("corr_len_vertical_m").get<double>()};
    const double fraction = rock.at("sand_fraction").get<double>();

    const json options{{"config", a.config}, {"out", a.out}, {"seed", seed0}, {"count", a.count}};
    const json prov_base = provenance("generate", options, &loaded);

    json items = json::array();
    fs::create_directories(a.out);
    facies::for_each_realization(
        seed0, a.count, grid, corr, fraction,
        [&](std::uint64_t seed, const RockField& field) {
            const fs::path dir = fs::path(a.out) / ("real_" + std::to_string(seed));
            fs::create_directories(dir);
            json prov = prov_base;
            prov["seed"] = seed;
            io::write_rock(dir, field, grid, prov);
            items.push_back({{"seed", seed},
                             {"dir", dir.string()},
                             {"sand_fraction", facies::sand_fraction_of(field, values)}});
        },
        values);

    json report = prov_base;
    report["realizations"] = items;
    write_json(fs::path(a.out) / "provenance.json", report);
    return report;
}

// ---- simulate --------------------------------------------------------------

struct SimulateArgs {
    std::string config;
    std::string out = "run";
    std::optional<std::uint64_t> seed;
};

json reports_json(const std::vector<simulator::StepReport>& reports)
{
    json arr = json::array();
    for (std::size_t m = 0; m < reports.size(); ++m) {
        const auto& r = reports[m];
        arr.push_back({{"step", m + 1},
                       {"converged", r.converged},
                       {"newton_iters", r.newton_iters},
                       {"linear_iters", r.linear_iters},
                       {"substeps", r.substeps},
                       {"dt_used_days", units::s_to_days(r.dt_used)},
                       {"final_residual_inf_norm", r.final_residual_inf_norm},
                       {"mass_balance", r.mass_balance}});
    }
    return arr;
}

json run_simulate(const SimulateArgs& a)
{
    if (a.config.empty())
        throw UsageError("simulate requires --config");
    ConfigInput in = config_input(a.config);
    override_seed(in, a.seed);
    LoadedConfig loaded = parse_config(in.doc, in.base_dir);
    const json options{{"config", a.config}, {"out", a.out},
                       {"seed", a.seed ? json(*a.seed) : json(nullptr)}};
    json prov = provenance("simulate", options, &loaded);

    fs::create_directories(a.out);
    std::ofstream log(fs::path(a.out) / "convergence.log");
    simulator::SimulationResult res;
    try {
        res = simulator::simulate(loaded.config, &log);
    } catch (const simulator::NonConvergenceError& e) {
        log << "FAILED: " << e.what() << '\n';
        throw;
    }
    io::write_series(a.out, res.series, loaded.config.grid, prov);
    io::write_rock(a.out, loaded.config.rock, loaded.config.grid, prov);

    json report = prov;
    report["steps"] = reports_json(res.reports);
    write_json(fs::path(a.out) / "provenance.json", report);
    return report;
}

// ---- residual --------------------------------------------------------------

struct ResidualArgs {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::string series;
    std::string perm;
    std::string poro;
    bool fields = false;
};

json run_residual(const ResidualArgs& a)
{
    ConfigInput in = config_input(a.config);
    override_seed(in, a.seed);
    override_rock_files(in, a.perm, a.poro);
    LoadedConfig loaded = parse_config(in.doc, in.base_dir);
    const SimConfig& cfg = loaded.config;
    const io::SeriesFile sf = io::read_series(a.series);
    check_grid(sf.grid, cfg.grid);

    const auto rep = discretization::evaluate_series(sf.series, cfg);
    const json options{{"config", a.config}, {"out", a.out},
                       {"seed", a.seed ? json(*a.seed) : json(nullptr)},
                       {"series", a.series}, {"perm", a.perm}, {"poro", a.poro},
                       {"fields", a.fields}};
    json report = provenance("residual", options, &loaded);
    report["physics_loss"] = rep.loss;
    report["scaled_physics_loss"] = rep.scaled_loss;
    report["newton_tol"] = cfg.solver.newton_tol;
    json steps = json::array();
    for (const auto& s : rep.steps)
        steps.push_back({{"step", s.step},
                         {"dt_s", s.dt},
                         {"max_abs_water", s.max_abs_water},
                         {"max_abs_oil", s.max_abs_oil},
                         {"max_abs_scaled", s.max_abs_scaled}});
    report["steps"] = steps;

    if (a.fields) {
        if (a.out.empty())
            throw UsageError("--fields needs --out");
        const std::size_t nt = sf.series.slice_count() - 1;
        const std::size_t cells = sf.series.cells;
        for (Phase phase : {Phase::water, Phase::oil}) {
            std::vector<double> data;
            data.reserve(nt * cells);
            for (std::size_t t = 1; t <= nt; ++t) {
                const double dt = sf.series.times[t] - sf.series.times[t - 1];
                const auto field = discretization::residual_field(
                    phase, sf.series.slice(t - 1), sf.series.slice(t), cfg, dt);
                data.insert(data.end(), field.values.begin(), field.values.end());
            }
            io::TensorHeader h;
            h.axes = {"t", "k", "j", "i"};
            h.dims = {nt, static_cast<std::size_t>(cfg.grid.nz),
                      static_cast<std::size_t>(cfg.grid.ny), static_cast<std::size_t>(cfg.grid.nx)};
            h.name = std::string("residual_") + phase_name(phase);
            h.units = "kg/(m^3 s)";
            h.metadata = {{"grid", io::grid_to_json(cfg.grid)}, {"provenance", report}};
            fs::create_directories(a.out);
            io::write_tensor(fs::path(a.out) / (h.name + ".f64"), data, h);
        }
    }
    if (!a.out.empty())
        write_json(fs::path(a.out) / "residual.json", report);
    return report;
}

// ---- wells -----------------------------------------------------------------

struct WellsArgs {
    std::string config;
    std::string out = "production.csv";
    std::optional<std::uint64_t> seed;
    std::string series;
    std::string rule = "implicit";
};

json run_wells(const WellsArgs& a)
{
    ConfigInput in = config_input(a.config);
    override_seed(in, a.seed);
    LoadedConfig loaded = parse_config(in.doc, in.base_dir);
    const io::SeriesFile sf = io::read_series(a.series);
    check_grid(sf.grid, loaded.config.grid);
    const auto rule = a.rule == "trapezoidal" ? wells::CumulativeRule::trapezoidal
                                              : wells::CumulativeRule::implicit;
    const auto table = wells::production_series(sf.series, loaded.config, rule);
    if (fs::path(a.out).has_parent_path())
        fs::create_directories(fs::path(a.out).parent_path());
    plot::emit_curves(table, a.out);

    const json options{{"config", a.config}, {"out", a.out},
                       {"seed", a.seed ? json(*a.seed) : json(nullptr)},
                       {"series", a.series}, {"rule", a.rule}};
    json report = provenance("wells", options, &loaded);
    json totals = json::array();
    for (const auto& w : table.wells)
        totals.push_back({{"well", w.name},
                          {"cumulative_water_kg", w.water.cumulative.back()},
                          {"cumulative_oil_kg", w.oil.cumulative.back()}});
    report["totals"] = totals;
    write_json(fs::path(a.out).string() + ".json", report);
    return report;
}

// ---- metrics ---------------------------------------------------------------

struct MetricsArgs {
    std::string config;
    std::string out;
    std::optional<std::uint64_t> seed;
    std::string a;
    std::string b;
};

json run_metrics(const MetricsArgs& a)
{
    const io::SeriesFile sa = io::read_series(a.a);
    const io::SeriesFile sb = io::read_series(a.b);
    check_grid(sa.grid, sb.grid);
    const auto e = metrics::compare(sa.series, sb.series);
    const json options{{"config", a.config}, {"out", a.out},
                       {"seed", a.seed ? json(*a.seed) : json(nullptr)}, {"a", a.a}, {"b", a.b}};
    json report = provenance("metrics", options, nullptr);
    report["pressure"] = {{"mae", e.mae_pressure}, {"mse", e.mse_pressure}};
    report["sat_w"] = {{"mae", e.mae_sat_w}, {"mse", e.mse_sat_w}};
    if (!a.out.empty())
        write_json(a.out, report);
    return report;
}

// ---- plot ------------------------------------------------------------------

struct PlotArgs {
    std::string config;
    std::string out = "plot";
    std::optional<std::uint64_t> seed;
    std::string series;
    std::string field = "pressure";
    int t = -1;
    int k = 0;
    std::string csv;
};

json run_plot(const PlotArgs& a)
{
    if (a.series.empty() == a.csv.empty())
        throw UsageError("plot needs exactly one of --series or --csv");
    const json options{{"config", a.config}, {"out", a.out},
                       {"seed", a.seed ? json(*a.seed) : json(nullptr)}, {"series", a.series},
                       {"field", a.field}, {"t", a.t}, {"k", a.k}, {"csv", a.csv}};
    json report = provenance("plot", options, nullptr);
    fs::create_directories(a.out);

    if (!a.series.empty()) {
        const io::SeriesFile sf = io::read_series(a.series);
        if (a.field != "pressure" && a.field != "sat_w")
            throw UsageError("--field must be pressure or sat_w");
        const std::size_t nslices = sf.series.slice_count();
        const std::size_t t = a.t < 0 ? nslices - 1 : static_cast<std::size_t>(a.t);
        const auto& data = a.field == "pressure" ? sf.series.pressure : sf.series.sat_w;
        const plot::Slice2D s = plot::layer(data, sf.grid, t, a.k);
        const fs::path img = fs::path(a.out) /
                             (a.field + "_t" + std::to_string(t) + "_k" + std::to_string(a.k) + ".ppm");
        plot::emit_heatmap(s, img, a.field);
        report["images"] = json::array({img.string()});
        return report;
    }

    std::ifstream is(a.csv);
    if (!is)
        throw std::runtime_error("cannot open " + a.csv);
    const auto table = wells::read_production_csv(is);
    json files = json::array();
    for (const auto& w : table.wells) {
        wells::ProductionTable one{table.times, {w}};
        const fs::path p = fs::path(a.out) / (w.name + ".csv");
        plot::emit_curves(one, p);
        files.push_back(p.string());
    }
    report["curves"] = files;
    return report;
}

void print_error(const std::string& kind, const std::string& message)
{
    std::cerr << json{{"error", kind}, {"message", message}}.dump() << std::endl;
}

template <typename Args>
void add_common(CLI::App* sub, Args& a)
{
    sub->add_option("--config", a.config, "configuration file (JSON, field units)");
    sub->add_option("--out", a.out, "output location")->capture_default_str();
    sub->add_option("--seed", a.seed, "facies seed, overrides rock.seed");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"darcyflow: two-phase reservoir simulation toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    GenerateArgs gen;
    auto* g = app.add_subcommand("generate", "facies realizations to TensorFiles");
    add_common(g, gen);
    g->add_option("--count", gen.count, "number of realizations")->capture_default_str();

    SimulateArgs sim;
    auto* s = app.add_subcommand("simulate", "run a configuration, write the FieldSeries");
    add_common(s, sim);

    ResidualArgs res;
    auto* r = app.add_subcommand("residual", "physics loss of a FieldSeries");
    add_common(r, res);
    r->add_option("--series", res.series, "FieldSeries directory")->required();
    r->add_option("--perm", res.perm, "permeability TensorFile, replaces the config rock");
    r->add_option("--poro", res.poro, "porosity TensorFile");
    r->add_flag("--fields", res.fields, "also write per-cell residual TensorFiles to --out");

    WellsArgs wa;
    auto* w = app.add_subcommand("wells", "production CSV of a FieldSeries");
    add_common(w, wa);
    w->add_option("--series", wa.series, "FieldSeries directory")->required();
    w->add_option("--rule", wa.rule, "cumulative rule")
        ->check(CLI::IsMember({"implicit", "trapezoidal"}))
        ->capture_default_str();

    MetricsArgs ma;
    auto* m = app.add_subcommand("metrics", "MAE and MSE between two FieldSeries");
    add_common(m, ma);
    m->add_option("--a", ma.a, "first FieldSeries directory")->required();
    m->add_option("--b", ma.b, "second FieldSeries directory")->required();

    PlotArgs pa;
    auto* p = app.add_subcommand("plot", "heatmaps and production curves");
    add_common(p, pa);
    p->add_option("--series", pa.series, "FieldSeries directory");
    p->add_option("--field", pa.field, "pressure or sat_w")->capture_default_str();
    p->add_option("--t", pa.t, "time slice, -1 for the last")->capture_default_str();
    p->add_option("--k", pa.k, "layer")->capture_default_str();
    p->add_option("--csv", pa.csv, "production CSV to split into per-well curves");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("usage", e.what());
        return 2;
    }

    try {
        json report;
        if (*g)
            report = run_generate(gen);
        else if (*s)
            report = run_simulate(sim);
        else if (*r)
            report = run_residual(res);
        else if (*w)
            report = run_wells(wa);
        else if (*m)
            report = run_metrics(ma);
        else
            report = run_plot(pa);
        std::cout << report.dump() << '\n';
        return 0;
    } catch (const UsageError& e) {
        print_error("usage", e.what());
        return 2;
    } catch (const ConfigError& e) {
        print_error("config", e.what());
    } catch (const io::FormatError& e) {
        print_error("format", e.what());
    } catch (const simulator::NonConvergenceError& e) {
        print_error("nonconvergence", e.what());
    } catch (const nlohmann::json::exception& e) {
        print_error("config", e.what());
    } catch (const std::exception& e) {
        print_error("runtime", e.what());
    }
    return 1;
}
