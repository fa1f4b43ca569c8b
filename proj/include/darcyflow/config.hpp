#pragma once

#include "darcyflow/types.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace darcyflow {

enum class LinearSolverKind { automatic, direct, iterative };

/// Knobs of the nonlinear/linear solve that are not part of the physics.
struct SolverOptions {
    double newton_tol = 1e-6;  // max |scaled residual|, see residual_scale()
    double mb_tol = 1e-11;     // net phase-mass imbalance per step / phase pore mass
    int newton_max_iter = 30;
    double lin_tol = 1e-9;     // relative, iterative solver only
    double max_dsw = 0.2;      // saturation chop per Newton update
    int max_halvings = 5;      // line-search halvings on residual increase
    int max_dt_cuts = 4;       // retry down to dt / 2^4
    LinearSolverKind linear_solver = LinearSolverKind::automatic;
    std::size_t direct_cell_limit = 10000;
};

struct SimConfig {
    Grid grid;
    RockField rock;
    FluidPhase water;
    FluidPhase oil;
    std::vector<WellSpec> wells;
    double dt = 50.0 * 86400.0;  // s
    int n_steps = 21;
    double p_init = 350e5;       // Pa
    double sw_init = 0.1;
    SolverOptions solver;

    const FluidPhase& fluid(Phase p) const { return p == Phase::water ? water : oil; }
};

struct Violation {
    std::string field;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    bool mentions(const std::string& field) const;
    std::string summary() const;
};

/// Checks every invariant of the configuration. Pure: never throws for bad
/// values, every failure is reported with the field (and cell) it concerns.
ValidationReport validate_config(const SimConfig& cfg);

/// Throws ConfigError carrying the report summary if validation fails.
void require_valid(const SimConfig& cfg);

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Reference fluid and rock parameters, in SI.
FluidPhase reference_water();
FluidPhase reference_oil();
Grid reference_grid();

/// Four corner producers (all layers) and one water injector at the centre
/// column.
std::vector<WellSpec> default_wells(const Grid& g, double producer_bhp = 310e5,
                                    double injector_bhp = 350e5, double rw = 0.1);

/// Config built from the reference parameters on `grid` with uniform rock.
SimConfig reference_config(const Grid& grid, double perm, double poro);

/// A parsed configuration file together with its normalised field-unit echo.
/// Feeding `field_echo` back to parse_config reproduces `config` exactly.
struct LoadedConfig {
    SimConfig config;
    nlohmann::json field_echo;
};

/// Parses a field-unit configuration document (md, cp, bar, days, 1/bar).
/// Relative file paths in the document resolve against `base_dir`.
LoadedConfig parse_config(const nlohmann::json& doc,
                          const std::filesystem::path& base_dir = {});
LoadedConfig load_config(const std::filesystem::path& path);

/// SI echo of a configuration for output provenance blocks. Per-cell rock
/// arrays are summarised, not listed.
nlohmann::json si_echo(const SimConfig& cfg);

} // namespace darcyflow
