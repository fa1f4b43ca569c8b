#pragma once

// Fully implicit two-phase time stepper. Unknowns per cell are (P, S_w),
// interleaved cell-major: unknown 2c is the pressure of cell c, 2c+1 its water
// saturation. Newton drives the scaled residual N dt / rho of both phases
// below SolverOptions::newton_tol in the max norm.

#include "darcyflow/config.hpp"
#include "darcyflow/types.hpp"

#include <Eigen/Sparse>

#include <iosfwd>
#include <stdexcept>
#include <vector>

namespace darcyflow::simulator {

struct StepReport {
    int newton_iters = 0;                 // residual evaluations at accepted iterates
    double final_residual_inf_norm = 0.0; // scaled units
    double mass_balance = 0.0;            // worst phase, fraction of phase pore mass
    bool converged = false;
    double dt_used = 0.0;                 // smallest sub-step taken, s
    int substeps = 1;
    int linear_iters = 0;
};

class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(int step_index, StepReport last);

    int step_index() const { return step_index_; }
    const StepReport& last_report() const { return last_; }

private:
    int step_index_;
    StepReport last_;
};

State initial_state(const SimConfig& cfg);

struct StepResult {
    State state;
    StepReport report;
};

/// Advances `state_n` by dt. On Newton failure the step is retried as two
/// halves, recursively, up to SolverOptions::max_dt_cuts times. The returned
/// report has converged == false if even the smallest sub-step failed.
StepResult step(const State& state_n, double dt, const SimConfig& cfg,
                std::ostream* log = nullptr);

struct SimulationResult {
    FieldSeries series;
    std::vector<StepReport> reports;
};

/// Runs cfg.n_steps steps of cfg.dt from initial_state(cfg). Throws
/// ConfigError on an invalid config and NonConvergenceError (carrying the
/// 1-based step index) if a step fails.
SimulationResult simulate(const SimConfig& cfg, std::ostream* log = nullptr);

// Building blocks, exposed for verification.

/// Scaled residual vector, row 2c = water, row 2c+1 = oil of cell c.
Eigen::VectorXd scaled_residual(const State& state_n, const State& state_np1, double dt,
                                const SimConfig& cfg);

enum class JacobianMode { analytic, finite_difference };

/// d(scaled_residual) / d(P, S_w), unscaled unknowns (Pa, fraction).
Eigen::SparseMatrix<double> jacobian(const State& state_n, const State& state_np1, double dt,
                                     const SimConfig& cfg,
                                     JacobianMode mode = JacobianMode::analytic);

} // namespace darcyflow::simulator
