#include "darcyflow/simulator.hpp"

#include "darcyflow/discretization.hpp"
#include "darcyflow/relperm.hpp"
#include "darcyflow/wells.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

namespace darcyflow::simulator {

NonConvergenceError::NonConvergenceError(int step_index, StepReport last)
    : std::runtime_error("Newton solve did not converge at step " + std::to_string(step_index) +
                         " (residual " + std::to_string(last.final_residual_inf_norm) + " after " +
                         std::to_string(last.newton_iters) + " iterations, dt " +
                         std::to_string(last.dt_used) + " s)"),
      step_index_(step_index), last_(last)
{
}

State initial_state(const SimConfig& cfg)
{
    const std::size_t n = cfg.grid.cell_count();
    return State{std::vector<double>(n, cfg.p_init), std::vector<double>(n, cfg.sw_init)};
}

Eigen::VectorXd scaled_residual(const State& state_n, const State& state_np1, double dt,
                                const SimConfig& cfg)
{
    const std::size_t n = cfg.grid.cell_count();
    Eigen::VectorXd r(2 * static_cast<Eigen::Index>(n));
    for (Phase phase : {Phase::water, Phase::oil}) {
        const auto field = discretization::residual_field(phase, state_n, state_np1, cfg, dt);
        const double scale = dt / cfg.fluid(phase).rho;
        const Eigen::Index offset = phase == Phase::water ? 0 : 1;
        for (std::size_t c = 0; c < n; ++c)
            r(2 * static_cast<Eigen::Index>(c) + offset) = field.values[c] * scale;
    }
    return r;
}

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

inline Eigen::Index row_of(std::size_t cell, Phase phase)
{
    return 2 * static_cast<Eigen::Index>(cell) + (phase == Phase::water ? 0 : 1);
}
inline Eigen::Index p_col(std::size_t cell) { return 2 * static_cast<Eigen::Index>(cell); }
inline Eigen::Index s_col(std::size_t cell) { return 2 * static_cast<Eigen::Index>(cell) + 1; }

void add_face(Triplets& trip, Phase phase, const SimConfig& cfg, const State& np1, double scale,
              std::size_t lo, std::size_t hi, double spacing)
{
    const FluidPhase& f = cfg.fluid(phase);
    const double p_lo = np1.pressure[lo];
    const double p_hi = np1.pressure[hi];
    const std::size_t up =
        discretization::upwind_is_a(phase, f.corey, p_lo, p_hi, np1.sat_w[lo], np1.sat_w[hi])
            ? lo
            : hi;
    const double g = f.rho * discretization::harmonic_mean(cfg.rock.perm[lo], cfg.rock.perm[hi]) /
                     f.mu / (spacing * spacing) * scale;
    const double kr = relperm::kr(phase, np1.sat_w[up], f.corey);
    const double dkr = relperm::dkr_dsw(phase, np1.sat_w[up], f.corey);

    // Flux F = g kr (P_hi - P_lo) enters lo with +, hi with -.
    const double dF_dphi = g * kr;
    const double dF_dsup = g * dkr * (p_hi - p_lo);
    const Eigen::Index r_lo = row_of(lo, phase);
    const Eigen::Index r_hi = row_of(hi, phase);
    trip.emplace_back(r_lo, p_col(hi), dF_dphi);
    trip.emplace_back(r_lo, p_col(lo), -dF_dphi);
    trip.emplace_back(r_hi, p_col(hi), -dF_dphi);
    trip.emplace_back(r_hi, p_col(lo), dF_dphi);
    if (dF_dsup != 0.0) {
        trip.emplace_back(r_lo, s_col(up), dF_dsup);
        trip.emplace_back(r_hi, s_col(up), -dF_dsup);
    }
}

Triplets analytic_triplets(const State& n, const State& np1, double dt, const SimConfig& cfg)
{
    const Grid& g = cfg.grid;
    Triplets trip;
    trip.reserve(g.cell_count() * 40);
    for (Phase phase : {Phase::water, Phase::oil}) {
        const FluidPhase& f = cfg.fluid(phase);
        const double scale = dt / f.rho;
        const double sign_s = phase == Phase::water ? 1.0 : -1.0;  // dS_l / dS_w
        for (int k = 0; k < g.nz; ++k)
            for (int j = 0; j < g.ny; ++j)
                for (int i = 0; i < g.nx; ++i) {
                    const std::size_t c = g.index(i, j, k);
                    if (i + 1 < g.nx)
                        add_face(trip, phase, cfg, np1, scale, c, g.index(i + 1, j, k), g.dx);
                    if (j + 1 < g.ny)
                        add_face(trip, phase, cfg, np1, scale, c, g.index(i, j + 1, k), g.dy);
                    if (k + 1 < g.nz)
                        add_face(trip, phase, cfg, np1, scale, c, g.index(i, j, k + 1), g.dz);

                    const double phi = cfg.rock.poro[c];
                    const double s_old = phase == Phase::water ? n.sat_w[c] : 1.0 - n.sat_w[c];
                    double d_p = -phi * f.c * s_old * f.rho / dt;
                    double d_s = -phi * f.rho / dt * sign_s;

                    if (!cfg.wells.empty()) {
                        const wells::CellState cs{np1.pressure[c], np1.sat_w[c], cfg.rock.perm[c],
                                                  g.dz};
                        const auto src = wells::cell_source(phase, {i, j, k}, cs, cfg);
                        d_p -= src.d_pressure / g.cell_volume();
                        d_s -= src.d_sat_w / g.cell_volume();
                    }
                    trip.emplace_back(row_of(c, phase), p_col(c), d_p * scale);
                    trip.emplace_back(row_of(c, phase), s_col(c), d_s * scale);
                }
    }
    return trip;
}

Eigen::SparseMatrix<double> fd_jacobian(const State& n, const State& np1, double dt,
                                        const SimConfig& cfg)
{
    const std::size_t cells = cfg.grid.cell_count();
    const Eigen::Index dim = 2 * static_cast<Eigen::Index>(cells);
    Triplets trip;
    State x = np1;
    for (std::size_t c = 0; c < cells; ++c) {
        for (int var = 0; var < 2; ++var) {
            double& v = var == 0 ? x.pressure[c] : x.sat_w[c];
            const double orig = v;
            const double h = var == 0 ? 1e-6 * std::max(std::abs(orig), 1.0) : 1e-7;
            const double lo = var == 0 ? orig - h : std::max(orig - h, 0.0);
            const double hi = var == 0 ? orig + h : std::min(orig + h, 1.0);
            v = hi;
            const Eigen::VectorXd r_hi = scaled_residual(n, x, dt, cfg);
            v = lo;
            const Eigen::VectorXd r_lo = scaled_residual(n, x, dt, cfg);
            v = orig;
            const Eigen::VectorXd d = (r_hi - r_lo) / (hi - lo);
            const Eigen::Index col = 2 * static_cast<Eigen::Index>(c) + var;
            for (Eigen::Index r = 0; r < dim; ++r)
                if (d(r) != 0.0)
                    trip.emplace_back(r, col, d(r));
        }
    }
    Eigen::SparseMatrix<double> jac(dim, dim);
    jac.setFromTriplets(trip.begin(), trip.end());
    return jac;
}

// Linear system actually solved: rows are (water + oil, water) per cell so the
// first row of each block is a pressure equation, and pressure unknowns are in
// bar. Both are invertible recombinations of the Newton system.
constexpr double kPressureUnit = 1e5;

Eigen::SparseMatrix<double> solver_matrix(const Triplets& jac_trip, Eigen::Index dim)
{
    Triplets trip;
    trip.reserve(jac_trip.size() * 3 / 2);
    for (const auto& t : jac_trip) {
        const Eigen::Index cell = t.row() / 2;
        const bool water = t.row() % 2 == 0;
        const double v = t.col() % 2 == 0 ? t.value() * kPressureUnit : t.value();
        trip.emplace_back(2 * cell, t.col(), v);
        if (water)
            trip.emplace_back(2 * cell + 1, t.col(), v);
    }
    Eigen::SparseMatrix<double> a(dim, dim);
    a.setFromTriplets(trip.begin(), trip.end());
    a.makeCompressed();
    return a;
}

struct LinearOutcome {
    Eigen::VectorXd delta;  // unscaled (Pa, fraction)
    int iterations = 0;
    bool ok = false;
};

LinearOutcome solve_newton_system(const Triplets& jac_trip, const Eigen::VectorXd& residual,
                                  const SimConfig& cfg)
{
    const Eigen::Index dim = residual.size();
    const Eigen::SparseMatrix<double> a = solver_matrix(jac_trip, dim);
    Eigen::VectorXd b(dim);
    for (Eigen::Index c = 0; c < dim / 2; ++c) {
        b(2 * c) = -(residual(2 * c) + residual(2 * c + 1));
        b(2 * c + 1) = -residual(2 * c);
    }

    const SolverOptions& opt = cfg.solver;
    const bool direct =
        opt.linear_solver == LinearSolverKind::direct ||
        (opt.linear_solver == LinearSolverKind::automatic &&
         cfg.grid.cell_count() < opt.direct_cell_limit);

    LinearOutcome out;
    Eigen::VectorXd y;
    if (!direct) {
        Eigen::BiCGSTAB<Eigen::SparseMatrix<double, Eigen::RowMajor>, Eigen::IncompleteLUT<double>>
            solver;
        solver.preconditioner().setDroptol(1e-4);
        solver.preconditioner().setFillfactor(10);
        solver.setTolerance(opt.lin_tol);
        solver.setMaxIterations(1000);
        Eigen::SparseMatrix<double, Eigen::RowMajor> ar = a;
        solver.compute(ar);
        if (solver.info() == Eigen::Success) {
            y = solver.solve(b);
            out.iterations = static_cast<int>(solver.iterations());
            out.ok = solver.info() == Eigen::Success && y.allFinite();
        }
    }
    if (!out.ok) {
        // Direct factorisation, also the fallback when the iterative solve fails.
        Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
        lu.compute(a);
        if (lu.info() != Eigen::Success)
            return out;
        y = lu.solve(b);
        out.ok = lu.info() == Eigen::Success && y.allFinite();
        out.iterations = std::max(out.iterations, 1);
    }
    if (!out.ok)
        return out;
    for (Eigen::Index c = 0; c < dim / 2; ++c)
        y(2 * c) *= kPressureUnit;
    out.delta = std::move(y);
    return out;
}

double inf_norm(const Eigen::VectorXd& r) { return r.size() ? r.cwiseAbs().maxCoeff() : 0.0; }

State apply_update(const State& x, const Eigen::VectorXd& delta, double alpha)
{
    State out = x;
    for (std::size_t c = 0; c < x.pressure.size(); ++c) {
        out.pressure[c] = x.pressure[c] + alpha * delta(p_col(c));
        out.sat_w[c] = std::clamp(x.sat_w[c] + alpha * delta(s_col(c)), 0.0, 1.0);
    }
    return out;
}

// Net mass created per phase over the step, as a fraction of the phase pore
// mass. The max-norm test alone lets small residuals of one sign add up.
double mass_balance(const Eigen::VectorXd& r, const SimConfig& cfg)
{
    double pore = 0.0;
    for (double phi : cfg.rock.poro)
        pore += phi;
    if (!(pore > 0.0))
        return 0.0;
    double worst = 0.0;
    for (Eigen::Index offset : {0, 1}) {
        double sum = 0.0;
        for (Eigen::Index row = offset; row < r.size(); row += 2)
            sum += r(row);
        worst = std::max(worst, std::abs(sum) / pore);
    }
    return worst;
}

bool admissible(const State& s)
{
    for (double p : s.pressure)
        if (!(p > 0.0) || !std::isfinite(p))
            return false;
    return true;
}

StepResult newton(const State& state_n, double dt, const SimConfig& cfg)
{
    const SolverOptions& opt = cfg.solver;
    StepResult res{state_n, {}};
    res.report.dt_used = dt;

    State& x = res.state;
    Eigen::VectorXd r = scaled_residual(state_n, x, dt, cfg);
    for (int it = 1;; ++it) {
        res.report.newton_iters = it;
        res.report.final_residual_inf_norm = inf_norm(r);
        if (!std::isfinite(res.report.final_residual_inf_norm))
            return res;
        res.report.mass_balance = mass_balance(r, cfg);
        if (res.report.final_residual_inf_norm <= opt.newton_tol &&
            res.report.mass_balance <= opt.mb_tol) {
            res.report.converged = true;
            return res;
        }
        if (it >= opt.newton_max_iter)
            return res;

        const Triplets jac = analytic_triplets(state_n, x, dt, cfg);
        LinearOutcome lin = solve_newton_system(jac, r, cfg);
        res.report.linear_iters += lin.iterations;
        if (!lin.ok)
            return res;

        // Saturation chop: limit each cell's saturation change.
        for (std::size_t c = 0; c < x.sat_w.size(); ++c) {
            double& ds = lin.delta(s_col(c));
            ds = std::clamp(ds, -opt.max_dsw, opt.max_dsw);
        }

        // Halve the step while the residual grows; if no trial decreases it,
        // keep the trial with the smallest residual.
        const double norm0 = r.norm();
        double alpha = 1.0;
        State trial;
        Eigen::VectorXd r_trial;
        double best_norm = std::numeric_limits<double>::infinity();
        State best;
        Eigen::VectorXd r_best;
        for (int halving = 0; halving <= opt.max_halvings; ++halving, alpha *= 0.5) {
            trial = apply_update(x, lin.delta, alpha);
            if (!admissible(trial))
                continue;
            r_trial = scaled_residual(state_n, trial, dt, cfg);
            const double nrm = r_trial.norm();
            if (nrm < best_norm) {
                best_norm = nrm;
                best = std::move(trial);
                r_best = std::move(r_trial);
            }
            if (nrm <= norm0)
                break;
        }
        if (!std::isfinite(best_norm))
            return res;
        x = std::move(best);
        r = std::move(r_best);
    }
}

StepResult step_with_cuts(const State& state_n, double dt, const SimConfig& cfg, int cuts_left)
{
    StepResult res = newton(state_n, dt, cfg);
    if (res.report.converged || cuts_left == 0)
        return res;

    StepResult first = step_with_cuts(state_n, 0.5 * dt, cfg, cuts_left - 1);
    if (!first.report.converged) {
        first.report.newton_iters += res.report.newton_iters;
        first.report.linear_iters += res.report.linear_iters;
        return first;
    }
    StepResult second = step_with_cuts(first.state, 0.5 * dt, cfg, cuts_left - 1);
    second.report.newton_iters += res.report.newton_iters + first.report.newton_iters;
    second.report.linear_iters += res.report.linear_iters + first.report.linear_iters;
    second.report.dt_used = std::min(first.report.dt_used, second.report.dt_used);
    second.report.mass_balance = std::max(first.report.mass_balance, second.report.mass_balance);
    second.report.substeps += first.report.substeps;
    return second;
}

} // namespace

Eigen::SparseMatrix<double> jacobian(const State& state_n, const State& state_np1, double dt,
                                     const SimConfig& cfg, JacobianMode mode)
{
    if (mode == JacobianMode::finite_difference)
        return fd_jacobian(state_n, state_np1, dt, cfg);
    const Eigen::Index dim = 2 * static_cast<Eigen::Index>(cfg.grid.cell_count());
    const Triplets trip = analytic_triplets(state_n, state_np1, dt, cfg);
    Eigen::SparseMatrix<double> jac(dim, dim);
    jac.setFromTriplets(trip.begin(), trip.end());
    return jac;
}

StepResult step(const State& state_n, double dt, const SimConfig& cfg, std::ostream* log)
{
    StepResult res = step_with_cuts(state_n, dt, cfg, cfg.solver.max_dt_cuts);
    if (log) {
        *log << "step dt=" << dt << " iters=" << res.report.newton_iters
             << " substeps=" << res.report.substeps
             << " residual=" << res.report.final_residual_inf_norm
             << " mass_balance=" << res.report.mass_balance
             << (res.report.converged ? " converged" : " FAILED") << '\n';
    }
    return res;
}

SimulationResult simulate(const SimConfig& cfg, std::ostream* log)
{
    require_valid(cfg);
    SimulationResult out;
    State state = initial_state(cfg);
    out.series.append(state, 0.0);
    for (int m = 1; m <= cfg.n_steps; ++m) {
        if (log)
            *log << "[" << m << "/" << cfg.n_steps << "] ";
        StepResult res = step(state, cfg.dt, cfg, log);
        out.reports.push_back(res.report);
        if (!res.report.converged)
            throw NonConvergenceError(m, res.report);
        state = std::move(res.state);
        out.series.append(state, static_cast<double>(m) * cfg.dt);
    }
    return out;
}

} // namespace darcyflow::simulator
