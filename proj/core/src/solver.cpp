#include "narlasso/solver.hpp"

#include <cmath>
#include <stdexcept>

namespace narlasso {

void PathConfig::validate() const {
    if (grid_points < 1) throw std::invalid_argument("PathConfig: grid_points must be >= 1");
    if (!(lambda_min_ratio > 0.0 && lambda_min_ratio < 1.0)) {
        throw std::invalid_argument("PathConfig: lambda_min_ratio must be in (0, 1)");
    }
    if (!(tolerance > 0.0)) throw std::invalid_argument("PathConfig: tolerance must be > 0");
    if (max_cycles < 1) throw std::invalid_argument("PathConfig: max_cycles must be >= 1");
}

SolverState SolverState::initialize(const TimeSeriesData& data, const Dictionary& d) {
    SolverState state;
    state.dictionary = d;
    state.output = data.output;
    state.residual = data.output;  // r <- y
    state.theta = Vector::Zero(static_cast<Index>(d.size()));
    state.regressors = build_matrix(d, data, state.residual);
    state.column_norms_sq = state.regressors.colwise().squaredNorm();

    // cache the y/u factor product of each error column; rebuilds then only
    // multiply in the lagged-residual factors
    state.error_column_base.resize(d.size());
    const Index first = d.max_lag();
    const Index rows = state.regressors.rows();
    for (std::size_t j : d.error_term_indices()) {
        std::vector<Factor> fixed;
        for (const Factor& f : d.term(j).factors()) {
            if (f.kind != FactorKind::Error) fixed.push_back(f);
        }
        if (fixed.empty()) {
            state.error_column_base[j] = Vector::Ones(rows);
        } else {
            state.error_column_base[j] =
                evaluate_column(RegressorTerm(std::move(fixed)), data, state.residual, first, rows);
        }
    }
    return state;
}

void SolverState::rebuild_error_column(std::size_t j) {
    const Index col = static_cast<Index>(j);
    const Index first = max_lag();
    Eigen::ArrayXd values = error_column_base[j].array();
    for (const Factor& f : dictionary.term(j).factors()) {
        if (f.kind != FactorKind::Error) continue;
        auto shifted = residual.segment(first - f.lag, effective_length()).array();
        for (int e = 0; e < f.exponent; ++e) values *= shifted;
    }
    regressors.col(col) = values.matrix();
    column_norms_sq[col] = regressors.col(col).squaredNorm();
}

void SolverState::refresh_active_set() {
    active_set.clear();
    for (Index j = 0; j < theta.size(); ++j) {
        if (theta[j] != 0.0) active_set.push_back(static_cast<std::size_t>(j));
    }
}

void SolverState::recompute_residual_range() {
    residual_range() = output.tail(effective_length()) - regressors * theta;
}

int SolverState::active_count() const {
    return static_cast<int>((theta.array() != 0.0).count());
}

double soft_threshold(double z, double lambda) {
    if (z > lambda) return z - lambda;
    if (z < -lambda) return z + lambda;
    return 0.0;
}

namespace {

double lambda_max_at(const SolverState& state) {
    double best = 0.0;
    bool any_nonzero_column = false;
    const auto range = state.residual_range();
    for (Index j = 0; j < state.regressors.cols(); ++j) {
        if (state.column_norms_sq[j] > 0.0) any_nonzero_column = true;
        best = std::max(best, std::abs(range.dot(state.regressors.col(j))));
    }
    if (!any_nonzero_column) {
        throw std::invalid_argument("lambda_max: every regressor column is zero");
    }
    return best;
}

}  // namespace

double lambda_max(const TimeSeriesData& data, const Dictionary& d) {
    return lambda_max_at(SolverState::initialize(data, d));
}

Vector lambda_grid(double lambda_max, const PathConfig& config) {
    config.validate();
    if (!(lambda_max > 0.0)) throw std::invalid_argument("lambda_grid: lambda_max must be > 0");
    const int k = config.grid_points;
    Vector grid(k);
    if (k == 1) {
        grid[0] = lambda_max;
        return grid;
    }
    const double log_max = std::log(lambda_max);
    const double log_min = std::log(lambda_max * config.lambda_min_ratio);
    for (int i = 0; i < k; ++i) {
        grid[i] = std::exp(log_max + (log_min - log_max) * i / (k - 1));
    }
    grid[0] = lambda_max;
    grid[k - 1] = lambda_max * config.lambda_min_ratio;
    return grid;
}

namespace {

// rebuild column j from the residual when the term contains error factors;
// output and input factors are read from the cached immutable part
void refresh_column_if_needed(SolverState& state, std::size_t j) {
    if (state.dictionary.term_has_error(j)) state.rebuild_error_column(j);
}

}  // namespace

double coordinate_step(SolverState& state, std::size_t j, double lambda) {
    refresh_column_if_needed(state, j);
    const Index col = static_cast<Index>(j);
    const double norm_sq = state.column_norms_sq[col];
    const double old_value = state.theta[col];
    if (norm_sq == 0.0) {
        state.theta[col] = 0.0;
        return std::abs(old_value);
    }
    auto column = state.regressors.col(col);
    // (r + x_j theta_j)^T x_j expanded to avoid the temporary vector
    const double z = state.residual_range().dot(column) + old_value * norm_sq;
    const double new_value = soft_threshold(z, lambda) / norm_sq;
    if (new_value != old_value) {
        state.residual_range() -= (new_value - old_value) * column;
        state.theta[col] = new_value;
    }
    return std::abs(new_value - old_value);
}

namespace {

struct SweepOutcome {
    double max_change = 0.0;
    bool membership_changed = false;
};

SweepOutcome full_sweep(SolverState& state, double lambda) {
    SweepOutcome outcome;
    for (std::size_t j = 0; j < state.dictionary.size(); ++j) {
        const bool was_active = state.theta[static_cast<Index>(j)] != 0.0;
        const double change = coordinate_step(state, j, lambda);
        outcome.max_change = std::max(outcome.max_change, change);
        const bool is_active = state.theta[static_cast<Index>(j)] != 0.0;
        if (was_active != is_active) outcome.membership_changed = true;
    }
    return outcome;
}

double active_sweep(SolverState& state, const std::vector<std::size_t>& members, double lambda) {
    double max_change = 0.0;
    for (std::size_t j : members) {
        max_change = std::max(max_change, coordinate_step(state, j, lambda));
    }
    return max_change;
}

}  // namespace

FitResult fit_single(SolverState& state, double lambda, const PathConfig& config) {
    config.validate();
    FitResult result;
    while (result.cycles < config.max_cycles) {
        const SweepOutcome outcome = full_sweep(state, lambda);
        ++result.cycles;
        const bool tol_met = outcome.max_change < config.tolerance;
        if (!config.use_active_set) {
            if (tol_met) {
                result.converged = true;
                break;
            }
            continue;
        }
        if (tol_met && !outcome.membership_changed) {
            result.converged = true;
            break;
        }
        state.refresh_active_set();
        const std::vector<std::size_t> members = state.active_set;
        while (!members.empty() && result.cycles < config.max_cycles) {
            const double change = active_sweep(state, members, lambda);
            ++result.cycles;
            if (change < config.tolerance) break;
        }
    }
    state.refresh_active_set();
    return result;
}

LassoPath fit_path(const TimeSeriesData& data, const Dictionary& d, const PathConfig& config) {
    config.validate();
    SolverState state = SolverState::initialize(data, d);
    const double max_penalty = lambda_max_at(state);

    Vector grid;
    if (max_penalty > 0.0) {
        grid = lambda_grid(max_penalty, config);
    } else {
        // y orthogonal to every column: the whole path is theta = 0 and a
        // single zero-penalty entry represents it
        grid = Vector::Zero(1);
    }

    LassoPath path;
    path.dictionary = d;
    path.config = config;
    path.entries.reserve(grid.size());
    for (Index i = 0; i < grid.size(); ++i) {
        const FitResult fit = fit_single(state, grid[i], config);
        PathEntry entry;
        entry.lambda = grid[i];
        entry.theta = state.theta;
        entry.cycles_used = fit.cycles;
        entry.active_count = state.active_count();
        entry.converged = fit.converged;
        entry.residual = state.residual;
        path.entries.push_back(std::move(entry));
        // drift control between grid points; prefix entries stay at y
        state.recompute_residual_range();
    }
    return path;
}

Vector kkt_violations(const SolverState& state, double lambda) {
    SolverState frozen = state;
    for (std::size_t j : frozen.dictionary.error_term_indices()) {
        frozen.rebuild_error_column(j);
    }
    const auto range = frozen.residual_range();
    Vector violations(frozen.theta.size());
    for (Index j = 0; j < frozen.theta.size(); ++j) {
        const double gradient = frozen.regressors.col(j).dot(range);
        if (frozen.theta[j] == 0.0) {
            violations[j] = std::max(std::abs(gradient) - lambda, 0.0);
        } else {
            violations[j] = std::abs(gradient - lambda * (frozen.theta[j] > 0.0 ? 1.0 : -1.0));
        }
    }
    return violations;
}

}  // namespace narlasso
