#pragma once

#include <vector>

#include "narlasso/dictionary.hpp"
#include "narlasso/types.hpp"

namespace narlasso {

/// Regularization-path settings. Defaults follow the usual pathwise
/// coordinate-descent practice: 100 grid points down to 0.001 lambda_max,
/// sweep convergence at 1e-7.
struct PathConfig {
    int grid_points = 100;              // K
    double lambda_min_ratio = 1e-3;     // lambda_min / lambda_max
    double tolerance = 1e-7;            // threshold on max |theta+ - theta| per sweep
    int max_cycles = 10000;             // safety cap on sweeps per lambda
    bool use_active_set = true;

    void validate() const;
};

/// Mutable solver state for one fit. The residual spans all N samples; its
/// first max_lag entries sit outside the regression range, stay at the
/// initialization values, and only feed lagged error factors.
struct SolverState {
    Dictionary dictionary;
    Vector output;           // y, length N
    Matrix regressors;       // N' x p, error columns tracking the residual
    Vector theta;            // length p
    Vector residual;         // length N
    Vector column_norms_sq;  // ||x_j||^2, refreshed whenever column j is rebuilt
    std::vector<std::size_t> active_set;  // { j : theta_j != 0 } at cycle boundaries
    // residual-independent factor product of each error column, cached once
    std::vector<Vector> error_column_base;

    /// Algorithm initialization point: r = y, theta = 0, error columns
    /// evaluated from r.
    static SolverState initialize(const TimeSeriesData& data, const Dictionary& d);

    Index max_lag() const { return dictionary.max_lag(); }
    Index effective_length() const { return regressors.rows(); }
    auto residual_range() { return residual.segment(max_lag(), effective_length()); }
    auto residual_range() const { return residual.segment(max_lag(), effective_length()); }

    /// Rebuilds column j from the current residual and refreshes its norm.
    void rebuild_error_column(std::size_t j);
    /// Recomputes the active set from theta.
    void refresh_active_set();
    /// Recomputes the effective-range residual as y - X theta from the
    /// current matrix. Prefix entries are left untouched.
    void recompute_residual_range();
    int active_count() const;
};

struct FitResult {
    int cycles = 0;
    bool converged = false;
};

/// One solution along the path plus its diagnostics. The residual snapshot
/// allows fixed-point checks on stored entries.
struct PathEntry {
    double lambda = 0.0;
    Vector theta;
    int cycles_used = 0;
    int active_count = 0;
    bool converged = false;
    Vector residual;
};

struct LassoPath {
    std::vector<PathEntry> entries;
    Dictionary dictionary;
    PathConfig config;
};

/// Soft-thresholding operator: z shrunk toward zero by lambda, exactly zero
/// inside [-lambda, lambda].
double soft_threshold(double z, double lambda);

/// Smallest penalty for which the all-zero parameter vector is optimal,
/// max_j |y^T x_j|, with the matrix built at the initialization point r = y.
/// Throws if every column is identically zero.
double lambda_max(const TimeSeriesData& data, const Dictionary& d);

/// K geometrically spaced values from lambda_max down to
/// lambda_min_ratio * lambda_max inclusive; K = 1 yields just lambda_max.
Vector lambda_grid(double lambda_max, const PathConfig& config);

/// One coordinate update: rebuild column j if it tracks the residual, apply
/// the soft-thresholded update, and adjust the stored residual. Returns
/// |theta_j^+ - theta_j|. A zero-norm column forces theta_j to 0 and leaves
/// the residual untouched.
double coordinate_step(SolverState& state, std::size_t j, double lambda);

/// Runs coordinate sweeps at a fixed lambda until the max coefficient change
/// over a sweep drops below tolerance. With use_active_set, one full sweep is
/// followed by active-set sweeps to convergence, then a confirming full sweep;
/// iteration stops when a full sweep meets tolerance without changing the
/// active-set membership. Exceeding max_cycles returns converged = false.
FitResult fit_single(SolverState& state, double lambda, const PathConfig& config);

/// Whole regularization path, warm-starting each grid value from the previous
/// solution and carrying theta, residual and matrix forward. Non-convergence
/// at one grid point is flagged on its entry without aborting the path.
LassoPath fit_path(const TimeSeriesData& data, const Dictionary& d, const PathConfig& config);

/// Per-coordinate stationarity violations at the given lambda, computed with
/// the error columns frozen at the state's residual: for theta_j = 0,
/// max(|x_j^T r| - lambda, 0); otherwise |x_j^T r - lambda sign(theta_j)|.
Vector kkt_violations(const SolverState& state, double lambda);

}  // namespace narlasso
