#include "narlasso/els.hpp"

#include <stdexcept>

namespace narlasso {

void ElsConfig::validate() const {
    if (!(tolerance > 0.0)) throw std::invalid_argument("ElsConfig: tolerance must be > 0");
    if (max_iterations < 1) throw std::invalid_argument("ElsConfig: max_iterations must be >= 1");
}

Vector ols_solve(const Matrix& x, const Vector& y) {
    if (x.rows() == 0 || x.cols() == 0) throw std::invalid_argument("ols_solve: empty matrix");
    if (x.rows() != y.size()) throw std::invalid_argument("ols_solve: row count mismatch");
    // complete orthogonal decomposition yields the minimum-norm minimizer for
    // rank-deficient matrices
    return x.completeOrthogonalDecomposition().solve(y);
}

ElsResult extended_least_squares(const TimeSeriesData& data, const Dictionary& d,
                                 const ElsConfig& config) {
    config.validate();
    const Index n = data.length();
    const Index lag = d.max_lag();
    if (n <= lag) {
        throw std::invalid_argument("extended_least_squares: series shorter than max lag");
    }
    const Index rows = n - lag;
    const auto y_range = data.output.tail(rows);

    ElsResult result;
    result.residual = config.initial_residual == ElsConfig::InitialResidual::OutputCopy
                          ? data.output
                          : Vector::Zero(n);

    if (d.error_term_indices().empty()) {
        // fixed matrix: a single solve is the fixed point
        const Matrix x = build_matrix(d, data, result.residual);
        result.theta = ols_solve(x, y_range);
        result.residual.tail(rows) = y_range - x * result.theta;
        result.iterations = 1;
        result.converged = true;
        return result;
    }

    Vector previous;
    for (int i = 1; i <= config.max_iterations; ++i) {
        const Matrix x = build_matrix(d, data, result.residual);
        result.theta = ols_solve(x, y_range);
        result.residual.tail(rows) = y_range - x * result.theta;
        result.iterations = i;
        if (i > 1 && (result.theta - previous).cwiseAbs().maxCoeff() < config.tolerance) {
            result.converged = true;
            return result;
        }
        previous = result.theta;
    }
    return result;
}

}  // namespace narlasso
