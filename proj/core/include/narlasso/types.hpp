#pragma once

#include <Eigen/Dense>

namespace narlasso {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Sampled multi-input / single-output record. Row k of `inputs` and entry k
/// of `output` belong to the same sampling instant.
struct TimeSeriesData {
    Matrix inputs;  // N x N_u (N_u may be 0 for autonomous series)
    Vector output;  // length N

    TimeSeriesData() = default;
    TimeSeriesData(Matrix u, Vector y) : inputs(std::move(u)), output(std::move(y)) {}

    Index length() const { return output.size(); }
    Index input_channels() const { return inputs.cols(); }
};

}  // namespace narlasso
