#pragma once

#include "narlasso/dictionary.hpp"
#include "narlasso/types.hpp"

namespace narlasso {

/// Extended-least-squares settings. The residual guess feeding the first
/// matrix build can start from the measured output (mirroring the pathwise
/// solver's initialization) or from zero.
struct ElsConfig {
    double tolerance = 1e-7;  // threshold on max |theta_i - theta_{i-1}|
    int max_iterations = 100;
    enum class InitialResidual { Zero, OutputCopy };
    InitialResidual initial_residual = InitialResidual::OutputCopy;

    void validate() const;
};

struct ElsResult {
    Vector theta;
    int iterations = 0;
    bool converged = false;
    Vector residual;  // full length N; prefix entries keep the initial guess
};

/// Minimum-norm least-squares solution of min ||y - X theta||^2 via a
/// rank-revealing orthogonal factorization. Throws on an empty matrix.
Vector ols_solve(const Matrix& x, const Vector& y);

/// Alternates matrix builds from the current residual with OLS solves until
/// the parameter vector settles. Dictionaries without error terms reduce to a
/// single OLS solve.
ElsResult extended_least_squares(const TimeSeriesData& data, const Dictionary& d,
                                 const ElsConfig& config);

}  // namespace narlasso
