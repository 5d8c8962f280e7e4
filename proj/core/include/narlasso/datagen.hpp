#pragma once

#include <cstdint>
#include <random>

#include "narlasso/types.hpp"

namespace narlasso {

/// Shape of a generated excitation or noise signal.
struct SignalSpec {
    Index length = 0;
    Index hold = 1;        // samples each drawn value is held for
    double sigma = 1.0;    // standard deviation of the draws
    std::uint64_t seed = 0;
};

/// Deterministic standard-normal stream: mt19937_64 driving a Box-Muller
/// transform. Both pieces are fully specified, so a seed yields the same
/// sequence on every platform and release.
class GaussianSampler {
public:
    explicit GaussianSampler(std::uint64_t seed) : engine_(seed) {}

    double next();

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// ceil(N/hold) independent N(0, sigma^2) draws, each repeated `hold` times,
/// truncated to N samples.
Vector held_gaussian_input(const SignalSpec& spec);

/// N i.i.d. N(0, sigma^2) samples. `hold` is ignored.
Vector white_gaussian(const SignalSpec& spec);

/// Generated benchmark record together with the injected noise realization,
/// kept so estimated residuals can be compared against the true disturbance.
struct SimulatedSeries {
    TimeSeriesData data;
    Vector noise;  // v[k], same length as the output
};

/// First-order linear benchmark
///   y[k] = 0.5 y[k-1] - 0.5 u[k-1] + 0.5 v[k-1] + v[k]
/// iterated from null initial conditions.
SimulatedSeries simulate_example1(const Vector& u, const Vector& v);

/// Second-order polynomial benchmark
///   y[k] = (0.8 - 0.5 exp(-y[k-1]^2)) y[k-1] + u[k-1]
///        - (0.3 + 0.9 exp(-y[k-1]^2)) y[k-2] + 0.2 u[k-2]
///        + 0.1 u[k-1] u[k-2] + 0.1 v[k-1] + 0.3 v[k-2] + v[k]
/// iterated from null initial conditions.
SimulatedSeries simulate_example2(const Vector& u, const Vector& v);

/// Convenience wrappers binding the benchmark excitation settings (held
/// standard-Gaussian input) to each system. Input and noise streams are
/// seeded with `seed` and `seed + 1`.
SimulatedSeries generate_example1(Index length, double noise_sigma, Index hold, std::uint64_t seed);
SimulatedSeries generate_example2(Index length, double noise_sigma, Index hold, std::uint64_t seed);

}  // namespace narlasso
