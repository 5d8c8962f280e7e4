#include "narlasso/datagen.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace narlasso {

double GaussianSampler::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    // (x >> 11) keeps the top 53 bits; +1 maps u1 into (0, 1] so log is finite
    const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

namespace {

void check_spec(const SignalSpec& spec) {
    if (spec.length < 1) throw std::invalid_argument("SignalSpec: length must be >= 1");
    if (spec.hold < 1) throw std::invalid_argument("SignalSpec: hold must be >= 1");
    if (spec.sigma < 0) throw std::invalid_argument("SignalSpec: sigma must be >= 0");
}

}  // namespace

Vector held_gaussian_input(const SignalSpec& spec) {
    check_spec(spec);
    GaussianSampler sampler(spec.seed);
    Vector out(spec.length);
    for (Index k = 0; k < spec.length; k += spec.hold) {
        const double value = spec.sigma * sampler.next();
        const Index block = std::min(spec.hold, spec.length - k);
        out.segment(k, block).setConstant(value);
    }
    return out;
}

Vector white_gaussian(const SignalSpec& spec) {
    check_spec(spec);
    GaussianSampler sampler(spec.seed);
    Vector out(spec.length);
    for (Index k = 0; k < spec.length; ++k) {
        out[k] = spec.sigma * sampler.next();
    }
    return out;
}

namespace {

SimulatedSeries package(const Vector& u, Vector y, const Vector& v) {
    Matrix inputs(u.size(), 1);
    inputs.col(0) = u;
    SimulatedSeries out;
    out.data = TimeSeriesData(std::move(inputs), std::move(y));
    out.noise = v;
    return out;
}

}  // namespace

SimulatedSeries simulate_example1(const Vector& u, const Vector& v) {
    if (u.size() != v.size()) {
        throw std::invalid_argument("simulate_example1: input/noise length mismatch");
    }
    const Index n = u.size();
    Vector y(n);
    for (Index k = 0; k < n; ++k) {
        const double y1 = k >= 1 ? y[k - 1] : 0.0;
        const double u1 = k >= 1 ? u[k - 1] : 0.0;
        const double v1 = k >= 1 ? v[k - 1] : 0.0;
        y[k] = 0.5 * y1 - 0.5 * u1 + 0.5 * v1 + v[k];
    }
    return package(u, std::move(y), v);
}

SimulatedSeries simulate_example2(const Vector& u, const Vector& v) {
    if (u.size() != v.size()) {
        throw std::invalid_argument("simulate_example2: input/noise length mismatch");
    }
    const Index n = u.size();
    Vector y(n);
    for (Index k = 0; k < n; ++k) {
        const double y1 = k >= 1 ? y[k - 1] : 0.0;
        const double y2 = k >= 2 ? y[k - 2] : 0.0;
        const double u1 = k >= 1 ? u[k - 1] : 0.0;
        const double u2 = k >= 2 ? u[k - 2] : 0.0;
        const double v1 = k >= 1 ? v[k - 1] : 0.0;
        const double v2 = k >= 2 ? v[k - 2] : 0.0;
        const double gain = std::exp(-y1 * y1);
        y[k] = (0.8 - 0.5 * gain) * y1 + u1 - (0.3 + 0.9 * gain) * y2 + 0.2 * u2 +
               0.1 * u1 * u2 + 0.1 * v1 + 0.3 * v2 + v[k];
    }
    return package(u, std::move(y), v);
}

SimulatedSeries generate_example1(Index length, double noise_sigma, Index hold,
                                  std::uint64_t seed) {
    const Vector u = held_gaussian_input({length, hold, 1.0, seed});
    const Vector v = white_gaussian({length, 1, noise_sigma, seed + 1});
    return simulate_example1(u, v);
}

SimulatedSeries generate_example2(Index length, double noise_sigma, Index hold,
                                  std::uint64_t seed) {
    const Vector u = held_gaussian_input({length, hold, 1.0, seed});
    const Vector v = white_gaussian({length, 1, noise_sigma, seed + 1});
    return simulate_example2(u, v);
}

}  // namespace narlasso
