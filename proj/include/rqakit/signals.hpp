#pragma once

#include <cstdint>
#include <vector>

#include "rqakit/time_series.hpp"

namespace rqakit {

// n i.i.d. uniform samples in [0, 1). Identical (n, seed) give bitwise
// identical output.
TimeSeries gen_white_noise(std::size_t n, std::uint64_t seed);

// y(t) = sin(omega * t) + p * u_t for t = 0..n-1, u_t uniform in [0, 1)
// drawn independently per t.
TimeSeries gen_sine_noise(std::size_t n, double omega, double p, std::uint64_t seed);

// Logistic map orbit x_{k+1} = r x_k (1 - x_k), x_0 uniform in (0, 1)
// from the seed. `transient` leading iterations are discarded, then n
// values are kept. noise_frac > 0 adds a uniform perturbation in
// [-noise_frac, +noise_frac] inside each iteration, with the state
// clamped back into [0, 1]; noise_frac = 0 reproduces the bare map.
TimeSeries gen_logistic(double r, std::size_t n, std::size_t transient,
                        double noise_frac, std::uint64_t seed);

enum class LorenzComponent { x, y, z };

// Parameters of the standard Lorenz-63 flow
//   dx/dt = sigma (y - x),  dy/dt = x (r - z) - y,  dz/dt = x y - b z
// plus fixed-step RK4 integration controls. The returned series holds
// keep_steps / stride samples of the chosen component; the initial
// condition is (1, 1, 1) plus a seeded jitter of magnitude 1e-3.
struct LorenzParams {
    double r = 28.0;
    double sigma = 10.0;
    double b = 8.0 / 3.0;
    double h = 1e-3;
    std::size_t transient_steps = 200000;
    std::size_t keep_steps = 100000;
    std::size_t stride = 100;
    LorenzComponent component = LorenzComponent::x;
};

struct LorenzTrace {
    TimeSeries series;
    std::vector<double> z_maxima; // successive local maxima of z(t), full resolution
};

// Integrates the flow and also records the successive local maxima of z
// (the usual flow bifurcation-diagram coordinate). Throws on divergence
// (any component beyond 1e6).
LorenzTrace integrate_lorenz(const LorenzParams& params, std::uint64_t seed);

TimeSeries gen_lorenz(const LorenzParams& params, std::uint64_t seed);

} // namespace rqakit
