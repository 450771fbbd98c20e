#include "rqakit/signals.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "rqakit/rng.hpp"

namespace rqakit {

namespace {

void check_length(std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("series length must be at least 2, got " +
                                    std::to_string(n));
    }
}

} // namespace

TimeSeries gen_white_noise(std::size_t n, std::uint64_t seed) {
    check_length(n);
    Xoshiro256pp rng(seed);
    TimeSeries out;
    out.seed = seed;
    out.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.values.push_back(rng.uniform01());
    }
    return out;
}

TimeSeries gen_sine_noise(std::size_t n, double omega, double p, std::uint64_t seed) {
    check_length(n);
    if (omega == 0.0) {
        throw std::invalid_argument("gen_sine_noise: omega must be nonzero");
    }
    if (p < 0.0) {
        throw std::invalid_argument("gen_sine_noise: noise weight p must be >= 0");
    }
    Xoshiro256pp rng(seed);
    TimeSeries out;
    out.seed = seed;
    out.values.reserve(n);
    for (std::size_t t = 0; t < n; ++t) {
        out.values.push_back(std::sin(omega * static_cast<double>(t)) +
                             p * rng.uniform01());
    }
    return out;
}

TimeSeries gen_logistic(double r, std::size_t n, std::size_t transient,
                        double noise_frac, std::uint64_t seed) {
    check_length(n);
    if (!(r > 0.0) || r > 4.0) {
        throw std::invalid_argument("gen_logistic: r must lie in (0, 4]");
    }
    if (noise_frac < 0.0) {
        throw std::invalid_argument("gen_logistic: noise_frac must be >= 0");
    }
    Xoshiro256pp rng(seed);
    double x = rng.uniform01();
    while (x <= 0.0) x = rng.uniform01(); // open interval (0, 1)

    constexpr double kDomainTol = 1e-12;
    auto step = [&](double state) {
        double next = r * state * (1.0 - state);
        if (noise_frac > 0.0) {
            next += noise_frac * (2.0 * rng.uniform01() - 1.0);
        } else if (next < -kDomainTol || next > 1.0 + kDomainTol) {
            throw std::domain_error("gen_logistic: orbit left [0, 1] at x = " +
                                    std::to_string(next));
        }
        return std::clamp(next, 0.0, 1.0);
    };

    for (std::size_t i = 0; i < transient; ++i) {
        x = step(x);
    }
    TimeSeries out;
    out.seed = seed;
    out.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.values.push_back(x);
        x = step(x);
    }
    return out;
}

namespace {

using State = std::array<double, 3>;

State lorenz_rhs(const State& s, const LorenzParams& p) {
    return {p.sigma * (s[1] - s[0]),
            s[0] * (p.r - s[2]) - s[1],
            s[0] * s[1] - p.b * s[2]};
}

State rk4_step(const State& s, const LorenzParams& p) {
    const double h = p.h;
    const State k1 = lorenz_rhs(s, p);
    const State k2 = lorenz_rhs({s[0] + 0.5 * h * k1[0], s[1] + 0.5 * h * k1[1],
                                 s[2] + 0.5 * h * k1[2]}, p);
    const State k3 = lorenz_rhs({s[0] + 0.5 * h * k2[0], s[1] + 0.5 * h * k2[1],
                                 s[2] + 0.5 * h * k2[2]}, p);
    const State k4 = lorenz_rhs({s[0] + h * k3[0], s[1] + h * k3[1],
                                 s[2] + h * k3[2]}, p);
    return {s[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            s[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
            s[2] + h / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])};
}

void check_bounded(const State& s) {
    constexpr double kDivergenceBound = 1e6;
    if (std::abs(s[0]) > kDivergenceBound || std::abs(s[1]) > kDivergenceBound ||
        std::abs(s[2]) > kDivergenceBound) {
        throw std::overflow_error("integrate_lorenz: trajectory diverged");
    }
}

} // namespace

LorenzTrace integrate_lorenz(const LorenzParams& params, std::uint64_t seed) {
    if (!(params.h > 0.0)) {
        throw std::invalid_argument("integrate_lorenz: step h must be positive");
    }
    if (params.keep_steps < 2 || params.stride == 0) {
        throw std::invalid_argument("integrate_lorenz: keep_steps >= 2 and stride >= 1 required");
    }
    if (params.keep_steps / params.stride < 2) {
        throw std::invalid_argument("integrate_lorenz: fewer than 2 samples after decimation");
    }

    Xoshiro256pp rng(seed);
    State s{};
    for (auto& c : s) {
        c = 1.0 + 1e-3 * (2.0 * rng.uniform01() - 1.0);
    }

    for (std::size_t i = 0; i < params.transient_steps; ++i) {
        s = rk4_step(s, params);
        check_bounded(s);
    }

    const std::size_t component = static_cast<std::size_t>(params.component);
    LorenzTrace trace;
    trace.series.seed = seed;
    trace.series.values.reserve(params.keep_steps / params.stride + 1);

    double z_prev2 = s[2];
    double z_prev = s[2];
    for (std::size_t k = 0; k < params.keep_steps; ++k) {
        if (k % params.stride == 0) {
            trace.series.values.push_back(s[component]);
        }
        s = rk4_step(s, params);
        check_bounded(s);
        if (k > 0 && z_prev > z_prev2 && z_prev > s[2]) {
            trace.z_maxima.push_back(z_prev);
        }
        z_prev2 = z_prev;
        z_prev = s[2];
    }
    return trace;
}

TimeSeries gen_lorenz(const LorenzParams& params, std::uint64_t seed) {
    return integrate_lorenz(params, seed).series;
}

} // namespace rqakit
