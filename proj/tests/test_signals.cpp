#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <stdexcept>

#include "rqakit/rng.hpp"
#include "rqakit/signals.hpp"
#include "rqakit/time_series.hpp"

using namespace rqakit;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& content) {
    const fs::path path = fs::temp_directory_path() / name;
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

double variance(const std::vector<double>& v) {
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    return ss / static_cast<double>(v.size());
}

} // namespace

TEST_CASE("white noise is deterministic per seed") {
    const auto a = gen_white_noise(4, 99);
    const auto b = gen_white_noise(4, 99);
    CHECK(a.values == b.values);
    CHECK(a.seed == 99);
    const auto c = gen_white_noise(4, 100);
    CHECK(a.values != c.values);
}

TEST_CASE("white noise range and mean") {
    const auto s = gen_white_noise(100000, 7);
    double mean = 0.0;
    for (double v : s.values) {
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
        mean += v;
    }
    mean /= static_cast<double>(s.size());
    CHECK(std::abs(mean - 0.5) < 0.01);
}

TEST_CASE("white noise rejects degenerate lengths") {
    CHECK_THROWS_AS(gen_white_noise(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_white_noise(0, 1), std::invalid_argument);
}

TEST_CASE("sine with p=0 is the exact sine") {
    const auto s = gen_sine_noise(500, 0.033, 0.0, 3);
    for (std::size_t t = 0; t < s.size(); ++t) {
        CHECK(s.values[t] == std::sin(0.033 * static_cast<double>(t)));
    }
    CHECK(s.values[0] == 0.0);
}

TEST_CASE("sine noise span grows with p") {
    const auto s = gen_sine_noise(10000, 0.033, 2.0, 11);
    const auto [lo, hi] = std::minmax_element(s.values.begin(), s.values.end());
    CHECK(*hi - *lo > 2.0);
}

TEST_CASE("sine parameter validation") {
    CHECK_THROWS_AS(gen_sine_noise(10, 0.0, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_sine_noise(10, 0.033, -0.1, 1), std::invalid_argument);
}

TEST_CASE("logistic r=2 converges to the fixed point 0.5") {
    const auto s = gen_logistic(2.0, 50, 200, 0.0, 5);
    for (double v : s.values) {
        CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
    }
}

TEST_CASE("logistic r=3.2 settles on a period-2 orbit") {
    const auto s = gen_logistic(3.2, 200, 2000, 0.0, 8);
    std::set<long long> buckets;
    for (double v : s.values) {
        buckets.insert(std::llround(v * 1e9));
    }
    CHECK(buckets.size() == 2);
}

TEST_CASE("logistic map rule") {
    // One bare iteration: f(0.3) at r=4.
    CHECK(4.0 * 0.3 * (1.0 - 0.3) == doctest::Approx(0.84).epsilon(1e-15));
}

TEST_CASE("logistic matches a plain reference iteration bit for bit") {
    const double r = 3.99;
    const std::uint64_t seed = 1234;
    const std::size_t transient = 137;
    const std::size_t n = 500;
    const auto s = gen_logistic(r, n, transient, 0.0, seed);

    Xoshiro256pp rng(seed);
    double x = rng.uniform01();
    while (x <= 0.0) x = rng.uniform01();
    for (std::size_t i = 0; i < transient; ++i) x = r * x * (1.0 - x);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(s.values[i] == x);
        x = r * x * (1.0 - x);
    }
}

TEST_CASE("noisy logistic stays clamped inside [0, 1]") {
    const auto s = gen_logistic(3.9, 5000, 100, 0.005, 21);
    for (double v : s.values) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
    const auto clean = gen_logistic(3.9, 5000, 100, 0.0, 21);
    CHECK(s.values != clean.values);
}

TEST_CASE("logistic parameter validation") {
    CHECK_THROWS_AS(gen_logistic(0.0, 10, 0, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_logistic(4.5, 10, 0, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(gen_logistic(3.0, 1, 0, 0.0, 1), std::invalid_argument);
}

TEST_CASE("lorenz r=0.5 decays to the origin") {
    LorenzParams params;
    params.r = 0.5;
    params.keep_steps = 1000;
    params.stride = 1;
    const auto s = gen_lorenz(params, 4);
    CHECK(std::abs(s.values.back()) < 1e-3);
}

TEST_CASE("lorenz r=28 stays on the attractor") {
    LorenzParams params;
    params.r = 28.0;
    params.transient_steps = 100000;
    params.keep_steps = 50000;
    params.stride = 1;
    params.component = LorenzComponent::z;
    const auto s = gen_lorenz(params, 4);
    for (double z : s.values) {
        CHECK(std::abs(z) < 60.0);
    }
}

TEST_CASE("lorenz r=15 reaches a fixed point") {
    LorenzParams params;
    params.r = 15.0;
    const auto s = gen_lorenz(params, 4);
    const std::size_t tail = s.size() / 10;
    std::vector<double> last(s.values.end() - static_cast<std::ptrdiff_t>(tail),
                             s.values.end());
    CHECK(variance(last) < 1e-6);
}

TEST_CASE("lorenz divergence raises an overflow error") {
    LorenzParams params;
    params.h = 1.0; // absurd step, RK4 blows up
    params.transient_steps = 1000;
    params.keep_steps = 10;
    params.stride = 1;
    CHECK_THROWS_AS(gen_lorenz(params, 1), std::overflow_error);
}

TEST_CASE("lorenz records z maxima") {
    LorenzParams params;
    params.r = 28.0;
    params.transient_steps = 100000;
    params.keep_steps = 50000;
    const auto trace = integrate_lorenz(params, 9);
    CHECK(trace.z_maxima.size() > 10);
    for (double z : trace.z_maxima) {
        CHECK(z > 20.0);
        CHECK(z < 60.0);
    }
}

TEST_CASE("normalize rescales to [0, 1]") {
    TimeSeries s;
    s.values = {2.0, 4.0, 6.0};
    const auto n = normalize(s);
    CHECK(n.values == std::vector<double>{0.0, 0.5, 1.0});
    CHECK(n.normalized);
}

TEST_CASE("normalize is idempotent") {
    const auto once = normalize(gen_white_noise(100, 13));
    const auto twice = normalize(once);
    CHECK(once.values == twice.values);
}

TEST_CASE("normalize maps a constant series to 0.5") {
    TimeSeries s;
    s.values = {5.0, 5.0, 5.0};
    const auto n = normalize(s);
    CHECK(n.values == std::vector<double>{0.5, 0.5, 0.5});
    CHECK(n.normalized);
}

TEST_CASE("ingest_csv reads a single column") {
    const auto path = write_temp("rqakit_ingest1.csv", "0.1\n0.9\n0.5\n");
    const auto s = ingest_csv(path, 0);
    CHECK(s.values == std::vector<double>{0.1, 0.9, 0.5});
    CHECK_FALSE(s.normalized);
    fs::remove(path);
}

TEST_CASE("ingest_csv names the offending line") {
    const auto path = write_temp("rqakit_ingest2.csv", "time,value\n0.1\n0.5\n");
    try {
        ingest_csv(path, 0);
        FAIL("expected a parse error");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("line 1") != std::string::npos);
    }
    fs::remove(path);
}

TEST_CASE("ingest_csv extracts the requested column") {
    const auto path = write_temp("rqakit_ingest3.csv", "0,1.5\n1,2.5\n2,3.5\n");
    const auto s = ingest_csv(path, 1);
    CHECK(s.values == std::vector<double>{1.5, 2.5, 3.5});
    fs::remove(path);
}

TEST_CASE("ingest_csv needs at least two records") {
    const auto path = write_temp("rqakit_ingest4.csv", "0.25\n");
    CHECK_THROWS_AS(ingest_csv(path, 0), std::invalid_argument);
    fs::remove(path);
}

TEST_CASE("derived streams differ from each other and the master") {
    const std::uint64_t master = 42;
    CHECK(derive_stream(master, 0) != derive_stream(master, 1));
    CHECK(derive_stream(master, 0) != master);
    Xoshiro256pp a(derive_stream(master, 0));
    Xoshiro256pp b(derive_stream(master, 1));
    CHECK(a() != b());
}

TEST_CASE("uniform_below is in range and deterministic") {
    Xoshiro256pp rng(77);
    Xoshiro256pp rng2(77);
    for (int i = 0; i < 1000; ++i) {
        const auto v = rng.uniform_below(17);
        CHECK(v < 17);
        CHECK(v == rng2.uniform_below(17));
    }
}
