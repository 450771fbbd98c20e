#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "oracles.hpp"
#include "rqakit/recurrence.hpp"
#include "rqakit/signals.hpp"

using namespace rqakit;
namespace fs = std::filesystem;

namespace {

TimeSeries series_of(std::vector<double> values) {
    TimeSeries s;
    s.values = std::move(values);
    return s;
}

} // namespace

TEST_CASE("two separated points never recur") {
    const auto rp = build_rp(series_of({0.0, 1.0}), 0.5);
    CHECK(rp.get(0, 0));
    CHECK(rp.get(1, 1));
    CHECK_FALSE(rp.get(0, 1));
    CHECK_FALSE(rp.get(1, 0));
}

TEST_CASE("a constant series is fully recurrent") {
    const auto rp = build_rp(series_of({3.0, 3.0, 3.0, 3.0}), 0.2);
    for (std::size_t i = 0; i < rp.size(); ++i) {
        for (std::size_t j = 0; j < rp.size(); ++j) {
            CHECK(rp.get(i, j));
        }
    }
}

TEST_CASE("three-point example") {
    const auto rp = build_rp(series_of({0.0, 0.2, 1.0}), 0.25);
    const bool expected[3][3] = {{1, 1, 0}, {1, 1, 0}, {0, 0, 1}};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(rp.get(i, j) == expected[i][j]);
        }
    }
}

TEST_CASE("threshold validation") {
    const auto s = series_of({0.0, 0.5, 1.0});
    CHECK_THROWS_AS(build_rp(s, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(build_rp(s, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(build_rp(s, 1.5), std::invalid_argument);
}

TEST_CASE("plots are symmetric with a unit diagonal") {
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto rp = build_rp(gen_white_noise(150, seed), 0.2);
        for (std::size_t i = 0; i < rp.size(); ++i) {
            CHECK(rp.get(i, i));
            for (std::size_t j = i + 1; j < rp.size(); ++j) {
                CHECK(rp.get(i, j) == rp.get(j, i));
            }
        }
    }
}

TEST_CASE("recurrences are nested in epsilon") {
    const auto series = normalize(gen_white_noise(200, 5));
    const auto small = build_rp(series, 0.1);
    const auto large = build_rp(series, 0.3);
    for (std::size_t i = 0; i < small.size(); ++i) {
        for (std::size_t j = 0; j < small.size(); ++j) {
            if (small.get(i, j)) CHECK(large.get(i, j));
        }
    }
    double prev = 0.0;
    for (double eps : {0.05, 0.1, 0.2, 0.4, 0.8, 1.0}) {
        const double rr = recurrence_rate(build_rp(series, eps));
        CHECK(rr >= prev);
        prev = rr;
    }
    CHECK(recurrence_rate(build_rp(series, 1.0)) == 1.0);
}

TEST_CASE("bit-packed plot equals the dense reference") {
    for (std::size_t m : {2ul, 3ul, 64ul, 65ul, 127ul, 128ul, 200ul, 512ul}) {
        const auto series = gen_white_noise(m, 1000 + m);
        const auto rp = build_rp(series, 0.2);
        const auto dense = oracle::dense_from_series(series.values, 0.2);
        REQUIRE(rp.size() == dense.k);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < m; ++j) {
                CHECK(rp.get(i, j) == dense.get(i, j));
            }
        }
        CHECK(rp.ones() == dense.ones());
    }
}

TEST_CASE("identity-only plot has rate 1/K") {
    RecurrencePlot rp(8, 0.1);
    for (std::size_t i = 0; i < 8; ++i) rp.set(i, i);
    CHECK(recurrence_rate(rp) == doctest::Approx(1.0 / 8.0));
}

TEST_CASE("embedding reduces the matrix and uses the max norm") {
    const auto series = normalize(gen_white_noise(50, 3));
    const auto rp = build_rp(series, 0.2, {2, 3});
    REQUIRE(rp.size() == 50 - 3);
    CHECK(rp.norm() == "max");
    const auto& x = series.values;
    for (std::size_t i = 0; i < rp.size(); ++i) {
        for (std::size_t j = 0; j < rp.size(); ++j) {
            const double dist =
                std::max(std::abs(x[i] - x[j]), std::abs(x[i + 3] - x[j + 3]));
            CHECK(rp.get(i, j) == (dist <= 0.2));
        }
    }
}

TEST_CASE("default embedding is scalar") {
    const auto series = normalize(gen_white_noise(40, 4));
    const auto plain = build_rp(series, 0.15);
    const auto embedded = build_rp(series, 0.15, {1, 1});
    CHECK(plain.size() == embedded.size());
    for (std::size_t i = 0; i < plain.size(); ++i) {
        for (std::size_t j = 0; j < plain.size(); ++j) {
            CHECK(plain.get(i, j) == embedded.get(i, j));
        }
    }
}

TEST_CASE("windows cover the series with the stride") {
    const auto series = gen_white_noise(10, 6);

    const auto whole = windows(series, {10, 1});
    REQUIRE(whole.size() == 1);
    CHECK(whole[0].values == series.values);

    const auto pieces = windows(series, {4, 4});
    REQUIRE(pieces.size() == 2);
    CHECK(pieces[0].values ==
          std::vector<double>(series.values.begin(), series.values.begin() + 4));
    CHECK(pieces[1].values ==
          std::vector<double>(series.values.begin() + 4, series.values.begin() + 8));
}

TEST_CASE("oversized windows are rejected") {
    const auto series = gen_white_noise(5, 6);
    CHECK_THROWS_AS(windows(series, {6, 1}), std::invalid_argument);
}

TEST_CASE("pbm export is bit exact") {
    const auto rp = build_rp(series_of({0.0, 0.2, 1.0}), 0.25);
    const fs::path path = fs::temp_directory_path() / "rqakit_test_rp.pbm";
    write_pbm(rp, path);
    std::ifstream in(path, std::ios::binary);
    std::stringstream buffer;
    buffer << in.rdbuf();
    CHECK(buffer.str() == "P1\n3 3\n110\n110\n001\n");
    fs::remove(path);
}
