#include <catch2/catch_amalgamated.hpp>

#include "evgrid/random_stream.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

using namespace evgrid;

namespace {

std::vector<double> first_doubles(RandomStream s, int n) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(s.uniform());
    return out;
}

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace

TEST_CASE("derive_stream is deterministic", "[rng]") {
    const auto a = first_doubles(derive_stream(42, StreamPurpose::EvTrip, 17, 3), 1000);
    const auto b = first_doubles(derive_stream(42, StreamPurpose::EvTrip, 17, 3), 1000);
    CHECK(a == b);
}

TEST_CASE("derive_stream keys are independent", "[rng]") {
    const auto base = first_doubles(derive_stream(42, StreamPurpose::EvTrip, 17, 3), 1000);
    CHECK(base != first_doubles(derive_stream(42, StreamPurpose::EvTrip, 18, 3), 1000));
    CHECK(base != first_doubles(derive_stream(42, StreamPurpose::EvTrip, 17, 4), 1000));
    CHECK(base != first_doubles(derive_stream(43, StreamPurpose::EvTrip, 17, 3), 1000));
    CHECK(base != first_doubles(derive_stream(42, StreamPurpose::ApplianceJitter, 17, 3), 1000));
    CHECK(base != first_doubles(derive_stream(42, StreamPurpose::EvTrip, 17ULL << 32, 3), 1000));
}

TEST_CASE("consuming one substream leaves another untouched", "[rng]") {
    auto house_501 = derive_stream(9, StreamPurpose::EvTrip, 501, 0);
    for (int i = 0; i < 500; ++i) house_501.uniform();
    const auto house_502 = first_doubles(derive_stream(9, StreamPurpose::EvTrip, 502, 0), 100);
    CHECK(house_502 == first_doubles(derive_stream(9, StreamPurpose::EvTrip, 502, 0), 100));
}

TEST_CASE("uniform stays in the open unit interval", "[rng]") {
    auto s = derive_stream(1, StreamPurpose::GridPartition, 0, 0);
    double sum = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double u = s.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    CHECK(sum / 100000 == Catch::Approx(0.5).margin(0.005));
}

TEST_CASE("normal quantile inverts the erfc-based CDF", "[rng]") {
    for (double p : {1e-9, 1e-4, 0.01, 0.1, 0.25, 0.5, 0.75, 0.9, 0.99, 1 - 1e-6}) {
        INFO(p);
        CHECK(standard_normal_cdf(normal_quantile(p)) == Catch::Approx(p).epsilon(1e-10));
    }
    CHECK(normal_quantile(0.5) == Catch::Approx(0.0).margin(1e-15));
    CHECK(normal_quantile(0.975) == Catch::Approx(1.959963984540054).epsilon(1e-12));
}

TEST_CASE("gaussian with zero spread returns the mean and still consumes a draw", "[rng]") {
    auto a = derive_stream(5, StreamPurpose::EvInitial, 1, 0);
    auto b = derive_stream(5, StreamPurpose::EvInitial, 1, 0);
    CHECK(a.gaussian(20.0, 0.0) == 20.0);
    b.uniform();
    CHECK(a.uniform() == b.uniform());
}

TEST_CASE("gaussian sample moments", "[rng]") {
    auto s = derive_stream(77, StreamPurpose::EvTrip, 0, 0);
    const int n = 200000;
    double sum = 0.0, sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = s.gaussian(3.0, 2.0);
        sum += x;
        sq += x * x;
    }
    const double mean = sum / n;
    CHECK(mean == Catch::Approx(3.0).margin(0.02));
    CHECK(std::sqrt(sq / n - mean * mean) == Catch::Approx(2.0).margin(0.02));
}

TEST_CASE("uniform_index and shuffle", "[rng]") {
    auto s = derive_stream(3, StreamPurpose::EvPlacement, 0, 0);
    std::vector<int> counts(7, 0);
    for (int i = 0; i < 70000; ++i) ++counts[static_cast<std::size_t>(s.uniform_index(7))];
    for (int c : counts) CHECK(c == Catch::Approx(10000).margin(500));
    CHECK_THROWS_AS(s.uniform_index(0), std::invalid_argument);
    for (int i = 0; i < 1000; ++i) {
        const int v = s.uniform_int(3, 7);
        REQUIRE(v >= 3);
        REQUIRE(v <= 7);
    }

    std::vector<int> items(100);
    std::iota(items.begin(), items.end(), 0);
    s.shuffle(std::span<int>(items));
    auto sorted = items;
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> expected(100);
    std::iota(expected.begin(), expected.end(), 0);
    CHECK(sorted == expected);
    CHECK(items != expected);
}
