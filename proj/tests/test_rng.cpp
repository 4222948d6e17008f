#include <doctest.h>

#include <cmath>
#include <set>

#include "charsense/parallel.hpp"
#include "charsense/rng.hpp"

using namespace charsense;

TEST_SUITE("rng") {

TEST_CASE("splitmix64 matches the reference sequence") {
    // Reference outputs of the splitmix64 stream for seed 0 and 42.
    std::uint64_t s = 0;
    CHECK(splitmix64_next(s) == 0xE220A8397B1DCDAFULL);
    CHECK(splitmix64_next(s) == 0x6E789E6AA1B965F4ULL);
    CHECK(splitmix64_next(s) == 0x06C45D188009454FULL);
    s = 42;
    CHECK(splitmix64_next(s) == 0xBDD732262FEB6E95ULL);
    CHECK(splitmix64_next(s) == 0x28EFE333B266F103ULL);
}

TEST_CASE("xoshiro256** seeded from splitmix64 matches the reference") {
    Rng rng(1);
    CHECK(rng.next() == 0xB3F2AF6D0FC710C5ULL);
    CHECK(rng.next() == 0x853B559647364CEAULL);
    CHECK(rng.next() == 0x92F89756082A4514ULL);
    CHECK(rng.next() == 0x642E1C7BC266A3A7ULL);
    Rng rng42(42);
    CHECK(rng42.next() == 0x15780B2E0C2EC716ULL);
    CHECK(rng42.next() == 0x6104D9866D113A7EULL);
}

TEST_CASE("streams with distinct ids differ, identical ids agree") {
    Rng a = Rng::stream(7, {1, 2, 3});
    Rng b = Rng::stream(7, {1, 2, 3});
    Rng c = Rng::stream(7, {1, 2, 4});
    CHECK(a.next() == b.next());
    CHECK(a.next() != c.next());
}

TEST_CASE("uniform01 lies in [0,1) and has the right mean") {
    Rng rng(2024);
    double sum = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = rng.uniform01();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        sum += u;
    }
    // mean 1/2, sd of the mean = 1/sqrt(12 n)
    CHECK(std::abs(sum / n - 0.5) < 5.0 / std::sqrt(12.0 * n));
}

TEST_CASE("normal moments") {
    Rng rng(99);
    const int n = 200000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double v = rng.normal();
        sum += v;
        sumsq += v * v;
    }
    const double mean = sum / n;
    const double var = sumsq / n - mean * mean;
    CHECK(std::abs(mean) < 5.0 / std::sqrt(static_cast<double>(n)));
    CHECK(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("below is in range and covers small supports") {
    Rng rng(5);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 1000; ++i) {
        const auto v = rng.below(7);
        REQUIRE(v < 7);
        seen.insert(v);
    }
    CHECK(seen.size() == 7);
    CHECK_THROWS_AS(rng.below(0), RangeError);
}

TEST_CASE("sample_without_replacement: distinct, in range, exhaustive at k=n") {
    Rng rng(11);
    auto s = sample_without_replacement(100, 15, rng);
    CHECK(s.size() == 15);
    std::set<std::int64_t> uniq(s.begin(), s.end());
    CHECK(uniq.size() == 15);
    for (auto v : s) CHECK((v >= 0 && v < 100));

    Rng rng2(12);
    auto full = sample_without_replacement(10, 10, rng2);
    std::set<std::int64_t> all(full.begin(), full.end());
    CHECK(all.size() == 10);
    CHECK_THROWS_AS(sample_without_replacement(5, 6, rng2), RangeError);
}

TEST_CASE("pairwise_sum equals plain summation") {
    std::vector<double> v;
    for (int i = 1; i <= 1000; ++i) v.push_back(1.0 / i);
    double plain = 0.0;
    for (double x : v) plain += x;
    CHECK(pairwise_sum(v) == doctest::Approx(plain).epsilon(1e-13));
}

}  // TEST_SUITE
