#include "doctest.h"

#include <cmath>
#include <random>

#include "psbeatty/arith.hpp"
#include "psbeatty/errors.hpp"

namespace {

// Trial-division oracles, independent of the sieve.
bool td_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int td_omega(std::uint64_t n) {
    int k = 0;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        while (n % d == 0) {
            n /= d;
            ++k;
        }
    return k + (n > 1 ? 1 : 0);
}

}  // namespace

TEST_CASE("build_sieve examples") {
    auto t = psb::SieveTable::build(2, 100);
    CHECK(t.prime_count() == 25);
    auto two = psb::SieveTable::build(2, 2);
    CHECK(two.is_prime(2));
    CHECK(two.prime_count() == 1);
    auto gap = psb::SieveTable::build(14, 16);
    CHECK(gap.prime_count() == 0);
    CHECK_THROWS_AS(psb::SieveTable::build(2, 1000, {.max_window = 100}), psb::WindowTooLarge);
    CHECK_THROWS_AS(t.is_prime(101), psb::InvalidArgument);
}

TEST_CASE("sieve table agrees with trial division") {
    auto t = psb::SieveTable::build(1, 20000);
    for (std::uint64_t n = 1; n <= 20000; ++n) {
        REQUIRE(t.is_prime(n) == td_prime(n));
        REQUIRE(t.big_omega(n) == td_omega(n));
        REQUIRE(t.mobius(n) == psb::mobius(n));
        REQUIRE(t.von_mangoldt(n) == doctest::Approx(psb::von_mangoldt(n)).epsilon(1e-15));
    }
    // An offset window with a large-prime cofactor region.
    auto w = psb::SieveTable::build(999999000000ull, 999999001000ull);
    for (std::uint64_t n = w.lo(); n <= w.hi(); ++n) {
        REQUIRE(w.is_prime(n) == psb::is_prime_u64(n));
        REQUIRE(w.big_omega(n) == psb::big_omega(n));
        REQUIRE(w.mobius(n) == psb::mobius(n));
    }
}

TEST_CASE("arithmetic function examples") {
    CHECK(psb::von_mangoldt(8) == doctest::Approx(std::log(2.0)));
    CHECK(psb::von_mangoldt(6) == 0.0);
    CHECK(psb::von_mangoldt(7) == doctest::Approx(std::log(7.0)));
    CHECK(psb::mobius(1) == 1);
    CHECK(psb::mobius(6) == 1);
    CHECK(psb::mobius(12) == 0);
    CHECK(psb::big_omega(1) == 0);
    CHECK(psb::big_omega(12) == 3);
    CHECK(psb::big_omega(97) == 1);
    CHECK(psb::is_almost_prime(12, 3));
    CHECK_FALSE(psb::is_almost_prime(12, 2));
    CHECK(psb::is_almost_prime(1, 1));
}

TEST_CASE("prime_count examples") {
    CHECK(psb::prime_count(100) == 25);
    CHECK(psb::prime_count(1) == 0);
    CHECK(psb::prime_count(0) == 0);
    CHECK(psb::prime_count(2) == 1);
    CHECK(psb::prime_count(1000000) == 78498);
    // Independent route: the factor sieve.
    CHECK(psb::SieveTable::build(2, 1000000).prime_count() == 78498);
}

TEST_CASE("large inputs") {
    CHECK(psb::is_prime_u64(1000000007ull));
    CHECK(psb::is_prime_u64(9223372036854775783ull));  // largest prime below 2^63
    CHECK_FALSE(psb::is_prime_u64(3215031751ull));     // strong pseudoprime to 2,3,5,7
    // 1000003^2 and 1000003 * 1000033 exercise the two-factor cofactor branch.
    CHECK(psb::big_omega(1000003ull * 1000003ull) == 2);
    CHECK(psb::mobius(1000003ull * 1000003ull) == 0);
    CHECK(psb::von_mangoldt(1000003ull * 1000003ull) == doctest::Approx(std::log(1000003.0)));
    CHECK(psb::mobius(1000003ull * 1000033ull) == 1);
    CHECK(psb::von_mangoldt(1000003ull * 1000033ull) == 0.0);
}

TEST_CASE("divisor-sum identities for n <= 1e5") {
    const std::uint64_t N = 100000;
    auto t = psb::SieveTable::build(1, N);
    std::vector<double> lambda_sum(N + 1, 0.0);
    std::vector<int> mu_sum(N + 1, 0);
    for (std::uint64_t d = 1; d <= N; ++d) {
        const double l = t.von_mangoldt(d);
        const int m = t.mobius(d);
        for (std::uint64_t k = d; k <= N; k += d) {
            lambda_sum[k] += l;
            mu_sum[k] += m;
        }
    }
    for (std::uint64_t n = 1; n <= N; ++n) {
        REQUIRE(mu_sum[n] == (n == 1 ? 1 : 0));
        const double logn = std::log(static_cast<double>(n));
        REQUIRE(std::abs(lambda_sum[n] - logn) <= 1e-12 * std::max(1.0, logn));
    }
}

TEST_CASE("property: Omega is completely additive") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::uint64_t> dist(1, 1000000);
    for (int i = 0; i < 10000; ++i) {
        std::uint64_t m = dist(rng), n = dist(rng);
        REQUIRE(psb::big_omega(m * n) == psb::big_omega(m) + psb::big_omega(n));
    }
}

TEST_CASE("segmented build equals one-shot build") {
    const std::uint64_t N = 300000;
    auto whole = psb::SieveTable::build(2, N);
    auto small_segments = psb::SieveTable::build(2, N, {.segment = 1024});
    CHECK(whole == small_segments);
    // Concatenate independently built windows.
    const std::uint64_t cuts[] = {2, 77777, 150001, 150002, 299999, N + 1};
    for (std::size_t k = 0; k + 1 < std::size(cuts); ++k) {
        auto part = psb::SieveTable::build(cuts[k], cuts[k + 1] - 1);
        for (std::uint64_t n = part.lo(); n <= part.hi(); ++n) {
            REQUIRE(part.is_prime(n) == whole.is_prime(n));
            REQUIRE(part.big_omega(n) == whole.big_omega(n));
            REQUIRE(part.mobius(n) == whole.mobius(n));
            REQUIRE(part.von_mangoldt(n) == whole.von_mangoldt(n));
        }
    }
}
