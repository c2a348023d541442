#include "doctest.h"

#include <cmath>
#include <set>

#include "psbeatty/errors.hpp"
#include "psbeatty/sievelab.hpp"

namespace {

using psb::CertifiedReal;

psb::ExperimentConfig make(std::uint64_t x, const char* c, const char* alpha, const char* beta,
                           int R = 21, int D = 30,
                           psb::FloorBackend backend = psb::FloorBackend::exact) {
    return psb::ExperimentConfig{
        .x = x,
        .beatty = psb::BeattyParams(CertifiedReal::parse(alpha), CertifiedReal::parse(beta)),
        .ps = psb::PSParams(CertifiedReal::parse(c), backend),
        .R = R,
        .D = D,
    };
}

bool trial_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

// A for alpha = sqrt(2), beta = 0, c = 3/2 by a double loop: the Beatty
// terms are generated directly, and floor(n^1.5) = floor(sqrt(n^3)) exactly.
std::vector<std::uint64_t> oracle_A_sqrt2(std::uint64_t x) {
    std::set<std::uint64_t> beatty;
    for (std::uint64_t m = 1;; ++m) {
        // floor(m sqrt 2) = isqrt(2 m^2)
        auto b = static_cast<std::uint64_t>(std::sqrt(2.0L * m * m));
        while (b * b > 2 * m * m) --b;
        while ((b + 1) * (b + 1) <= 2 * m * m) ++b;
        if (b > x) break;
        beatty.insert(b);
    }
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = 1; n * n * n <= x * x; ++n) {
        auto p = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n * n * n)));
        while (p * p > n * n * n) --p;
        while ((p + 1) * (p + 1) <= n * n * n) ++p;
        if (p <= x && trial_prime(p) && beatty.count(p)) out.push_back(n);
    }
    return out;
}

}  // namespace

TEST_CASE("c_R examples and the table") {
    CHECK(psb::c_R(13) == mpq_class(1236, 1229));
    CHECK(psb::c_R(16) == mpq_class(1524, 1493));
    CHECK(psb::c_R(21) == mpq_class(2004, 1933));
    CHECK(psb::c_R(12) == mpq_class(1140, 1141));
    CHECK(psb::c_R_table_csv(13, 21) ==
          "R,c_R\n13,1.0056\n14,1.0113\n15,1.0163\n16,1.0207\n17,1.0246\n18,1.0281\n"
          "19,1.0313\n20,1.0341\n21,1.0367\n");
    CHECK_THROWS_AS(psb::c_R(0), psb::InvalidArgument);
    CHECK_THROWS_AS(psb::c_R_table_csv(5, 4), psb::InvalidArgument);
}

TEST_CASE("format_decimal rounding modes") {
    CHECK(psb::format_decimal(mpq_class(1236, 1229), 4) == "1.0057");
    CHECK(psb::format_decimal(mpq_class(1236, 1229), 4, psb::Rounding::down) == "1.0056");
    CHECK(psb::format_decimal(mpq_class(-1, 8), 2, psb::Rounding::down) == "-0.12");
    CHECK(psb::format_decimal(mpq_class(-1, 1000), 2, psb::Rounding::down) == "0.00");
    CHECK(psb::format_decimal(mpq_class(1, 8), 2) == "0.13");
    CHECK(psb::format_decimal(mpq_class(-1, 8), 2) == "-0.13");
    CHECK(psb::format_decimal(mpq_class(7), 0) == "7");
    CHECK(psb::format_decimal(mpq_class(1, 1000), 2) == "0.00");
    CHECK(psb::format_decimal(mpq_class(5, 100), 3) == "0.050");
}

TEST_CASE("c_R is increasing and below 12/11") {
    // 12/11 - c_R = 1152 / (11 (88R + 85)) > 0, and the successive difference
    // is 9216 / ((88R + 85)(88R + 173)) > 0; confirm both exactly.
    auto exact = [](long num, long den) {
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    };
    for (long R = 1; R <= 100000; ++R) {
        const mpq_class c = psb::c_R(static_cast<int>(R));
        REQUIRE(mpq_class(12, 11) - c == exact(1152, 11 * (88 * R + 85)));
        REQUIRE(psb::c_R(static_cast<int>(R + 1)) - c == exact(9216, (88 * R + 85) * (88 * R + 173)));
    }
    CHECK(psb::c_R(1000000) < mpq_class(12, 11));
}

TEST_CASE("admissibility examples") {
    auto r13 = psb::admissibility(13, 0.997);
    CHECK(r13.sieve_ok);
    CHECK(r13.g == mpq_class(103, 8));
    REQUIRE(r13.window.has_value());
    CHECK(r13.window->first == mpq_class(8, 103));
    CHECK(r13.window->second.get_d() == doctest::Approx(0.997 - 11.0 / 12.0));

    CHECK_FALSE(psb::admissibility(13, 0.99).window.has_value());
    for (double g : {0.5, 0.95, 0.999, 0.999999})
        CHECK_FALSE(psb::admissibility(12, g).window.has_value());
    CHECK_THROWS_AS(psb::admissibility(13, 1.0), psb::InvalidArgument);
    CHECK_THROWS_AS(psb::admissibility(0, 0.5), psb::InvalidArgument);
}

TEST_CASE("admissibility window opens exactly above the threshold") {
    for (int R = 13; R <= 100; ++R) {
        const mpq_class threshold(88 * R + 85, 96 * R - 12);
        const double gamma = (1 + threshold.get_d()) / 2;
        auto r = psb::admissibility(R, gamma);
        CAPTURE(R);
        CHECK(r.sieve_ok);
        CHECK(r.window.has_value());
        // gamma rounded into the window's complement stays empty.
        CHECK_FALSE(psb::admissibility(R, std::nextafter(threshold.get_d(), 0.0)).window.has_value());
    }
    for (int R = 1; R <= 12; ++R)
        for (double g : {0.9, 0.99, 0.9999999})
            CHECK_FALSE(psb::admissibility(R, g).window.has_value());
}

TEST_CASE("build_A examples") {
    CHECK(psb::build_A(make(10, "3/2", "sqrt(2)", "0")) == std::vector<std::uint64_t>{2, 3});
    CHECK(psb::build_A(make(100, "3/2", "sqrt(2)", "0")) == oracle_A_sqrt2(100));
    CHECK(psb::build_A(make(20000, "3/2", "sqrt(2)", "0")) == oracle_A_sqrt2(20000));
    CHECK(psb::build_A(make(1000, "3/2", "sqrt(2)", "5000")).empty());
}

TEST_CASE("config validation") {
    CHECK_THROWS_AS(make(1, "3/2", "sqrt(2)", "0").validate(), psb::InvalidArgument);
    CHECK_THROWS_AS(make(100, "2", "sqrt(2)", "0").validate(), psb::InvalidArgument);
    CHECK_THROWS_AS(make(100, "3/2", "sqrt(2)", "0", 0).validate(), psb::InvalidArgument);
    CHECK_THROWS_AS(make(100, "3/2", "sqrt(2)", "0", 21, 0).validate(), psb::InvalidArgument);
    CHECK_THROWS_AS(psb::build_A(make(200'000'000, "3/2", "sqrt(2)", "0")), psb::RangeTooLarge);
}

TEST_CASE("count_A_d examples") {
    const auto cfg = make(10000, "25/24", "sqrt(2)", "0");
    const auto A = psb::build_A(cfg);
    REQUIRE(!A.empty());
    auto one = psb::count_A_d(cfg, 1, A);
    CHECK(one.direct == A.size());
    CHECK(one.dual == A.size());
    auto three = psb::count_A_d(cfg, 3, A);
    std::uint64_t expected = 0;
    for (auto n : A) expected += n % 3 == 0;
    CHECK(three.direct == expected);
    CHECK(three.dual == expected);
    psb::SliceCounter counter(cfg);
    auto big = counter.count(counter.max_index() + 1);
    CHECK(big.direct == 0);
    CHECK(big.dual == 0);
    // A tampered A is reported loudly.
    auto broken = A;
    broken.pop_back();
    CHECK_THROWS_AS(psb::count_A_d(cfg, 1, broken), psb::MismatchedCounts);
}

TEST_CASE("dual count matches direct count across a config matrix") {
    for (const char* c : {"3/2", "25/24", "1.1"})
        for (const char* alpha : {"sqrt(2)", "(1+sqrt(5))/2", "exp(1)"})
            for (const char* beta : {"0", "1/3", "7"}) {
                CAPTURE(c);
                CAPTURE(alpha);
                CAPTURE(beta);
                psb::SliceCounter counter(make(20011, c, alpha, beta));  // x prime: boundary case
                for (std::uint64_t d = 1; d <= 50; ++d) {
                    auto s = counter.count(d);
                    REQUIRE(s.direct == s.dual);
                }
            }
}

TEST_CASE("backend independence of A") {
    const auto exact = psb::build_A(make(10000, "25/24", "sqrt(2)", "0"));
    const auto adaptive =
        psb::build_A(make(10000, "25/24", "sqrt(2)", "0", 21, 30, psb::FloorBackend::adaptive));
    CHECK(exact == adaptive);
}

TEST_CASE("main_term_X examples") {
    const auto cfg = make(1000000, "25/24", "sqrt(2)", "0");
    const auto primes = psb::primes_up_to(1000000);
    auto m = psb::main_term_X(cfg, primes);
    CHECK(m.X_hat / m.X_asym >= 0.9);
    CHECK(m.X_hat / m.X_asym <= 1.3);
    auto m2 = psb::main_term_X(make(1000000, "25/24", "2*sqrt(2)", "0"), primes);
    CHECK(m2.X_hat == doctest::Approx(m.X_hat / 2).epsilon(1e-12));
    CHECK(m2.X_asym == doctest::Approx(m.X_asym / 2).epsilon(1e-12));
    // gamma = 1: every p contributes p^0 = 1.
    CHECK(psb::main_term_sum(0.5, 1.0, 1000000, primes) == doctest::Approx(78498 / 2.0));
    auto table = psb::SieveTable::build(1, 1000000);
    CHECK(psb::main_term_X(cfg, table).X_hat == doctest::Approx(m.X_hat).epsilon(1e-14));
    CHECK_THROWS_AS(psb::main_term_X(make(50, "25/24", "sqrt(2)", "0"), primes),
                    psb::InvalidArgument);
}

TEST_CASE("discrepancy_scan structure") {
    const auto cfg = make(100000, "25/24", "sqrt(2)", "0", 21, 30);
    auto r = psb::discrepancy_scan(cfg);
    REQUIRE(r.per_d.size() == 30);
    const auto A = psb::build_A(cfg);
    CHECK(r.A_size == A.size());
    // Summing the count column counts each n once per divisor d <= D.
    std::uint64_t column = 0, divisor_oracle = 0;
    double total = 0;
    for (const auto& row : r.per_d) {
        CHECK(row.count_direct == row.count_dual);
        CHECK(row.error == doctest::Approx(std::abs(row.count_direct - r.X_hat / row.d)));
        column += row.count_direct;
        total += row.error;
        CHECK(std::abs(row.identity_residual) < 1e-6);
    }
    for (auto n : A)
        for (std::uint64_t d = 1; d <= 30; ++d) divisor_oracle += n % d == 0;
    CHECK(column == divisor_oracle);
    CHECK(r.total_error == doctest::Approx(total));
    CHECK(r.D_budget == doctest::Approx(std::pow(1e5, 24.0 / 25 - 11.0 / 12 - 0.01)));
    CHECK(std::isfinite(r.total_error));
}

TEST_CASE("decomposition reproduces the raw floor sum") {
    psb::SliceCounter counter(make(50000, "3/2", "(1+sqrt(5))/2", "1/3"));
    for (std::uint64_t d : {1, 2, 7, 30}) {
        auto dec = counter.decompose(d);
        CAPTURE(d);
        CHECK(std::abs(dec.residual) < 1e-8);
        CHECK(dec.raw_count == static_cast<std::int64_t>(counter.count(d).dual));
    }
}

TEST_CASE("theorem_count examples") {
    const auto cfg = make(1000000, "25/24", "sqrt(2)", "0", 21);
    const std::uint64_t n21 = psb::theorem_count(cfg);
    const double X_asym = std::pow(1e6, 24.0 / 25) / (std::sqrt(2.0) * std::log(1e6));
    CHECK(n21 >= 0.5 * X_asym);
    CHECK(n21 <= 2 * X_asym);
    CHECK(psb::theorem_count(cfg, 0) == 0);
    CHECK(psb::theorem_count(cfg, 25) >= n21);

    const auto small = make(100, "3/2", "sqrt(2)", "0", 21);
    const auto A = oracle_A_sqrt2(100);
    CHECK(psb::theorem_count(small) == A.size());
    std::uint64_t primes_only = 0;
    for (auto n : A) primes_only += trial_prime(n);
    CHECK(psb::theorem_count(small, 1) == primes_only);
}

TEST_CASE("theorem_count is monotone in R and x") {
    std::uint64_t last = 0;
    for (int R = 0; R <= 8; ++R) {
        const auto v = psb::theorem_count(make(200000, "1.1", "sqrt(2)", "0"), R);
        CHECK(v >= last);
        last = v;
    }
    last = 0;
    for (std::uint64_t x : {1000, 10000, 100000, 200000}) {
        const auto v = psb::theorem_count(make(x, "1.1", "sqrt(2)", "0", 3));
        CHECK(v >= last);
        last = v;
    }
}
