#include "doctest.h"

#include <cmath>
#include <random>

#include "psbeatty/errors.hpp"
#include "psbeatty/seq.hpp"

using psb::BeattyParams;
using psb::CertifiedReal;
using psb::PSParams;

namespace {

CertifiedReal R(const char* s) { return CertifiedReal::parse(s); }

BeattyParams beatty(const char* alpha, const char* beta) { return {R(alpha), R(beta)}; }

}  // namespace

TEST_CASE("beatty examples, alpha = sqrt(2)") {
    auto b = beatty("sqrt(2)", "0");
    CHECK(psb::beatty_term(b, 1) == 1);
    CHECK(psb::beatty_term(b, 2) == 2);
    CHECK(psb::beatty_term(b, 3) == 4);
    CHECK(psb::beatty_indicator(b, 1) == 1);
    CHECK(psb::beatty_indicator(b, 3) == 0);
    CHECK(psb::beatty_indicator(b, 4) == 1);
    CHECK(std::abs(psb::beatty_psi_form(b, 4) - 1.0) <= 1e-10);
    CHECK(std::abs(psb::beatty_psi_form(b, 3)) <= 1e-10);
    CHECK_THROWS_AS(psb::beatty_psi_form(beatty("2", "0"), 3), psb::IrrationalRequired);
    // The indicator itself accepts rational alpha.
    auto two = beatty("2", "0");
    CHECK(psb::beatty_indicator(two, 4) == 1);
    CHECK(psb::beatty_indicator(two, 5) == 0);
    CHECK_THROWS_AS(beatty("1", "0"), psb::InvalidArgument);
    CHECK_THROWS_AS(beatty("1/2", "0"), psb::InvalidArgument);
}

TEST_CASE("raw indicator vs n >= 1 membership") {
    // alpha = sqrt(2), beta = 3: m = 3 is floor(alpha*0 + 3), detected with
    // n = 0, which is not a sequence index.
    auto b = beatty("sqrt(2)", "3");
    CHECK(psb::beatty_indicator(b, 3) == 1);
    CHECK_FALSE(psb::beatty_member(b, 3));
    CHECK(psb::beatty_member(b, 4));  // floor(sqrt(2) + 3) = 4
}

TEST_CASE("Beatty membership/generator duality up to 1e5") {
    const std::int64_t M = 100000;
    for (const char* alpha : {"sqrt(2)", "(1+sqrt(5))/2", "1729/1000"}) {
        for (const char* beta : {"0", "1/3", "-sqrt(2)/2"}) {
            CAPTURE(alpha);
            CAPTURE(beta);
            auto b = beatty(alpha, beta);
            std::vector<char> hit(M + 2, 0);
            for (std::int64_t n = 1;; ++n) {
                std::int64_t t = psb::beatty_term(b, n);
                if (t > M) break;
                if (t >= 0) hit[t] = 1;
            }
            const std::int64_t m0 = psb::certified_floor_i64(b.alpha() + b.beta()) + 1;
            bool ok = true;
            for (std::int64_t m = std::max<std::int64_t>(m0, 1); m <= M; ++m) {
                int chi = psb::beatty_indicator(b, m);
                ok = ok && (chi == 0 || chi == 1);
                ok = ok && ((chi == 1) == (hit[m] == 1));
                ok = ok && (psb::beatty_member(b, m) == (hit[m] == 1));
            }
            CHECK(ok);
        }
    }
}

TEST_CASE("psi form equals the indicator on random p") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::int64_t> dist(1, 100000000);
    for (const char* alpha : {"sqrt(2)", "(1+sqrt(5))/2"}) {
        auto b = beatty(alpha, "1/3");
        for (int i = 0; i < 10000; ++i) {
            std::int64_t p = dist(rng);
            REQUIRE(std::abs(psb::beatty_psi_form(b, p) - psb::beatty_indicator(b, p)) <= 1e-10);
        }
    }
}

TEST_CASE("ps examples, c = 3/2") {
    PSParams ps(R("3/2"));
    CHECK(ps.exact_rational());
    CHECK(psb::ps_term(ps, 1) == 1);
    CHECK(psb::ps_term(ps, 2) == 2);
    CHECK(psb::ps_term(ps, 4) == 8);
    CHECK(psb::ps_indicator(ps, 2) == 1);
    CHECK(psb::ps_indicator(ps, 3) == 0);
    CHECK(psb::ps_indicator(ps, 5) == 1);
    CHECK_THROWS_AS(PSParams(R("2")), psb::InvalidArgument);
    CHECK_THROWS_AS(PSParams(R("9/10")), psb::InvalidArgument);
}

TEST_CASE("ps expansion residual") {
    PSParams ps(R("3/2"));
    // 50-digit oracle: (11^(2/3) - 10^(2/3)) - (2/3) 10^(-1/3)
    CHECK(psb::ps_expansion_residual(ps, 10) ==
          doctest::Approx(-0.0049406459382632836).epsilon(1e-12));
    CHECK(std::abs(psb::ps_expansion_residual(ps, 10)) <= psb::ps_expansion_bound(ps, 10));
    CHECK(psb::ps_expansion_bound(ps, 10) == doctest::Approx(0.0051573209262364210));
    CHECK(psb::ps_expansion_residual(ps, 1000000) ==
          doctest::Approx(-1.1111106172842387e-9).epsilon(1e-9));
    for (const char* c : {"3/2", "5/4", "21/20", "sqrt(2)"}) {
        PSParams p(R(c));
        const double r = psb::ps_expansion_residual(p, 2);
        CHECK(std::isfinite(r));
        CHECK(std::abs(r) <= psb::ps_expansion_bound(p, 2));
    }
}

TEST_CASE("ps expansion bound holds for all m <= 1e5") {
    for (const char* c : {"3/2", "21/20"}) {
        PSParams p(R(c));
        bool ok = true;
        for (std::uint64_t m = 2; m <= 100000; ++m) {
            const double r = psb::ps_expansion_residual(p, m);
            ok = ok && std::abs(r) <= psb::ps_expansion_bound(p, m) * (1 + 1e-12);
        }
        CHECK(ok);
    }
}

TEST_CASE("PS membership/generator duality up to 1e5") {
    const std::uint64_t M = 100000;
    for (const char* c : {"3/2", "5/4", "1.05"}) {
        CAPTURE(c);
        PSParams ps(R(c));
        std::vector<char> hit(M + 2, 0);
        for (std::uint64_t n = 1;; ++n) {
            std::uint64_t t = psb::ps_term(ps, n);
            if (t > M) break;
            hit[t] = 1;
        }
        bool ok = true;
        for (std::uint64_t m = 1; m <= M; ++m) {
            int chi = psb::ps_indicator(ps, m);
            ok = ok && (chi == 0 || chi == 1) && ((chi == 1) == (hit[m] == 1));
        }
        CHECK(ok);
    }
}

TEST_CASE("adaptive backend agrees with exact backend") {
    PSParams exact(R("25/24"));
    PSParams adaptive(R("25/24"), psb::FloorBackend::adaptive);
    CHECK_FALSE(adaptive.exact_rational());
    for (std::uint64_t n = 1; n <= 3000; ++n) {
        REQUIRE(psb::ps_term(exact, n) == psb::ps_term(adaptive, n));
        REQUIRE(psb::ps_indicator(exact, n) == psb::ps_indicator(adaptive, n));
    }
    CHECK(psb::ps_max_index(exact, 100000) == psb::ps_max_index(adaptive, 100000));
    // Irrational exponent goes through exp(c log n).
    PSParams irr(R("sqrt(2)"));
    CHECK(psb::ps_term(irr, 1) == 1);
    CHECK(psb::ps_term(irr, 10) == 25);  // 10^1.41421... = 25.95
}

TEST_CASE("pi_c_count examples and generator-side agreement") {
    PSParams ps(R("3/2"));
    auto table = psb::SieveTable::build(1, 200000);
    auto is_prime = [&](std::uint64_t v) { return table.is_prime(v); };
    CHECK(psb::pi_c_count(ps, 10, table) == 2);
    CHECK(psb::pi_c_count(ps, 2, table) == 1);
    CHECK(psb::pi_c_count(ps, 1, table) == 0);
    for (const char* c : {"3/2", "5/4", "21/20", "sqrt(3)"}) {
        PSParams p(R(c));
        for (std::uint64_t x : {10ull, 1000ull, 200000ull}) {
            CHECK(psb::pi_c_count(p, x, table) == psb::ps_prime_values(p, x, is_prime));
        }
    }
}

TEST_CASE("ps_max_index boundary is exact") {
    PSParams ps(R("3/2"));
    CHECK(psb::ps_max_index(ps, 8) == 4);   // 4^1.5 = 8
    CHECK(psb::ps_max_index(ps, 7) == 3);
    CHECK(psb::ps_max_index(ps, 1) == 1);
}
