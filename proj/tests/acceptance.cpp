// Acceptance suite: one PASS/FAIL line per criterion. Tolerances, seeds and
// runtime limits are pinned below; the exit status is nonzero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "psbeatty/arith.hpp"
#include "psbeatty/cli.hpp"
#include "psbeatty/errors.hpp"
#include "psbeatty/expsum.hpp"
#include "psbeatty/sawtooth.hpp"
#include "psbeatty/seq.hpp"
#include "psbeatty/sievelab.hpp"

namespace {

using psb::CertifiedReal;

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

double unit(std::mt19937_64& g) { return static_cast<double>(g() >> 11) * 0x1.0p-53; }
double log_uniform(std::mt19937_64& g, double lo, double hi) {
    return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * unit(g));
}

psb::ExperimentConfig config(std::uint64_t x, const char* c, const char* alpha, const char* beta,
                             int R = 21, psb::FloorBackend backend = psb::FloorBackend::exact) {
    return psb::ExperimentConfig{
        .x = x,
        .beatty = psb::BeattyParams(CertifiedReal::parse(alpha), CertifiedReal::parse(beta)),
        .ps = psb::PSParams(CertifiedReal::parse(c), backend),
        .R = R,
    };
}

// 1. The c_R table printed by `crtable`, R = 13..21.
Verdict crtable() {
    const char* argv[] = {"psbeatty", "crtable", "--rmin", "13", "--rmax", "21"};
    std::ostringstream out, err;
    const int code = psb::cli::run(6, argv, out, err);
    const std::string expected =
        "R,c_R\n13,1.0056\n14,1.0113\n15,1.0163\n16,1.0207\n17,1.0246\n18,1.0281\n"
        "19,1.0313\n20,1.0341\n21,1.0367\n";
    // Half-up rounding differs from the published table in the last digit for
    // some rows; report how many, for the record.
    int half_up_diffs = 0;
    const char* published[] = {"1.0056", "1.0113", "1.0163", "1.0207", "1.0246",
                               "1.0281", "1.0313", "1.0341", "1.0367"};
    for (int R = 13; R <= 21; ++R)
        half_up_diffs += psb::format_decimal(psb::c_R(R), 4) != published[R - 13];
    return {code == 0 && out.str() == expected,
            fmt("exit %d, table %s (rounded down); half-up rounding would differ in %d row(s)", code,
                out.str() == expected ? "matches" : "DIFFERS", half_up_diffs)};
}

// 2. Beatty prime density, alpha = sqrt(2), beta = 0, x = 1e6.
Verdict beatty_density() {
    constexpr double kTol = 0.02;
    const psb::BeattyParams params(CertifiedReal::parse("sqrt(2)"), CertifiedReal(0));
    const auto primes = psb::primes_up_to(1'000'000);
    const auto hits = psb::beatty_prime_count(params, primes);
    const double density = static_cast<double>(hits) / static_cast<double>(primes.size());
    const double dev = std::abs(density - 1 / std::sqrt(2.0));
    return {dev <= kTol, fmt("%llu of %zu primes, density %.6f, |dev| %.2e <= %.2g",
                             static_cast<unsigned long long>(hits), primes.size(), density, dev, kTol)};
}

// 3. Piatetski-Shapiro counting identity and the ratio to x^gamma / log x.
Verdict ps_identity() {
    constexpr double kLo = 0.85, kHi = 1.25;
    std::string detail;
    bool pass = true;
    {
        const std::uint64_t x = 1'000'000;
        const psb::PSParams params(CertifiedReal::parse("5/4"));
        const auto primes = psb::primes_up_to(x);
        std::vector<bool> is_prime(x + 1, false);
        for (auto p : primes) is_prime[p] = true;
        const auto lhs = psb::pi_c_count(params, x, primes);
        const auto rhs = psb::ps_prime_values(params, x, [&](std::uint64_t v) { return is_prime[v]; });
        pass = pass && lhs == rhs;
        detail += fmt("c=5/4 x=1e6: %llu vs %llu", static_cast<unsigned long long>(lhs),
                      static_cast<unsigned long long>(rhs));
    }
    const std::uint64_t x = 10'000'000;
    const auto primes = psb::primes_up_to(x);
    for (const char* c : {"21/20", "11/10"}) {
        const psb::PSParams params(CertifiedReal::parse(c));
        const auto count = psb::pi_c_count(params, x, primes);
        const double ratio = static_cast<double>(count) /
                             (std::pow(static_cast<double>(x), params.gamma_double()) / std::log(x));
        pass = pass && ratio >= kLo && ratio <= kHi;
        detail += fmt("; c=%s x=1e7: ratio %.4f in [%.2f, %.2f]", c, ratio, kLo, kHi);
    }
    return {pass, detail};
}

// 4. Heath-Brown identity for 2 <= n <= 5000, k = 1..3, both extreme z.
Verdict heath_brown() {
    constexpr double kTol = 1e-9;
    double worst = 0;
    std::uint64_t checks = 0;
    for (std::uint64_t n = 2; n <= 5000; ++n) {
        const double lambda = psb::von_mangoldt(n);
        for (int k = 1; k <= 3; ++k)
            for (std::uint64_t z : {psb::heath_brown_min_z(n, k), n}) {
                worst = std::max(worst, std::abs(psb::heath_brown(n, k, static_cast<double>(z)).total - lambda));
                ++checks;
            }
    }
    return {worst <= kTol, fmt("%llu checks, worst |total - Lambda| %.2e <= %.0e",
                               static_cast<unsigned long long>(checks), worst, kTol)};
}

// 5. Vaaler majorant contract.
Verdict vaaler() {
    const auto uniform = psb::uniform_grid(10'000);
    const auto near = psb::near_integer_grid(1'000);
    bool pass = true;
    std::string detail;
    for (int H : {1, 4, 16, 64, 256}) {
        const auto v = psb::vaaler_build(H);
        const auto ru = psb::vaaler_check(v, uniform, false);
        const auto rn = psb::vaaler_check(v, near, false);
        const auto violations = ru.violations + rn.violations;
        pass = pass && violations == 0 && ru.mean_abs_error <= 2.0 / H;
        detail += fmt("%sH=%d: %llu violations, mean %.2e <= %.2e", detail.empty() ? "" : "; ", H,
                      static_cast<unsigned long long>(violations), ru.mean_abs_error, 2.0 / H);
    }
    return {pass, detail};
}

// 6. Direct and dual slice counts agree over the parameter matrix, d <= 50.
Verdict dual_count() {
    int cells = 0, mismatches = 0;
    for (std::uint64_t x : {10'000ull, 1'000'000ull})
        for (const char* c : {"3/2", "25/24"})
            for (const char* alpha : {"sqrt(2)", "(1+sqrt(5))/2"})
                for (const char* beta : {"0", "1/3"}) {
                    const psb::SliceCounter counter(config(x, c, alpha, beta));
                    for (std::uint64_t d = 1; d <= 50; ++d) {
                        ++cells;
                        try {
                            counter.count(d);
                        } catch (const psb::MismatchedCounts&) {
                            ++mismatches;
                        }
                    }
                }
    return {mismatches == 0, fmt("%d cells, %d mismatches", cells, mismatches)};
}

// 7. Second- and third-derivative tests on random monomial sums.
Verdict derivative_tests() {
    constexpr double kC = 10;
    std::mt19937_64 rng(20240607);
    double worst2 = 0, worst3 = 0;
    for (int t = 0; t < 100; ++t) {
        const double A = log_uniform(rng, 1, 1e4);
        const double gamma = 0.3 + 0.65 * unit(rng);
        const auto a = static_cast<std::int64_t>(log_uniform(rng, 100, 10'000));
        const auto m = psb::monomial_check(A, gamma, a);
        worst2 = std::max(worst2, m.empirical / m.bound_2);
        worst3 = std::max(worst3, m.empirical / m.bound_3);
    }
    return {worst2 <= kC && worst3 <= kC,
            fmt("100 sums, worst empirical/bound: k=2 %.3f, k=3 %.3f (limit %.0f)", worst2, worst3, kC)};
}

// 8. Srinivasan witness against 2mn times the closed-form bound.
Verdict srinivasan() {
    std::mt19937_64 rng(8675309);
    int failures = 0;
    double worst = 0;
    for (int t = 0; t < 1000; ++t) {
        psb::SrinivasanBound s;
        auto m = rng() % 4, n = rng() % 4;
        if (m + n == 0) m = 1;
        for (std::uint64_t i = 0; i < m; ++i)
            s.A.push_back({log_uniform(rng, 1e-3, 1e3), 0.25 + 2.75 * unit(rng)});
        for (std::uint64_t i = 0; i < n; ++i)
            s.B.push_back({log_uniform(rng, 1e-3, 1e3), 0.25 + 2.75 * unit(rng)});
        s.H1 = log_uniform(rng, 1e-3, 1e3);
        s.H2 = s.H1 * log_uniform(rng, 1, 1e6);
        const double bound = psb::srinivasan_bound(s);
        const double L = psb::srinivasan_witness(s).second;
        worst = std::max(worst, L / bound);
        failures += L > psb::srinivasan_constant(s) * bound;
    }
    return {failures == 0, fmt("1000 specs, %d failures, worst L/bound %.3f", failures, worst)};
}

// 9. Desk-scale count for the main theorem, with monotonicity in R and x.
Verdict theorem_count() {
    constexpr double kLo = 0.5, kHi = 2.0;
    const auto base = config(1'000'000, "25/24", "sqrt(2)", "0");
    const auto count = psb::theorem_count(base);
    const auto count_R = psb::theorem_count(base, 25);
    const auto count_x = psb::theorem_count(config(2'000'000, "25/24", "sqrt(2)", "0"));
    const double x = 1e6;
    const double ref = std::pow(x, 24.0 / 25.0) / (std::sqrt(2.0) * std::log(x));
    const double ratio = static_cast<double>(count) / ref;
    const bool pass = ratio >= kLo && ratio <= kHi && count_R >= count && count_x >= count;
    return {pass, fmt("count %llu, ratio %.4f in [%.1f, %.1f]; R=25: %llu; x=2e6: %llu",
                      static_cast<unsigned long long>(count), ratio, kLo, kHi,
                      static_cast<unsigned long long>(count_R), static_cast<unsigned long long>(count_x))};
}

// 10. The exact and adaptive floor backends build the same set.
Verdict backend_independence() {
    const auto exact = psb::build_A(config(100'000, "25/24", "sqrt(2)", "0"));
    const auto adaptive =
        psb::build_A(config(100'000, "25/24", "sqrt(2)", "0", 21, psb::FloorBackend::adaptive));
    return {exact == adaptive,
            fmt("|A| = %zu exact, %zu adaptive, %s", exact.size(), adaptive.size(),
                exact == adaptive ? "identical" : "DIFFERENT")};
}

struct Criterion {
    int id;
    const char* name;
    double limit_seconds;
    std::function<Verdict()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "c_R table", 1, crtable},
        {2, "Beatty prime density", 30, beatty_density},
        {3, "Piatetski-Shapiro counting identity", 300, ps_identity},
        {4, "Heath-Brown identity", 120, heath_brown},
        {5, "Vaaler majorant contract", 60, vaaler},
        {6, "dual-count exactness", 300, dual_count},
        {7, "derivative-test bounds", 120, derivative_tests},
        {8, "Srinivasan witness", 60, srinivasan},
        {9, "desk theorem count", 300, theorem_count},
        {10, "backend independence", 60, backend_independence},
    };
    int failed = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.run();
        } catch (const std::exception& e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.limit_seconds;
        const bool pass = v.pass && in_time;
        failed += !pass;
        std::printf("%s criterion %d (%s): %s [%.2fs / %.0fs limit%s]\n", pass ? "PASS" : "FAIL", c.id,
                    c.name, v.detail.c_str(), secs, c.limit_seconds, in_time ? "" : ", TOO SLOW");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
