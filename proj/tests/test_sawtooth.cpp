#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "psbeatty/errors.hpp"
#include "psbeatty/sawtooth.hpp"

namespace {

// Closed form of the Fejer-kernel majorant:
//   sum_{|h|<=H} (1 - |h|/(H+1)) e(ht) / (2H+2) = (sin(pi(H+1)t) / sin(pi t))^2 / (2 (H+1)^2)
double fejer_majorant(int H, double t) {
    const double n = H + 1;
    const double s = std::sin(std::numbers::pi * t);
    if (std::abs(s) < 1e-300) return 0.5;
    const double r = std::sin(std::numbers::pi * n * t) / s;
    return r * r / (2 * n * n);
}

std::vector<double> combined_grid() {
    auto g = psb::uniform_grid(10000);
    auto adv = psb::near_integer_grid(1000);
    g.insert(g.end(), adv.begin(), adv.end());
    return g;
}

}  // namespace

TEST_CASE("psi examples") {
    CHECK(psb::psi(0.25) == -0.25);
    CHECK(psb::psi(0.0) == -0.5);
    CHECK(psb::psi(1.75) == 0.25);
    CHECK(psb::psi(-0.25) == 0.25);
    for (double t : {-3.7, -1.0, 0.0, 0.999, 5.5, 1e6 + 0.125}) {
        CHECK(psb::psi(t) >= -0.5);
        CHECK(psb::psi(t) < 0.5);
    }
}

TEST_CASE("vaaler_build examples") {
    auto v1 = psb::vaaler_build(1);
    // a_h for 0 < |h| <= 1 (two coefficients), b_h for |h| <= 1 (three).
    CHECK(2 * (v1.a.size() - 1) == 2);
    CHECK(2 * v1.b.size() - 1 == 3);
    CHECK(v1.b[0] <= v1.C_b);
    CHECK(v1.b[0] == doctest::Approx(0.25));

    auto v16 = psb::vaaler_build(16);
    double max_ha = 0;
    for (int h = 1; h <= 16; ++h) max_ha = std::max(max_ha, h * std::abs(v16.a[h]));
    CHECK(max_ha <= v16.C_a);

    auto v64 = psb::vaaler_build(64);
    for (int h = 0; h <= 64; ++h) REQUIRE(v64.b[h] <= v64.C_b / 64);

    CHECK_THROWS_AS(psb::vaaler_build(0), psb::InvalidArgument);
}

TEST_CASE("vaaler coefficients match the 30-digit oracle") {
    auto v = psb::vaaler_build(4);
    const double expected[] = {0.141941542256072950, 0.0513261703923534467, 0.0188342007690628141,
                               0.00430335020895559639};
    for (int h = 1; h <= 4; ++h) {
        CHECK(v.a[h].real() == 0.0);
        CHECK(v.a[h].imag() == doctest::Approx(expected[h - 1]).epsilon(1e-14));
    }
    CHECK(v.approximation(0.3) == doctest::Approx(-0.195695852979405582).epsilon(1e-14));
    // The low coefficients approach those of psi, -1/(2 pi i h), as H grows.
    auto big = psb::vaaler_build(4096);
    CHECK(big.a[1].imag() * 2 * std::numbers::pi == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("majorant equals the Fejer closed form") {
    for (int H : {1, 4, 16, 64, 256}) {
        auto v = psb::vaaler_build(H);
        for (double t : {0.0, 0.001, 0.1, 0.25, 0.5, 0.7071, 0.9999, 3.3}) {
            CAPTURE(H);
            CAPTURE(t);
            CHECK(v.majorant(t) == doctest::Approx(fejer_majorant(H, t)).epsilon(1e-12).scale(1));
            CHECK(v.majorant(t) >= -1e-15);
        }
    }
}

TEST_CASE("vaaler_check examples") {
    auto v4 = psb::vaaler_build(4);
    auto r = psb::vaaler_check(v4, psb::uniform_grid(10000));
    CHECK(r.violations == 0);
    CHECK(r.grid_points == 10000);
    for (int H : {1, 4, 16, 64, 256}) {
        auto v = psb::vaaler_build(H);
        // Smooth point: psi and the (odd) approximation both vanish; the
        // majorant is 0 for odd H and positive for even H.
        const double err_half = std::abs(psb::psi(0.5) - v.approximation(0.5));
        CHECK(err_half <= v.majorant(0.5) + psb::kVaalerSlack);
        CHECK(err_half <= 1e-15);
        // Jump of psi: the kernel value is exactly 1/2 and matches the error.
        CHECK(v.majorant(0.0) == doctest::Approx(0.5).epsilon(1e-14));
        CHECK(std::abs(psb::psi(0.0) - v.approximation(0.0)) <= v.majorant(0.0) + psb::kVaalerSlack);
    }
    const std::vector<double> empty;
    CHECK_THROWS_AS(psb::vaaler_check(v4, empty), psb::InvalidArgument);
}

TEST_CASE("vaaler contract on uniform and near-integer grids") {
    const auto uniform = psb::uniform_grid(10000);
    const auto adversarial = psb::near_integer_grid(1000);
    for (int H : {1, 4, 16, 64, 256}) {
        CAPTURE(H);
        const auto v = psb::vaaler_build(H);
        auto r = psb::vaaler_check(v, uniform);
        CHECK(r.violations == 0);
        // The mean error is an L1 quantity, measured on the uniform grid.
        CHECK(r.mean_abs_error <= 2.0 / H);
        CHECK(r.max_imag <= 1e-10);
        CHECK(r.max_error <= 0.5 + 1e-12);
        auto near = psb::vaaler_check(v, adversarial);
        CHECK(near.violations == 0);
        CHECK(near.max_imag <= 1e-10);
        // Next to the jump the error is ~1/2 for every H, and so is the majorant.
        CHECK(near.max_error > 0.49);
    }
}

TEST_CASE("fejer fallback is a negative control") {
    const auto grid = combined_grid();
    // Small H: the crude majorant is large enough.
    auto small = psb::vaaler_check(psb::vaaler_build(1, psb::VaalerConstruction::fejer), grid,
                                   false);
    CHECK(small.violations == 0);
    // Large H: Gibbs overshoot near the jump is not covered.
    auto large = psb::vaaler_check(psb::vaaler_build(64, psb::VaalerConstruction::fejer), grid,
                                   false);
    CHECK(large.violations > 0);
    CHECK_THROWS_AS(
        psb::vaaler_check(psb::vaaler_build(256, psb::VaalerConstruction::fejer), grid),
        psb::InequalityViolated);
}

TEST_CASE("near_integer_grid shape") {
    auto g = psb::near_integer_grid(1000);
    CHECK(g.size() == 1000);
    int integers = 0, tiny = 0;
    for (double t : g) {
        const double d = std::abs(t - std::round(t));
        if (d == 0) ++integers;
        if (d > 0 && d < 1e-9) ++tiny;
    }
    CHECK(integers >= 5);
    CHECK(tiny >= 100);
}

TEST_CASE("srinivasan_bound examples") {
    psb::SrinivasanBound s{{{1, 1}}, {{1, 1}}, 1, 100};
    CHECK(psb::srinivasan_bound(s) == doctest::Approx(2.01));
    psb::SrinivasanBound t{{{1, 2}}, {{64, 1}}, 1, 100};
    CHECK(psb::srinivasan_bound(t) == doctest::Approx(17.64));
    psb::SrinivasanBound mono{{{3, 0.5}, {2, 2}}, {}, 4, 9};
    CHECK(psb::srinivasan_bound(mono) == doctest::Approx(3 * 2 + 2 * 16));
    psb::SrinivasanBound bad{{{-1, 1}}, {}, 1, 2};
    CHECK_THROWS_AS(psb::srinivasan_bound(bad), psb::InvalidArgument);
    psb::SrinivasanBound reversed{{{1, 1}}, {}, 3, 2};
    CHECK_THROWS_AS(psb::srinivasan_bound(reversed), psb::InvalidArgument);
}

TEST_CASE("srinivasan_witness examples") {
    psb::SrinivasanBound s{{{1, 1}}, {{1, 1}}, 1, 100};
    auto [h, l] = psb::srinivasan_witness(s);
    CHECK(h == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(l == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(l <= psb::srinivasan_constant(s) * psb::srinivasan_bound(s));

    psb::SrinivasanBound t{{{1, 2}}, {{64, 1}}, 1, 100};
    auto [h2, l2] = psb::srinivasan_witness(t);
    CHECK(h2 == doctest::Approx(std::cbrt(32.0)).epsilon(2e-3));
    CHECK(l2 == doctest::Approx(30.2381051974769560).epsilon(1e-5));
    CHECK(l2 <= 2 * 17.64);

    psb::SrinivasanBound degenerate{{{1, 1}}, {{1, 1}}, 5, 5};
    auto [h3, l3] = psb::srinivasan_witness(degenerate);
    CHECK(h3 == 5.0);
    CHECK(l3 == doctest::Approx(5.2));
    CHECK_THROWS_AS(psb::srinivasan_witness(s, 1), psb::InvalidArgument);
}

TEST_CASE("srinivasan witness contract over random specs") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<int> count(0, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto log_uniform = [&](double lo, double hi) {
        return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * unit(rng));
    };
    double worst = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        psb::SrinivasanBound s;
        int m = count(rng), n = count(rng);
        if (m + n == 0) m = 1;
        for (int i = 0; i < m; ++i) s.A.push_back({log_uniform(1e-3, 1e3), 0.25 + 2.75 * unit(rng)});
        for (int j = 0; j < n; ++j) s.B.push_back({log_uniform(1e-3, 1e3), 0.25 + 2.75 * unit(rng)});
        s.H1 = log_uniform(1e-3, 1e3);
        s.H2 = s.H1 * log_uniform(1.0, 1e6);
        const double bound = psb::srinivasan_bound(s);
        const double l = psb::srinivasan_witness(s).second;
        worst = std::max(worst, l / bound);
        REQUIRE(l <= psb::srinivasan_constant(s) * bound);
    }
    MESSAGE("worst L(H*)/bound ratio: " << worst);
}
