#include "psbeatty/seq.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "psbeatty/errors.hpp"
#include "psbeatty/parallel.hpp"

namespace psb {

namespace {

constexpr std::size_t kChunk = 8192;

// Sums f(i) over [0, n) in parallel chunks; integer reduction is order-free.
template <class F>
std::uint64_t parallel_count(std::size_t n, F&& f) {
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<std::uint64_t> partial(chunks, 0);
    parallel_for(chunks, [&](std::size_t c) {
        const std::size_t end = std::min(n, (c + 1) * kChunk);
        std::uint64_t s = 0;
        for (std::size_t i = c * kChunk; i < end; ++i) s += f(i);
        partial[c] = s;
    });
    return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

CertifiedReal real_power(std::uint64_t n, const CertifiedReal& e) {
    const CertifiedReal base{mpq_class(n)};
    if (e.is_rational()) return CertifiedReal::pow(base, e.as_rational());
    return CertifiedReal::exp(CertifiedReal::log(base) * e);
}

Interval power_interval(std::uint64_t n, const CertifiedReal& e, mpfr_prec_t bits) {
    Interval base = Interval::point(mpq_class(n), bits);
    if (e.is_rational()) {
        const mpq_class& q = e.as_rational();
        return base.pow_rational(q.get_num().get_si(), q.get_den().get_ui());
    }
    return (base.log() * e.evaluate(bits)).exp();
}

}  // namespace

BeattyParams::BeattyParams(CertifiedReal alpha, CertifiedReal beta)
    : alpha_(std::move(alpha)),
      beta_(std::move(beta)),
      a_(CertifiedReal(1L) / alpha_),
      term_(beta_, alpha_),
      shifted_(a_ * beta_, -a_) {
    if (certified_compare(alpha_, CertifiedReal(1L)) <= 0)
        throw InvalidArgument("Beatty modulus alpha must exceed 1, got " + alpha_.to_string());
}

std::int64_t BeattyParams::shifted_floor(std::int64_t m) const {
    if (shifted_.exact()) return shifted_(m);
    // Keep the product factored: a (beta - m) encloses exactly 0 when m
    // equals a rational beta, where a beta - a m would never separate.
    return certified_floor_i64(-a_ * (CertifiedReal(m) - beta_));
}

std::int64_t beatty_term(const BeattyParams& params, std::int64_t n) {
    if (n < 1) throw InvalidArgument("beatty_term needs n >= 1");
    return params.term(n);
}

int beatty_indicator(const BeattyParams& params, std::int64_t m) {
    return static_cast<int>(params.shifted_floor(m) - params.shifted_floor(m + 1));
}

bool beatty_member(const BeattyParams& params, std::int64_t m) {
    const std::int64_t f = params.shifted_floor(m);
    // The detected n is ceil(a(m - beta)) = -floor(-a(m - beta)).
    return f - params.shifted_floor(m + 1) == 1 && -f >= 1;
}

double beatty_psi_form(const BeattyParams& params, std::int64_t p) {
    if (params.alpha().is_rational())
        throw IrrationalRequired("the psi expansion of the Beatty indicator needs irrational alpha");
    constexpr mpfr_prec_t bits = 128;
    const Interval a = params.a().evaluate(bits);
    const Interval beta = params.beta().evaluate(bits);
    const Interval half = Interval::point(mpq_class(1, 2), bits);
    auto psi_at = [&](std::int64_t m) {
        Interval u = -(a * (Interval::point(mpq_class(m), bits) - beta));
        return u - Interval::point(mpq_class(params.shifted_floor(m)), bits) - half;
    };
    return (a + psi_at(p + 1) - psi_at(p)).midpoint();
}

std::uint64_t beatty_prime_count(const BeattyParams& params,
                                 std::span<const std::uint64_t> primes) {
    return parallel_count(primes.size(), [&](std::size_t i) {
        return static_cast<std::uint64_t>(
            beatty_indicator(params, static_cast<std::int64_t>(primes[i])));
    });
}

PSParams::PSParams(CertifiedReal c, FloorBackend backend)
    : c_(std::move(c)), gamma_(CertifiedReal(1L) / c_), backend_(backend) {
    if (certified_compare(c_, CertifiedReal(1L)) <= 0)
        throw InvalidArgument("Piatetski-Shapiro exponent c must exceed 1, got " + c_.to_string());
    if (c_.is_rational() && c_.as_rational().get_den() == 1)
        throw InvalidArgument("Piatetski-Shapiro exponent c must not be an integer");
    exact_rational_ = c_.is_rational() && backend_ == FloorBackend::exact;
    gamma_d_ = gamma_.to_double();
}

std::uint64_t ps_term(const PSParams& params, std::uint64_t n) {
    if (params.exact_rational()) return floor_power(n, params.c().as_rational());
    mpz_class f = certified_floor(real_power(n, params.c()));
    return f.get_ui();
}

std::uint64_t ps_ceil_gamma(const PSParams& params, std::uint64_t m) {
    if (params.exact_rational()) return ceil_power(m, params.gamma().as_rational());
    mpz_class f = certified_floor(-real_power(m, params.gamma()));
    return mpz_class(-f).get_ui();
}

bool ps_term_at_most(const PSParams& params, std::uint64_t n, std::uint64_t x) {
    if (params.exact_rational()) return power_at_most(n, params.c().as_rational(), x);
    return certified_compare(real_power(n, params.c()), CertifiedReal(mpq_class(x))) <= 0;
}

std::uint64_t ps_max_index(const PSParams& params, std::uint64_t x) {
    auto n = static_cast<std::uint64_t>(
        std::floor(std::pow(static_cast<long double>(x), params.gamma_double())));
    while (n > 0 && !ps_term_at_most(params, n, x)) --n;
    while (ps_term_at_most(params, n + 1, x)) ++n;
    return n;
}

int ps_indicator(const PSParams& params, std::uint64_t m) {
    if (m < 1) throw InvalidArgument("ps_indicator needs m >= 1");
    return static_cast<int>(ps_ceil_gamma(params, m + 1) - ps_ceil_gamma(params, m));
}

double ps_expansion_residual(const PSParams& params, std::uint64_t m) {
    if (m < 1) throw InvalidArgument("ps_expansion_residual needs m >= 1");
    constexpr mpfr_prec_t bits = 256;
    const std::uint64_t c1 = ps_ceil_gamma(params, m), c2 = ps_ceil_gamma(params, m + 1);
    const Interval t1 = power_interval(m, params.gamma(), bits);
    const Interval t2 = power_interval(m + 1, params.gamma(), bits);
    const Interval half = Interval::point(mpq_class(1, 2), bits);
    // psi(-t) = -t - floor(-t) - 1/2, with floor(-t) = -ceil(t) exact.
    auto psi_neg = [&](const Interval& t, std::uint64_t ceil_t) {
        return -t + Interval::point(mpq_class(ceil_t), bits) - half;
    };
    const Interval chi = Interval::point(mpq_class(c2 - c1), bits);
    const Interval g = params.gamma().evaluate(bits);
    const Interval lead = g * t1 / Interval::point(mpq_class(m), bits);
    return (chi - lead - psi_neg(t2, c2) + psi_neg(t1, c1)).midpoint();
}

double ps_expansion_bound(const PSParams& params, std::uint64_t m) {
    const long double g = params.gamma_double();
    return static_cast<double>(g * (1 - g) / 2 * std::pow(static_cast<long double>(m), g - 2));
}

std::uint64_t pi_c_count(const PSParams& params, std::uint64_t x, const SieveTable& primes) {
    if (x >= 2 && (!primes.contains(2) || !primes.contains(x)))
        throw InvalidArgument("sieve table does not cover [2, x]");
    std::vector<std::uint64_t> list;
    for (std::uint64_t p : primes.primes())
        if (p <= x) list.push_back(p);
    return pi_c_count(params, x, list);
}

std::uint64_t pi_c_count(const PSParams& params, std::uint64_t x,
                         std::span<const std::uint64_t> primes) {
    auto end = std::upper_bound(primes.begin(), primes.end(), x);
    const auto n = static_cast<std::size_t>(end - primes.begin());
    return parallel_count(n, [&](std::size_t i) {
        return static_cast<std::uint64_t>(ps_indicator(params, primes[i]));
    });
}

}  // namespace psb
