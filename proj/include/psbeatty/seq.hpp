#ifndef PSBEATTY_SEQ_HPP
#define PSBEATTY_SEQ_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "psbeatty/arith.hpp"
#include "psbeatty/exactreal.hpp"

namespace psb {

// Beatty sequence floor(alpha n + beta), alpha > 1. Caches a = 1/alpha and
// the affine floors used by the indicator.
class BeattyParams {
public:
    BeattyParams(CertifiedReal alpha, CertifiedReal beta);

    const CertifiedReal& alpha() const { return alpha_; }
    const CertifiedReal& beta() const { return beta_; }
    const CertifiedReal& a() const { return a_; }

    // floor(alpha n + beta)
    std::int64_t term(std::int64_t n) const { return term_(n); }
    // floor(-a (m - beta))
    std::int64_t shifted_floor(std::int64_t m) const;

private:
    CertifiedReal alpha_, beta_, a_;
    AffineFloor term_, shifted_;
};

std::int64_t beatty_term(const BeattyParams& params, std::int64_t n);

// floor(-a(m - beta)) - floor(-a(m + 1 - beta)), always 0 or 1. Detects an
// integer n in [a(m - beta), a(m - beta) + a), including n <= 0.
int beatty_indicator(const BeattyParams& params, std::int64_t m);

// Membership in the sequence proper: the detected n must satisfy n >= 1.
// Agrees with beatty_indicator for m >= alpha + beta.
bool beatty_member(const BeattyParams& params, std::int64_t m);

// a + psi(-a(p + 1 - beta)) - psi(-a(p - beta)) evaluated in 128-bit
// arithmetic. Refuses rational alpha (IrrationalRequired).
double beatty_psi_form(const BeattyParams& params, std::int64_t p);

// #{p in primes : beatty_indicator(p) = 1}
std::uint64_t beatty_prime_count(const BeattyParams& params,
                                 std::span<const std::uint64_t> primes);

enum class FloorBackend { exact, adaptive };

// Piatetski-Shapiro sequence floor(n^c), 1 < c, c not an integer.
// With a rational c and the exact backend, every floor is an integer root;
// otherwise floors go through certified interval evaluation.
class PSParams {
public:
    explicit PSParams(CertifiedReal c, FloorBackend backend = FloorBackend::exact);

    const CertifiedReal& c() const { return c_; }
    const CertifiedReal& gamma() const { return gamma_; }
    FloorBackend backend() const { return backend_; }
    bool exact_rational() const { return exact_rational_; }
    double gamma_double() const { return gamma_d_; }

private:
    CertifiedReal c_, gamma_;
    FloorBackend backend_;
    bool exact_rational_;
    double gamma_d_;
};

// floor(n^c)
std::uint64_t ps_term(const PSParams& params, std::uint64_t n);
// ceil(m^gamma)
std::uint64_t ps_ceil_gamma(const PSParams& params, std::uint64_t m);
// Exact test n^c <= x (equivalently n <= x^gamma).
bool ps_term_at_most(const PSParams& params, std::uint64_t n, std::uint64_t x);
// Largest n >= 0 with n^c <= x.
std::uint64_t ps_max_index(const PSParams& params, std::uint64_t x);

// floor(-m^gamma) - floor(-(m+1)^gamma), always 0 or 1.
int ps_indicator(const PSParams& params, std::uint64_t m);

// chi(m) - gamma m^(gamma-1) - psi(-(m+1)^gamma) + psi(-m^gamma), evaluated
// in 256-bit arithmetic. |result| <= gamma(1-gamma)/2 * m^(gamma-2).
double ps_expansion_residual(const PSParams& params, std::uint64_t m);
// The Taylor bound gamma(1-gamma)/2 * m^(gamma-2).
double ps_expansion_bound(const PSParams& params, std::uint64_t m);

// sum over primes p <= x of ps_indicator(p). The table must cover [2, x].
std::uint64_t pi_c_count(const PSParams& params, std::uint64_t x, const SieveTable& primes);
std::uint64_t pi_c_count(const PSParams& params, std::uint64_t x,
                         std::span<const std::uint64_t> primes);

// Generator side: number of distinct primes among floor(n^c) <= x.
// is_prime must answer for every value in [1, x].
template <class IsPrime>
std::uint64_t ps_prime_values(const PSParams& params, std::uint64_t x, IsPrime&& is_prime) {
    std::uint64_t count = 0, last = 0;
    for (std::uint64_t n = 1;; ++n) {
        const std::uint64_t v = ps_term(params, n);
        if (v > x) break;
        if (v != last && is_prime(v)) ++count;
        last = v;
    }
    return count;
}

}  // namespace psb

#endif  // PSBEATTY_SEQ_HPP
