#include "psbeatty/arith.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "psbeatty/errors.hpp"
#include "psbeatty/parallel.hpp"

namespace psb {

namespace {

std::uint64_t isqrt_u64(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

std::uint64_t icbrt_u64(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::cbrt(static_cast<long double>(n)));
    auto cube_le = [n](std::uint64_t v) {
        return static_cast<unsigned __int128>(v) * v * v <= n;
    };
    while (r > 0 && !cube_le(r)) --r;
    while (cube_le(r + 1)) ++r;
    return r;
}

std::vector<std::uint32_t> simple_sieve(std::uint32_t limit) {
    std::vector<std::uint32_t> out;
    if (limit < 2) return out;
    std::vector<bool> composite(limit + 1, false);
    for (std::uint64_t i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        out.push_back(static_cast<std::uint32_t>(i));
        for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
}

// Primes up to the cube root of 2^64, for single-n factorization.
const std::vector<std::uint32_t>& small_primes() {
    static const std::vector<std::uint32_t> primes = simple_sieve(2642246);
    return primes;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

struct Factorization {
    int omega = 0;     // with multiplicity
    int distinct = 0;
    int mu = 1;
    std::uint64_t base = 0;  // a prime factor; the only one when distinct == 1
};

Factorization factorize(std::uint64_t n) {
    if (n == 0) throw InvalidArgument("arithmetic functions need n >= 1");
    Factorization f;
    std::uint64_t m = n;
    const std::uint64_t cbrt = icbrt_u64(n);
    for (std::uint32_t p : small_primes()) {
        if (p > cbrt) break;
        if (static_cast<std::uint64_t>(p) * p > m) break;
        if (m % p) continue;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        f.omega += e;
        ++f.distinct;
        f.mu = e > 1 ? 0 : -f.mu;
        f.base = p;
    }
    if (m == 1) return f;
    // m has no prime factor <= cbrt(n), so at most two prime factors remain.
    if (is_prime_u64(m)) {
        f.omega += 1;
        ++f.distinct;
        f.mu = -f.mu;
        f.base = m;
        return f;
    }
    std::uint64_t r = isqrt_u64(m);
    if (r * r == m) {
        f.omega += 2;
        ++f.distinct;
        f.mu = 0;
        f.base = r;
    } else {
        f.omega += 2;
        f.distinct += 2;
        f.base = 0;
    }
    return f;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull, 1795265022ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 0 || x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

double von_mangoldt(std::uint64_t n) {
    Factorization f = factorize(n);
    return f.distinct == 1 ? std::log(static_cast<double>(f.base)) : 0.0;
}

int mobius(std::uint64_t n) { return factorize(n).mu; }

int big_omega(std::uint64_t n) { return factorize(n).omega; }

bool is_almost_prime(std::uint64_t n, int R) {
    if (R < 0) throw InvalidArgument("R must be >= 0");
    return big_omega(n) <= R;
}

void for_each_prime_block(std::uint64_t limit,
                          const std::function<void(std::span<const std::uint64_t>)>& visit) {
    if (limit < 2) return;
    const std::uint64_t root = isqrt_u64(limit);
    const auto base = simple_sieve(static_cast<std::uint32_t>(root));
    constexpr std::uint64_t kBlock = std::uint64_t{1} << 21;
    std::vector<std::uint8_t> composite(kBlock);
    std::vector<std::uint64_t> found;
    for (std::uint64_t lo = 2; lo <= limit; lo += kBlock) {
        const std::uint64_t hi = std::min(limit, lo + kBlock - 1);
        std::fill(composite.begin(), composite.end(), 0);
        for (std::uint32_t p : base) {
            std::uint64_t pp = static_cast<std::uint64_t>(p) * p;
            if (pp > hi) break;
            std::uint64_t start = std::max(pp, (lo + p - 1) / p * p);
            for (std::uint64_t m = start; m <= hi; m += p) composite[m - lo] = 1;
        }
        found.clear();
        for (std::uint64_t n = lo; n <= hi; ++n)
            if (!composite[n - lo]) found.push_back(n);
        if (!found.empty()) visit(found);
        if (hi == limit) break;
    }
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> out;
    for_each_prime_block(limit, [&](std::span<const std::uint64_t> block) {
        out.insert(out.end(), block.begin(), block.end());
    });
    return out;
}

std::uint64_t prime_count(std::uint64_t x) {
    std::uint64_t count = 0;
    for_each_prime_block(x, [&](std::span<const std::uint64_t> block) { count += block.size(); });
    return count;
}

SieveTable SieveTable::build(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options) {
    if (lo < 1 || lo > hi || hi > (std::uint64_t{1} << 63) - 1)
        throw InvalidArgument("sieve window must satisfy 1 <= lo <= hi < 2^63");
    if (hi - lo + 1 > options.max_window)
        throw WindowTooLarge("window of " + std::to_string(hi - lo + 1) +
                             " elements exceeds the cap of " + std::to_string(options.max_window));
    SieveTable t;
    t.lo_ = lo;
    t.hi_ = hi;
    const std::uint64_t n = hi - lo + 1;
    t.omega_.assign(n, 0);
    t.mu_.assign(n, 1);
    t.lambda_.assign(n, 0.0);

    const std::uint64_t seg = std::max<std::uint64_t>(options.segment, 1024);
    const std::uint64_t n_segments = (n + seg - 1) / seg;
    // Scratch: distinct small prime factors and the last one seen. lambda_
    // accumulates log of the small-prime part until the final pass.
    std::vector<std::uint8_t> distinct(n, 0);
    std::vector<std::uint32_t> base(n, 0);
    std::vector<double> log_p;

    // Every segment writes a disjoint slice of the arrays.
    auto process_block = [&](std::span<const std::uint64_t> primes) {
        log_p.resize(primes.size());
        for (std::size_t k = 0; k < primes.size(); ++k)
            log_p[k] = std::log(static_cast<double>(primes[k]));
        parallel_for(n_segments, [&](std::size_t s) {
            const std::uint64_t slo = lo + s * seg;
            const std::uint64_t shi = std::min(hi, slo + seg - 1);
            for (std::size_t k = 0; k < primes.size(); ++k) {
                const std::uint64_t p = primes[k];
                if (p > shi / p) break;
                for (std::uint64_t pk = p;; pk *= p) {
                    const std::uint64_t start = (slo + pk - 1) / pk * pk;
                    for (std::uint64_t m = start; m <= shi; m += pk) {
                        const std::size_t i = m - lo;
                        ++t.omega_[i];
                        t.lambda_[i] += log_p[k];
                        if (pk == p) {
                            t.mu_[i] = static_cast<std::int8_t>(-t.mu_[i]);
                            ++distinct[i];
                            base[i] = static_cast<std::uint32_t>(p);
                        } else if (pk == p * p) {
                            t.mu_[i] = 0;
                        }
                    }
                    if (pk > shi / p) break;
                }
            }
        });
    };
    for_each_prime_block(isqrt_u64(hi), process_block);

    // What is left after the primes <= sqrt(hi) is 1 or a single prime. The
    // cofactor is at least 2, so a log gap above 0.5 detects it robustly.
    parallel_for(n_segments, [&](std::size_t s) {
        const std::uint64_t slo = lo + s * seg;
        const std::uint64_t shi = std::min(hi, slo + seg - 1);
        for (std::uint64_t m = slo; m <= shi; ++m) {
            const std::size_t i = m - lo;
            const double log_m = std::log(static_cast<double>(m));
            const bool large_factor = log_m - t.lambda_[i] > 0.5;
            if (large_factor) {
                ++t.omega_[i];
                t.mu_[i] = static_cast<std::int8_t>(-t.mu_[i]);
                t.lambda_[i] = distinct[i] == 0 ? log_m : 0.0;
            } else {
                t.lambda_[i] =
                    distinct[i] == 1 ? std::log(static_cast<double>(base[i])) : 0.0;
            }
        }
    });
    return t;
}

std::size_t SieveTable::index(std::uint64_t n) const {
    if (n < lo_ || n > hi_)
        throw InvalidArgument(std::to_string(n) + " outside sieve window [" + std::to_string(lo_) +
                              ", " + std::to_string(hi_) + "]");
    return static_cast<std::size_t>(n - lo_);
}

std::vector<std::uint64_t> SieveTable::primes() const {
    std::vector<std::uint64_t> out;
    for (std::uint64_t n = lo_; n <= hi_; ++n)
        if (omega_[n - lo_] == 1) out.push_back(n);
    return out;
}

std::uint64_t SieveTable::prime_count() const {
    return static_cast<std::uint64_t>(std::count(omega_.begin(), omega_.end(), 1));
}

}  // namespace psb
