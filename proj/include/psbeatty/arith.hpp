#ifndef PSBEATTY_ARITH_HPP
#define PSBEATTY_ARITH_HPP

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace psb {

struct SieveOptions {
    // Largest hi - lo + 1 accepted by SieveTable::build.
    std::uint64_t max_window = std::uint64_t{1} << 27;
    // Elements per parallel segment.
    std::uint64_t segment = std::uint64_t{1} << 18;
};

// Exact primality and factor data (Omega, mu, Lambda) for every integer in
// a window [lo, hi]. Immutable after build.
class SieveTable {
public:
    // 1 <= lo <= hi < 2^63. Throws WindowTooLarge past options.max_window.
    static SieveTable build(std::uint64_t lo, std::uint64_t hi, const SieveOptions& options = {});

    std::uint64_t lo() const { return lo_; }
    std::uint64_t hi() const { return hi_; }
    std::uint64_t size() const { return hi_ - lo_ + 1; }
    bool contains(std::uint64_t n) const { return n >= lo_ && n <= hi_; }

    bool is_prime(std::uint64_t n) const { return omega_[index(n)] == 1; }
    int big_omega(std::uint64_t n) const { return omega_[index(n)]; }
    int mobius(std::uint64_t n) const { return mu_[index(n)]; }
    double von_mangoldt(std::uint64_t n) const { return lambda_[index(n)]; }

    std::vector<std::uint64_t> primes() const;
    std::uint64_t prime_count() const;

    friend bool operator==(const SieveTable&, const SieveTable&) = default;

private:
    std::size_t index(std::uint64_t n) const;

    std::uint64_t lo_ = 1, hi_ = 0;
    std::vector<std::uint8_t> omega_;
    std::vector<std::int8_t> mu_;
    std::vector<double> lambda_;
};

// Calls visit(block) for consecutive ascending blocks of the primes <= limit.
void for_each_prime_block(std::uint64_t limit,
                          const std::function<void(std::span<const std::uint64_t>)>& visit);
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);
// pi(x).
std::uint64_t prime_count(std::uint64_t x);

// Deterministic Miller-Rabin for 64-bit n.
bool is_prime_u64(std::uint64_t n);

// Arithmetic functions for a single n >= 1 (trial division by primes up to
// n^(1/3), then Miller-Rabin on the cofactor).
double von_mangoldt(std::uint64_t n);
int mobius(std::uint64_t n);
int big_omega(std::uint64_t n);
bool is_almost_prime(std::uint64_t n, int R);

}  // namespace psb

#endif  // PSBEATTY_ARITH_HPP
