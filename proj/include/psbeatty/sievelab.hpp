#ifndef PSBEATTY_SIEVELAB_HPP
#define PSBEATTY_SIEVELAB_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "psbeatty/arith.hpp"
#include "psbeatty/seq.hpp"

namespace psb {

// Largest x accepted by the experiment.
inline constexpr std::uint64_t kDeskCap = 100'000'000;

// The sieve experiment: n <= x^gamma with floor(n^c) = p prime and p in the
// Beatty sequence, sliced by d | n.
struct ExperimentConfig {
    std::uint64_t x;
    BeattyParams beatty;
    PSParams ps;
    int R = 21;
    int D = 30;
    double eps = 0.01;

    // x >= 2, R >= 1, D >= 1, eps > 0, 1 < c < 2 (InvalidArgument);
    // x <= kDeskCap (RangeTooLarge).
    void validate() const;
};

// c_R = (96R - 12) / (88R + 85), R >= 1.
mpq_class c_R(int R);

enum class Rounding { half_up, down };

// q rounded to `places` decimals; `down` truncates toward zero.
std::string format_decimal(const mpq_class& q, int places, Rounding mode = Rounding::half_up);

// "R,c_R" followed by one row per R in [rmin, rmax]. c_R is rounded down to
// 4 decimals, so every printed value is itself an admissible c < c_R.
std::string c_R_table_csv(int rmin, int rmax);

inline const mpq_class kDeltaR{"3121/25000"};  // 0.124820

struct AdmissibilityReport {
    int R = 0;
    mpq_class c_R;
    mpq_class g;                 // (8R - 1) / 8
    mpq_class delta_R;           // 0.124820
    bool sieve_ok = false;       // g < R - delta_R
    mpq_class gamma;             // the double gamma, exactly
    // (8/(8R-1), gamma - 11/12) when nonempty.
    std::optional<std::pair<mpq_class, mpq_class>> window;
};

// Exact rational arithmetic throughout; R >= 1, 0 < gamma < 1.
AdmissibilityReport admissibility(int R, double gamma);

// Ascending n <= x^gamma (certified: n^c <= x) with floor(n^c) prime and a
// member of the Beatty sequence.
std::vector<std::uint64_t> build_A(const ExperimentConfig& config);

struct SliceCount {
    std::uint64_t d = 0;
    std::uint64_t direct = 0;  // #{n in A : d | n}
    std::uint64_t dual = 0;    // via the intervals [p^gamma/d, (p+1)^gamma/d)
};

// Terms of |A_d| = X'/d + S1 + S2 + S3 where X' = a sum_p ((p+1)^gamma -
// p^gamma) keeps the O-term exact. `raw_count` is sum_p (floor difference)
// times the raw indicator, which the identity reproduces up to rounding.
struct SliceDecomposition {
    double X_prime_over_d = 0;
    double S1 = 0, S2 = 0, S3 = 0;
    std::int64_t raw_count = 0;
    double residual = 0;  // raw_count - (X'/d + S1 + S2 + S3)
};

// Per-prime data for one configuration, shared by every slice d: the exact
// ceilings of p^gamma and (p+1)^gamma and the Beatty floors around p.
class SliceCounter {
public:
    explicit SliceCounter(const ExperimentConfig& config);

    std::uint64_t max_index() const { return max_index_; }  // largest n with n^c <= x
    const std::vector<std::uint64_t>& A() const { return A_; }
    const std::vector<std::uint64_t>& primes() const { return primes_; }  // p <= x

    // Both counts; MismatchedCounts if they differ. d >= 1.
    SliceCount count(std::uint64_t d) const;
    SliceDecomposition decompose(std::uint64_t d) const;

private:
    ExperimentConfig config_;
    std::uint64_t max_index_ = 0;
    long double a_ = 0;
    std::vector<std::uint64_t> A_;
    std::vector<std::uint64_t> primes_;
    std::vector<std::uint64_t> ceil_lo_, ceil_hi_;  // ceil(p^gamma), ceil((p+1)^gamma)
    std::vector<long double> pow_lo_, pow_hi_;      // p^gamma, (p+1)^gamma
    std::vector<std::int64_t> floor_lo_, floor_hi_; // floor(-a(p-beta)), floor(-a(p+1-beta))
    std::vector<long double> arg_lo_;               // -a(p-beta)
    std::vector<std::uint8_t> member_;
};

// One-shot form of SliceCounter::count over a given A (direct side).
SliceCount count_A_d(const ExperimentConfig& config, std::uint64_t d,
                     std::span<const std::uint64_t> A);

struct MainTerm {
    double X_hat = 0;   // a gamma sum_{p<=x} p^(gamma-1)
    double X_asym = 0;  // x^gamma / (alpha log x)
};

// a gamma sum_{p <= x} p^(gamma-1) over the given ascending primes.
double main_term_sum(double a, double gamma, std::uint64_t x, std::span<const std::uint64_t> primes);

// x >= 100; the table must cover [2, x].
MainTerm main_term_X(const ExperimentConfig& config, const SieveTable& primes);
MainTerm main_term_X(const ExperimentConfig& config, std::span<const std::uint64_t> primes);

struct DiscrepancyRow {
    std::uint64_t d = 0;
    std::uint64_t count_direct = 0;
    std::uint64_t count_dual = 0;
    double main_term = 0;  // X_hat / d
    double error = 0;      // |count - X_hat / d|
    double S1 = 0, S2 = 0, S3 = 0;
    double identity_residual = 0;
};

struct DiscrepancyReport {
    std::vector<DiscrepancyRow> per_d;
    double X_hat = 0;
    double X_asym = 0;
    double total_error = 0;
    double D_budget = 0;  // x^(gamma - 11/12 - eps)
    std::uint64_t A_size = 0;
    std::uint64_t max_index = 0;
    double max_identity_residual = 0;
};

// Slices d = 1..D; x >= 100.
DiscrepancyReport discrepancy_scan(const ExperimentConfig& config);

// #{p <= x prime : p = floor(n^c), Omega(n) <= R, p in the Beatty sequence}.
// `R_override` replaces config.R (any R >= 0; R = 0 admits nothing).
std::uint64_t theorem_count(const ExperimentConfig& config,
                            std::optional<int> R_override = std::nullopt);

}  // namespace psb

#endif  // PSBEATTY_SIEVELAB_HPP
