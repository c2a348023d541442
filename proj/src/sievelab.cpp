#include "psbeatty/sievelab.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "psbeatty/errors.hpp"
#include "psbeatty/parallel.hpp"

namespace psb {

namespace {

constexpr std::size_t kChunk = 4096;

std::uint64_t ceil_div(std::uint64_t v, std::uint64_t d) { return v / d + (v % d != 0); }

// Runs body(i) for i in [0, n) in fixed chunks and concatenates the
// per-chunk outputs in order.
template <class T, class Body>
std::vector<T> chunked_collect(std::uint64_t begin, std::uint64_t end, Body&& body) {
    if (end <= begin) return {};
    const std::uint64_t n = end - begin;
    const auto chunks = static_cast<std::size_t>((n + kChunk - 1) / kChunk);
    std::vector<std::vector<T>> parts(chunks);
    parallel_for(chunks, [&](std::size_t c) {
        const std::uint64_t lo = begin + c * kChunk;
        const std::uint64_t hi = std::min(end, lo + kChunk);
        for (std::uint64_t i = lo; i < hi; ++i) body(i, parts[c]);
    });
    std::vector<T> out;
    for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

std::vector<bool> prime_bitmap(std::span<const std::uint64_t> primes, std::uint64_t x) {
    std::vector<bool> bits(x + 1, false);
    for (std::uint64_t p : primes) bits[p] = true;
    return bits;
}

// n in [1, max_index] with floor(n^c) prime and in the Beatty sequence.
std::vector<std::uint64_t> collect_A(const ExperimentConfig& config, std::uint64_t max_index,
                                     const std::vector<bool>& is_prime) {
    return chunked_collect<std::uint64_t>(
        1, max_index + 1, [&](std::uint64_t n, std::vector<std::uint64_t>& out) {
            const std::uint64_t p = ps_term(config.ps, n);
            if (is_prime[p] && beatty_member(config.beatty, static_cast<std::int64_t>(p)))
                out.push_back(n);
        });
}

}  // namespace

void ExperimentConfig::validate() const {
    if (x < 2) throw InvalidArgument("experiment needs x >= 2");
    if (x > kDeskCap)
        throw RangeTooLarge("experiment x=" + std::to_string(x) + " exceeds the desk cap " +
                            std::to_string(kDeskCap));
    if (R < 1) throw InvalidArgument("experiment needs R >= 1");
    if (D < 1) throw InvalidArgument("experiment needs D >= 1");
    if (!(eps > 0) || !std::isfinite(eps)) throw InvalidArgument("experiment needs eps > 0");
    if (certified_compare(ps.c(), CertifiedReal(1)) <= 0 ||
        certified_compare(ps.c(), CertifiedReal(2)) >= 0)
        throw InvalidArgument("experiment needs 1 < c < 2");
}

mpq_class c_R(int R) {
    if (R < 1) throw InvalidArgument("c_R needs R >= 1");
    mpq_class q(96 * R - 12, 88 * R + 85);
    q.canonicalize();
    return q;
}

std::string format_decimal(const mpq_class& q, int places, Rounding mode) {
    if (places < 0) throw InvalidArgument("format_decimal needs places >= 0");
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
    const bool negative = sgn(q) < 0;
    mpq_class scaled = abs(q) * scale;
    if (mode == Rounding::half_up) scaled += mpq_class(1, 2);
    mpz_class z;
    mpz_fdiv_q(z.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    std::string digits = z.get_str();
    if (static_cast<int>(digits.size()) <= places)
        digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(), '0');
    std::string out = digits.substr(0, digits.size() - static_cast<std::size_t>(places));
    if (places > 0) out += "." + digits.substr(digits.size() - static_cast<std::size_t>(places));
    if (negative && z != 0) out.insert(0, "-");
    return out;
}

std::string c_R_table_csv(int rmin, int rmax) {
    if (rmin < 1 || rmax < rmin) throw InvalidArgument("c_R table needs 1 <= rmin <= rmax");
    std::ostringstream out;
    out << "R,c_R\n";
    for (int R = rmin; R <= rmax; ++R)
        out << R << ',' << format_decimal(c_R(R), 4, Rounding::down) << '\n';
    return out.str();
}

AdmissibilityReport admissibility(int R, double gamma) {
    if (R < 1) throw InvalidArgument("admissibility needs R >= 1");
    if (!(gamma > 0 && gamma < 1)) throw InvalidArgument("admissibility needs 0 < gamma < 1");
    AdmissibilityReport r;
    r.R = R;
    r.c_R = c_R(R);
    r.g = mpq_class(8 * R - 1, 8);
    r.g.canonicalize();
    r.delta_R = kDeltaR;
    r.sieve_ok = r.g < mpq_class(R) - kDeltaR;
    r.gamma = mpq_class(gamma);
    mpq_class lo(8, 8 * R - 1);
    lo.canonicalize();
    const mpq_class hi = r.gamma - mpq_class(11, 12);
    if (hi > lo) r.window = std::pair{lo, hi};
    return r;
}

std::vector<std::uint64_t> build_A(const ExperimentConfig& config) {
    config.validate();
    const std::uint64_t max_index = ps_max_index(config.ps, config.x);
    const auto primes = primes_up_to(config.x);
    return collect_A(config, max_index, prime_bitmap(primes, config.x));
}

SliceCounter::SliceCounter(const ExperimentConfig& config) : config_(config) {
    config_.validate();
    max_index_ = ps_max_index(config_.ps, config_.x);
    primes_ = primes_up_to(config_.x);
    A_ = collect_A(config_, max_index_, prime_bitmap(primes_, config_.x));

    a_ = config_.beatty.a().to_long_double();
    const long double beta = config_.beatty.beta().to_long_double();
    const long double gamma = config_.ps.gamma().to_long_double();
    const std::size_t n = primes_.size();
    ceil_lo_.resize(n);
    ceil_hi_.resize(n);
    pow_lo_.resize(n);
    pow_hi_.resize(n);
    floor_lo_.resize(n);
    floor_hi_.resize(n);
    arg_lo_.resize(n);
    member_.resize(n);
    const std::size_t chunks = (n + kChunk - 1) / kChunk;
    parallel_for(chunks, [&](std::size_t c) {
        const std::size_t end = std::min(n, (c + 1) * kChunk);
        for (std::size_t i = c * kChunk; i < end; ++i) {
            const std::uint64_t p = primes_[i];
            const auto m = static_cast<std::int64_t>(p);
            ceil_lo_[i] = ps_ceil_gamma(config_.ps, p);
            ceil_hi_[i] = ps_ceil_gamma(config_.ps, p + 1);
            pow_lo_[i] = std::pow(static_cast<long double>(p), gamma);
            pow_hi_[i] = std::pow(static_cast<long double>(p + 1), gamma);
            floor_lo_[i] = config_.beatty.shifted_floor(m);
            floor_hi_[i] = config_.beatty.shifted_floor(m + 1);
            arg_lo_[i] = -a_ * (static_cast<long double>(p) - beta);
            member_[i] = beatty_member(config_.beatty, m) ? 1 : 0;
        }
    });
}

SliceCount SliceCounter::count(std::uint64_t d) const {
    if (d < 1) throw InvalidArgument("slice count needs d >= 1");
    SliceCount s;
    s.d = d;
    for (std::uint64_t n : A_) s.direct += n % d == 0;
    // Multiples of d among the naturals in [p^gamma, (p+1)^gamma), capped at
    // the certified boundary n <= x^gamma.
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        if (!member_[i]) continue;
        const std::uint64_t lo = ceil_lo_[i];
        const std::uint64_t hi = std::min(ceil_hi_[i] - 1, max_index_);
        if (hi + 1 > lo) s.dual += hi / d - (lo - 1) / d;
    }
    if (s.direct != s.dual)
        throw MismatchedCounts("|A_d| disagrees for d=" + std::to_string(d) +
                               ": direct=" + std::to_string(s.direct) +
                               ", dual=" + std::to_string(s.dual));
    return s;
}

SliceDecomposition SliceCounter::decompose(std::uint64_t d) const {
    if (d < 1) throw InvalidArgument("slice decomposition needs d >= 1");
    const long double dd = static_cast<long double>(d);
    long double X = 0, S1 = 0, S2 = 0, S3 = 0;
    std::int64_t raw = 0;
    for (std::size_t i = 0; i < primes_.size(); ++i) {
        const std::uint64_t k0 = ceil_div(ceil_lo_[i], d), k1 = ceil_div(ceil_hi_[i], d);
        // floor(-t/d) - floor(-t'/d) = (t' - t)/d + psi(-t'/d) - psi(-t/d),
        // with psi(-t/d) = -t/d + ceil(t/d) - 1/2.
        const long double delta = (pow_hi_[i] - pow_lo_[i]) / dd;
        const long double psi_d = (-pow_hi_[i] / dd + static_cast<long double>(k1)) -
                                  (-pow_lo_[i] / dd + static_cast<long double>(k0));
        // chi = a + psi(-a(p+1-beta)) - psi(-a(p-beta)).
        const long double u0 = arg_lo_[i], u1 = u0 - a_;
        const long double psi_b = (u1 - static_cast<long double>(floor_hi_[i])) -
                                  (u0 - static_cast<long double>(floor_lo_[i]));
        X += a_ * delta;
        S1 += delta * psi_b;
        S2 += psi_d * psi_b;
        S3 += a_ * psi_d;
        raw += static_cast<std::int64_t>(k1 - k0) * (floor_lo_[i] - floor_hi_[i]);
    }
    SliceDecomposition out;
    out.X_prime_over_d = static_cast<double>(X);
    out.S1 = static_cast<double>(S1);
    out.S2 = static_cast<double>(S2);
    out.S3 = static_cast<double>(S3);
    out.raw_count = raw;
    out.residual = static_cast<double>(static_cast<long double>(raw) - (X + S1 + S2 + S3));
    return out;
}

SliceCount count_A_d(const ExperimentConfig& config, std::uint64_t d,
                     std::span<const std::uint64_t> A) {
    SliceCounter counter(config);
    SliceCount s = counter.count(d);
    std::uint64_t direct = 0;
    for (std::uint64_t n : A) direct += n % d == 0;
    if (direct != s.dual)
        throw MismatchedCounts("|A_d| disagrees for d=" + std::to_string(d) +
                               ": direct=" + std::to_string(direct) +
                               ", dual=" + std::to_string(s.dual));
    s.direct = direct;
    return s;
}

double main_term_sum(double a, double gamma, std::uint64_t x,
                     std::span<const std::uint64_t> primes) {
    long double s = 0;
    const long double e = static_cast<long double>(gamma) - 1;
    for (std::uint64_t p : primes) {
        if (p > x) break;
        s += std::pow(static_cast<long double>(p), e);
    }
    return static_cast<double>(static_cast<long double>(a) * gamma * s);
}

MainTerm main_term_X(const ExperimentConfig& config, std::span<const std::uint64_t> primes) {
    config.validate();
    if (config.x < 100) throw InvalidArgument("main term needs x >= 100");
    const double a = config.beatty.a().to_double();
    const double gamma = config.ps.gamma_double();
    const double x = static_cast<double>(config.x);
    MainTerm m;
    m.X_hat = main_term_sum(a, gamma, config.x, primes);
    m.X_asym = std::pow(x, gamma) / (config.beatty.alpha().to_double() * std::log(x));
    return m;
}

MainTerm main_term_X(const ExperimentConfig& config, const SieveTable& primes) {
    if (!primes.contains(2) || !primes.contains(config.x))
        throw InvalidArgument("sieve table does not cover [2, x]");
    const auto list = primes.primes();
    return main_term_X(config, list);
}

DiscrepancyReport discrepancy_scan(const ExperimentConfig& config) {
    const SliceCounter counter(config);
    const MainTerm main = main_term_X(config, counter.primes());
    DiscrepancyReport r;
    r.X_hat = main.X_hat;
    r.X_asym = main.X_asym;
    r.A_size = counter.A().size();
    r.max_index = counter.max_index();
    r.D_budget = std::pow(static_cast<double>(config.x),
                          config.ps.gamma_double() - 11.0 / 12.0 - config.eps);
    r.per_d.resize(static_cast<std::size_t>(config.D));
    parallel_for(r.per_d.size(), [&](std::size_t i) {
        const std::uint64_t d = i + 1;
        const SliceCount s = counter.count(d);
        const SliceDecomposition dec = counter.decompose(d);
        DiscrepancyRow& row = r.per_d[i];
        row.d = d;
        row.count_direct = s.direct;
        row.count_dual = s.dual;
        row.main_term = r.X_hat / static_cast<double>(d);
        row.error = std::abs(static_cast<double>(s.direct) - row.main_term);
        row.S1 = dec.S1;
        row.S2 = dec.S2;
        row.S3 = dec.S3;
        row.identity_residual = dec.residual;
    });
    for (const DiscrepancyRow& row : r.per_d) {
        r.total_error += row.error;
        r.max_identity_residual = std::max(r.max_identity_residual, std::abs(row.identity_residual));
    }
    return r;
}

std::uint64_t theorem_count(const ExperimentConfig& config, std::optional<int> R_override) {
    const int R = R_override.value_or(config.R);
    if (R < 0) throw InvalidArgument("theorem_count needs R >= 0");
    // floor(n^c) is strictly increasing (gaps > 1 for c > 1), so each n in A
    // yields a distinct prime.
    std::uint64_t count = 0;
    for (std::uint64_t n : build_A(config)) count += big_omega(n) <= R;
    return count;
}

}  // namespace psb
