#include "psbeatty/expsum.hpp"

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "psbeatty/arith.hpp"
#include "psbeatty/errors.hpp"
#include "psbeatty/parallel.hpp"

namespace psb {

namespace {

constexpr long double kTwoPiL = 2 * std::numbers::pi_v<long double>;
constexpr std::int64_t kSegment = std::int64_t{1} << 18;

// Neumaier's compensated sum.
struct Compensated {
    long double sum = 0, carry = 0;
    void add(long double v) {
        const long double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            carry += (sum - t) + v;
        else
            carry += (v - t) + sum;
        sum = t;
    }
    long double value() const { return sum + carry; }
};

// f(n) = coef n^gamma + m1 n with exact rational coef and m1.
struct PhaseSpec {
    mpq_class coef;
    double gamma = 0.5;
    mpq_class m1;
    bool zero = false;
};

constexpr std::int64_t kBlock = 1024;

// Evaluates f(n0 + k) mod 1 for 0 <= k < kBlock. The base value f(n0) mod 1
// is computed once per block in 256-bit arithmetic; the increments
//   coef n0^gamma expm1(gamma log1p(k/n0)) + frac(m1) k
// are small, so long double keeps them accurate to ~1e-18 relative. This
// avoids the loss that a direct long double coef n^gamma would suffer once
// coef n^gamma reaches 1e10.
class BlockPhase {
public:
    explicit BlockPhase(const PhaseSpec& spec) : spec_(spec) {
        for (mpfr_ptr v : {coef_, m1_, t_, u_}) mpfr_init2(v, kBits);
        mpfr_set_q(coef_, spec.coef.get_mpq_t(), MPFR_RNDN);
        mpfr_set_q(m1_, spec.m1.get_mpq_t(), MPFR_RNDN);
        coef_ld_ = mpfr_get_ld(coef_, MPFR_RNDN);
        gamma_ = spec.gamma;
        mpfr_frac(t_, m1_, MPFR_RNDN);
        if (mpfr_sgn(t_) < 0) mpfr_add_ui(t_, t_, 1, MPFR_RNDN);
        m1_frac_ = mpfr_get_ld(t_, MPFR_RNDN);  // exact for double-sized m1
    }
    ~BlockPhase() {
        for (mpfr_ptr v : {coef_, m1_, t_, u_}) mpfr_clear(v);
    }
    BlockPhase(const BlockPhase&) = delete;
    BlockPhase& operator=(const BlockPhase&) = delete;

    void start(std::int64_t n0) {
        n0_ = static_cast<long double>(n0);
        if (spec_.zero) return;
        mpfr_set_si(t_, n0, MPFR_RNDN);
        mpfr_set_d(u_, spec_.gamma, MPFR_RNDN);
        mpfr_pow(t_, t_, u_, MPFR_RNDN);
        scale_ = coef_ld_ * mpfr_get_ld(t_, MPFR_RNDN);
        mpfr_mul(t_, t_, coef_, MPFR_RNDN);
        mpfr_mul_si(u_, m1_, n0, MPFR_RNDN);
        mpfr_add(t_, t_, u_, MPFR_RNDN);
        mpfr_frac(t_, t_, MPFR_RNDN);
        base_ = mpfr_get_ld(t_, MPFR_RNDN);
    }

    long double at(std::int64_t k) const {
        if (spec_.zero) return 0;
        if (k == 0) return base_;
        const long double kk = static_cast<long double>(k);
        long double inc = scale_ * std::expm1(gamma_ * std::log1p(kk / n0_));
        inc -= std::floor(inc);
        long double lin = m1_frac_ * kk;
        lin -= std::floor(lin);
        return base_ + inc + lin;
    }

private:
    static constexpr mpfr_prec_t kBits = 256;
    const PhaseSpec& spec_;
    mpfr_t coef_, m1_, t_, u_;
    long double coef_ld_ = 0, gamma_ = 0, m1_frac_ = 0;
    long double n0_ = 1, scale_ = 0, base_ = 0;
};

// sum_{lo < n <= hi} w(n) e(f(n)) over fixed segments.
std::complex<double> segmented_sum(std::int64_t lo, std::int64_t hi, Weight weight,
                                   const PhaseSpec& phase) {
    if (hi <= lo) return {0.0, 0.0};
    const std::int64_t count = hi - lo;
    const auto segments = static_cast<std::size_t>((count + kSegment - 1) / kSegment);
    std::vector<std::pair<long double, long double>> partial(segments);
    parallel_for(segments, [&](std::size_t s) {
        const std::int64_t a = lo + static_cast<std::int64_t>(s) * kSegment + 1;
        const std::int64_t b = std::min(hi, a + kSegment - 1);
        Compensated re, im;
        SieveTable table;
        if (weight == Weight::von_mangoldt)
            table = SieveTable::build(static_cast<std::uint64_t>(a), static_cast<std::uint64_t>(b),
                                      {.segment = static_cast<std::uint64_t>(kSegment)});
        BlockPhase f(phase);
        for (std::int64_t n0 = a; n0 <= b; n0 += kBlock) {
            f.start(n0);
            const std::int64_t last = std::min(b, n0 + kBlock - 1);
            for (std::int64_t n = n0; n <= last; ++n) {
                long double w = 1;
                if (weight == Weight::von_mangoldt) {
                    w = table.von_mangoldt(static_cast<std::uint64_t>(n));
                    if (w == 0) continue;
                } else if (weight == Weight::log) {
                    w = std::log(static_cast<long double>(n));
                }
                const long double t = kTwoPiL * f.at(n - n0);
                re.add(w * std::cos(t));
                im.add(w * std::sin(t));
            }
        }
        partial[s] = {re.value(), im.value()};
    });
    Compensated re, im;
    for (const auto& [r, i] : partial) {
        re.add(r);
        im.add(i);
    }
    return {static_cast<double>(re.value()), static_cast<double>(im.value())};
}

PhaseSpec spec_phase(const ExpSumSpec& spec) {
    PhaseSpec p;
    p.coef = mpq_class(spec.j, spec.d);
    p.coef.canonicalize();
    p.gamma = spec.gamma;
    p.m1 = mpq_class(spec.m1);
    p.zero = spec.zero_phase;
    return p;
}

void require(bool ok, const char* what) {
    if (!ok) throw InvalidArgument(what);
}

// Positive divisors of n in increasing order.
std::vector<std::uint64_t> divisors(std::uint64_t n) {
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        small.push_back(d);
        if (d * d != n) large.push_back(n / d);
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

void check_heath_brown(std::uint64_t n, int k, double z) {
    require(k >= 1 && k <= 3, "heath_brown needs 1 <= k <= 3");
    require(z >= 1, "heath_brown needs z >= 1");
    require(n >= 1, "heath_brown needs n >= 1");
    if (n > kHeathBrownCap)
        throw TooManyFactorizations("heath_brown enumerates n <= " +
                                    std::to_string(kHeathBrownCap) + ", got " +
                                    std::to_string(n));
    // n <= 2 z^k, exactly when z is an integer.
    bool ok;
    if (z == std::floor(z) && z < 1e6) {
        const auto zi = static_cast<unsigned __int128>(z);
        unsigned __int128 p = 2;
        for (int i = 0; i < k; ++i) p *= zi;
        ok = static_cast<unsigned __int128>(n) <= p;
    } else {
        ok = static_cast<long double>(n) <= 2 * std::pow(static_cast<long double>(z), k);
    }
    if (!ok)
        throw HypothesisViolated("Heath-Brown identity needs n <= 2 z^k (n=" + std::to_string(n) +
                                 ", k=" + std::to_string(k) + ", z=" + std::to_string(z) + ")");
}

int binomial(int k, int j) {
    int r = 1;
    for (int i = 1; i <= j; ++i) r = r * (k - i + 1) / i;
    return r;
}

double positive(double v, const char* what) {
    if (!(v > 0) || !std::isfinite(v)) throw InvalidArgument(what);
    return v;
}

void check_jdxg(double j, double d, double x, double gamma) {
    require(std::abs(j) >= 1, "bound needs |j| >= 1");
    require(d >= 1, "bound needs d >= 1");
    require(x >= 2, "bound needs x >= 2");
    require(gamma > 0 && gamma < 1, "bound needs gamma in (0, 1)");
}

double sum_terms(const std::vector<NamedTerm>& terms) {
    double s = 0;
    for (const NamedTerm& t : terms) s += t.value;
    return s;
}

}  // namespace

void ExpSumSpec::validate() const {
    require(lo >= 0, "exp_sum range needs lo >= 0");
    require(lo <= hi, "exp_sum range needs lo <= hi");
    require(j != 0, "exp_sum needs a nonzero frequency j");
    require(d >= 1, "exp_sum needs d >= 1");
    require(gamma > 0 && gamma < 1, "exp_sum needs gamma in (0, 1)");
    require(std::isfinite(m1), "exp_sum needs a finite m1");
    if (hi > kExpSumCap)
        throw RangeTooLarge("exp_sum is capped at hi <= " + std::to_string(kExpSumCap) + ", got " +
                            std::to_string(hi));
}

std::complex<double> exp_sum(const ExpSumSpec& spec) {
    spec.validate();
    return segmented_sum(spec.lo, spec.hi, spec.weight, spec_phase(spec));
}

std::complex<double> exp_sum_reference(const ExpSumSpec& spec) {
    spec.validate();
    if (spec.hi - spec.lo > kReferenceCap)
        throw RangeTooLarge("reference path is limited to " + std::to_string(kReferenceCap) +
                            " terms");
    constexpr mpfr_prec_t bits = 128;
    mpfr_t g, c, m1, t, p, two_pi, s, co, re, im, w;
    for (mpfr_ptr v : {g, c, m1, t, p, two_pi, s, co, re, im, w}) mpfr_init2(v, bits);
    mpfr_set_d(g, spec.gamma, MPFR_RNDN);
    mpfr_set_si(c, spec.j, MPFR_RNDN);
    mpfr_div_si(c, c, spec.d, MPFR_RNDN);
    mpfr_set_d(m1, spec.m1, MPFR_RNDN);
    mpfr_const_pi(two_pi, MPFR_RNDN);
    mpfr_mul_2ui(two_pi, two_pi, 1, MPFR_RNDN);
    mpfr_set_zero(re, 1);
    mpfr_set_zero(im, 1);
    for (std::int64_t n = spec.lo + 1; n <= spec.hi; ++n) {
        double weight = 1;
        if (spec.weight == Weight::von_mangoldt)
            weight = von_mangoldt(static_cast<std::uint64_t>(n));
        else if (spec.weight == Weight::log)
            weight = std::log(static_cast<double>(n));
        if (weight == 0) continue;
        if (spec.zero_phase) {
            mpfr_set_zero(p, 1);
        } else {
            mpfr_set_si(t, n, MPFR_RNDN);
            mpfr_pow(p, t, g, MPFR_RNDN);
            mpfr_mul(p, p, c, MPFR_RNDN);
            mpfr_mul_si(t, m1, n, MPFR_RNDN);
            mpfr_add(p, p, t, MPFR_RNDN);
            mpfr_frac(p, p, MPFR_RNDN);
        }
        mpfr_mul(p, p, two_pi, MPFR_RNDN);
        mpfr_sin_cos(s, co, p, MPFR_RNDN);
        mpfr_set_d(w, weight, MPFR_RNDN);
        mpfr_fma(re, co, w, re, MPFR_RNDN);
        mpfr_fma(im, s, w, im, MPFR_RNDN);
    }
    std::complex<double> out{mpfr_get_d(re, MPFR_RNDN), mpfr_get_d(im, MPFR_RNDN)};
    for (mpfr_ptr v : {g, c, m1, t, p, two_pi, s, co, re, im, w}) mpfr_clear(v);
    return out;
}

std::complex<double> monomial_sum(double A, double gamma, std::int64_t lo, std::int64_t hi) {
    require(lo >= 0 && lo <= hi, "monomial_sum needs 0 <= lo <= hi");
    require(std::isfinite(A), "monomial_sum needs a finite coefficient");
    if (hi > kExpSumCap) throw RangeTooLarge("monomial_sum is capped at hi <= 1e9");
    PhaseSpec p;
    p.coef = mpq_class(A);
    p.gamma = gamma;
    return segmented_sum(lo, hi, Weight::unit, p);
}

double weight_total(const ExpSumSpec& spec) {
    spec.validate();
    PhaseSpec p;
    p.zero = true;
    return segmented_sum(spec.lo, spec.hi, spec.weight, p).real();
}

HBDecomposition heath_brown(std::uint64_t n, int k, double z) {
    check_heath_brown(n, k, z);
    const std::vector<std::uint64_t> divs = divisors(n);
    const std::size_t D = divs.size();
    auto index_of = [&](std::uint64_t v) {
        return static_cast<std::size_t>(std::lower_bound(divs.begin(), divs.end(), v) -
                                        divs.begin());
    };
    std::vector<int> mu(D);
    std::vector<double> logd(D);
    for (std::size_t i = 0; i < D; ++i) {
        mu[i] = mobius(divs[i]);
        logd[i] = std::log(static_cast<double>(divs[i]));
    }
    // tau[r][i]: ordered r-tuples with product divs[i]; tau_0 = [m == 1].
    std::vector<std::vector<double>> tau(static_cast<std::size_t>(k), std::vector<double>(D, 0));
    tau[0][0] = 1;
    for (int r = 1; r < k; ++r)
        for (std::size_t i = 0; i < D; ++i)
            for (std::size_t e = 0; e <= i; ++e)
                if (divs[i] % divs[e] == 0) tau[r][i] += tau[r - 1][index_of(divs[i] / divs[e])];
    // W[r][i]: sum over ordered r-tuples of factors <= z with product divs[i]
    // of the product of their Moebius values.
    std::vector<std::vector<double>> W(static_cast<std::size_t>(k + 1), std::vector<double>(D, 0));
    W[0][0] = 1;
    for (int r = 1; r <= k; ++r)
        for (std::size_t i = 0; i < D; ++i)
            for (std::size_t e = 0; e <= i; ++e) {
                if (divs[i] % divs[e] || mu[e] == 0 || static_cast<double>(divs[e]) > z) continue;
                W[r][i] += mu[e] * W[r - 1][index_of(divs[i] / divs[e])];
            }

    HBDecomposition out{n, k, z, {}, 0.0};
    for (int j = 1; j <= k; ++j) {
        // L_j(N) = sum over ordered (n_1, ..., n_j) with product N of log n_1
        //        = sum_{d | N} log d * tau_{j-1}(N / d).
        double inner = 0;
        for (std::size_t i = 0; i < D; ++i) {
            if (W[j][i] == 0) continue;
            const std::uint64_t N = n / divs[i];
            double L = 0;
            for (std::size_t e = 0; e < D && divs[e] <= N; ++e)
                if (N % divs[e] == 0) L += logd[e] * tau[j - 1][index_of(N / divs[e])];
            inner += W[j][i] * L;
        }
        const double c = (j % 2 == 1 ? 1.0 : -1.0) * binomial(k, j) * inner;
        out.terms.push_back({j, c});
        out.total += c;
    }
    return out;
}

HBDecomposition heath_brown_bruteforce(std::uint64_t n, int k, double z) {
    check_heath_brown(n, k, z);
    HBDecomposition out{n, k, z, {}, 0.0};
    for (int j = 1; j <= k; ++j) {
        double inner = 0;
        // Positions 0..j-1 are n_1..n_j, positions j..2j-1 carry mu and the
        // size restriction; the last position takes what remains.
        std::function<void(int, std::uint64_t, double, int)> rec =
            [&](int pos, std::uint64_t rest, double log_n1, int sign) {
                const int last = 2 * j - 1;
                if (pos == last) {
                    if (static_cast<double>(rest) > z) return;
                    const int m = mobius(rest);
                    if (m != 0) inner += log_n1 * sign * m;
                    return;
                }
                for (std::uint64_t e = 1; e <= rest; ++e) {
                    if (rest % e) continue;
                    if (pos >= j) {
                        if (static_cast<double>(e) > z) break;
                        const int m = mobius(e);
                        if (m == 0) continue;
                        rec(pos + 1, rest / e, log_n1, sign * m);
                    } else {
                        rec(pos + 1, rest / e,
                            pos == 0 ? std::log(static_cast<double>(e)) : log_n1, sign);
                    }
                }
            };
        rec(0, n, 0.0, 1);
        const double c = (j % 2 == 1 ? 1.0 : -1.0) * binomial(k, j) * inner;
        out.terms.push_back({j, c});
        out.total += c;
    }
    return out;
}

std::vector<NamedTerm> vinogradov_terms(double N, double q) {
    require(N >= 3, "vinogradov_bound needs N >= 3");
    require(q >= 1, "vinogradov_bound needs q >= 1");
    const double l4 = std::pow(std::log(N), 4);
    return {{"N q^(-1/2) (log N)^4", N / std::sqrt(q) * l4},
            {"N^(4/5) (log N)^4", std::pow(N, 0.8) * l4},
            {"N^(1/2) q^(1/2) (log N)^4", std::sqrt(N * q) * l4}};
}

double vinogradov_bound(double N, double q) { return sum_terms(vinogradov_terms(N, q)); }

double type_bound(double M, double h, double tau, double eps) {
    require(M >= 2, "type_bound needs M >= 2");
    require(h >= 1, "type_bound needs h >= 1");
    require(tau >= 1, "type_bound needs tau >= 1");
    positive(eps, "type_bound needs eps > 0");
    return std::sqrt(h) * std::pow(M, 1 - 1 / (2 * tau) + eps) + std::pow(M, 1 - eps);
}

double deriv_bound_2(double a, double lambda2) {
    require(a >= 1, "deriv_bound_2 needs a >= 1");
    positive(lambda2, "deriv_bound_2 needs lambda2 > 0");
    return a * std::sqrt(lambda2) + 1 / std::sqrt(lambda2);
}

double deriv_bound_3(double a, double lambda3) {
    require(a >= 1, "deriv_bound_3 needs a >= 1");
    positive(lambda3, "deriv_bound_3 needs lambda3 > 0");
    return a * std::pow(lambda3, 1.0 / 6) + std::pow(lambda3, -1.0 / 3);
}

std::vector<NamedTerm> type_I_terms(double j, double d, double x, double g, double eps) {
    check_jdxg(j, d, x, g);
    positive(eps, "bound needs eps > 0");
    const double aj = std::abs(j);
    return {{"|j|^(1/6) d^(-1/6) x^(gamma/6+3/4+eps)",
             std::pow(aj / d, 1.0 / 6) * std::pow(x, g / 6 + 0.75 + eps)},
            {"|j|^(-1/3) d^(1/3) x^(1-gamma/3+eps)",
             std::pow(d / aj, 1.0 / 3) * std::pow(x, 1 - g / 3 + eps)}};
}

std::vector<NamedTerm> type_II_terms(double j, double d, double x, double g) {
    check_jdxg(j, d, x, g);
    const double aj = std::abs(j);
    return {{"|j|^(1/4) d^(-1/4) x^(gamma/4+5/8)",
             std::pow(aj / d, 0.25) * std::pow(x, g / 4 + 0.625)},
            {"|j|^(-1/4) d^(1/4) x^(1-gamma/4)", std::pow(d / aj, 0.25) * std::pow(x, 1 - g / 4)},
            {"x^(89/100)", std::pow(x, 0.89)},
            {"|j|^(1/6) d^(-1/6) x^(gamma/6+3/4)",
             std::pow(aj / d, 1.0 / 6) * std::pow(x, g / 6 + 0.75)}};
}

std::vector<NamedTerm> combined_terms(double j, double d, double x, double g, double eps) {
    check_jdxg(j, d, x, g);
    positive(eps, "bound needs eps > 0");
    const double aj = std::abs(j);
    const double xe = std::pow(x, eps);
    return {{"x^eps |j|^(1/6) d^(-1/6) x^(gamma/6+3/4)",
             xe * std::pow(aj / d, 1.0 / 6) * std::pow(x, g / 6 + 0.75)},
            {"x^eps |j|^(-1/3) d^(1/3) x^(1-gamma/3)",
             xe * std::pow(d / aj, 1.0 / 3) * std::pow(x, 1 - g / 3)},
            {"x^eps |j|^(1/4) d^(-1/4) x^(gamma/4+5/8)",
             xe * std::pow(aj / d, 0.25) * std::pow(x, g / 4 + 0.625)},
            {"x^eps |j|^(-1/4) d^(1/4) x^(1-gamma/4)",
             xe * std::pow(d / aj, 0.25) * std::pow(x, 1 - g / 4)},
            {"x^eps x^(89/100)", xe * std::pow(x, 0.89)}};
}

double type_I_bound(double j, double d, double x, double g, double eps) {
    return sum_terms(type_I_terms(j, d, x, g, eps));
}
double type_II_bound(double j, double d, double x, double g) {
    return sum_terms(type_II_terms(j, d, x, g));
}
double combined_bound(double j, double d, double x, double g, double eps) {
    return sum_terms(combined_terms(j, d, x, g, eps));
}

double param_H(double x, double eps) { return std::pow(x, eps); }

double param_J(double x, double gamma, double d, double eps) {
    return std::pow(x, 1 - gamma + eps) * d;
}

std::complex<double> theta_h(double a, std::int64_t h) {
    long double u = static_cast<long double>(a) * static_cast<long double>(h);
    u -= std::floor(u);
    return {static_cast<double>(std::cos(kTwoPiL * u) - 1),
            static_cast<double>(std::sin(kTwoPiL * u))};
}

std::complex<double> phi_j(std::int64_t j, std::int64_t d, double gamma, double t) {
    require(d >= 1, "phi_j needs d >= 1");
    const long double tt = t;
    const long double g = gamma;
    long double u = static_cast<long double>(j) / static_cast<long double>(d) *
                    (std::pow(tt + 1, g) - std::pow(tt, g));
    u -= std::floor(u);
    return {static_cast<double>(std::cos(kTwoPiL * u) - 1),
            static_cast<double>(std::sin(kTwoPiL * u))};
}

BoundReport empirical_vs_bound(const ExpSumSpec& spec, BoundKind kind, double eps) {
    spec.validate();
    BoundReport r;
    r.kind = kind;
    r.empirical = std::abs(exp_sum(spec));
    const double x = static_cast<double>(spec.hi);
    const double j = static_cast<double>(spec.j), d = static_cast<double>(spec.d);
    switch (kind) {
        case BoundKind::type_I:
            r.bound_terms = type_I_terms(j, d, x, spec.gamma, eps);
            break;
        case BoundKind::type_II:
            r.bound_terms = type_II_terms(j, d, x, spec.gamma);
            break;
        case BoundKind::combined:
            r.bound_terms = combined_terms(j, d, x, spec.gamma, eps);
            break;
        case BoundKind::deriv_2:
        case BoundKind::deriv_3: {
            const double a = static_cast<double>(spec.hi - spec.lo);
            const double A = std::abs(j) / d, g = spec.gamma;
            const bool second = kind == BoundKind::deriv_2;
            auto lambda = [&](double t) {
                return second ? A * g * (1 - g) * std::pow(t, g - 2)
                              : A * g * (1 - g) * (2 - g) * std::pow(t, g - 3);
            };
            auto bound = [&](double l) { return second ? deriv_bound_2(a, l) : deriv_bound_3(a, l); };
            const double l_lo = lambda(std::max<double>(static_cast<double>(spec.lo), 1.0));
            const double l_hi = lambda(x);
            const double l = bound(l_lo) <= bound(l_hi) ? l_lo : l_hi;
            if (second)
                r.bound_terms = {{"a lambda2^(1/2)", a * std::sqrt(l)},
                                 {"lambda2^(-1/2)", 1 / std::sqrt(l)}};
            else
                r.bound_terms = {{"a lambda3^(1/6)", a * std::pow(l, 1.0 / 6)},
                                 {"lambda3^(-1/3)", std::pow(l, -1.0 / 3)}};
            r.metadata.push_back({second ? "lambda2" : "lambda3", l});
            r.metadata.push_back({"a", a});
            break;
        }
    }
    r.total_bound = sum_terms(r.bound_terms);
    r.ratio = r.empirical / r.total_bound;
    r.metadata.push_back({"x", x});
    r.metadata.push_back({"eps", eps});
    r.metadata.push_back({"H", param_H(x, eps)});
    r.metadata.push_back({"J", param_J(x, spec.gamma, d, eps)});
    r.metadata.push_back({"abs_theta_1", std::abs(theta_h(spec.m1, 1))});
    r.metadata.push_back({"abs_phi_j_at_x", std::abs(phi_j(spec.j, spec.d, spec.gamma, x))});
    return r;
}

std::uint64_t heath_brown_min_z(std::uint64_t n, int k) {
    require(n >= 1 && k >= 1 && k <= 3, "heath_brown_min_z needs n >= 1, 1 <= k <= 3");
    auto z = static_cast<std::uint64_t>(std::ceil(std::pow(n / 2.0, 1.0 / k)));
    auto fits = [&](std::uint64_t v) {
        unsigned __int128 p = 2;
        for (int i = 0; i < k; ++i) p *= v;
        return static_cast<unsigned __int128>(n) <= p;
    };
    z = std::max<std::uint64_t>(z, 1);
    while (z > 1 && fits(z - 1)) --z;
    while (!fits(z)) ++z;
    return z;
}

MonomialCheck monomial_check(double A, double gamma, std::int64_t a) {
    require(A > 0 && std::isfinite(A), "monomial_check needs A > 0");
    require(gamma > 0 && gamma < 1, "monomial_check needs gamma in (0, 1)");
    require(a >= 1, "monomial_check needs a >= 1");
    MonomialCheck m{A, gamma, a};
    m.empirical = std::abs(monomial_sum(A, gamma, a, 2 * a));
    const double g = gamma, ad = static_cast<double>(a);
    auto lam2 = [&](double t) { return A * g * (1 - g) * std::pow(t, g - 2); };
    auto lam3 = [&](double t) { return A * g * (1 - g) * (2 - g) * std::pow(t, g - 3); };
    m.bound_2 = std::min(deriv_bound_2(ad, lam2(ad)), deriv_bound_2(ad, lam2(2 * ad)));
    m.bound_3 = std::min(deriv_bound_3(ad, lam3(ad)), deriv_bound_3(ad, lam3(2 * ad)));
    return m;
}

std::string to_string(BoundKind kind) {
    switch (kind) {
        case BoundKind::type_I: return "type_I";
        case BoundKind::type_II: return "type_II";
        case BoundKind::combined: return "combined";
        case BoundKind::deriv_2: return "deriv_2";
        case BoundKind::deriv_3: return "deriv_3";
    }
    return "unknown";
}

BoundKind bound_kind_from_string(const std::string& s) {
    for (BoundKind k : {BoundKind::type_I, BoundKind::type_II, BoundKind::combined,
                        BoundKind::deriv_2, BoundKind::deriv_3})
        if (to_string(k) == s) return k;
    throw InvalidArgument("unknown bound '" + s +
                          "' (expected type_I, type_II, combined, deriv_2, deriv_3)");
}

std::string to_string(Weight w) {
    switch (w) {
        case Weight::von_mangoldt: return "lambda";
        case Weight::unit: return "unit";
        case Weight::log: return "log";
    }
    return "unknown";
}

Weight weight_from_string(const std::string& s) {
    if (s == "lambda" || s == "Lambda" || s == "von_mangoldt") return Weight::von_mangoldt;
    if (s == "unit") return Weight::unit;
    if (s == "log") return Weight::log;
    throw InvalidArgument("unknown weight '" + s + "' (expected lambda, unit, log)");
}

}  // namespace psb
