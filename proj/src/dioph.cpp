#include "psbeatty/dioph.hpp"

#include <cmath>
#include <map>
#include <string>

#include "psbeatty/errors.hpp"

namespace psb {

namespace {

mpz_class floor_q(const mpq_class& v) {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return r;
}

mpq_class to_mpq(const BigFloat& f) {
    mpq_class q;
    mpfr_get_q(q.get_mpq_t(), f.get());
    return q;
}

double log_mpz(const mpz_class& v) {
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
    return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

void push_quotient(ContinuedFraction& cf, const mpz_class& a) {
    cf.quotients.push_back(a);
    const std::size_t k = cf.convergents.size();
    if (k == 0) {
        cf.convergents.push_back({a, 1});
    } else if (k == 1) {
        const Convergent& c0 = cf.convergents[0];
        cf.convergents.push_back({a * c0.p + 1, a * c0.q});
    } else {
        const Convergent& c1 = cf.convergents[k - 1];
        const Convergent& c0 = cf.convergents[k - 2];
        cf.convergents.push_back({a * c1.p + c0.p, a * c1.q + c0.q});
    }
}

void expand_rational(ContinuedFraction& cf, mpq_class v, std::size_t K) {
    while (cf.quotients.size() < K) {
        const mpz_class a = floor_q(v);
        push_quotient(cf, a);
        v -= a;
        if (v == 0) {
            cf.terminated = true;
            return;
        }
        v = 1 / v;
    }
}

// x = (P + sqrt(N)) / Q with Q | N - P^2; then
//   a_k = floor((P + sqrt N) / Q), P' = a_k Q - P, Q' = (N - P'^2) / Q.
void expand_quadratic(ContinuedFraction& cf, const CertifiedReal::Quadratic& x, std::size_t K) {
    const mpz_class den = x.a.get_den() * x.b.get_den();
    const mpz_class rat = x.a.get_num() * x.b.get_den();
    const mpz_class coef = x.b.get_num() * x.a.get_den();
    const int s = sgn(coef);
    mpz_class N = coef * coef * x.d;
    mpz_class P = rat * s;
    mpz_class Q = den * s;
    if (mpz_class((N - P * P) % Q) != 0) {
        const mpz_class absq = abs(Q);
        P *= absq;
        N *= Q * Q;
        Q *= absq;
    }
    const mpz_class root = isqrt(N);
    std::map<std::pair<mpz_class, mpz_class>, std::size_t> seen;
    while (cf.quotients.size() < K) {
        if (cf.period_length == 0) {
            auto [it, fresh] = seen.try_emplace({P, Q}, cf.quotients.size());
            if (!fresh) {
                cf.period_start = it->second;
                cf.period_length = cf.quotients.size() - it->second;
            }
        }
        // sqrt(N) lies strictly between root and root + 1, so the floor of
        // (P + sqrt N) / Q is decided by the integer root alone.
        mpz_class a;
        if (Q > 0) {
            mpz_fdiv_q(a.get_mpz_t(), mpz_class(P + root).get_mpz_t(), Q.get_mpz_t());
        } else {
            const mpz_class q = -Q;
            mpz_fdiv_q(a.get_mpz_t(), mpz_class(P + root).get_mpz_t(), q.get_mpz_t());
            a = -a - 1;
        }
        push_quotient(cf, a);
        P = a * Q - P;
        Q = (N - P * P) / Q;
    }
}

// Expands [lo, hi] with exact rational endpoints; stops when the quotient
// is no longer common to the whole interval.
void expand_interval(ContinuedFraction& cf, mpq_class lo, mpq_class hi, std::size_t K) {
    while (cf.quotients.size() < K) {
        const mpz_class a = floor_q(lo);
        if (floor_q(hi) != a) return;
        push_quotient(cf, a);
        lo -= a;
        hi -= a;
        if (lo == 0) return;  // the value may be exactly a
        // t -> 1/t reverses the order on positive reals.
        mpq_class new_lo = 1 / hi;
        hi = 1 / lo;
        lo = new_lo;
    }
}

// Midpoint of an enclosure whose width is below 2^-60 of its magnitude.
double relative_double(const CertifiedReal& y, const PrecisionSchedule& sched) {
    if (y.is_rational()) return y.as_rational().get_d();
    for (mpfr_prec_t w = sched.start_bits; w <= sched.cap_bits; w *= 2) {
        const Interval iv = y.evaluate(w);
        if (!iv.is_finite() || iv.contains_zero()) continue;
        BigFloat width = iv.width();
        mpfr_mul_2si(width.get(), width.get(), 60, MPFR_RNDU);
        BigFloat mag(w);
        mpfr_min(mag.get(), iv.lo().get(), iv.hi().get(), MPFR_RNDD);
        mpfr_abs(mag.get(), mag.get(), MPFR_RNDD);
        if (mpfr_cmp(width.get(), mag.get()) <= 0) return iv.midpoint();
    }
    throw PrecisionExhausted("cannot evaluate " + y.to_string() + " to relative double accuracy");
}

// Expands until a convergent denominator exceeds bound, or the expansion ends.
ContinuedFraction expand_past(const CertifiedReal& x, const mpz_class& bound,
                              const PrecisionSchedule& sched) {
    for (std::size_t K = 32;; K *= 2) {
        ContinuedFraction cf = cf_expand(x, K, sched);
        if (cf.terminated || cf.convergents.back().q > bound) return cf;
    }
}

}  // namespace

ContinuedFraction cf_expand(const CertifiedReal& x, std::size_t K, const PrecisionSchedule& sched) {
    if (K == 0) throw InvalidArgument("cf_expand needs K >= 1");
    ContinuedFraction cf{x, {}, {}};
    switch (x.kind()) {
        case CertifiedReal::Kind::rational:
            expand_rational(cf, x.as_rational(), K);
            return cf;
        case CertifiedReal::Kind::quadratic:
            expand_quadratic(cf, x.as_quadratic(), K);
            return cf;
        case CertifiedReal::Kind::adaptive:
            break;
    }
    for (mpfr_prec_t w = sched.start_bits; w <= sched.cap_bits; w *= 2) {
        const Interval iv = x.evaluate(w);
        if (!iv.is_finite()) continue;
        ContinuedFraction attempt{x, {}, {}};
        expand_interval(attempt, to_mpq(iv.lo()), to_mpq(iv.hi()), K);
        if (attempt.quotients.size() == K) return attempt;
    }
    throw PrecisionExhausted("cannot certify " + std::to_string(K) + " partial quotients of " +
                             x.to_string() + " at " + std::to_string(sched.cap_bits) + " bits");
}

Convergent best_convergent_below(const CertifiedReal& x, const mpz_class& M,
                                 const PrecisionSchedule& sched) {
    if (M < 1) throw InvalidArgument("best_convergent_below needs M >= 1");
    const ContinuedFraction cf = expand_past(x, M, sched);
    Convergent best = cf.convergents.front();
    for (const Convergent& c : cf.convergents)
        if (c.q <= M) best = c;
    return best;
}

double distance_to_integer(const CertifiedReal& x, const PrecisionSchedule& sched) {
    const CertifiedReal f{mpq_class(certified_floor(x, sched))};
    const double below = relative_double(x - f, sched);
    if (below == 0.0) return 0.0;
    return std::min(below, relative_double(f + CertifiedReal(1L) - x, sched));
}

TypeEstimate type_estimate(const CertifiedReal& x, const mpz_class& N,
                           const PrecisionSchedule& sched) {
    if (x.is_rational()) throw RationalInput("type_estimate needs an irrational number");
    if (N < 10) throw InvalidArgument("type_estimate needs N >= 10");
    const ContinuedFraction cf = expand_past(x, N, sched);
    TypeEstimate est;
    est.search_bound = N;
    est.witness_n = 1;
    // The type is a tail property; early ratios such as log 5 / log 2 for
    // sqrt(2) say nothing about it. Use denominators in [sqrt N, N], falling
    // back to the largest denominator <= N when that window is empty.
    const mpz_class window_lo = std::max(mpz_class(2), isqrt(N));
    auto scan = [&](const mpz_class& lo) {
        for (std::size_t k = 0; k + 1 < cf.convergents.size(); ++k) {
            const mpz_class& q = cf.convergents[k].q;
            if (q < lo || q > N) continue;
            const double ratio = log_mpz(cf.convergents[k + 1].q) / log_mpz(q);
            if (est.witness_n == 1 || ratio > est.tau_hat) {
                est.tau_hat = std::max(1.0, ratio);
                est.witness_n = q;
            }
        }
    };
    scan(window_lo);
    if (est.witness_n == 1) {
        for (std::size_t k = cf.convergents.size(); k-- > 1;) {
            const mpz_class& q = cf.convergents[k - 1].q;
            if (q >= 2 && q <= N) {
                scan(q);
                break;
            }
        }
    }
    est.witness_distance = distance_to_integer(x * CertifiedReal(mpq_class(est.witness_n)), sched);
    return est;
}

double type_inequality_constant(const CertifiedReal& x, double rho, const mpz_class& N,
                                const PrecisionSchedule& sched) {
    if (x.is_rational()) throw RationalInput("type_inequality_constant needs an irrational number");
    if (!(rho > 0)) throw InvalidArgument("type_inequality_constant needs rho > 0");
    if (N < 1) throw InvalidArgument("type_inequality_constant needs N >= 1");
    const ContinuedFraction cf = expand_past(x, N, sched);
    double best = distance_to_integer(x, sched);
    for (const Convergent& c : cf.convergents) {
        if (c.q > N) break;
        const double d = distance_to_integer(x * CertifiedReal(mpq_class(c.q)), sched);
        best = std::min(best, d * std::exp(rho * log_mpz(c.q)));
    }
    return best;
}

}  // namespace psb
