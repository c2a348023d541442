#ifndef PSBEATTY_DIOPH_HPP
#define PSBEATTY_DIOPH_HPP

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "psbeatty/exactreal.hpp"

namespace psb {

struct Convergent {
    mpz_class p;
    mpz_class q;
};

// Leading partial quotients [a0; a1, a2, ...] and convergents p_k/q_k.
// For quadratic irrationals the (P, Q) state of the periodic algorithm is
// tracked; period_length > 0 once a repeated state has been seen.
struct ContinuedFraction {
    CertifiedReal value;
    std::vector<mpz_class> quotients;
    std::vector<Convergent> convergents;
    bool terminated = false;  // rational input fully expanded
    std::size_t period_start = 0;
    std::size_t period_length = 0;
};

// First K partial quotients of x (fewer if x is rational and its expansion
// ends). Exact for Rational and Quadratic inputs; Adaptive inputs are
// expanded from exact-rational enclosure endpoints, escalating precision,
// and throw PrecisionExhausted if K quotients cannot be certified.
ContinuedFraction cf_expand(const CertifiedReal& x, std::size_t K,
                            const PrecisionSchedule& sched = {});

// The convergent of x with the largest denominator q <= M (M >= 1).
Convergent best_convergent_below(const CertifiedReal& x, const mpz_class& M,
                                 const PrecisionSchedule& sched = {});

// ||x|| = distance to the nearest integer, to double relative accuracy.
double distance_to_integer(const CertifiedReal& x, const PrecisionSchedule& sched = {});

struct TypeEstimate {
    double tau_hat = 1.0;
    mpz_class witness_n;       // the convergent denominator q_k achieving tau_hat
    double witness_distance;   // ||x * witness_n||
    mpz_class search_bound;
};

// max of log q_{k+1} / log q_k over convergent denominators in the tail
// window sqrt(N) <= q_k <= N (the largest q_k in [2, N] if the window holds
// none); 1 if no denominator qualifies. Rational x is rejected
// (RationalInput); N >= 10.
TypeEstimate type_estimate(const CertifiedReal& x, const mpz_class& N,
                           const PrecisionSchedule& sched = {});

// min over 1 <= n <= N of ||x n|| n^rho. By Lagrange's best-approximation
// property the minimum is attained at a convergent denominator, so only those
// are evaluated. Rational x is rejected (RationalInput); rho > 0.
double type_inequality_constant(const CertifiedReal& x, double rho, const mpz_class& N,
                                const PrecisionSchedule& sched = {});

}  // namespace psb

#endif  // PSBEATTY_DIOPH_HPP
