#ifndef PSBEATTY_EXPSUM_HPP
#define PSBEATTY_EXPSUM_HPP

#include <complex>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace psb {

enum class Weight { von_mangoldt, unit, log };

// sum_{lo < n <= hi} w(n) e(j d^-1 n^gamma + m1 n).
struct ExpSumSpec {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    std::int64_t j = 1;
    std::int64_t d = 1;
    double gamma = 0.5;
    double m1 = 0.0;
    Weight weight = Weight::von_mangoldt;
    // Test hook: replace every phase by 0, leaving the plain weight sum.
    bool zero_phase = false;

    void validate() const;  // InvalidArgument / RangeTooLarge
};

inline constexpr std::int64_t kExpSumCap = 1'000'000'000;
inline constexpr std::int64_t kReferenceCap = 10'000;

// Direct sum in long double with Neumaier-compensated accumulation over
// fixed segments (result independent of the worker count). The phase mod 1
// is anchored every 1024 terms by a 256-bit evaluation and advanced by small
// long double increments, so it stays accurate even when j/d n^gamma is
// ~1e10. Absolute error is far below the documented budget
// 1e-6 * terms * max weight.
std::complex<double> exp_sum(const ExpSumSpec& spec);

// 128-bit MPFR recomputation for hi - lo <= kReferenceCap, used to
// validate the fast path.
std::complex<double> exp_sum_reference(const ExpSumSpec& spec);

// sum_{lo < n <= hi} e(A n^gamma) with unit weights, for derivative tests.
std::complex<double> monomial_sum(double A, double gamma, std::int64_t lo, std::int64_t hi);

// sum_{lo < n <= hi} w(n), the triangle-inequality ceiling for |exp_sum|.
double weight_total(const ExpSumSpec& spec);

struct HBTerm {
    int j;
    double contribution;  // (-1)^{j-1} C(k, j) * (the 2j-fold sum)
};

struct HBDecomposition {
    std::uint64_t n = 0;
    int k = 0;
    double z = 0;
    std::vector<HBTerm> terms;
    double total = 0;
};

inline constexpr std::uint64_t kHeathBrownCap = 100'000;

// Evaluates every term of the identity
//   Lambda(n) = sum_j (-1)^{j-1} C(k,j) sum_{n_1...n_{2j} = n, n_{j+1..2j} <= z}
//               log(n_1) mu(n_{j+1}) ... mu(n_{2j})
// Preconditions 1 <= k <= 3, z >= 1, 1 <= n <= 2 z^k (HypothesisViolated),
// n <= kHeathBrownCap (TooManyFactorizations).
HBDecomposition heath_brown(std::uint64_t n, int k, double z);

// Same sum by enumerating every ordered 2j-tuple; an oracle for small n.
HBDecomposition heath_brown_bruteforce(std::uint64_t n, int k, double z);

// Smallest integer z >= 1 with n <= 2 z^k, i.e. ceil((n/2)^(1/k)).
std::uint64_t heath_brown_min_z(std::uint64_t n, int k);

struct NamedTerm {
    std::string name;
    double value;
};

inline constexpr double kDefaultEps = 0.01;

// (N q^{-1/2} + N^{4/5} + N^{1/2} q^{1/2}) (log N)^4, N >= 3, q >= 1.
double vinogradov_bound(double N, double q);
std::vector<NamedTerm> vinogradov_terms(double N, double q);

// h^{1/2} M^{1 - 1/(2 tau) + eps} + M^{1 - eps}; M >= 2, h >= 1, tau >= 1, eps > 0.
double type_bound(double M, double h, double tau, double eps);

// a lambda2^{1/2} + lambda2^{-1/2}; a >= 1, lambda2 > 0.
double deriv_bound_2(double a, double lambda2);
// a lambda3^{1/6} + lambda3^{-1/3}; a >= 1, lambda3 > 0.
double deriv_bound_3(double a, double lambda3);

// Per-term bounds (in display order); the total is the sum of the values.
std::vector<NamedTerm> type_I_terms(double j, double d, double x, double gamma,
                                    double eps = kDefaultEps);
std::vector<NamedTerm> type_II_terms(double j, double d, double x, double gamma);
std::vector<NamedTerm> combined_terms(double j, double d, double x, double gamma,
                                      double eps = kDefaultEps);
double type_I_bound(double j, double d, double x, double gamma, double eps = kDefaultEps);
double type_II_bound(double j, double d, double x, double gamma);
double combined_bound(double j, double d, double x, double gamma, double eps = kDefaultEps);

// The zero-frequency plumbing objects: H = x^eps, J = x^{1-gamma+eps} d,
// theta_h = e(ah) - 1, phi_j(t) = e(j d^-1 ((t+1)^gamma - t^gamma)) - 1.
double param_H(double x, double eps = kDefaultEps);
double param_J(double x, double gamma, double d, double eps = kDefaultEps);
std::complex<double> theta_h(double a, std::int64_t h);
std::complex<double> phi_j(std::int64_t j, std::int64_t d, double gamma, double t);

// |sum_{a < n <= 2a} e(A n^gamma)| against both derivative tests, with
// lambda_k = |f^(k)| taken at each end of [a, 2a] and the smaller bound kept.
struct MonomialCheck {
    double A = 0, gamma = 0;
    std::int64_t a = 0;
    double empirical = 0;
    double bound_2 = 0;
    double bound_3 = 0;
};
MonomialCheck monomial_check(double A, double gamma, std::int64_t a);

enum class BoundKind { type_I, type_II, combined, deriv_2, deriv_3 };

struct BoundReport {
    BoundKind kind;
    double empirical = 0;  // |exp_sum(spec)|
    std::vector<NamedTerm> bound_terms;
    double total_bound = 0;
    double ratio = 0;  // empirical / total_bound
    std::vector<NamedTerm> metadata;
};

// |exp_sum(spec)| against the selected bound at x = spec.hi. For the
// derivative tests the phase j d^-1 n^gamma is a monomial with a = hi - lo;
// lambda is taken at both ends of the range and the smaller bound is used.
BoundReport empirical_vs_bound(const ExpSumSpec& spec, BoundKind kind, double eps = kDefaultEps);

std::string to_string(BoundKind kind);
BoundKind bound_kind_from_string(const std::string& s);
std::string to_string(Weight w);
Weight weight_from_string(const std::string& s);

}  // namespace psb

#endif  // PSBEATTY_EXPSUM_HPP
