#ifndef PSBEATTY_EXACTREAL_HPP
#define PSBEATTY_EXACTREAL_HPP

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <variant>

#include "psbeatty/expr.hpp"
#include "psbeatty/interval.hpp"

namespace psb {

// Precision escalation for certified floor/compare on Adaptive values:
// start_bits, doubled until cap_bits.
struct PrecisionSchedule {
    mpfr_prec_t start_bits = 64;
    mpfr_prec_t cap_bits = 4096;
};

// A real number with certified floor and comparison.
//
// Three representations:
//   Rational   p/q in lowest terms (mpq_class is canonical)
//   Quadratic  a + b*sqrt(D), a, b rational, b != 0, D square-free, D >= 2
//   Adaptive   expression tree evaluated by interval arithmetic
//
// Arithmetic stays exact when it can: rationals are closed under + - * /,
// quadratics are closed within one D. Everything else becomes Adaptive.
class CertifiedReal {
public:
    enum class Kind { rational, quadratic, adaptive };

    struct Quadratic {
        mpq_class a;
        mpq_class b;
        long d;
    };

    CertifiedReal() : CertifiedReal(mpq_class(0)) {}
    CertifiedReal(const mpq_class& q);  // NOLINT(google-explicit-constructor)
    CertifiedReal(long v) : CertifiedReal(mpq_class(v)) {}  // NOLINT

    static CertifiedReal rational(const mpz_class& num, const mpz_class& den);
    // a + b*sqrt(d); d must be square-free and >= 2. b == 0 yields a Rational.
    static CertifiedReal quadratic(const mpq_class& a, const mpq_class& b, long d);
    static CertifiedReal from_expr(ExprPtr e);

    // Exact when x is a rational whose square-free kernel can be found;
    // otherwise Adaptive.
    static CertifiedReal sqrt(const CertifiedReal& x);
    static CertifiedReal pow(const CertifiedReal& base, const mpq_class& exponent);
    static CertifiedReal log(const CertifiedReal& x);
    static CertifiedReal exp(const CertifiedReal& x);

    // Textual constructor: "sqrt(2)", "(1+sqrt(5))/2", "355/113", "1.05",
    // "1e6", "2^(3/2)", "log(3)". Decimals are parsed as exact rationals.
    static CertifiedReal parse(std::string_view text);

    Kind kind() const;
    bool is_rational() const { return kind() == Kind::rational; }
    bool is_quadratic() const { return kind() == Kind::quadratic; }
    bool is_adaptive() const { return kind() == Kind::adaptive; }
    const mpq_class& as_rational() const;
    const Quadratic& as_quadratic() const;
    // Expression tree for any representation (exact ones are lifted).
    ExprPtr as_expr() const;

    // Raw interval at the given working precision (no width guarantee).
    Interval evaluate(mpfr_prec_t bits) const;
    // Interval of width <= 2^(1-bits); throws PrecisionExhausted if the
    // working precision needed exceeds 64 * bits.
    Interval enclose(mpfr_prec_t bits) const;
    double to_double() const;
    long double to_long_double() const;
    std::string to_string() const;

    CertifiedReal operator-() const;
    friend CertifiedReal operator+(const CertifiedReal& x, const CertifiedReal& y);
    friend CertifiedReal operator-(const CertifiedReal& x, const CertifiedReal& y);
    friend CertifiedReal operator*(const CertifiedReal& x, const CertifiedReal& y);
    friend CertifiedReal operator/(const CertifiedReal& x, const CertifiedReal& y);

private:
    struct Adaptive {
        ExprPtr expr;
    };
    using Repr = std::variant<mpq_class, Quadratic, Adaptive>;
    explicit CertifiedReal(Repr r) : repr_(std::move(r)) {}

    Repr repr_;
};

// n with n <= x < n + 1. Exact for Rational and Quadratic; Adaptive values
// are refined along the schedule, AmbiguousFloor if an integer cannot be
// excluded from the enclosure at the cap.
mpz_class certified_floor(const CertifiedReal& x, const PrecisionSchedule& sched = {});
std::int64_t certified_floor_i64(const CertifiedReal& x, const PrecisionSchedule& sched = {});

// Sign of x in {-1, 0, 1}; zero is only reported for exact representations.
int certified_sign(const CertifiedReal& x, const PrecisionSchedule& sched = {});
std::strong_ordering certified_compare(const CertifiedReal& x, const CertifiedReal& y,
                                       const PrecisionSchedule& sched = {});

// m -> floor(offset + slope * m). Uses integer arithmetic when offset and
// slope live in one quadratic field, certified_floor otherwise.
class AffineFloor {
public:
    AffineFloor(const CertifiedReal& offset, const CertifiedReal& slope,
                PrecisionSchedule sched = {});

    std::int64_t operator()(std::int64_t m) const;
    bool exact() const { return exact_; }

private:
    CertifiedReal offset_, slope_;
    PrecisionSchedule sched_;
    bool exact_ = false;
    long d_ = 0;
    mpz_class p0_, p1_, q0_, q1_, s_;  // (p0 + p1 m + (q0 + q1 m) sqrt(d)) / s
};

// floor(n^(p/q)) as the integer q-th root of n^p.
mpz_class floor_power(const mpz_class& n, const mpq_class& c);
std::uint64_t floor_power(std::uint64_t n, const mpq_class& c);
// ceil(n^(p/q)).
std::uint64_t ceil_power(std::uint64_t n, const mpq_class& c);
// Exact test n^(p/q) <= x.
bool power_at_most(std::uint64_t n, const mpq_class& c, std::uint64_t x);

// Largest integer n >= 0 with n^2 <= v.
mpz_class isqrt(const mpz_class& v);

}  // namespace psb

#endif  // PSBEATTY_EXACTREAL_HPP
