#ifndef PSBEATTY_INTERVAL_HPP
#define PSBEATTY_INTERVAL_HPP

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace psb {

// Owning wrapper around mpfr_t.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }
    long double to_long_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_ld(v_, rnd); }

private:
    mpfr_t v_;
};

// Closed interval [lo, hi] with MPFR endpoints. Every operation rounds lo
// down and hi up, so the true value of the computed expression stays inside.
class Interval {
public:
    explicit Interval(mpfr_prec_t prec);
    static Interval point(const mpq_class& q, mpfr_prec_t prec);
    static Interval whole(mpfr_prec_t prec);

    const BigFloat& lo() const { return lo_; }
    const BigFloat& hi() const { return hi_; }
    BigFloat& lo() { return lo_; }
    BigFloat& hi() { return hi_; }
    mpfr_prec_t precision() const { return lo_.precision(); }

    bool is_finite() const;
    bool contains_zero() const;
    bool strictly_positive() const;
    bool strictly_negative() const;
    // Upper bound on hi - lo.
    BigFloat width() const;
    double midpoint() const;
    long double midpoint_ld() const;
    std::string to_string(int digits = 20) const;

    friend Interval operator+(const Interval& a, const Interval& b);
    friend Interval operator-(const Interval& a, const Interval& b);
    friend Interval operator*(const Interval& a, const Interval& b);
    friend Interval operator/(const Interval& a, const Interval& b);
    Interval operator-() const;

    Interval sqrt() const;
    Interval log() const;
    Interval exp() const;
    // x^(num/den), den >= 1.
    Interval pow_rational(long num, unsigned long den) const;

private:
    BigFloat lo_, hi_;
};

}  // namespace psb

#endif  // PSBEATTY_INTERVAL_HPP
