#include "psbeatty/interval.hpp"

#include <algorithm>
#include <vector>

#include "psbeatty/errors.hpp"

namespace psb {

Interval::Interval(mpfr_prec_t prec) : lo_(prec), hi_(prec) {}

Interval Interval::point(const mpq_class& q, mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_q(r.lo_.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(r.hi_.get(), q.get_mpq_t(), MPFR_RNDU);
    return r;
}

Interval Interval::whole(mpfr_prec_t prec) {
    Interval r(prec);
    mpfr_set_inf(r.lo_.get(), -1);
    mpfr_set_inf(r.hi_.get(), 1);
    return r;
}

bool Interval::is_finite() const {
    return mpfr_number_p(lo_.get()) && mpfr_number_p(hi_.get());
}

bool Interval::contains_zero() const {
    return !(strictly_positive() || strictly_negative());
}

bool Interval::strictly_positive() const {
    return !mpfr_nan_p(lo_.get()) && mpfr_sgn(lo_.get()) > 0;
}

bool Interval::strictly_negative() const {
    return !mpfr_nan_p(hi_.get()) && mpfr_sgn(hi_.get()) < 0;
}

BigFloat Interval::width() const {
    BigFloat w(precision());
    mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
    return w;
}

double Interval::midpoint() const {
    return static_cast<double>(midpoint_ld());
}

long double Interval::midpoint_ld() const {
    BigFloat m(precision() + 1);
    mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m.to_long_double();
}

std::string Interval::to_string(int digits) const {
    auto fmt = [digits](const BigFloat& v, mpfr_rnd_t rnd) {
        std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
        mpfr_snprintf(buf.data(), buf.size(), rnd == MPFR_RNDD ? "%.*RDg" : "%.*RUg",
                      digits, v.get());
        return std::string(buf.data());
    };
    return "[" + fmt(lo_, MPFR_RNDD) + ", " + fmt(hi_, MPFR_RNDU) + "]";
}

namespace {

mpfr_prec_t joint_prec(const Interval& a, const Interval& b) {
    return std::max(a.precision(), b.precision());
}

bool has_nan(const Interval& x) {
    return mpfr_nan_p(x.lo().get()) || mpfr_nan_p(x.hi().get());
}

}  // namespace

Interval operator+(const Interval& a, const Interval& b) {
    Interval r(joint_prec(a, b));
    mpfr_add(r.lo_.get(), a.lo_.get(), b.lo_.get(), MPFR_RNDD);
    mpfr_add(r.hi_.get(), a.hi_.get(), b.hi_.get(), MPFR_RNDU);
    if (has_nan(r)) return Interval::whole(r.precision());
    return r;
}

Interval operator-(const Interval& a, const Interval& b) {
    Interval r(joint_prec(a, b));
    mpfr_sub(r.lo_.get(), a.lo_.get(), b.hi_.get(), MPFR_RNDD);
    mpfr_sub(r.hi_.get(), a.hi_.get(), b.lo_.get(), MPFR_RNDU);
    if (has_nan(r)) return Interval::whole(r.precision());
    return r;
}

Interval Interval::operator-() const {
    Interval r(precision());
    mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
    mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
    return r;
}

Interval operator*(const Interval& a, const Interval& b) {
    const mpfr_prec_t prec = joint_prec(a, b);
    Interval r(prec);
    BigFloat t(prec);
    const BigFloat* xs[2] = {&a.lo_, &a.hi_};
    const BigFloat* ys[2] = {&b.lo_, &b.hi_};
    mpfr_set_inf(r.lo_.get(), 1);
    mpfr_set_inf(r.hi_.get(), -1);
    for (auto* x : xs) {
        for (auto* y : ys) {
            mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDD);
            if (mpfr_nan_p(t.get())) return Interval::whole(prec);
            if (mpfr_less_p(t.get(), r.lo_.get())) mpfr_set(r.lo_.get(), t.get(), MPFR_RNDD);
            mpfr_mul(t.get(), x->get(), y->get(), MPFR_RNDU);
            if (mpfr_greater_p(t.get(), r.hi_.get())) mpfr_set(r.hi_.get(), t.get(), MPFR_RNDU);
        }
    }
    return r;
}

Interval operator/(const Interval& a, const Interval& b) {
    const mpfr_prec_t prec = joint_prec(a, b);
    if (b.contains_zero()) return Interval::whole(prec);
    Interval inv(prec);
    BigFloat one(prec);
    mpfr_set_ui(one.get(), 1, MPFR_RNDN);
    mpfr_div(inv.lo_.get(), one.get(), b.hi_.get(), MPFR_RNDD);
    mpfr_div(inv.hi_.get(), one.get(), b.lo_.get(), MPFR_RNDU);
    return a * inv;
}

Interval Interval::sqrt() const {
    if (strictly_negative()) throw InvalidArgument("sqrt of a negative value");
    Interval r(precision());
    if (mpfr_sgn(lo_.get()) < 0)
        mpfr_set_zero(r.lo_.get(), 1);
    else
        mpfr_sqrt(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_sqrt(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
}

Interval Interval::log() const {
    if (!strictly_positive()) {
        if (mpfr_sgn(hi_.get()) <= 0) throw InvalidArgument("log of a non-positive value");
        return whole(precision());
    }
    Interval r(precision());
    mpfr_log(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_log(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
}

Interval Interval::exp() const {
    Interval r(precision());
    mpfr_exp(r.lo_.get(), lo_.get(), MPFR_RNDD);
    mpfr_exp(r.hi_.get(), hi_.get(), MPFR_RNDU);
    return r;
}

Interval Interval::pow_rational(long num, unsigned long den) const {
    if (den == 0) throw InvalidArgument("zero exponent denominator");
    const mpfr_prec_t prec = precision();
    if (num == 0) return point(mpq_class(1), prec);
    if (strictly_negative() || (num < 0 && !strictly_positive())) {
        if (num < 0 && mpfr_sgn(hi_.get()) > 0) return whole(prec);
        throw InvalidArgument("rational power of a non-positive value");
    }
    const unsigned long e = static_cast<unsigned long>(num < 0 ? -num : num);
    Interval r(prec);
    // Monotone increasing on [0, inf) for positive exponents.
    if (mpfr_sgn(lo_.get()) < 0) {
        mpfr_set_zero(r.lo_.get(), 1);
    } else {
        mpfr_pow_ui(r.lo_.get(), lo_.get(), e, MPFR_RNDD);
        mpfr_rootn_ui(r.lo_.get(), r.lo_.get(), den, MPFR_RNDD);
    }
    mpfr_pow_ui(r.hi_.get(), hi_.get(), e, MPFR_RNDU);
    mpfr_rootn_ui(r.hi_.get(), r.hi_.get(), den, MPFR_RNDU);
    if (num > 0) return r;
    Interval one = point(mpq_class(1), prec);
    return one / r;
}

}  // namespace psb
