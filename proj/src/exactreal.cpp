#include "psbeatty/exactreal.hpp"

#include <cctype>
#include <optional>
#include <utility>

#include "psbeatty/errors.hpp"

namespace psb {

namespace {

bool is_square_free(long d) {
    if (d < 2) return false;
    for (long p = 2; p * p <= d; ++p) {
        if (d % (p * p) == 0) return false;
    }
    return true;
}

// m = s^2 * d with d square-free, when the factorization can be completed
// by trial division; nullopt otherwise.
std::optional<std::pair<mpz_class, mpz_class>> square_free_split(mpz_class m) {
    constexpr unsigned long kLimit = 100000;
    mpz_class s = 1, d = 1;
    for (unsigned long p = 2; p <= kLimit; p += (p == 2 ? 1 : 2)) {
        mpz_class pp = mpz_class(p) * p;
        if (pp > m) break;
        unsigned e = 0;
        while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
            ++e;
        }
        for (unsigned k = 0; k + 1 < e; k += 2) s *= p;
        if (e % 2 == 1) d *= p;
    }
    if (m == 1) return std::make_pair(s, d);
    mpz_class limit = kLimit;
    if (m <= limit * limit) return std::make_pair(s, d * m);  // m is prime
    if (mpz_perfect_square_p(m.get_mpz_t())) {
        // m = r^2 and r has no factor <= limit; if r < limit^2 it is prime.
        mpz_class r = isqrt(m);
        if (r <= limit * limit) return std::make_pair(s * r, d);
        return std::nullopt;
    }
    // No factor <= limit and m < limit^3: at most two prime factors, and m
    // is not a square, so m is square-free.
    if (m < limit * limit * limit) return std::make_pair(s, d * m);
    return std::nullopt;
}

mpz_class lcm(const mpz_class& a, const mpz_class& b) {
    mpz_class r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// floor((p + q*sqrt(d)) / s) with s > 0, q != 0, d square-free >= 2.
mpz_class floor_quadratic(const mpz_class& p, const mpz_class& q, long d, const mpz_class& s) {
    mpz_class qq = q * q * d;
    mpz_class root = isqrt(qq);
    // q*sqrt(d) is irrational, so it lies strictly between consecutive
    // integers f and f + 1.
    mpz_class f = q > 0 ? root : mpz_class(-root - 1);
    mpz_class num = p + f, out;
    mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), s.get_mpz_t());
    return out;
}

int sign_quadratic(const mpq_class& a, const mpq_class& b, long d) {
    int sa = sgn(a), sb = sgn(b);
    if (sa == 0) return sb;
    if (sb == 0 || sa == sb) return sa;
    mpq_class a2 = a * a, b2d = b * b * d;
    return a2 > b2d ? sa : sb;
}

// Recursive-descent parser for the textual constructors.
class Parser {
public:
    explicit Parser(std::string_view text) : s_(text) {}

    CertifiedReal parse_all() {
        CertifiedReal v = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("cannot parse \"" + std::string(s_) + "\": " + msg);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    CertifiedReal expr() {
        CertifiedReal v = term();
        for (;;) {
            if (accept('+'))
                v = v + term();
            else if (accept('-'))
                v = v - term();
            else
                return v;
        }
    }

    CertifiedReal term() {
        CertifiedReal v = unary();
        for (;;) {
            if (accept('*')) {
                v = v * unary();
            } else if (accept('/')) {
                CertifiedReal den = unary();
                v = v / den;
            } else {
                return v;
            }
        }
    }

    CertifiedReal unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    CertifiedReal power() {
        CertifiedReal base = primary();
        if (accept('^')) {
            CertifiedReal e = unary();
            if (!e.is_rational()) fail("exponent must be rational");
            return CertifiedReal::pow(base, e.as_rational());
        }
        return base;
    }

    CertifiedReal primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            CertifiedReal v = expr();
            expect(')');
            return v;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string name(s_.substr(start, pos_ - start));
            expect('(');
            CertifiedReal arg = expr();
            expect(')');
            if (name == "sqrt") return CertifiedReal::sqrt(arg);
            if (name == "log") return CertifiedReal::log(arg);
            if (name == "exp") return CertifiedReal::exp(arg);
            fail("unknown function " + name);
        }
        fail(std::string("unexpected '") + c + "'");
    }

    CertifiedReal number() {
        std::string digits;
        long frac_digits = 0;
        bool any = false;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            digits += s_[pos_++];
            any = true;
        }
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
                digits += s_[pos_++];
                ++frac_digits;
                any = true;
            }
        }
        if (!any) fail("malformed number");
        long exponent = 0;
        if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
            ++pos_;
            bool neg = false;
            if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) neg = s_[pos_++] == '-';
            std::string ed;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
                ed += s_[pos_++];
            if (ed.empty() || ed.size() > 6) fail("malformed exponent");
            exponent = std::stol(ed) * (neg ? -1 : 1);
        }
        mpz_class num(digits, 10);
        long shift = exponent - frac_digits;
        mpz_class scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
        mpq_class q = shift >= 0 ? mpq_class(num * scale) : mpq_class(num, scale);
        q.canonicalize();
        return CertifiedReal(q);
    }

    std::string_view s_;
    std::size_t pos_ = 0;
};

}  // namespace

mpz_class isqrt(const mpz_class& v) {
    if (v < 0) throw InvalidArgument("isqrt of a negative integer");
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
    return r;
}

CertifiedReal::CertifiedReal(const mpq_class& q) : repr_(q) {
    std::get<mpq_class>(repr_).canonicalize();
}

CertifiedReal CertifiedReal::rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw InvalidArgument("zero denominator");
    mpq_class q(num, den);
    q.canonicalize();
    return CertifiedReal(q);
}

CertifiedReal CertifiedReal::quadratic(const mpq_class& a, const mpq_class& b, long d) {
    if (!is_square_free(d))
        throw InvalidArgument("quadratic radicand must be square-free and >= 2, got " +
                              std::to_string(d));
    if (b == 0) return CertifiedReal(a);
    return CertifiedReal(Repr(Quadratic{a, b, d}));
}

CertifiedReal CertifiedReal::from_expr(ExprPtr e) {
    if (!e) throw InvalidArgument("null expression");
    if (e->op() == ExprNode::Op::constant) return CertifiedReal(e->value());
    return CertifiedReal(Repr(Adaptive{std::move(e)}));
}

CertifiedReal CertifiedReal::sqrt(const CertifiedReal& x) {
    if (x.is_rational()) {
        const mpq_class& q = x.as_rational();
        if (q < 0) throw InvalidArgument("sqrt of a negative rational");
        if (q == 0) return CertifiedReal(0L);
        if (auto split = square_free_split(q.get_num() * q.get_den())) {
            auto& [s, d] = *split;
            mpq_class coeff(s, q.get_den());
            coeff.canonicalize();
            if (d == 1) return CertifiedReal(coeff);
            if (d.fits_slong_p()) return quadratic(0, coeff, d.get_si());
        }
    } else if (certified_sign(x) < 0) {
        throw InvalidArgument("sqrt of a negative value");
    }
    return from_expr(ExprNode::unary(ExprNode::Op::sqrt, x.as_expr()));
}

CertifiedReal CertifiedReal::pow(const CertifiedReal& base, const mpq_class& exponent) {
    if (exponent == 0) return CertifiedReal(1L);
    if (exponent == 1) return base;
    if (base.is_rational()) {
        const mpq_class& q = base.as_rational();
        const mpz_class& en = exponent.get_num();
        const mpz_class& ed = exponent.get_den();
        if (!en.fits_slong_p() || !ed.fits_ulong_p())
            throw InvalidArgument("exponent too large: " + exponent.get_str());
        if (q == 0) {
            if (exponent < 0) throw InvalidArgument("zero to a negative power");
            return CertifiedReal(0L);
        }
        long e = en.get_si();
        unsigned long root = ed.get_ui();
        if (root > 1 && q < 0) throw InvalidArgument("fractional power of a negative rational");
        // Exact when numerator and denominator are perfect root-th powers.
        mpz_class rn, rd;
        mpz_class qn = abs(q.get_num());
        bool exact = mpz_root(rn.get_mpz_t(), qn.get_mpz_t(), root) != 0 &&
                     mpz_root(rd.get_mpz_t(), q.get_den().get_mpz_t(), root) != 0;
        if (exact) {
            if (q < 0) rn = -rn;
            unsigned long ae = static_cast<unsigned long>(e < 0 ? -e : e);
            mpz_class pn, pd;
            mpz_pow_ui(pn.get_mpz_t(), rn.get_mpz_t(), ae);
            mpz_pow_ui(pd.get_mpz_t(), rd.get_mpz_t(), ae);
            return e > 0 ? rational(pn, pd) : rational(pd, pn);
        }
        if (root == 2 && e == 1) return sqrt(base);
    }
    return from_expr(ExprNode::power(base.as_expr(), exponent));
}

CertifiedReal CertifiedReal::log(const CertifiedReal& x) {
    if (x.is_rational() && x.as_rational() == 1) return CertifiedReal(0L);
    if (certified_sign(x) <= 0) throw InvalidArgument("log of a non-positive value");
    return from_expr(ExprNode::unary(ExprNode::Op::log, x.as_expr()));
}

CertifiedReal CertifiedReal::exp(const CertifiedReal& x) {
    if (x.is_rational() && x.as_rational() == 0) return CertifiedReal(1L);
    return from_expr(ExprNode::unary(ExprNode::Op::exp, x.as_expr()));
}

CertifiedReal CertifiedReal::parse(std::string_view text) {
    return Parser(text).parse_all();
}

CertifiedReal::Kind CertifiedReal::kind() const {
    return static_cast<Kind>(repr_.index());
}

const mpq_class& CertifiedReal::as_rational() const {
    if (!is_rational()) throw InvalidArgument("value is not rational: " + to_string());
    return std::get<mpq_class>(repr_);
}

const CertifiedReal::Quadratic& CertifiedReal::as_quadratic() const {
    if (!is_quadratic()) throw InvalidArgument("value is not quadratic: " + to_string());
    return std::get<Quadratic>(repr_);
}

ExprPtr CertifiedReal::as_expr() const {
    switch (kind()) {
        case Kind::rational:
            return ExprNode::constant(std::get<mpq_class>(repr_));
        case Kind::quadratic: {
            const auto& q = std::get<Quadratic>(repr_);
            auto root = ExprNode::unary(ExprNode::Op::sqrt, ExprNode::constant(mpq_class(q.d)));
            auto scaled = ExprNode::binary(ExprNode::Op::mul, ExprNode::constant(q.b), root);
            if (q.a == 0) return scaled;
            return ExprNode::binary(ExprNode::Op::add, ExprNode::constant(q.a), scaled);
        }
        case Kind::adaptive:
            return std::get<Adaptive>(repr_).expr;
    }
    return nullptr;
}

Interval CertifiedReal::evaluate(mpfr_prec_t bits) const {
    switch (kind()) {
        case Kind::rational:
            return Interval::point(std::get<mpq_class>(repr_), bits);
        case Kind::quadratic: {
            const auto& q = std::get<Quadratic>(repr_);
            Interval root = Interval::point(mpq_class(q.d), bits).sqrt();
            return Interval::point(q.a, bits) + Interval::point(q.b, bits) * root;
        }
        case Kind::adaptive:
            return std::get<Adaptive>(repr_).expr->evaluate(bits);
    }
    return Interval::whole(bits);
}

Interval CertifiedReal::enclose(mpfr_prec_t bits) const {
    for (mpfr_prec_t w = bits + 16; w <= 64 * bits + 64; w *= 2) {
        Interval iv = evaluate(w);
        if (!iv.is_finite()) continue;
        BigFloat width = iv.width();
        if (mpfr_cmp_ui_2exp(width.get(), 1, 1 - bits) <= 0) return iv;
    }
    throw PrecisionExhausted("cannot enclose " + to_string() + " to " + std::to_string(bits) +
                             " bits");
}

double CertifiedReal::to_double() const {
    if (is_rational()) return std::get<mpq_class>(repr_).get_d();
    return enclose(64).midpoint();
}

long double CertifiedReal::to_long_double() const {
    return enclose(80).midpoint_ld();
}

std::string CertifiedReal::to_string() const {
    switch (kind()) {
        case Kind::rational:
            return std::get<mpq_class>(repr_).get_str();
        case Kind::quadratic: {
            const auto& q = std::get<Quadratic>(repr_);
            std::string s;
            if (q.a != 0) s = q.a.get_str() + "+";
            return s + "(" + q.b.get_str() + ")*sqrt(" + std::to_string(q.d) + ")";
        }
        case Kind::adaptive:
            return std::get<Adaptive>(repr_).expr->to_string();
    }
    return "?";
}

CertifiedReal CertifiedReal::operator-() const {
    switch (kind()) {
        case Kind::rational:
            return CertifiedReal(mpq_class(-std::get<mpq_class>(repr_)));
        case Kind::quadratic: {
            const auto& q = std::get<Quadratic>(repr_);
            return quadratic(-q.a, -q.b, q.d);
        }
        case Kind::adaptive:
            return from_expr(ExprNode::unary(ExprNode::Op::neg, as_expr()));
    }
    return *this;
}

namespace {

// Both operands as (a, b, d) over a common d, when that is possible.
struct QuadPair {
    mpq_class a1, b1, a2, b2;
    long d;
};

std::optional<QuadPair> common_field(const CertifiedReal& x, const CertifiedReal& y) {
    using K = CertifiedReal::Kind;
    if (x.kind() == K::adaptive || y.kind() == K::adaptive) return std::nullopt;
    if (x.kind() == K::quadratic && y.kind() == K::quadratic &&
        x.as_quadratic().d != y.as_quadratic().d)
        return std::nullopt;
    QuadPair r{0, 0, 0, 0, 0};
    if (x.is_quadratic()) {
        r.a1 = x.as_quadratic().a;
        r.b1 = x.as_quadratic().b;
        r.d = x.as_quadratic().d;
    } else {
        r.a1 = x.as_rational();
    }
    if (y.is_quadratic()) {
        r.a2 = y.as_quadratic().a;
        r.b2 = y.as_quadratic().b;
        r.d = y.as_quadratic().d;
    } else {
        r.a2 = y.as_rational();
    }
    return r;
}

CertifiedReal make(const mpq_class& a, const mpq_class& b, long d) {
    if (b == 0 || d == 0) return CertifiedReal(a);
    return CertifiedReal::quadratic(a, b, d);
}

}  // namespace

CertifiedReal operator+(const CertifiedReal& x, const CertifiedReal& y) {
    if (auto q = common_field(x, y)) return make(q->a1 + q->a2, q->b1 + q->b2, q->d);
    return CertifiedReal::from_expr(ExprNode::binary(ExprNode::Op::add, x.as_expr(), y.as_expr()));
}

CertifiedReal operator-(const CertifiedReal& x, const CertifiedReal& y) {
    if (auto q = common_field(x, y)) return make(q->a1 - q->a2, q->b1 - q->b2, q->d);
    return CertifiedReal::from_expr(ExprNode::binary(ExprNode::Op::sub, x.as_expr(), y.as_expr()));
}

CertifiedReal operator*(const CertifiedReal& x, const CertifiedReal& y) {
    if ((x.is_rational() && x.as_rational() == 0) || (y.is_rational() && y.as_rational() == 0))
        return CertifiedReal(0L);
    if (auto q = common_field(x, y)) {
        return make(q->a1 * q->a2 + q->b1 * q->b2 * q->d, q->a1 * q->b2 + q->a2 * q->b1, q->d);
    }
    return CertifiedReal::from_expr(ExprNode::binary(ExprNode::Op::mul, x.as_expr(), y.as_expr()));
}

CertifiedReal operator/(const CertifiedReal& x, const CertifiedReal& y) {
    if (auto q = common_field(x, y)) {
        // (a1 + b1 r)(a2 - b2 r) / (a2^2 - b2^2 d); the norm is nonzero
        // because d is not a square.
        mpq_class norm = q->a2 * q->a2 - q->b2 * q->b2 * q->d;
        if (norm == 0) throw InvalidArgument("division by zero");
        mpq_class a = (q->a1 * q->a2 - q->b1 * q->b2 * q->d) / norm;
        mpq_class b = (q->b1 * q->a2 - q->a1 * q->b2) / norm;
        return make(a, b, q->d);
    }
    return CertifiedReal::from_expr(ExprNode::binary(ExprNode::Op::div, x.as_expr(), y.as_expr()));
}

mpz_class certified_floor(const CertifiedReal& x, const PrecisionSchedule& sched) {
    switch (x.kind()) {
        case CertifiedReal::Kind::rational: {
            const mpq_class& q = x.as_rational();
            mpz_class out;
            mpz_fdiv_q(out.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
            return out;
        }
        case CertifiedReal::Kind::quadratic: {
            const auto& q = x.as_quadratic();
            mpz_class s = lcm(q.a.get_den(), q.b.get_den());
            mpz_class p = q.a.get_num() * (s / q.a.get_den());
            mpz_class r = q.b.get_num() * (s / q.b.get_den());
            return floor_quadratic(p, r, q.d, s);
        }
        case CertifiedReal::Kind::adaptive:
            break;
    }
    mpz_class lo, hi;
    for (mpfr_prec_t bits = sched.start_bits; bits <= sched.cap_bits; bits *= 2) {
        Interval iv = x.evaluate(bits);
        if (!iv.is_finite()) continue;
        mpfr_get_z(lo.get_mpz_t(), iv.lo().get(), MPFR_RNDD);
        mpfr_get_z(hi.get_mpz_t(), iv.hi().get(), MPFR_RNDD);
        if (lo == hi) return lo;
    }
    throw AmbiguousFloor("floor of " + x.to_string() + " not separated from an integer at " +
                         std::to_string(sched.cap_bits) + " bits");
}

std::int64_t certified_floor_i64(const CertifiedReal& x, const PrecisionSchedule& sched) {
    mpz_class f = certified_floor(x, sched);
    if (!f.fits_slong_p()) throw InvalidArgument("floor out of 64-bit range: " + f.get_str());
    return f.get_si();
}

int certified_sign(const CertifiedReal& x, const PrecisionSchedule& sched) {
    switch (x.kind()) {
        case CertifiedReal::Kind::rational:
            return sgn(x.as_rational());
        case CertifiedReal::Kind::quadratic: {
            const auto& q = x.as_quadratic();
            return sign_quadratic(q.a, q.b, q.d);
        }
        case CertifiedReal::Kind::adaptive:
            break;
    }
    for (mpfr_prec_t bits = sched.start_bits; bits <= sched.cap_bits; bits *= 2) {
        Interval iv = x.evaluate(bits);
        if (iv.strictly_positive()) return 1;
        if (iv.strictly_negative()) return -1;
    }
    throw AmbiguousCompare("sign of " + x.to_string() + " not certified at " +
                           std::to_string(sched.cap_bits) + " bits");
}

std::strong_ordering certified_compare(const CertifiedReal& x, const CertifiedReal& y,
                                       const PrecisionSchedule& sched) {
    if (x.is_adaptive() && y.is_adaptive() && x.as_expr() == y.as_expr())
        return std::strong_ordering::equal;
    int s = certified_sign(x - y, sched);
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

AffineFloor::AffineFloor(const CertifiedReal& offset, const CertifiedReal& slope,
                         PrecisionSchedule sched)
    : offset_(offset), slope_(slope), sched_(sched) {
    if (offset.is_adaptive() || slope.is_adaptive()) return;
    if (offset.is_quadratic() && slope.is_quadratic() &&
        offset.as_quadratic().d != slope.as_quadratic().d)
        return;
    auto parts = [](const CertifiedReal& v) {
        if (v.is_rational()) return std::make_pair(v.as_rational(), mpq_class(0));
        return std::make_pair(v.as_quadratic().a, v.as_quadratic().b);
    };
    auto [a0, b0] = parts(offset);
    auto [a1, b1] = parts(slope);
    d_ = offset.is_quadratic() ? offset.as_quadratic().d
                               : (slope.is_quadratic() ? slope.as_quadratic().d : 0);
    s_ = lcm(lcm(a0.get_den(), b0.get_den()), lcm(a1.get_den(), b1.get_den()));
    p0_ = a0.get_num() * (s_ / a0.get_den());
    p1_ = a1.get_num() * (s_ / a1.get_den());
    q0_ = b0.get_num() * (s_ / b0.get_den());
    q1_ = b1.get_num() * (s_ / b1.get_den());
    exact_ = true;
}

std::int64_t AffineFloor::operator()(std::int64_t m) const {
    if (!exact_) return certified_floor_i64(offset_ + slope_ * CertifiedReal(m), sched_);
    thread_local mpz_class p, q, qq, f, out;
    mpz_mul_si(p.get_mpz_t(), p1_.get_mpz_t(), m);
    mpz_add(p.get_mpz_t(), p.get_mpz_t(), p0_.get_mpz_t());
    mpz_mul_si(q.get_mpz_t(), q1_.get_mpz_t(), m);
    mpz_add(q.get_mpz_t(), q.get_mpz_t(), q0_.get_mpz_t());
    if (d_ != 0 && sgn(q) != 0) {
        // q sqrt(d) lies strictly between f and f + 1.
        mpz_mul(qq.get_mpz_t(), q.get_mpz_t(), q.get_mpz_t());
        mpz_mul_si(qq.get_mpz_t(), qq.get_mpz_t(), d_);
        mpz_sqrt(f.get_mpz_t(), qq.get_mpz_t());
        if (sgn(q) < 0) {
            mpz_neg(f.get_mpz_t(), f.get_mpz_t());
            mpz_sub_ui(f.get_mpz_t(), f.get_mpz_t(), 1);
        }
        mpz_add(p.get_mpz_t(), p.get_mpz_t(), f.get_mpz_t());
    }
    mpz_fdiv_q(out.get_mpz_t(), p.get_mpz_t(), s_.get_mpz_t());
    if (!out.fits_slong_p()) throw InvalidArgument("floor out of 64-bit range");
    return out.get_si();
}

namespace {

void check_exponent(const mpq_class& c) {
    if (c <= 0 || !c.get_num().fits_ulong_p() || !c.get_den().fits_ulong_p())
        throw InvalidArgument("power exponent must be a positive rational of machine size");
}

struct PowerScratch {
    mpz_class a, b;
};

PowerScratch& scratch() {
    thread_local PowerScratch s;
    return s;
}

}  // namespace

mpz_class floor_power(const mpz_class& n, const mpq_class& c) {
    check_exponent(c);
    if (n < 0) throw InvalidArgument("floor_power needs n >= 0");
    mpz_class t, r;
    mpz_pow_ui(t.get_mpz_t(), n.get_mpz_t(), c.get_num().get_ui());
    mpz_root(r.get_mpz_t(), t.get_mpz_t(), c.get_den().get_ui());
    return r;
}

std::uint64_t floor_power(std::uint64_t n, const mpq_class& c) {
    check_exponent(c);
    auto& s = scratch();
    mpz_set_ui(s.a.get_mpz_t(), n);
    mpz_pow_ui(s.a.get_mpz_t(), s.a.get_mpz_t(), c.get_num().get_ui());
    mpz_root(s.b.get_mpz_t(), s.a.get_mpz_t(), c.get_den().get_ui());
    if (!s.b.fits_ulong_p()) throw InvalidArgument("floor_power result exceeds 64 bits");
    return s.b.get_ui();
}

std::uint64_t ceil_power(std::uint64_t n, const mpq_class& c) {
    check_exponent(c);
    auto& s = scratch();
    mpz_set_ui(s.a.get_mpz_t(), n);
    mpz_pow_ui(s.a.get_mpz_t(), s.a.get_mpz_t(), c.get_num().get_ui());
    bool exact = mpz_root(s.b.get_mpz_t(), s.a.get_mpz_t(), c.get_den().get_ui()) != 0;
    if (!s.b.fits_ulong_p()) throw InvalidArgument("ceil_power result exceeds 64 bits");
    return s.b.get_ui() + (exact ? 0 : 1);
}

bool power_at_most(std::uint64_t n, const mpq_class& c, std::uint64_t x) {
    check_exponent(c);
    auto& s = scratch();
    mpz_set_ui(s.a.get_mpz_t(), n);
    mpz_pow_ui(s.a.get_mpz_t(), s.a.get_mpz_t(), c.get_num().get_ui());
    mpz_set_ui(s.b.get_mpz_t(), x);
    mpz_pow_ui(s.b.get_mpz_t(), s.b.get_mpz_t(), c.get_den().get_ui());
    return s.a <= s.b;
}

}  // namespace psb
