#ifndef PSBEATTY_EXPR_HPP
#define PSBEATTY_EXPR_HPP

#include <gmpxx.h>

#include <memory>
#include <string>

#include "psbeatty/interval.hpp"

namespace psb {

class ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

// Immutable expression tree over + - * / sqrt, rational powers, log, exp with
// rational leaves. Evaluation is interval arithmetic at a fixed precision.
class ExprNode {
public:
    enum class Op { constant, add, sub, mul, div, neg, sqrt, pow, log, exp };

    static ExprPtr constant(mpq_class v);
    static ExprPtr binary(Op op, ExprPtr lhs, ExprPtr rhs);
    static ExprPtr unary(Op op, ExprPtr arg);
    static ExprPtr power(ExprPtr base, mpq_class exponent);

    Op op() const { return op_; }
    const mpq_class& value() const { return value_; }
    const ExprPtr& lhs() const { return lhs_; }
    const ExprPtr& rhs() const { return rhs_; }

    Interval evaluate(mpfr_prec_t bits) const;
    std::string to_string() const;

    ExprNode(Op op, mpq_class value, ExprPtr lhs, ExprPtr rhs)
        : op_(op), value_(std::move(value)), lhs_(std::move(lhs)), rhs_(std::move(rhs)) {}

private:
    Op op_;
    mpq_class value_;  // constant value, or exponent for pow
    ExprPtr lhs_;
    ExprPtr rhs_;
};

}  // namespace psb

#endif  // PSBEATTY_EXPR_HPP
