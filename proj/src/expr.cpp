#include "psbeatty/expr.hpp"

#include <climits>

#include "psbeatty/errors.hpp"

namespace psb {

ExprPtr ExprNode::constant(mpq_class v) {
    return std::make_shared<const ExprNode>(Op::constant, std::move(v), nullptr, nullptr);
}

ExprPtr ExprNode::binary(Op op, ExprPtr lhs, ExprPtr rhs) {
    return std::make_shared<const ExprNode>(op, mpq_class(0), std::move(lhs), std::move(rhs));
}

ExprPtr ExprNode::unary(Op op, ExprPtr arg) {
    return std::make_shared<const ExprNode>(op, mpq_class(0), std::move(arg), nullptr);
}

ExprPtr ExprNode::power(ExprPtr base, mpq_class exponent) {
    if (!exponent.get_num().fits_slong_p() || !exponent.get_den().fits_ulong_p())
        throw InvalidArgument("exponent too large: " + exponent.get_str());
    return std::make_shared<const ExprNode>(Op::pow, std::move(exponent), std::move(base),
                                            nullptr);
}

Interval ExprNode::evaluate(mpfr_prec_t bits) const {
    switch (op_) {
        case Op::constant:
            return Interval::point(value_, bits);
        case Op::add:
            return lhs_->evaluate(bits) + rhs_->evaluate(bits);
        case Op::sub:
            return lhs_->evaluate(bits) - rhs_->evaluate(bits);
        case Op::mul:
            return lhs_->evaluate(bits) * rhs_->evaluate(bits);
        case Op::div:
            return lhs_->evaluate(bits) / rhs_->evaluate(bits);
        case Op::neg:
            return -lhs_->evaluate(bits);
        case Op::sqrt:
            return lhs_->evaluate(bits).sqrt();
        case Op::pow:
            return lhs_->evaluate(bits).pow_rational(value_.get_num().get_si(),
                                                     value_.get_den().get_ui());
        case Op::log:
            return lhs_->evaluate(bits).log();
        case Op::exp:
            return lhs_->evaluate(bits).exp();
    }
    return Interval::whole(bits);
}

std::string ExprNode::to_string() const {
    switch (op_) {
        case Op::constant:
            return value_.get_den() == 1 ? value_.get_str() : "(" + value_.get_str() + ")";
        case Op::add:
            return "(" + lhs_->to_string() + "+" + rhs_->to_string() + ")";
        case Op::sub:
            return "(" + lhs_->to_string() + "-" + rhs_->to_string() + ")";
        case Op::mul:
            return lhs_->to_string() + "*" + rhs_->to_string();
        case Op::div:
            return lhs_->to_string() + "/" + rhs_->to_string();
        case Op::neg:
            return "-" + lhs_->to_string();
        case Op::sqrt:
            return "sqrt(" + lhs_->to_string() + ")";
        case Op::pow:
            return lhs_->to_string() + "^(" + value_.get_str() + ")";
        case Op::log:
            return "log(" + lhs_->to_string() + ")";
        case Op::exp:
            return "exp(" + lhs_->to_string() + ")";
    }
    return "?";
}

}  // namespace psb
