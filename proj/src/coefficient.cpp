#include "algcurve/coefficient.hpp"

namespace algcurve {

Coefficient Coefficient::zero(Backend b) {
    if (b == Backend::Exact) return Coefficient(RationalFunction(0));
    return Coefficient(expr::constant(0));
}

Coefficient Coefficient::one(Backend b) {
    if (b == Backend::Exact) return Coefficient(RationalFunction(1));
    return Coefficient(expr::constant(1));
}

const RationalFunction& Coefficient::exact() const {
    if (!is_exact()) throw BackendUnsupported("operation requires the exact backend");
    return std::get<RationalFunction>(data_);
}

const ExprPtr& Coefficient::numeric() const {
    if (is_exact()) throw BackendUnsupported("coefficient is exact, not a numeric tree");
    return std::get<ExprPtr>(data_);
}

bool Coefficient::is_zero() const {
    if (is_exact()) return exact().is_zero();
    const auto& e = *numeric();
    return e.kind == AnalyticExpr::Kind::Const && e.value.is_zero();
}

bool Coefficient::is_one() const {
    if (is_exact()) return exact().is_one();
    const auto& e = *numeric();
    return e.kind == AnalyticExpr::Kind::Const && e.value.is_one();
}

Complex Coefficient::eval(Complex z) const {
    if (is_exact()) return exact().eval(z);
    return expr::eval(*numeric(), z);
}

Coefficient Coefficient::derivative() const {
    if (is_exact()) return Coefficient(exact().derivative());
    return Coefficient(expr::derivative(numeric()));
}

Coefficient Coefficient::shifted(const GaussianRational& c) const {
    if (is_exact()) {
        const RationalFunction& f = exact();
        return Coefficient(RationalFunction(f.numerator().compose_shift(c),
                                            f.denominator().compose_shift(c)));
    }
    return Coefficient(expr::shifted(numeric(), c));
}

std::string Coefficient::str() const {
    if (is_exact()) return exact().str();
    return expr::to_string(*numeric());
}

Coefficient arith(const Coefficient& a, const Coefficient& b, ArithOp op) {
    if (a.backend() != b.backend())
        throw BackendMismatch("arith: operands use different coefficient backends");
    if (a.is_exact()) {
        const RationalFunction &x = a.exact(), &y = b.exact();
        switch (op) {
            case ArithOp::Add: return Coefficient(x + y);
            case ArithOp::Sub: return Coefficient(x - y);
            case ArithOp::Mul: return Coefficient(x * y);
            case ArithOp::Div:
                if (y.is_zero())
                    throw DivisionByZeroFunction("arith: division by the zero function");
                return Coefficient(x / y);
        }
    } else {
        const ExprPtr &x = a.numeric(), &y = b.numeric();
        switch (op) {
            case ArithOp::Add: return Coefficient(expr::add(x, y));
            case ArithOp::Sub: return Coefficient(expr::sub(x, y));
            case ArithOp::Mul: return Coefficient(expr::mul(x, y));
            case ArithOp::Div:
                if (b.is_zero())
                    throw DivisionByZeroFunction("arith: division by the zero function");
                return Coefficient(expr::div(x, y));
        }
    }
    throw Error("arith: bad op");
}

Coefficient coefficient_negate(const Coefficient& a) {
    if (a.is_exact()) return Coefficient(-a.exact());
    return Coefficient(expr::neg(a.numeric()));
}

RationalFunction normalize(const RationalFunction& f) {
    return RationalFunction(f.numerator(), f.denominator());
}

Coefficient parse_coefficient(const std::string& text, Backend backend) {
    ExprPtr tree = parse_expression(text);
    if (backend == Backend::Exact) return Coefficient(expr::to_rational_function(*tree));
    return Coefficient(std::move(tree));
}

} // namespace algcurve
