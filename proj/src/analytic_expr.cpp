#include "algcurve/analytic_expr.hpp"

#include <cctype>
#include <cmath>
#include <sstream>

namespace algcurve {
namespace expr {

using Kind = AnalyticExpr::Kind;

static ExprPtr node(Kind k, ExprPtr a = nullptr, ExprPtr b = nullptr) {
    auto n = std::make_shared<AnalyticExpr>();
    n->kind = k;
    n->lhs = std::move(a);
    n->rhs = std::move(b);
    return n;
}

ExprPtr constant(GaussianRational v) {
    auto n = std::make_shared<AnalyticExpr>();
    n->kind = Kind::Const;
    n->value = std::move(v);
    return n;
}

ExprPtr constant(long v) { return constant(GaussianRational(v)); }
ExprPtr variable() { return node(Kind::Var); }
ExprPtr add(ExprPtr a, ExprPtr b) { return node(Kind::Add, std::move(a), std::move(b)); }
ExprPtr sub(ExprPtr a, ExprPtr b) { return node(Kind::Sub, std::move(a), std::move(b)); }
ExprPtr mul(ExprPtr a, ExprPtr b) { return node(Kind::Mul, std::move(a), std::move(b)); }
ExprPtr div(ExprPtr a, ExprPtr b) { return node(Kind::Div, std::move(a), std::move(b)); }
ExprPtr neg(ExprPtr a) { return node(Kind::Neg, std::move(a)); }

ExprPtr pow(ExprPtr a, long e) {
    auto n = std::make_shared<AnalyticExpr>();
    n->kind = Kind::Pow;
    n->lhs = std::move(a);
    n->exponent = e;
    return n;
}

ExprPtr exp(ExprPtr a) { return node(Kind::Exp, std::move(a)); }
ExprPtr sin(ExprPtr a) { return node(Kind::Sin, std::move(a)); }
ExprPtr cos(ExprPtr a) { return node(Kind::Cos, std::move(a)); }

Complex eval(const AnalyticExpr& e, Complex z) {
    switch (e.kind) {
        case Kind::Const: return e.value.to_complex();
        case Kind::Var: return z;
        case Kind::Add: return eval(*e.lhs, z) + eval(*e.rhs, z);
        case Kind::Sub: return eval(*e.lhs, z) - eval(*e.rhs, z);
        case Kind::Mul: return eval(*e.lhs, z) * eval(*e.rhs, z);
        case Kind::Div: {
            Complex num = eval(*e.lhs, z), den = eval(*e.rhs, z);
            if (std::abs(den) == 0.0) throw PoleError("AnalyticExpr: division by zero at z");
            return num / den;
        }
        case Kind::Neg: return -eval(*e.lhs, z);
        case Kind::Pow: {
            Complex base = eval(*e.lhs, z);
            long n = e.exponent;
            if (n < 0) {
                if (std::abs(base) == 0.0) throw PoleError("AnalyticExpr: negative power of zero");
                base = 1.0 / base;
                n = -n;
            }
            Complex acc(1.0, 0.0);
            while (n > 0) {  // binary powering keeps integer powers exact-ish
                if (n & 1) acc *= base;
                base *= base;
                n >>= 1;
            }
            return acc;
        }
        case Kind::Exp: return std::exp(eval(*e.lhs, z));
        case Kind::Sin: return std::sin(eval(*e.lhs, z));
        case Kind::Cos: return std::cos(eval(*e.lhs, z));
    }
    throw Error("AnalyticExpr: corrupt node");
}

ExprPtr derivative(const ExprPtr& e) {
    switch (e->kind) {
        case Kind::Const: return constant(0);
        case Kind::Var: return constant(1);
        case Kind::Add: return add(derivative(e->lhs), derivative(e->rhs));
        case Kind::Sub: return sub(derivative(e->lhs), derivative(e->rhs));
        case Kind::Mul:
            return add(mul(derivative(e->lhs), e->rhs), mul(e->lhs, derivative(e->rhs)));
        case Kind::Div:
            // (f/g)' = (f'g - fg')/g^2
            return div(sub(mul(derivative(e->lhs), e->rhs), mul(e->lhs, derivative(e->rhs))),
                       pow(e->rhs, 2));
        case Kind::Neg: return neg(derivative(e->lhs));
        case Kind::Pow: {
            if (e->exponent == 0) return constant(0);
            return mul(mul(constant(e->exponent), pow(e->lhs, e->exponent - 1)),
                       derivative(e->lhs));
        }
        case Kind::Exp: return mul(exp(e->lhs), derivative(e->lhs));
        case Kind::Sin: return mul(cos(e->lhs), derivative(e->lhs));
        case Kind::Cos: return neg(mul(sin(e->lhs), derivative(e->lhs)));
    }
    throw Error("AnalyticExpr: corrupt node");
}

ExprPtr shifted(const ExprPtr& e, const GaussianRational& c) {
    switch (e->kind) {
        case Kind::Const: return e;
        case Kind::Var: return add(variable(), constant(c));
        case Kind::Add: return add(shifted(e->lhs, c), shifted(e->rhs, c));
        case Kind::Sub: return sub(shifted(e->lhs, c), shifted(e->rhs, c));
        case Kind::Mul: return mul(shifted(e->lhs, c), shifted(e->rhs, c));
        case Kind::Div: return div(shifted(e->lhs, c), shifted(e->rhs, c));
        case Kind::Neg: return neg(shifted(e->lhs, c));
        case Kind::Pow: return pow(shifted(e->lhs, c), e->exponent);
        case Kind::Exp: return exp(shifted(e->lhs, c));
        case Kind::Sin: return sin(shifted(e->lhs, c));
        case Kind::Cos: return cos(shifted(e->lhs, c));
    }
    throw Error("AnalyticExpr: corrupt node");
}

bool is_transcendental(const AnalyticExpr& e) {
    switch (e.kind) {
        case Kind::Exp:
        case Kind::Sin:
        case Kind::Cos: return true;
        case Kind::Const:
        case Kind::Var: return false;
        case Kind::Neg:
        case Kind::Pow: return is_transcendental(*e.lhs);
        default: return is_transcendental(*e.lhs) || is_transcendental(*e.rhs);
    }
}

RationalFunction to_rational_function(const AnalyticExpr& e) {
    switch (e.kind) {
        case Kind::Const: return RationalFunction::constant(e.value);
        case Kind::Var: return RationalFunction::variable();
        case Kind::Add: return to_rational_function(*e.lhs) + to_rational_function(*e.rhs);
        case Kind::Sub: return to_rational_function(*e.lhs) - to_rational_function(*e.rhs);
        case Kind::Mul: return to_rational_function(*e.lhs) * to_rational_function(*e.rhs);
        case Kind::Div: return to_rational_function(*e.lhs) / to_rational_function(*e.rhs);
        case Kind::Neg: return -to_rational_function(*e.lhs);
        case Kind::Pow: {
            RationalFunction base = to_rational_function(*e.lhs);
            long n = e.exponent;
            if (n < 0) {
                base = RationalFunction(1) / base;
                n = -n;
            }
            RationalFunction acc(1);
            while (n > 0) {
                if (n & 1) acc *= base;
                base *= base;
                n >>= 1;
            }
            return acc;
        }
        case Kind::Exp:
        case Kind::Sin:
        case Kind::Cos:
            throw BackendUnsupported(
                "exact backend rejects transcendental token in coefficient expression");
    }
    throw Error("AnalyticExpr: corrupt node");
}

std::string to_string(const AnalyticExpr& e) {
    switch (e.kind) {
        case Kind::Const: return e.value.str();
        case Kind::Var: return "z";
        case Kind::Add: return "(" + to_string(*e.lhs) + " + " + to_string(*e.rhs) + ")";
        case Kind::Sub: return "(" + to_string(*e.lhs) + " - " + to_string(*e.rhs) + ")";
        case Kind::Mul: return "(" + to_string(*e.lhs) + "*" + to_string(*e.rhs) + ")";
        case Kind::Div: return "(" + to_string(*e.lhs) + "/" + to_string(*e.rhs) + ")";
        case Kind::Neg: return "(-" + to_string(*e.lhs) + ")";
        case Kind::Pow: return "(" + to_string(*e.lhs) + ")^" + std::to_string(e.exponent);
        case Kind::Exp: return "exp(" + to_string(*e.lhs) + ")";
        case Kind::Sin: return "sin(" + to_string(*e.lhs) + ")";
        case Kind::Cos: return "cos(" + to_string(*e.lhs) + ")";
    }
    return "?";
}

} // namespace expr

// ---------------------------------------------------------------------------
// Recursive-descent parser.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := ('+'|'-') factor | power
//   power  := atom ('^' ('-')? digits)?
//   atom   := number | 'z' | 'i' | ident '(' expr ')' | '(' expr ')'
//   number := digits ('.' digits)? ('i')?      (decimals become exact rationals)
// ---------------------------------------------------------------------------

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    ExprPtr run() {
        ExprPtr e = expression();
        skip_ws();
        if (pos_ != s_.size())
            throw ParseError("unexpected character '" + std::string(1, s_[pos_]) +
                             "' at position " + std::to_string(pos_));
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    bool accept(char c) {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c))
            throw ParseError(std::string("expected '") + c + "' at position " +
                             std::to_string(pos_));
    }

    ExprPtr expression() {
        ExprPtr e = term();
        for (;;) {
            if (accept('+'))
                e = expr::add(e, term());
            else if (accept('-'))
                e = expr::sub(e, term());
            else
                return e;
        }
    }

    ExprPtr term() {
        ExprPtr e = factor();
        for (;;) {
            if (accept('*'))
                e = expr::mul(e, factor());
            else if (accept('/'))
                e = expr::div(e, factor());
            else
                return e;
        }
    }

    ExprPtr factor() {
        if (accept('-')) return expr::neg(factor());
        if (accept('+')) return factor();
        return power();
    }

    ExprPtr power() {
        ExprPtr base = atom();
        if (accept('^')) {
            bool negexp = accept('-');
            long n = integer();
            return expr::pow(base, negexp ? -n : n);
        }
        return base;
    }

    long integer() {
        skip_ws();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start)
            throw ParseError("expected integer exponent at position " + std::to_string(start));
        return std::stol(s_.substr(start, pos_ - start));
    }

    ExprPtr atom() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("unexpected end of expression");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = expression();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < s_.size() &&
                   std::isalnum(static_cast<unsigned char>(s_[pos_])))
                ++pos_;
            std::string name = s_.substr(start, pos_ - start);
            if (name == "z") return expr::variable();
            if (name == "i") return expr::constant(GaussianRational::i());
            if (name == "exp" || name == "sin" || name == "cos") {
                expect('(');
                ExprPtr arg = expression();
                expect(')');
                if (name == "exp") return expr::exp(arg);
                if (name == "sin") return expr::sin(arg);
                return expr::cos(arg);
            }
            throw ParseError("unknown identifier '" + name + "' at position " +
                             std::to_string(start));
        }
        throw ParseError("unexpected character '" + std::string(1, c) + "' at position " +
                         std::to_string(pos_));
    }

    ExprPtr number() {
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        mpz_class int_part(pos_ > start ? s_.substr(start, pos_ - start) : "0");
        mpq_class q(int_part);
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            size_t fstart = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            if (pos_ == fstart)
                throw ParseError("expected digits after '.' at position " + std::to_string(fstart));
            std::string frac = s_.substr(fstart, pos_ - fstart);
            mpz_class den(10);
            mpz_pow_ui(den.get_mpz_t(), den.get_mpz_t(), frac.size());
            q += mpq_class(mpz_class(frac), den);
            q.canonicalize();
        }
        if (pos_ < s_.size() && s_[pos_] == 'i') {
            ++pos_;
            return expr::constant(GaussianRational(mpq_class(0), q));
        }
        return expr::constant(GaussianRational(q));
    }

    const std::string& s_;
    size_t pos_ = 0;
};

} // namespace

ExprPtr parse_expression(const std::string& text) { return Parser(text).run(); }

} // namespace algcurve
