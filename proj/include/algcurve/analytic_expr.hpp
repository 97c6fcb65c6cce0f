#ifndef ALGCURVE_ANALYTIC_EXPR_HPP
#define ALGCURVE_ANALYTIC_EXPR_HPP

#include <memory>
#include <string>

#include "algcurve/gaussian_rational.hpp"
#include "algcurve/rational_function.hpp"

namespace algcurve {

// Expression tree over {z, exact complex-rational constants, +, -, *, /,
// integer powers, exp, sin, cos}. Nodes are immutable and shared; all
// operations build new trees. Constants stay exact so that lowering an
// algebraic tree to a RationalFunction loses nothing.
struct AnalyticExpr;
using ExprPtr = std::shared_ptr<const AnalyticExpr>;

struct AnalyticExpr {
    enum class Kind { Const, Var, Add, Sub, Mul, Div, Neg, Pow, Exp, Sin, Cos };

    Kind kind;
    GaussianRational value;  // Const
    long exponent = 0;       // Pow
    ExprPtr lhs, rhs;
};

namespace expr {

ExprPtr constant(GaussianRational v);
ExprPtr constant(long v);
ExprPtr variable();
ExprPtr add(ExprPtr a, ExprPtr b);
ExprPtr sub(ExprPtr a, ExprPtr b);
ExprPtr mul(ExprPtr a, ExprPtr b);
ExprPtr div(ExprPtr a, ExprPtr b);
ExprPtr neg(ExprPtr a);
ExprPtr pow(ExprPtr a, long n);
ExprPtr exp(ExprPtr a);
ExprPtr sin(ExprPtr a);
ExprPtr cos(ExprPtr a);

Complex eval(const AnalyticExpr& e, Complex z);
ExprPtr derivative(const ExprPtr& e);

// z -> z + c, used by the base-shift option.
ExprPtr shifted(const ExprPtr& e, const GaussianRational& c);

bool is_transcendental(const AnalyticExpr& e);

// Exact lowering to Q(i)(z); throws BackendUnsupported on exp/sin/cos.
RationalFunction to_rational_function(const AnalyticExpr& e);

std::string to_string(const AnalyticExpr& e);

} // namespace expr

// Parses the coefficient grammar: "z", "(z^2-1)/(z-1)", "exp(z)",
// "3/2 + 1i*z", "2.5*z^3 - i". Throws ParseError with position info.
ExprPtr parse_expression(const std::string& text);

} // namespace algcurve

#endif
