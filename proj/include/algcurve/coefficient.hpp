#ifndef ALGCURVE_COEFFICIENT_HPP
#define ALGCURVE_COEFFICIENT_HPP

#include <string>
#include <variant>

#include "algcurve/analytic_expr.hpp"
#include "algcurve/rational_function.hpp"

namespace algcurve {

enum class Backend { Exact, Numeric };

enum class ArithOp { Add, Sub, Mul, Div };

// Tagged union over the two coefficient backends. Exact coefficients are
// rational functions in canonical form; Numeric ones are black-box analytic
// evaluators. A single curve uses one backend uniformly; mixed-backend
// arithmetic throws BackendMismatch.
class Coefficient {
public:
    Coefficient() : data_(RationalFunction()) {}
    explicit Coefficient(RationalFunction rf) : data_(std::move(rf)) {}
    explicit Coefficient(ExprPtr e) : data_(std::move(e)) {}

    static Coefficient zero(Backend b);
    static Coefficient one(Backend b);

    Backend backend() const {
        return std::holds_alternative<RationalFunction>(data_) ? Backend::Exact
                                                               : Backend::Numeric;
    }
    bool is_exact() const { return backend() == Backend::Exact; }

    const RationalFunction& exact() const;
    const ExprPtr& numeric() const;

    bool is_zero() const;
    bool is_one() const;

    // Value at z. Exact backend evaluates the reduced fraction and throws
    // PoleError when the denominator vanishes; Numeric evaluates the tree.
    Complex eval(Complex z) const;

    Coefficient derivative() const;

    // z -> z + c (base-shift option).
    Coefficient shifted(const GaussianRational& c) const;

    std::string str() const;

private:
    std::variant<RationalFunction, ExprPtr> data_;
};

Coefficient arith(const Coefficient& a, const Coefficient& b, ArithOp op);
Coefficient coefficient_negate(const Coefficient& a);

// Re-canonicalizes a rational function: gcd-reduced, monic denominator.
// Idempotent. Exposed mostly for tests; the constructor already normalizes.
RationalFunction normalize(const RationalFunction& f);

// Parses a coefficient string for the given backend; the exact backend
// lowers the tree to Q(i)(z) and rejects transcendental tokens.
Coefficient parse_coefficient(const std::string& text, Backend backend);

} // namespace algcurve

#endif
