#ifndef ALGCURVE_RATIONAL_FUNCTION_HPP
#define ALGCURVE_RATIONAL_FUNCTION_HPP

#include <string>

#include "algcurve/gaussian_rational.hpp"
#include "algcurve/poly.hpp"

namespace algcurve {

using ZPoly = Poly<GaussianRational>;

Complex eval_complex(const ZPoly& p, Complex z);
std::string zpoly_str(const ZPoly& p);

// Element of Q(i)(z) in canonical form: numerator and denominator coprime,
// denominator monic and nonzero, zero represented as 0/1. Canonical form
// makes operator== a coefficient comparison.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(ZPoly(1)) {}
    RationalFunction(long v) : num_(ZPoly(v)), den_(ZPoly(1)) {}
    RationalFunction(ZPoly num, ZPoly den);
    static RationalFunction from_poly(ZPoly p) { return RationalFunction(std::move(p), ZPoly(1)); }
    static RationalFunction variable() { return from_poly(ZPoly::variable()); }
    static RationalFunction constant(const GaussianRational& k) {
        return from_poly(ZPoly::constant(k));
    }

    const ZPoly& numerator() const { return num_; }
    const ZPoly& denominator() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }
    bool is_constant() const { return num_.is_constant() && den_.is_one(); }

    RationalFunction operator-() const;
    RationalFunction operator+(const RationalFunction& o) const;
    RationalFunction operator-(const RationalFunction& o) const;
    RationalFunction operator*(const RationalFunction& o) const;
    RationalFunction operator/(const RationalFunction& o) const;
    RationalFunction& operator+=(const RationalFunction& o) { return *this = *this + o; }
    RationalFunction& operator-=(const RationalFunction& o) { return *this = *this - o; }
    RationalFunction& operator*=(const RationalFunction& o) { return *this = *this * o; }
    RationalFunction& operator/=(const RationalFunction& o) { return *this = *this / o; }

    bool operator==(const RationalFunction& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const RationalFunction& o) const { return !(*this == o); }

    RationalFunction derivative() const;

    // Numeric evaluation; throws PoleError when the (reduced) denominator
    // vanishes at z. Cancellation already happened at construction, so a
    // vanishing denominator here really is a pole.
    Complex eval(Complex z) const;

    // Exact evaluation at a Gaussian-rational point.
    GaussianRational eval_exact(const GaussianRational& z) const;

    std::string str() const;

private:
    ZPoly num_, den_;
};

} // namespace algcurve

#endif
