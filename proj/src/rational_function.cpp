#include "algcurve/rational_function.hpp"

#include <cmath>
#include <sstream>

namespace algcurve {

Complex eval_complex(const ZPoly& p, Complex z) {
    Complex acc(0.0, 0.0);
    const auto& c = p.coeffs();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + it->to_complex();
    return acc;
}

std::string zpoly_str(const ZPoly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = p.degree(); i >= 0; --i) {
        const GaussianRational& c = p[i];
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        bool needs_parens = !(c.imag() == 0) && !(c.real() == 0);
        if (i == 0) {
            os << c.str();
        } else {
            if (!c.is_one()) {
                if (needs_parens)
                    os << "(" << c.str() << ")*";
                else
                    os << c.str() << "*";
            }
            os << "z";
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

RationalFunction::RationalFunction(ZPoly num, ZPoly den) {
    if (den.is_zero())
        throw DivisionByZeroFunction("RationalFunction: denominator identically zero");
    if (num.is_zero()) {
        num_ = ZPoly();
        den_ = ZPoly(1);
        return;
    }
    ZPoly g = gcd(num, den);
    if (g.degree() > 0) {
        num = exact_div(num, g);
        den = exact_div(den, g);
    }
    GaussianRational lead = den.leading();
    num_ = num.scaled(GaussianRational(1) / lead);
    den_ = den.scaled(GaussianRational(1) / lead);
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
    return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const {
    return RationalFunction(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
    return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
    if (o.is_zero())
        throw DivisionByZeroFunction("RationalFunction: division by zero function");
    return RationalFunction(num_ * o.den_, den_ * o.num_);
}

RationalFunction RationalFunction::derivative() const {
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

Complex RationalFunction::eval(Complex z) const {
    Complex d = eval_complex(den_, z);
    Complex n = eval_complex(num_, z);
    if (std::abs(d) == 0.0) {
        if (std::abs(n) == 0.0)
            throw IndeterminateError("RationalFunction: 0/0 after normalization at z");
        throw PoleError("RationalFunction: pole at z");
    }
    return n / d;
}

GaussianRational RationalFunction::eval_exact(const GaussianRational& z) const {
    GaussianRational d = den_.eval(z);
    if (d.is_zero()) {
        GaussianRational n = num_.eval(z);
        if (n.is_zero())
            throw IndeterminateError("RationalFunction: 0/0 after normalization at z");
        throw PoleError("RationalFunction: pole at z");
    }
    return num_.eval(z) / d;
}

std::string RationalFunction::str() const {
    if (is_polynomial()) return zpoly_str(num_);
    std::ostringstream os;
    os << "(" << zpoly_str(num_) << ")/(" << zpoly_str(den_) << ")";
    return os.str();
}

} // namespace algcurve
