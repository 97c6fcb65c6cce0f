#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "algcurve/coefficient.hpp"

using namespace algcurve;

namespace {

ZPoly zp(std::initializer_list<long> coeffs) {
    std::vector<GaussianRational> c;
    for (long v : coeffs) c.push_back(GaussianRational(v));
    return ZPoly(std::move(c));
}

// Independent oracle: schoolbook long division, no gcd machinery.
std::pair<ZPoly, ZPoly> long_division(const ZPoly& a, const ZPoly& b) {
    std::vector<GaussianRational> rem(a.coeffs());
    std::vector<GaussianRational> quot(std::max(0, a.degree() - b.degree() + 1),
                                       GaussianRational(0));
    for (int i = a.degree(); i >= b.degree(); --i) {
        GaussianRational q = rem[i] / b.leading();
        quot[i - b.degree()] = q;
        for (int j = 0; j <= b.degree(); ++j) rem[i - b.degree() + j] -= q * b[j];
    }
    return {ZPoly(std::move(quot)), ZPoly(std::move(rem))};
}

std::mt19937_64 rng(20240817);

GaussianRational random_scalar() {
    std::uniform_int_distribution<long> d(-6, 6);
    std::uniform_int_distribution<long> den(1, 4);
    return GaussianRational(mpq_class(d(rng), den(rng)), mpq_class(d(rng), den(rng)));
}

ZPoly random_zpoly(int max_deg) {
    std::uniform_int_distribution<int> dd(0, max_deg);
    int deg = dd(rng);
    std::vector<GaussianRational> c(deg + 1);
    for (auto& x : c) x = random_scalar();
    if (c.back().is_zero()) c.back() = GaussianRational(1);
    return ZPoly(std::move(c));
}

RationalFunction random_rf() {
    ZPoly num = random_zpoly(3);
    ZPoly den = random_zpoly(2);
    if (den.is_zero()) den = ZPoly(1);
    return RationalFunction(num, den);
}

} // namespace

TEST_CASE("eval cancels removable singularities exactly") {
    // (z^2-1)/(z-1) normalizes to z+1; the long-division oracle confirms the
    // quotient and zero remainder first.
    ZPoly num = zp({-1, 0, 1});
    ZPoly den = zp({-1, 1});
    auto [q, r] = long_division(num, den);
    CHECK(r.is_zero());
    CHECK(q == zp({1, 1}));

    RationalFunction f(num, den);
    CHECK(f.is_polynomial());
    Complex v = f.eval(Complex(1.0, 0.0));
    CHECK(v.real() == doctest::Approx(2.0));
    CHECK(v.imag() == doctest::Approx(0.0));
}

TEST_CASE("eval signals poles") {
    RationalFunction f(zp({1}), zp({0, 1}));  // 1/z
    CHECK_THROWS_AS(f.eval(Complex(0.0, 0.0)), PoleError);
    CHECK(f.eval(Complex(2.0, 0.0)).real() == doctest::Approx(0.5));
}

TEST_CASE("constant coefficients evaluate everywhere") {
    Coefficient c(RationalFunction::constant(GaussianRational(mpq_class(3), mpq_class(4))));
    for (double x : {-2.0, 0.0, 17.5}) {
        Complex v = c.eval(Complex(x, x));
        CHECK(v.real() == doctest::Approx(3.0));
        CHECK(v.imag() == doctest::Approx(4.0));
    }
}

TEST_CASE("arith: common denominators, identity, zero") {
    Coefficient inv_z(RationalFunction(zp({1}), zp({0, 1})));
    Coefficient z(RationalFunction::variable());
    Coefficient sum = arith(inv_z, z, ArithOp::Add);
    // (1/z) + z = (z^2+1)/z
    CHECK(sum.exact().numerator() == zp({1, 0, 1}));
    CHECK(sum.exact().denominator() == zp({0, 1}));

    Coefficient f(random_rf());
    Coefficient one = Coefficient::one(Backend::Exact);
    CHECK(arith(f, one, ArithOp::Mul).exact() == f.exact());
    CHECK(arith(f, f, ArithOp::Sub).exact().is_zero());
    CHECK_THROWS_AS(arith(f, Coefficient::zero(Backend::Exact), ArithOp::Div),
                    DivisionByZeroFunction);
}

TEST_CASE("normalize: gcd-reduced, monic denominator, idempotent") {
    RationalFunction f(zp({-2, 0, 2}), zp({-2, 2}));  // (2z^2-2)/(2z-2)
    CHECK(f.numerator() == zp({1, 1}));
    CHECK(f.denominator() == zp({1}));
    CHECK(normalize(f) == f);

    RationalFunction z = RationalFunction::variable();
    CHECK(normalize(z) == z);

    RationalFunction zero(ZPoly(), zp({0, 0, 0, 1}));
    CHECK(zero.is_zero());
    CHECK(zero.denominator() == zp({1}));
}

TEST_CASE("eval commutes with arith on 500 random coefficient pairs") {
    std::uniform_real_distribution<double> pt(-3.0, 3.0);
    int done = 0;
    while (done < 500) {
        RationalFunction a = random_rf(), b = random_rf();
        Complex z(pt(rng), pt(rng));
        for (ArithOp op : {ArithOp::Add, ArithOp::Sub, ArithOp::Mul, ArithOp::Div}) {
            if (op == ArithOp::Div && b.is_zero()) continue;
            Coefficient ca(a), cb(b);
            Complex lhs, va, vb;
            try {
                lhs = arith(ca, cb, op).eval(z);
                va = a.eval(z);
                vb = b.eval(z);
            } catch (const Error&) {
                continue;  // z fell on a pole; skip the sample
            }
            Complex rhs;
            switch (op) {
                case ArithOp::Add: rhs = va + vb; break;
                case ArithOp::Sub: rhs = va - vb; break;
                case ArithOp::Mul: rhs = va * vb; break;
                case ArithOp::Div:
                    if (std::abs(vb) < 1e-9) continue;
                    rhs = va / vb;
                    break;
            }
            double scale = std::max(1.0, std::abs(rhs));
            CHECK(std::abs(lhs - rhs) / scale < 1e-12);
            ++done;
        }
    }
}

TEST_CASE("gcd(num, den) = 1 after every arith") {
    for (int i = 0; i < 100; ++i) {
        RationalFunction a = random_rf(), b = random_rf();
        for (ArithOp op : {ArithOp::Add, ArithOp::Mul}) {
            RationalFunction c = arith(Coefficient(a), Coefficient(b), op).exact();
            if (c.is_zero()) continue;
            CHECK(gcd(c.numerator(), c.denominator()).degree() == 0);
            CHECK(c.denominator().leading() == GaussianRational(1));
        }
    }
}

TEST_CASE("field axioms hold exactly on randomized triples") {
    for (int i = 0; i < 60; ++i) {
        RationalFunction a = random_rf(), b = random_rf(), c = random_rf();
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + (-a) == RationalFunction(0));
        if (!a.is_zero()) {
            CHECK(a * (RationalFunction(1) / a) == RationalFunction(1));
        }
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
    }
}

TEST_CASE("coefficient parser: exact and numeric backends") {
    Coefficient c = parse_coefficient("(z^2-1)/(z-1)", Backend::Exact);
    CHECK(c.exact().numerator() == zp({1, 1}));  // reduced to z+1

    Coefficient lit = parse_coefficient("3/2 + 1i*z", Backend::Exact);
    Complex v = lit.eval(Complex(2.0, 0.0));
    CHECK(v.real() == doctest::Approx(1.5));
    CHECK(v.imag() == doctest::Approx(2.0));

    CHECK_THROWS_AS(parse_coefficient("exp(z)", Backend::Exact), BackendUnsupported);

    Coefficient ez = parse_coefficient("exp(z)", Backend::Numeric);
    CHECK(std::abs(ez.eval(Complex(1.0, 0.0)) - std::exp(Complex(1.0, 0.0))) < 1e-14);
    Coefficient trig = parse_coefficient("sin(z)*cos(z)", Backend::Numeric);
    Complex z0(0.3, -0.2);
    CHECK(std::abs(trig.eval(z0) - std::sin(z0) * std::cos(z0)) < 1e-14);
}

TEST_CASE("numeric derivative trees differentiate correctly") {
    Coefficient ez = parse_coefficient("exp(2*z)", Backend::Numeric);
    Coefficient dez = ez.derivative();
    Complex z0(0.4, 0.1);
    CHECK(std::abs(dez.eval(z0) - 2.0 * std::exp(2.0 * z0)) < 1e-12);

    Coefficient r = parse_coefficient("(z^2-1)/(z-2)", Backend::Exact);
    Coefficient dr = r.derivative();
    // finite-difference cross-check
    double h = 1e-6;
    Complex num = (r.eval(z0 + h) - r.eval(z0 - h)) / (2.0 * h);
    CHECK(std::abs(dr.eval(z0) - num) < 1e-7);
}

TEST_CASE("base-shift substitutes z -> z + c on both backends") {
    GaussianRational half(mpq_class(1, 2));
    Coefficient r = parse_coefficient("z^2", Backend::Exact).shifted(half);
    CHECK(std::abs(r.eval(Complex(1.0, 0.0)) - Complex(2.25, 0.0)) < 1e-15);
    Coefficient n = parse_coefficient("exp(z)", Backend::Numeric).shifted(half);
    CHECK(std::abs(n.eval(Complex(0.0, 0.0)) - std::exp(0.5)) < 1e-15);
}
