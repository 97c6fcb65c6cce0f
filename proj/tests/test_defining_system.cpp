#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "algcurve/defining_system.hpp"
#include "algcurve/fiber.hpp"

using namespace algcurve;

namespace {

Coefficient cf(const std::string& s) { return parse_coefficient(s, Backend::Exact); }

DefiningPolynomial dp(std::initializer_list<std::string> coeffs) {
    std::vector<Coefficient> c;
    for (const auto& s : coeffs) c.push_back(cf(s));
    return DefiningPolynomial(std::move(c));
}

bool same_rf(const Coefficient& a, const std::string& expected) {
    return a.exact() == cf(expected).exact();
}

std::mt19937_64 rng(987654321);

DefiningPolynomial random_monic(int deg) {
    std::uniform_int_distribution<long> coeff(-3, 3);
    std::vector<Coefficient> c;
    for (int j = 0; j < deg; ++j) {
        // degree <= 1 polynomials in z with small integer coefficients
        std::vector<GaussianRational> zc = {GaussianRational(coeff(rng)),
                                            GaussianRational(coeff(rng))};
        c.push_back(Coefficient(RationalFunction::from_poly(ZPoly(std::move(zc)))));
    }
    c.push_back(Coefficient(RationalFunction(1)));
    return DefiningPolynomial(std::move(c));
}

// Hausdorff distance between two finite point sets.
double hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    auto one_sided = [](const std::vector<Complex>& x, const std::vector<Complex>& y) {
        double worst = 0.0;
        for (Complex p : x) {
            double best = std::numeric_limits<double>::infinity();
            for (Complex q : y) best = std::min(best, std::abs(p - q));
            worst = std::max(worst, best);
        }
        return worst;
    };
    if (a.empty() && b.empty()) return 0.0;
    if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
    return std::max(one_sided(a, b), one_sided(b, a));
}

std::vector<Complex> dedupe(std::vector<Complex> pts, double tol) {
    std::vector<Complex> out;
    for (Complex p : pts) {
        bool dup = false;
        for (Complex q : out)
            if (std::abs(p - q) < tol) dup = true;
        if (!dup) out.push_back(p);
    }
    return out;
}

} // namespace

TEST_CASE("resultant: elimination examples") {
    // degree-1 elimination is substitution
    Coefficient r1 = resultant(dp({"-z", "0", "1"}), dp({"-1", "1"}));
    CHECK(same_rf(r1, "1-z"));
    // product over root pairs (+-1 vs +-2)
    Coefficient r2 = resultant(dp({"-1", "0", "1"}), dp({"-4", "0", "1"}));
    CHECK(same_rf(r2, "9"));
    // shared roots
    DefiningPolynomial p = dp({"-z", "0", "1"});
    CHECK(resultant(p, p).exact().is_zero());
}

TEST_CASE("discriminant: quadratic, double root, depressed cubic") {
    CHECK(same_rf(discriminant(dp({"-z", "0", "1"})), "4*z"));
    CHECK(discriminant(dp({"1", "-2", "1"})).exact().is_zero());
    CHECK(same_rf(discriminant(dp({"-z", "0", "0", "1"})), "-27*z^2"));
    CHECK_THROWS_AS(discriminant(dp({"-z", "1"})), DegreeTooLow);
}

TEST_CASE("square_free_part strips repeated factors in W") {
    // W^2 (W^2 - 4z) -> W (W^2 - 4z)
    DefiningPolynomial p = dp({"0", "0", "-4*z", "0", "1"});
    DefiningPolynomial sf = square_free_part(p);
    CHECK(sf.degree() == 3);
    CHECK(same_rf(sf.coeff(0), "0"));
    CHECK(same_rf(sf.coeff(1), "-4*z"));
    CHECK(same_rf(sf.coeff(2), "0"));
    CHECK(same_rf(sf.coeff(3), "1"));

    DefiningPolynomial q = dp({"-z", "0", "1"});
    DefiningPolynomial sfq = square_free_part(q);
    CHECK(sfq.degree() == 2);
    CHECK(same_rf(sfq.coeff(0), "-z"));

    // (W - z)^3 -> W - z
    DefiningPolynomial cube = dp({"-z^3", "3*z^2", "-3*z", "1"});
    DefiningPolynomial sfc = square_free_part(cube);
    CHECK(sfc.degree() == 1);
    CHECK(same_rf(sfc.coeff(0), "-z"));
    CHECK(same_rf(sfc.coeff(1), "1"));
}

TEST_CASE("alg_op: sum and product against closed forms") {
    DefiningPolynomial p = dp({"-z", "0", "1"});
    DefiningPolynomial sum = alg_op(p, p, AlgOp::Sum);
    // roots {0, +-2 sqrt z}: W^3 - 4 z W
    CHECK(sum.degree() == 3);
    CHECK(same_rf(sum.coeff(0), "0"));
    CHECK(same_rf(sum.coeff(1), "-4*z"));
    CHECK(same_rf(sum.coeff(3), "1"));

    DefiningPolynomial prod = alg_op(p, p, AlgOp::Product);
    // roots {+-z}: W^2 - z^2
    CHECK(prod.degree() == 2);
    CHECK(same_rf(prod.coeff(0), "-z^2"));
    CHECK(same_rf(prod.coeff(2), "1"));

    DefiningPolynomial one = dp({"-1", "1"});
    DefiningPolynomial same = alg_op(p, one, AlgOp::Product);
    CHECK(same.degree() == 2);
    CHECK(same_rf(same.coeff(0), "-z"));
    CHECK(same_rf(same.coeff(2), "1"));

    // the zero function is rejected for products
    CHECK_THROWS_AS(alg_op(p, dp({"0", "1"}), AlgOp::Product), ZeroFunctionError);
}

TEST_CASE("alg_negate and alg_reciprocal") {
    DefiningPolynomial p = dp({"-z", "0", "1"});
    DefiningPolynomial n = alg_negate(p);
    CHECK(same_rf(n.coeff(0), "-z"));
    CHECK(same_rf(n.coeff(2), "1"));

    DefiningPolynomial lin = dp({"-z", "1"});
    DefiningPolynomial nl = alg_negate(lin);
    CHECK(same_rf(nl.coeff(0), "z"));  // root -z
    CHECK(same_rf(nl.coeff(1), "1"));

    DefiningPolynomial rec = alg_reciprocal(p);
    CHECK(same_rf(rec.coeff(0), "1"));
    CHECK(same_rf(rec.coeff(1), "0"));
    CHECK(same_rf(rec.coeff(2), "-z"));
    // roots of z W^2 - 1 ... scaled version of reciprocal(W^2 - z) = zW^2 - 1
    Complex z0(2.0, 0.5);
    auto roots = solve_component(rec, z0);
    for (Complex r : roots) {
        Complex back = 1.0 / r;
        CHECK(std::abs(back * back - z0) < 1e-9);
    }

    CHECK_THROWS_AS(alg_reciprocal(dp({"0", "0", "1"})), NotInvertible);
}

TEST_CASE("alg_reciprocal is an involution up to scalar") {
    for (int i = 0; i < 20; ++i) {
        DefiningPolynomial p = random_monic(3);
        if (p.coeff(0).is_zero()) continue;
        DefiningPolynomial rr = alg_reciprocal(alg_reciprocal(p));
        REQUIRE(rr.degree() == p.degree());
        // proportional coefficient lists
        RationalFunction ratio;
        bool ratio_set = false;
        for (int j = 0; j <= p.degree(); ++j) {
            if (p.coeff(j).is_zero()) {
                CHECK(rr.coeff(j).is_zero());
                continue;
            }
            RationalFunction q = rr.coeff(j).exact() / p.coeff(j).exact();
            if (!ratio_set) {
                ratio = q;
                ratio_set = true;
            } else {
                CHECK(q == ratio);
            }
        }
    }
}

TEST_CASE("critical_data: exact backend examples") {
    AlgebroidCurve sqrt_z{std::vector<DefiningPolynomial>{dp({"-z", "0", "1"})}};
    CriticalData c1 = critical_data(sqrt_z, 10.0);
    REQUIRE(c1.critical_points.size() == 1);
    CHECK(std::abs(c1.critical_points[0]) < 1e-9);
    REQUIRE(c1.multiple_points.size() == 1);
    CHECK(c1.leading_coeff_zeros.empty());

    AlgebroidCurve line{std::vector<DefiningPolynomial>{dp({"-z", "1"})}};
    CriticalData c2 = critical_data(line, 10.0);
    CHECK(c2.critical_points.empty());
    CHECK(c2.multiple_points.empty());

    AlgebroidCurve pair{{dp({"-z", "0", "1"}), dp({"1-z", "0", "0", "1"})}};
    CriticalData c3 = critical_data(pair, 10.0);
    REQUIRE(c3.multiple_points.size() == 2);
    CHECK(std::abs(c3.multiple_points[0] - Complex(0.0, 0.0)) < 1e-9);
    CHECK(std::abs(c3.multiple_points[1] - Complex(1.0, 0.0)) < 1e-9);
}

TEST_CASE("critical_data: numeric backend agrees on W^2 - z") {
    std::vector<Coefficient> c = {parse_coefficient("-z", Backend::Numeric),
                                  parse_coefficient("0", Backend::Numeric),
                                  parse_coefficient("1", Backend::Numeric)};
    AlgebroidCurve curve{std::vector<DefiningPolynomial>{DefiningPolynomial(std::move(c))}};
    CriticalData crit = critical_data(curve, 5.0);
    REQUIRE(crit.multiple_points.size() == 1);
    CHECK(std::abs(crit.multiple_points[0]) < 1e-6);
}

TEST_CASE("monic resultant equals the product over root pairs at sample points") {
    std::uniform_real_distribution<double> pt(-2.0, 2.0);
    int checked = 0;
    while (checked < 50) {
        DefiningPolynomial p = random_monic(2 + (checked % 2));
        DefiningPolynomial q = random_monic(2);
        Coefficient res = resultant(p, q);
        Complex z(pt(rng), pt(rng));
        std::vector<Complex> pr, qr;
        try {
            pr = solve_component(p, z);
            qr = solve_component(q, z);
        } catch (const Error&) {
            continue;
        }
        Complex prod(1.0, 0.0);
        for (Complex a : pr)
            for (Complex b : qr) prod *= (a - b);
        Complex lhs;
        try {
            lhs = res.eval(z);
        } catch (const Error&) {
            continue;
        }
        double scale = std::max(1.0, std::abs(prod));
        CHECK(std::abs(lhs - prod) / scale < 1e-8);
        ++checked;
    }
}

TEST_CASE("discriminant equals A_nu^{2nu-2} prod (w_i - w_j)^2 at sample points") {
    std::uniform_real_distribution<double> pt(-2.0, 2.0);
    int checked = 0;
    while (checked < 30) {
        DefiningPolynomial p = random_monic(3);
        Coefficient disc = discriminant(p);
        Complex z(pt(rng), pt(rng));
        std::vector<Complex> roots;
        try {
            roots = solve_component(p, z);
        } catch (const Error&) {
            continue;
        }
        Complex prod(1.0, 0.0);
        for (size_t i = 0; i < roots.size(); ++i)
            for (size_t j = i + 1; j < roots.size(); ++j) {
                Complex d = roots[i] - roots[j];
                prod *= d * d;
            }
        Complex lhs;
        try {
            lhs = disc.eval(z);
        } catch (const Error&) {
            continue;
        }
        double scale = std::max(1.0, std::abs(prod));
        CHECK(std::abs(lhs - prod) / scale < 1e-8);
        ++checked;
    }
}

TEST_CASE("alg_op root sets match brute-force pairwise combinations") {
    std::uniform_real_distribution<double> pt(-1.5, 1.5);
    int checked = 0;
    while (checked < 25) {
        DefiningPolynomial p1 = random_monic(1 + (checked % 3));
        DefiningPolynomial p2 = random_monic(1 + ((checked + 1) % 3));
        for (AlgOp op : {AlgOp::Sum, AlgOp::Product}) {
            DefiningPolynomial out;
            try {
                out = alg_op(p1, p2, op);
            } catch (const ZeroFunctionError&) {
                continue;
            }
            Complex z(pt(rng), pt(rng));
            std::vector<Complex> r1, r2, ro;
            try {
                r1 = solve_component(p1, z);
                r2 = solve_component(p2, z);
                ro = solve_component(out, z);
            } catch (const Error&) {
                continue;
            }
            std::vector<Complex> combos;
            for (Complex a : r1)
                for (Complex b : r2) combos.push_back(op == AlgOp::Sum ? a + b : a * b);
            combos = dedupe(combos, 1e-7);
            if (combos.size() != ro.size()) continue;  // collision within tolerance; resample
            CHECK(hausdorff(combos, ro) < 1e-8);
        }
        ++checked;
    }
}
