#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "algcurve/covering.hpp"

using namespace algcurve;

namespace {

Coefficient cf(const std::string& s) { return parse_coefficient(s, Backend::Exact); }

AlgebroidCurve curve1(std::initializer_list<std::string> coeffs) {
    std::vector<Coefficient> c;
    for (const auto& s : coeffs) c.push_back(cf(s));
    return AlgebroidCurve{std::vector<DefiningPolynomial>{DefiningPolynomial(std::move(c))}};
}

const BranchRecord* record_at(const CoveringModel& m, Complex p) {
    for (const auto& rec : m.records)
        if (std::abs(rec.point - p) < 1e-7) return &rec;
    return nullptr;
}

} // namespace

TEST_CASE("build_covering: branch records for basic curves") {
    CoveringModel sq = build_covering(curve1({"-z", "0", "1"}), 2.0);
    CHECK(sq.nu == 2);
    REQUIRE(sq.records.size() == 1);
    CHECK(std::abs(sq.records[0].point) < 1e-9);
    CHECK(sq.records[0].cycle_lengths == std::vector<int>{2});
    CHECK(sq.records[0].order == 1);

    CoveringModel line = build_covering(curve1({"-z", "1"}), 2.0);
    CHECK(line.nu == 1);
    CHECK(line.records.empty());

    AlgebroidCurve two{{DefiningPolynomial({cf("-z"), cf("0"), cf("1")}),
                        DefiningPolynomial({cf("1-z"), cf("0"), cf("1")})}};
    CoveringModel m = build_covering(two, 2.0);
    CHECK(m.nu == 4);
    REQUIRE(m.records.size() == 2);
    const BranchRecord* r0 = record_at(m, Complex(0.0, 0.0));
    const BranchRecord* r1 = record_at(m, Complex(1.0, 0.0));
    REQUIRE(r0 != nullptr);
    REQUIRE(r1 != nullptr);
    CHECK(r0->cycle_lengths == std::vector<int>{2, 2});
    CHECK(r0->order == 2);
    CHECK(r1->cycle_lengths == std::vector<int>{2, 2});
    CHECK(r1->order == 2);
}

TEST_CASE("sheet counts are conserved at every branch record") {
    for (auto coeffs : {std::initializer_list<std::string>{"-z", "0", "1"},
                        std::initializer_list<std::string>{"z^2-z", "0", "1"},
                        std::initializer_list<std::string>{"-z", "1", "0", "0", "1"}}) {
        CoveringModel m = build_covering(curve1(coeffs), 3.0);
        for (const auto& rec : m.records) {
            int sum = 0;
            for (int len : rec.cycle_lengths) sum += len;
            CHECK(sum == m.nu);
            CHECK(rec.order >= 0);
        }
    }
}

TEST_CASE("lift_evaluate follows one branch of sqrt z") {
    CoveringModel m = build_covering(curve1({"-z", "0", "1"}), 8.0);
    // find the sheet whose value at the base has positive real part, then
    // walk it to z = 4; a continuous branch of sqrt z stays in that half
    Complex base = m.base_fiber.base_point();
    int sheet = (m.base_fiber.component_roots()[0][0].real() > 0) ? 0 : 1;
    auto val = lift_evaluate(m, sheet, Complex(4.0, 0.0));
    REQUIRE(val.size() == 1);
    // consistency: same sheet and point again gives the identical value
    auto val2 = lift_evaluate(m, sheet, Complex(4.0, 0.0));
    CHECK(std::abs(val[0] - val2[0]) == 0.0);
    CHECK(std::abs(val[0] * val[0] - Complex(4.0, 0.0)) < 1e-9);

    // evaluating at the base point returns the base value
    auto at_base = lift_evaluate(m, sheet, base);
    CHECK(std::abs(at_base[0] - m.base_fiber.component_roots()[0][sheet]) < 1e-9);

    // the two sheets stay distinct
    auto other = lift_evaluate(m, 1 - sheet, Complex(4.0, 0.0));
    CHECK(std::abs(other[0] - val[0]) > 1.0);
}

TEST_CASE("lift_evaluate is path independent within a homotopy class") {
    CoveringModel m = build_covering(curve1({"-z", "0", "1"}), 8.0);
    Complex target(3.0, 2.0);
    auto dflt = lift_evaluate(m, 0, target);
    // an explicit two-leg detour staying in the upper half disk
    PathSpec hint(m.base_fiber.base_point());
    hint.line_to(Complex(2.0, 3.5)).line_to(target);
    double clearance = hint.distance_to(Complex(0.0, 0.0));
    REQUIRE(clearance > 0.5);  // the hint avoids the branch point
    auto via = lift_evaluate(m, 0, target, &hint);
    CHECK(std::abs(dflt[0] - via[0]) < 1e-8);
}

TEST_CASE("value_divisor: exact backend reads the right polynomials") {
    AlgebroidCurve c = curve1({"1-z", "0", "1"});  // W^2 = z-1
    ValueDivisor zero = value_divisor(c, DivisorTarget::at_value(Complex(0.0, 0.0)), 10.0);
    REQUIRE(zero.points.size() == 1);
    CHECK(std::abs(zero.points[0].first - Complex(1.0, 0.0)) < 1e-9);
    CHECK(zero.points[0].second == 1);

    AlgebroidCurve pole = curve1({"-1", "0", "z"});  // z W^2 = 1
    ValueDivisor inf = value_divisor(pole, DivisorTarget::at_infinity(), 10.0);
    REQUIRE(inf.points.size() == 1);
    CHECK(std::abs(inf.points[0].first) < 1e-9);
    CHECK(inf.points[0].second == 1);

    AlgebroidCurve sq = curve1({"-z", "0", "1"});
    ValueDivisor two = value_divisor(sq, DivisorTarget::at_value(Complex(2.0, 0.0)), 10.0);
    REQUIRE(two.points.size() == 1);
    CHECK(std::abs(two.points[0].first - Complex(4.0, 0.0)) < 1e-9);
}

TEST_CASE("value_divisor: degenerate target throws") {
    AlgebroidCurve c = curve1({"0", "-1", "1"});  // W^2 - W = 0, W = 0 is a whole branch
    CHECK_THROWS_AS(value_divisor(c, DivisorTarget::at_value(Complex(0.0, 0.0)), 5.0),
                    TargetDegenerate);
}

TEST_CASE("value_divisor: numeric backend box search agrees") {
    std::vector<Coefficient> nc = {parse_coefficient("1-z", Backend::Numeric),
                                   parse_coefficient("0", Backend::Numeric),
                                   parse_coefficient("1", Backend::Numeric)};
    AlgebroidCurve c{std::vector<DefiningPolynomial>{DefiningPolynomial(std::move(nc))}};
    ValueDivisor zero = value_divisor(c, DivisorTarget::at_value(Complex(0.0, 0.0)), 10.0);
    REQUIRE(zero.points.size() == 1);
    CHECK(std::abs(zero.points[0].first - Complex(1.0, 0.0)) < 1e-6);
    CHECK(zero.points[0].second == 1);

    // W^2 = e^z, value 1: zeros of 1 - e^z at 2 pi i k
    std::vector<Coefficient> ec = {parse_coefficient("-exp(z)", Backend::Numeric),
                                   parse_coefficient("0", Backend::Numeric),
                                   parse_coefficient("1", Backend::Numeric)};
    AlgebroidCurve ez{std::vector<DefiningPolynomial>{DefiningPolynomial(std::move(ec))}};
    ValueDivisor ones = value_divisor(ez, DivisorTarget::at_value(Complex(1.0, 0.0)), 10.0);
    REQUIRE(ones.points.size() == 3);  // 0, +-2 pi i
    for (const auto& [p, m] : ones.points) {
        CHECK(m == 1);
        CHECK(std::abs(std::exp(p) - Complex(1.0, 0.0)) < 1e-6);
    }
}

TEST_CASE("value_divisor mass is nondecreasing in the radius") {
    AlgebroidCurve c = curve1({"z^3-3*z+1", "-2", "0", "1"});
    ValueDivisor d = value_divisor(c, DivisorTarget::at_value(Complex(1.0, 0.5)), 12.0);
    int prev = 0;
    for (double r : {1.0, 2.0, 4.0, 8.0, 12.0}) {
        int cur = d.total_multiplicity(r);
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("jk_divisor: discriminant orders against branch orders") {
    CoveringModel sq = build_covering(curve1({"-z", "0", "1"}), 2.0);
    JkDivisor j1 = jk_divisor(sq, 0);
    CHECK_FALSE(j1.identically_zero);
    REQUIRE(j1.points.size() == 1);
    CHECK(j1.points[0].second == 1);  // ord_0 (4z) = 1
    EstiCheck chk = check_esti(sq, j1);
    CHECK(chk.holds);

    CoveringModel cu = build_covering(curve1({"-z", "0", "0", "1"}), 2.0);
    JkDivisor j2 = jk_divisor(cu, 0);
    REQUIRE(j2.points.size() == 1);
    CHECK(j2.points[0].second == 2);  // ord_0 (-27 z^2) = 2
    CHECK(record_at(cu, Complex(0.0, 0.0))->order == 2);
    CHECK(check_esti(cu, j2).holds);

    CoveringModel line = build_covering(curve1({"-z", "1"}), 2.0);
    JkDivisor j3 = jk_divisor(line, 0);
    CHECK(j3.points.empty());
    CHECK(check_esti(line, j3).holds);
}

TEST_CASE("jk_divisor: pole branch points carry leading-coefficient orders") {
    // z W^2 - 1: branch point at 0 through infinity
    CoveringModel m = build_covering(curve1({"-1", "0", "z"}), 2.0);
    REQUIRE(m.records.size() == 1);
    CHECK(m.records[0].order == 1);
    JkDivisor j = jk_divisor(m, 0);
    EstiCheck chk = check_esti(m, j);
    CHECK(chk.holds);
}

TEST_CASE("covering report serializes") {
    CoveringModel m = build_covering(curve1({"-z", "0", "1"}), 2.0);
    std::string json = covering_report_json(m);
    CHECK(json.find("branch_records") != std::string::npos);
    CHECK(json.find("cycle_lengths") != std::string::npos);
}
