#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "algcurve/puiseux.hpp"
#include "algcurve/tracking.hpp"

using namespace algcurve;

namespace {

Coefficient cf(const std::string& s) { return parse_coefficient(s, Backend::Exact); }

AlgebroidCurve curve1(std::initializer_list<std::string> coeffs) {
    std::vector<Coefficient> c;
    for (const auto& s : coeffs) c.push_back(cf(s));
    return AlgebroidCurve{std::vector<DefiningPolynomial>{DefiningPolynomial(std::move(c))}};
}

bool contains_root(const std::vector<Complex>& roots, Complex v, double tol = 1e-9) {
    for (Complex r : roots)
        if (std::abs(r - v) < tol) return true;
    return false;
}

} // namespace

TEST_CASE("solve_fiber: square roots, collapse at the branch point, product fibers") {
    AlgebroidCurve c = curve1({"-z", "0", "1"});
    Fiber f = solve_fiber(c, Complex(4.0, 0.0));
    REQUIRE(f.nu() == 2);
    CHECK(contains_root(f.component_roots()[0], Complex(2.0, 0.0)));
    CHECK(contains_root(f.component_roots()[0], Complex(-2.0, 0.0)));

    CHECK_THROWS_AS(solve_fiber(c, Complex(0.0, 0.0)), NearCritical);

    AlgebroidCurve pair{{DefiningPolynomial({cf("-z"), cf("0"), cf("1")}),
                         DefiningPolynomial({cf("-z"), cf("0"), cf("0"), cf("1")})}};
    Fiber f6 = solve_fiber(pair, Complex(1.0, 0.0));
    REQUIRE(f6.nu() == 6);
    auto tuples = f6.tuples();
    REQUIRE(tuples.size() == 6);
    // each tuple is (+-1, cube root of 1)
    for (const auto& t : tuples) {
        CHECK(std::abs(t[0] * t[0] - Complex(1.0, 0.0)) < 1e-9);
        CHECK(std::abs(t[1] * t[1] * t[1] - Complex(1.0, 0.0)) < 1e-9);
    }
}

TEST_CASE("solve_fiber rejects a vanishing leading coefficient") {
    AlgebroidCurve c = curve1({"-1", "0", "z"});  // z W^2 - 1
    CHECK_THROWS_AS(solve_fiber(c, Complex(0.0, 0.0)), PoleAtBase);
}

TEST_CASE("track: half turn of sqrt z lands on i") {
    AlgebroidCurve c = curve1({"-z", "0", "1"});
    Fiber start = solve_fiber(c, Complex(1.0, 0.0));
    PathSpec half = PathSpec::circle_loop(Complex(0.0, 0.0), Complex(1.0, 0.0), M_PI);
    TrackResult res = track(c, half, start);
    // sheet that started at w = 1 ends at w = i
    int idx_one = contains_root({start.component_roots()[0][0]}, Complex(1.0, 0.0)) ? 0 : 1;
    Complex end_val = res.end.component_roots()[0][res.sheet_map[idx_one]];
    CHECK(std::abs(end_val - Complex(0.0, 1.0)) < 1e-9);
}

TEST_CASE("track: constant and degenerate paths leave the fiber unchanged") {
    AlgebroidCurve c = curve1({"-z", "0", "1"});
    Fiber start = solve_fiber(c, Complex(2.0, 1.0));
    PathSpec still(Complex(2.0, 1.0));
    still.line_to(Complex(2.0, 1.0));
    TrackResult res = track(c, still, start);
    for (int j = 0; j < start.nu(); ++j) CHECK(res.sheet_map[j] == j);
}

TEST_CASE("track: full loop swaps the square-root sheets") {
    AlgebroidCurve c = curve1({"-z", "0", "1"});
    Fiber start = solve_fiber(c, Complex(1.0, 0.0));
    PathSpec loop = PathSpec::circle_loop(Complex(0.0, 0.0), Complex(1.0, 0.0), 2.0 * M_PI);
    TrackResult res = track(c, loop, start);
    CHECK(res.sheet_map[0] == 1);
    CHECK(res.sheet_map[1] == 0);
}

TEST_CASE("track-then-reverse returns the start fiber") {
    AlgebroidCurve c = curve1({"1-z", "3", "0", "1"});
    PathSpec path(Complex(2.0, 0.5));
    path.line_to(Complex(1.5, 2.0)).arc(Complex(0.0, 0.0), 1.1).line_to(Complex(-2.0, -1.0));
    Fiber start = solve_fiber(c, path.start());
    TrackResult fwd = track(c, path, start);
    TrackResult back = track(c, path.reversed(), fwd.end);
    for (int j = 0; j < start.nu(); ++j) {
        CHECK(back.sheet_map[fwd.sheet_map[j]] == j);
        Complex orig = start.component_roots()[0][j];
        Complex round = back.end.component_roots()[0][back.sheet_map[fwd.sheet_map[j]]];
        CHECK(std::abs(orig - round) < 1e-8);
    }
}

TEST_CASE("monodromy: transposition, identity off the branch point, 3-cycle") {
    AlgebroidCurve sq = curve1({"-z", "0", "1"});
    Fiber base = solve_fiber(sq, Complex(0.5, 0.0));
    MonodromyPermutation mp = monodromy(sq, Complex(0.0, 0.0), 0.5, base);
    auto cycles = permutation_cycles(mp.sigma);
    REQUIRE(cycles.size() == 1);
    CHECK(cycles[0].size() == 2);
    CHECK_FALSE(mp.is_identity());

    // W^2 - (z-1) looped around 0 with radius 1/2 encloses nothing
    AlgebroidCurve shifted = curve1({"1-z", "0", "1"});
    Fiber base2 = solve_fiber(shifted, Complex(0.5, 0.0));
    MonodromyPermutation mp2 = monodromy(shifted, Complex(0.0, 0.0), 0.5, base2);
    CHECK(mp2.is_identity());

    AlgebroidCurve cu = curve1({"-z", "0", "0", "1"});
    Fiber base3 = solve_fiber(cu, Complex(0.5, 0.0));
    MonodromyPermutation mp3 = monodromy(cu, Complex(0.0, 0.0), 0.5, base3);
    auto cycles3 = permutation_cycles(mp3.sigma);
    REQUIRE(cycles3.size() == 1);
    CHECK(cycles3[0].size() == 3);
}

TEST_CASE("monodromy rejects loops enclosing another critical point") {
    AlgebroidCurve c = curve1({"z^2-z", "0", "1"});  // branch points at 0 and 1
    std::vector<Complex> crit = {Complex(0.0, 0.0), Complex(1.0, 0.0)};
    Fiber base = solve_fiber(c, Complex(2.0, 0.0));
    CHECK_THROWS_AS(monodromy(c, Complex(0.0, 0.0), 2.0, base, {}, &crit),
                    LoopContainsOtherBranchPoints);
}

TEST_CASE("branch_order: cycle data and orders") {
    AlgebroidCurve sq = curve1({"-z", "0", "1"});
    BranchOrderResult b1 = branch_order(sq, Complex(0.0, 0.0), 0.5);
    CHECK(b1.l == 1);
    REQUIRE(b1.cycle_lengths.size() == 1);
    CHECK(b1.cycle_lengths[0] == 2);
    CHECK(b1.order == 1);

    AlgebroidCurve cu = curve1({"-z", "0", "0", "1"});
    BranchOrderResult b2 = branch_order(cu, Complex(0.0, 0.0), 0.5);
    CHECK(b2.l == 1);
    CHECK(b2.order == 2);

    // W^2 - z^2 factors; the two analytic branches merely cross at 0
    AlgebroidCurve crossing = curve1({"-z^2", "0", "1"});
    BranchOrderResult b3 = branch_order(crossing, Complex(0.0, 0.0), 0.5);
    CHECK(b3.l == 2);
    CHECK(b3.order == 0);
}

TEST_CASE("cycle lengths always sum to nu") {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> pt(-1.0, 1.0);
    AlgebroidCurve c = curve1({"z^3-z", "1", "0", "0", "1"});
    for (int i = 0; i < 5; ++i) {
        Complex p(pt(rng), pt(rng));
        BranchOrderResult b = branch_order(c, p, 0.05);
        int sum = 0;
        for (int len : b.cycle_lengths) sum += len;
        CHECK(sum == c.total_sheets());
    }
}

TEST_CASE("monodromy product relation: spoke-composed loops equal the boundary loop") {
    // branch points at 0 and 1, base well below both
    AlgebroidCurve c = curve1({"z^2-z", "0", "1"});
    Fiber base = solve_fiber(c, Complex(0.5, -3.0));
    std::vector<std::pair<Complex, double>> loops = {{Complex(0.0, 0.0), 0.3},
                                                     {Complex(1.0, 0.0), 0.3}};
    auto s0 = conjugated_loop_permutation(c, base, Complex(0.0, 0.0), 0.3, loops);
    auto s1 = conjugated_loop_permutation(c, base, Complex(1.0, 0.0), 0.3, loops);

    // boundary loop: circle around 0.5 with radius 3.3 (contains both points,
    // starting at the east point, conjugated down to the base)
    Complex center(0.5, 0.0);
    double R = 3.4;
    PathSpec to_east(base.base_point());
    to_east.line_to(center + R);
    TrackResult leg = track(c, to_east, base);
    MonodromyPermutation outer = monodromy(c, center, R, leg.end);
    TrackResult backleg = track(c, to_east.reversed(), leg.end);
    auto boundary = compose(compose(leg.sheet_map, outer.sigma), backleg.sheet_map);

    // angular order as seen from the base point determines the composition:
    // counterclockwise from the east, the loop around 1 comes before the one
    // around 0.
    auto composed = compose(s1, s0);
    bool forward = composed == boundary;
    auto composed_rev = compose(s0, s1);
    bool backward = composed_rev == boundary;
    CHECK((forward || backward));
}

TEST_CASE("puiseux: ramified square root, shifted cusp, crossing branches") {
    AlgebroidCurve sq = curve1({"-z", "0", "1"});
    auto series = puiseux_expand(sq, Complex(0.0, 0.0), 3);
    REQUIRE(series.size() == 1);
    CHECK(series[0].lambda == 2);
    CHECK(series[0].leading_exponent() == doctest::Approx(0.5));
    // |b_1| = 1 and no constant term
    double b1 = 0.0, b0 = 0.0;
    for (const auto& t : series[0].terms) {
        if (t.k == 1) b1 = std::abs(t.b);
        if (t.k == 0) b0 = std::abs(t.b);
    }
    CHECK(b1 == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(b0 < 1e-9);

    // (W-1)^2 = z^3: w = 1 +- z^{3/2}
    AlgebroidCurve cusp = curve1({"1-z^3", "-2", "1"});
    auto cs = puiseux_expand(cusp, Complex(0.0, 0.0), 3);
    REQUIRE(cs.size() == 1);
    CHECK(cs[0].lambda == 2);
    CHECK(cs[0].leading_exponent() == doctest::Approx(1.5));

    // W^2 = z^2: two unramified series +-z
    AlgebroidCurve crossing = curve1({"-z^2", "0", "1"});
    auto xs = puiseux_expand(crossing, Complex(0.0, 0.0), 3);
    REQUIRE(xs.size() == 2);
    for (const auto& s : xs) {
        CHECK(s.lambda == 1);
        CHECK(s.leading_exponent() == doctest::Approx(1.0));
        for (const auto& t : s.terms)
            if (t.k == 1) CHECK(std::abs(t.b) == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("puiseux series track the actual roots at decreasing radii") {
    AlgebroidCurve cusp = curve1({"1-z^3", "-2", "1"});
    auto cs = puiseux_expand(cusp, Complex(0.0, 0.0), 3);
    REQUIRE(cs.size() == 1);
    for (double rad : {1e-2, 1e-3}) {
        Complex z = std::polar(rad, 0.37);
        auto predicted = cs[0].eval_at(z);
        auto actual = solve_component(cusp.component(0), z);
        for (Complex p : predicted) {
            double best = 1e300;
            for (Complex a : actual) best = std::min(best, std::abs(p - a));
            CHECK(best < 1e-6);
        }
    }
}

TEST_CASE("is_irreducible: transitive monodromy detects irreducibility") {
    CHECK(is_irreducible(curve1({"-z", "0", "1"}), 5.0));
    CHECK_FALSE(is_irreducible(curve1({"-z^2", "0", "1"}), 5.0));
    CHECK(is_irreducible(curve1({"-z", "0", "0", "1"}), 5.0));
}

TEST_CASE("fiber tuples stay pairwise distinct off the multiple set") {
    AlgebroidCurve c = curve1({"1-z", "2", "0", "1"});
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> pt(-3.0, 3.0);
    int done = 0;
    while (done < 20) {
        Complex z(pt(rng), pt(rng));
        Fiber f;
        try {
            f = solve_fiber(c, z);
        } catch (const Error&) {
            continue;
        }
        auto tuples = f.tuples();
        REQUIRE(static_cast<int>(tuples.size()) == c.total_sheets());
        for (size_t i = 0; i < tuples.size(); ++i)
            for (size_t j = i + 1; j < tuples.size(); ++j) {
                double d = 0.0;
                for (size_t k = 0; k < tuples[i].size(); ++k)
                    d += std::abs(tuples[i][k] - tuples[j][k]);
                CHECK(d > 0.0);
            }
        ++done;
    }
}
