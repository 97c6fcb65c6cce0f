#ifndef ALGCURVE_COVERING_HPP
#define ALGCURVE_COVERING_HPP

#include <optional>
#include <string>
#include <vector>

#include "algcurve/puiseux.hpp"
#include "algcurve/tracking.hpp"

namespace algcurve {

struct BranchRecord {
    Complex point{0.0, 0.0};
    std::vector<int> cycle_lengths;  // descending, sums to nu
    int order = 0;                   // nu - l
    MonodromyPermutation sigma;      // conjugated to the model base fiber
    double loop_radius = 0.0;
};

// Combinatorial model of the nu-sheeted ramified covering of a disk: branch
// records with monodromy conjugated to one base fiber, plus the critical
// geometry. Charts are implicit; evaluation goes through lift_evaluate.
struct CoveringModel {
    AlgebroidCurve curve;
    double disk_radius = 0.0;
    Fiber base_fiber;
    std::vector<BranchRecord> records;
    CriticalData critical;
    int nu = 0;

    std::vector<std::pair<Complex, double>> loop_obstacles() const;
};

struct CoveringOptions {
    CriticalOptions critical;
    TrackOptions track;
};

// Builds the covering model: locates the multiple set, picks a base point
// maximizing clearance from it, and records one conjugated monodromy
// generator per multiple point.
CoveringModel build_covering(const AlgebroidCurve& C, double disk_radius,
                             const CoveringOptions& opt = {});

// Value of the single-valued lift of one sheet at z, continued from the base
// fiber along `hint` or a default radial-then-angular route that clears the
// branch set. Same sheet, point, and path homotopy class always give the
// same value.
std::vector<Complex> lift_evaluate(const CoveringModel& model, int sheet, Complex z,
                                   const PathSpec* hint = nullptr,
                                   const TrackOptions& opt = {});

// ---- divisors ---------------------------------------------------------------

struct ValueDivisor {
    std::string target;  // description
    std::vector<std::pair<Complex, int>> points;

    int total_multiplicity(double r) const;
};

struct DivisorTarget {
    enum class Kind { Value, Infinity, Hyperplane } kind = Kind::Value;
    Complex value{0.0, 0.0};
    std::vector<Complex> hyperplane;  // coefficients a_0..a_d, divisor <a, (1,W)> = 0

    static DivisorTarget at_value(Complex v);
    static DivisorTarget at_infinity();
    static DivisorTarget at_hyperplane(std::vector<Complex> a);
    std::string describe() const;
};

// Divisor of the target inside |z| < disk_radius with multiplicities. The
// exact backend reads poles from A_nu and zeros/values from the relevant
// numerator polynomial; the numeric backend runs an argument-principle box
// search on the single-valued sheet product.
ValueDivisor value_divisor(const AlgebroidCurve& C, const DivisorTarget& target,
                           double disk_radius);

// Branch divisor support with orders read from the covering records.
std::vector<std::pair<Complex, int>> branch_divisor(const CoveringModel& model);

// ---- the J_k estimate -------------------------------------------------------

struct JkDivisor {
    int k = 0;                        // coordinate index, 0-based
    bool identically_zero = false;    // true when nu/nu_k > 1 (repeated sheets)
    std::vector<std::pair<Complex, int>> points;  // orders of (J_k = 0)
};

// Vanishing orders of J_k at the branch records: (nu/nu_k)^2 times the
// component-k discriminant order plus the leading-coefficient contribution,
// orders computed by winding numbers of the single-valued evaluators.
JkDivisor jk_divisor(const CoveringModel& model, int k);

struct EstiCheck {
    int k = 0;
    bool vacuous = false;  // J_k has identically equal sheet pairs (d > 1)
    bool holds = true;
    std::vector<std::tuple<Complex, int, int>> comparisons;  // (point, ord D, ord Jk)
};

// Pointwise check ord_x D_F <= ord_x (J_k = 0) at every branch record.
EstiCheck check_esti(const CoveringModel& model, const JkDivisor& jk);

std::string covering_report_json(const CoveringModel& model);

} // namespace algcurve

#endif
