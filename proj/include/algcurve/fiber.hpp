#ifndef ALGCURVE_FIBER_HPP
#define ALGCURVE_FIBER_HPP

#include <vector>

#include "algcurve/defining_system.hpp"

namespace algcurve {

struct SolveOptions {
    double separation_threshold = 1e-8;  // relative; below this -> NearCritical
    bool allow_near_critical = false;    // quadrature mode: accept clustered fibers
};

// The nu root tuples of a curve over one base point. Internally stored per
// component; tuple j decodes through mixed-radix digits with component 1
// slowest, so when every component list is sorted (canonical fibers from
// solve_fiber) the tuple order is lexicographic.
class Fiber {
public:
    Fiber() = default;
    Fiber(Complex base_point, std::vector<std::vector<Complex>> component_roots);

    Complex base_point() const { return base_; }
    int dim() const { return static_cast<int>(roots_.size()); }
    int nu() const { return nu_; }
    const std::vector<std::vector<Complex>>& component_roots() const { return roots_; }

    std::vector<int> decode(int sheet) const;          // multi-index digits
    int encode(const std::vector<int>& digits) const;  // inverse
    std::vector<Complex> tuple(int sheet) const;
    std::vector<std::vector<Complex>> tuples() const;

private:
    Complex base_{0.0, 0.0};
    std::vector<std::vector<Complex>> roots_;
    int nu_ = 0;
};

void canonical_sort(std::vector<Complex>& roots);

// All nu_i roots of component i at z, canonically sorted, combined across
// components. Throws PoleAtBase when a leading coefficient vanishes at z and
// NearCritical when a component fiber has nearly-colliding roots.
Fiber solve_fiber(const AlgebroidCurve& C, Complex z, const SolveOptions& opt = {});

// Roots of a single component at z (unsorted), tolerant of clustered roots.
std::vector<Complex> solve_component(const DefiningPolynomial& P, Complex z);

} // namespace algcurve

#endif
