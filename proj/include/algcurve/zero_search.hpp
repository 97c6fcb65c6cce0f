#ifndef ALGCURVE_ZERO_SEARCH_HPP
#define ALGCURVE_ZERO_SEARCH_HPP

#include <complex>
#include <functional>
#include <vector>

namespace algcurve {

using Complex = std::complex<double>;

struct ZeroSearchOptions {
    double isolate_width = 1e-8;
    long max_evaluations = 4000000;
    int max_refine_depth = 26;     // boundary sampling bisection depth
    int min_refine_depth = 5;      // forced subdivision so arg wraps cannot alias
    double boundary_tiny = 1e-12;  // relative |f| that counts as a boundary hit
    int newton_polish = 6;
};

struct FoundZero {
    Complex location;
    int multiplicity;
};

// Zeros of an analytic function inside the square |Re z - c|, |Im z - c| <
// half_width by recursive box subdivision with boundary winding numbers.
// Boxes are split at slightly irrational offsets so that zeros sitting on
// symmetric axes do not land on shared edges; boundary hits retry with a
// nudged split. Winding integrals use adaptive argument tracking (samples
// refined until consecutive increments are below pi/2).
std::vector<FoundZero> find_zeros(const std::function<Complex(Complex)>& f, Complex center,
                                  double half_width, const ZeroSearchOptions& opt = {});

// Winding number of f around the circle |z - center| = radius (adaptive
// argument tracking). Throws RootFindingFailure when a sample lands on a
// zero of f or the argument cannot be resolved.
int winding_number(const std::function<Complex(Complex)>& f, Complex center, double radius,
                   const ZeroSearchOptions& opt = {});

} // namespace algcurve

#endif
