#ifndef ALGCURVE_ABERTH_HPP
#define ALGCURVE_ABERTH_HPP

#include <complex>
#include <vector>

namespace algcurve {

using Complex = std::complex<double>;

struct AberthOptions {
    int max_iterations = 400;
    double tolerance = 1e-14;  // relative correction size at convergence
    int polish_steps = 3;      // Newton polish after simultaneous phase
};

// All complex roots of a polynomial with complex coefficients (lowest degree
// first, leading coefficient nonzero) by Aberth-Ehrlich simultaneous
// iteration. Start values are perturbed roots of unity scaled by the Cauchy
// bound. Throws RootFindingFailure if the iteration stalls.
std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs,
                                      const AberthOptions& opt = {});

// Horner evaluation of value and derivative.
void horner_eval(const std::vector<Complex>& coeffs, Complex x, Complex& p, Complex& dp);

} // namespace algcurve

#endif
