#ifndef ALGCURVE_PUISEUX_HPP
#define ALGCURVE_PUISEUX_HPP

#include <vector>

#include "algcurve/tracking.hpp"

namespace algcurve {

struct PuiseuxTerm {
    int k;      // exponent numerator: term b * (z - p)^{k/lambda}
    Complex b;
};

// Truncated fractional-power expansion of one sheet cycle of one coordinate
// at a branch point: w(z) = sum b_k (z-p)^{k/lambda}, negative k for pole
// cycles. The cycle's lambda sheets come from the lambda branches of
// (z-p)^{1/lambda}.
struct PuiseuxSeries {
    Complex branch_point{0.0, 0.0};
    int component = 0;
    int lambda = 1;
    std::vector<int> cycle;  // canonical root indices at the east sample point
    std::vector<PuiseuxTerm> terms;  // ascending k

    // Smallest nonconstant exponent k/lambda present (0 when the series is
    // constant).
    double leading_exponent() const;

    Complex eval_eta(Complex eta) const;
    // All lambda sheet values at z.
    std::vector<Complex> eval_at(Complex z) const;
};

struct PuiseuxOptions {
    double sample_radius = 0.0;  // 0: choose from critical geometry
    int samples_per_turn = 64;   // Fourier samples per loop
    double drop_tolerance = 1e-8;  // relative Fourier magnitude threshold
    double validate_tolerance = 1e-5;
    TrackOptions track;
};

// Expansions for every cycle of every coordinate at `point`. n_terms counts
// the retained exponent slots after the constant: k = tau .. tau+n_terms-1.
std::vector<PuiseuxSeries> puiseux_expand(const AlgebroidCurve& C, Complex point, int n_terms,
                                          const PuiseuxOptions& opt = {});

} // namespace algcurve

#endif
