#ifndef ALGCURVE_CURVATURE_HPP
#define ALGCURVE_CURVATURE_HPP

#include <functional>
#include <string>
#include <vector>

#include "algcurve/analytic_expr.hpp"

namespace algcurve {

// Non-positive curvature lower-bound profile t -> kappa(t) <= 0, either an
// expression in the radial variable or a tabulated piecewise-linear curve.
class KappaProfile {
public:
    static KappaProfile from_expression(const std::string& text);
    static KappaProfile from_table(std::vector<double> t, std::vector<double> kappa);
    static KappaProfile constant(double value);

    double operator()(double t) const;

private:
    ExprPtr expr_;
    std::vector<double> t_, k_;
    double const_value_ = 0.0;
    enum class Kind { Expr, Table, Const } kind_ = Kind::Const;
};

// chi(s, t) = t when s = 0, sinh(s t)/s otherwise; continuous in s at 0.
double chi(double s, double t);

// Solution of G'' + kappa(t) G = 0, G(0) = 0, G'(0) = 1, cached on a dense
// grid up to the largest requested argument (adaptive RK4 with step
// doubling, relative tolerance ~1e-10).
class JacobiSolution {
public:
    JacobiSolution(KappaProfile kappa, double t_max);
    double operator()(double t) const;
    double t_max() const { return t_max_; }

private:
    std::vector<double> ts_, gs_, dgs_;
    double t_max_;
};

double jacobi_G(const KappaProfile& kappa, double t);

struct ComparisonReport {
    bool holds = true;
    double worst_lower = 0.0;  // max over the grid of (chi(0,t) - G) / scale
    double worst_upper = 0.0;  // max of (G - chi(sqrt(-kappa), t)) / scale
};

// Lemma-style two-sided bound chi(0,t) <= G(t) <= chi(sqrt(-kappa(t)), t),
// checked at the grid points with relative slack `tol`.
ComparisonReport comparison_check(const KappaProfile& kappa, const std::vector<double>& t_grid,
                                  double tol = 1e-6);

// K(r, delta) = r^{1-2m} (int_{1/3}^r G^{1-2m} dt)^{(1+delta)^2} /
//               G(r)^{(1-2m)(1+delta)}.
double K_factor(double r, double delta, const KappaProfile& kappa, int m);

struct LogKBound {
    bool flat_rate_ok = true;   // log+ K <= (2m-1) delta log r + c for kappa == 0
    double fitted_c = 0.0;
    std::vector<double> r, logK;
};

// Fits the constant in the paper-shaped bound on log+ K over the grid:
// c delta log r + c for flat profiles, c (sqrt(-kappa(r)) r + 1) otherwise.
LogKBound logK_bound_check(const KappaProfile& kappa, int m, double delta,
                           const std::vector<double>& r_grid, bool kappa_is_flat);

// Volume growth profile r -> V(r) > 0 with a finite tail integral
// int_1^inf t / V(t) dt (non-parabolicity).
class VolumeProfile {
public:
    // V(t) = coeff * t^exponent
    static VolumeProfile power_law(double coeff, double exponent);
    static VolumeProfile from_expression(const std::string& text);

    double operator()(double t) const;
    // int_rho^inf t / V(t) dt; analytic for power laws, numeric-to-cutoff
    // with a fitted power-law tail otherwise. Throws
    // NonParabolicityViolated when the tail diverges.
    double tail_integral(double rho) const;

    bool is_power_law() const { return kind_ == Kind::Power; }

private:
    enum class Kind { Power, Expr } kind_ = Kind::Power;
    double coeff_ = 1.0, exponent_ = 4.0;
    ExprPtr expr_;
};

struct HFactors {
    double H = 0.0;        // V(r)/r^2 * tail(r)
    double H_delta = 0.0;  // (1/r) (V(r)/r)^{1+delta} * tail(r)
};

HFactors H_factors(const VolumeProfile& V, double r, double delta);

// Li-Yau band shape: returns the tail integral; endpoints scale by the
// caller's constants A and B.
std::pair<double, double> green_band(const VolumeProfile& V, double rho, double A = 1.0,
                                     double B = 1.0);

} // namespace algcurve

#endif
