#ifndef ALGCURVE_NEVANLINNA_HPP
#define ALGCURVE_NEVANLINNA_HPP

#include <functional>
#include <string>
#include <vector>

#include "algcurve/covering.hpp"

namespace algcurve {

// Green function of the flat disk B(r) with pole at 0 and the uniform
// harmonic measure on its boundary.
struct GreenKernel {
    double r = 1.0;
    double value(Complex z) const;
    // Boundary average of a continuous function against d theta / 2 pi.
    double boundary_average(const std::function<double(Complex)>& f, int samples = 512) const;
};

// Hyperplane <a, zeta> = 0 in P^n with ||a|| = 1; the potential
// u_D = (1/2) log(||zeta||^2 ||a||^2 / |<a, zeta>|^2) is the Cauchy-Schwarz
// defect, nonnegative and scale-invariant.
struct HyperplaneTarget {
    std::vector<Complex> a;
    std::string label;

    static HyperplaneTarget from_vector(std::vector<Complex> coeffs, std::string label = "");
    static HyperplaneTarget from_value(Complex v);  // P^1 point target
    static HyperplaneTarget infinity();

    int n() const { return static_cast<int>(a.size()) - 1; }
    // u_D at an affine sheet tuple (w_1..w_d), i.e. zeta = (1, w).
    double u_D(const std::vector<Complex>& w) const;
    DivisorTarget divisor_target() const;
};

struct QuadratureOptions {
    int gauss_points = 12;
    int theta_base_panels = 32;
    double theta_rel_tol = 1e-6;
    double theta_abs_tol = 1e-9;
    double excise = 1e-6;        // relative annulus excluded around branch radii
    int zero_end_levels = 48;    // geometric panels toward s = 0
    int singular_levels = 40;    // geometric panels toward a singular radius
    long evaluation_budget = 80000000;
};

// Nevanlinna functionals of an algebroid curve over the flat plane with
// reference point o = 0: T via the spherical-area radial formulation,
// m via boundary quadrature, N / Nbar / N_bran via divisors.
class NevanlinnaEngine {
public:
    NevanlinnaEngine(const CoveringModel& model, QuadratureOptions opt = {});

    const CoveringModel& model() const { return model_; }

    // Spherical density sum over sheets at z (Fubini-Study pullback density
    // with respect to Lebesgue measure, divided by pi).
    double density(Complex z) const;

    // T_F on an ascending grid of radii; shares radial quadrature nodes.
    std::vector<double> characteristic_grid(const std::vector<double>& rs) const;
    double characteristic(double r) const;

    // Independent check: direct 2D Green-weighted quadrature (midpoint in t,
    // trapezoid in theta), used to validate the A(t)/t formulation.
    double characteristic_direct(double r, int radial_steps = 400, int theta_steps = 256) const;

    double proximity(const HyperplaneTarget& target, double r,
                     std::vector<std::string>* warnings = nullptr) const;

    double counting(const ValueDivisor& divisor, double r, bool truncated) const;
    double branch_counting(double r) const;

    mutable std::vector<std::string> warnings;

private:
    double phi_average(double s) const;  // (1/2pi) integral of density over the circle
    CoveringModel model_;
    QuadratureOptions opt_;
    std::vector<double> singular_radii_;
    mutable long evals_ = 0;
};

struct FmtReport {
    std::vector<double> r, T, m, N, residual;
    double max_deviation_from_median = 0.0;
};

FmtReport fmt_check(const NevanlinnaEngine& engine, const HyperplaneTarget& target,
                    const std::vector<double>& r_grid);

struct BranBoundReport {
    std::vector<double> r, n_bran, T, slack;  // slack = N_bran - (2nu-2) T
    double max_above_running_max = 0.0;
    bool bounded(double tol) const { return max_above_running_max < tol; }
};

BranBoundReport bran_bound_check(const NevanlinnaEngine& engine,
                                 const std::vector<double>& r_grid);

// Per-radius table with every functional; targets get one m/N/Nbar column
// set each.
struct NevanlinnaReport {
    std::vector<double> r;
    std::vector<double> T;
    std::vector<std::vector<double>> m, N, Nbar;  // [target][radius]
    std::vector<double> N_bran;
    std::vector<std::vector<double>> fmt_residual;
    std::vector<std::string> target_labels;
    int nu = 0, n = 0;
    double ricci_term = 0.0;  // flat plane
    double fs_ratio = 1.0;    // omega = omega_FS on P^n

    std::string to_csv() const;
};

NevanlinnaReport build_report(const NevanlinnaEngine& engine,
                              const std::vector<HyperplaneTarget>& targets,
                              const std::vector<double>& r_grid);

} // namespace algcurve

#endif
