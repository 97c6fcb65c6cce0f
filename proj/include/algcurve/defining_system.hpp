#ifndef ALGCURVE_DEFINING_SYSTEM_HPP
#define ALGCURVE_DEFINING_SYSTEM_HPP

#include <string>
#include <vector>

#include "algcurve/coefficient.hpp"

namespace algcurve {

using WPoly = Poly<RationalFunction>;

// One algebraic equation A_nu(z) W^nu + ... + A_0(z) = 0 defining a
// multi-valued coordinate. Coefficients are stored lowest power first and
// the leading coefficient must not vanish identically.
class DefiningPolynomial {
public:
    DefiningPolynomial() = default;
    explicit DefiningPolynomial(std::vector<Coefficient> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    Backend backend() const { return coeffs_.front().backend(); }
    const std::vector<Coefficient>& coeffs() const { return coeffs_; }
    const Coefficient& coeff(int i) const { return coeffs_[i]; }
    const Coefficient& leading() const { return coeffs_.back(); }

    // Values A_0(z)..A_nu(z).
    std::vector<Complex> coeff_values(Complex z) const;
    // Values A_0'(z)..A_nu'(z).
    std::vector<Complex> coeff_derivative_values(Complex z) const;

    Complex eval(Complex z, Complex w) const;

    // dw/dz = -Psi_z / Psi_w along a root branch.
    Complex implicit_derivative(Complex z, Complex w) const;

    DefiningPolynomial shifted(const GaussianRational& c) const;

    // True when every coefficient below the leading one vanishes, i.e. the
    // equation defines the zero function.
    bool defines_zero_function() const;

    std::string str(const std::string& var = "W") const;

private:
    std::vector<Coefficient> coeffs_;
    std::vector<Coefficient> dcoeffs_;  // derivatives, precomputed
};

// A list of component equations, one per projective coordinate of
// [1 : W_1 : ... : W_d]; total sheet count nu = nu_1 ... nu_d.
class AlgebroidCurve {
public:
    AlgebroidCurve() = default;
    explicit AlgebroidCurve(std::vector<DefiningPolynomial> components);

    int dim() const { return static_cast<int>(components_.size()); }
    int total_sheets() const { return nu_; }
    Backend backend() const { return components_.front().backend(); }
    const std::vector<DefiningPolynomial>& components() const { return components_; }
    const DefiningPolynomial& component(int i) const { return components_[i]; }

    AlgebroidCurve shifted(const GaussianRational& c) const;

private:
    std::vector<DefiningPolynomial> components_;
    int nu_ = 0;
};

struct CriticalData {
    std::vector<Complex> critical_points;
    std::vector<Complex> multiple_points;
    std::vector<Complex> leading_coeff_zeros;
    // Multiple points per component (same clustering as multiple_points).
    std::vector<std::vector<Complex>> per_component_multiple;
};

// ---- exact elimination ----------------------------------------------------

WPoly to_wpoly(const DefiningPolynomial& p);
DefiningPolynomial from_wpoly(const WPoly& p);

// Clears denominators and strips common polynomial content; scales so the
// leading z-coefficient of A_nu is 1. Root set in W is unchanged.
WPoly clear_and_primitive(const WPoly& p);

// Sylvester resultant of P and Q as polynomials in W over Q(i)(z).
Coefficient resultant(const DefiningPolynomial& P, const DefiningPolynomial& Q);

// Discriminant J_Psi = (-1)^{nu(nu-1)/2} Res(Psi, dPsi/dW) / A_nu. Vanishes
// exactly at multiple points. Requires nu >= 2.
Coefficient discriminant(const DefiningPolynomial& P);

DefiningPolynomial square_free_part(const DefiningPolynomial& P);

enum class AlgOp { Sum, Product };

// Defining polynomial whose roots at generic z are {alpha_i op beta_j},
// computed by eliminating W1 from P1(W1) and the op-specific substitute of
// P2, then taking the square-free part.
DefiningPolynomial alg_op(const DefiningPolynomial& P1, const DefiningPolynomial& P2, AlgOp op);

DefiningPolynomial alg_negate(const DefiningPolynomial& P);
DefiningPolynomial alg_reciprocal(const DefiningPolynomial& P);

struct CriticalOptions {
    double cluster_tolerance = 1e-9;  // scaled by max(1, |z|)
    double isolate_width = 1e-8;      // numeric-backend box isolation width
};

// All critical / multiple / leading-coefficient-zero points inside
// |z| < disk_radius. Exact backend works from resultant numerators; the
// numeric backend runs an argument-principle box search.
CriticalData critical_data(const AlgebroidCurve& C, double disk_radius,
                           const CriticalOptions& opt = {});

// Roots of an exact polynomial with multiplicities (Yun decomposition, then
// numeric roots of each square-free factor), restricted to |z| < radius.
std::vector<std::pair<Complex, int>> zpoly_roots_in_disk(const ZPoly& p, double radius);

// ---- JSON schema ----------------------------------------------------------

// { "components": [ { "var": "W1", "coeffs": ["-z","0","1"] } ],
//   "backend": "exact" }  with coeffs listed A_0..A_nu.
AlgebroidCurve curve_from_json_text(const std::string& text);
std::string curve_to_json_text(const AlgebroidCurve& c,
                               const std::vector<std::vector<std::string>>& coeff_strings);

} // namespace algcurve

#endif
