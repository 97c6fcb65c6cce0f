#include "algcurve/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "algcurve/errors.hpp"

namespace algcurve {

KappaProfile KappaProfile::from_expression(const std::string& text) {
    KappaProfile k;
    k.kind_ = Kind::Expr;
    k.expr_ = parse_expression(text);
    return k;
}

KappaProfile KappaProfile::from_table(std::vector<double> t, std::vector<double> kappa) {
    if (t.size() != kappa.size() || t.size() < 2)
        throw Error("KappaProfile: table needs at least two samples");
    if (!std::is_sorted(t.begin(), t.end()))
        throw Error("KappaProfile: table abscissae must be ascending");
    KappaProfile k;
    k.kind_ = Kind::Table;
    k.t_ = std::move(t);
    k.k_ = std::move(kappa);
    return k;
}

KappaProfile KappaProfile::constant(double value) {
    KappaProfile k;
    k.kind_ = Kind::Const;
    k.const_value_ = value;
    return k;
}

double KappaProfile::operator()(double t) const {
    switch (kind_) {
        case Kind::Const: return const_value_;
        case Kind::Expr: return expr::eval(*expr_, Complex(t, 0.0)).real();
        case Kind::Table: {
            if (t <= t_.front()) return k_.front();
            if (t >= t_.back()) return k_.back();
            auto it = std::upper_bound(t_.begin(), t_.end(), t);
            size_t i = static_cast<size_t>(it - t_.begin());
            double f = (t - t_[i - 1]) / (t_[i] - t_[i - 1]);
            return k_[i - 1] + f * (k_[i] - k_[i - 1]);
        }
    }
    return 0.0;
}

double chi(double s, double t) {
    if (s < 0.0 || t < 0.0) throw Error("chi: arguments must be nonnegative");
    double y = s * t;
    if (y < 1e-4) {
        // sinh(y)/y = 1 + y^2/6 + y^4/120 + ...
        return t * (1.0 + y * y / 6.0 + y * y * y * y / 120.0);
    }
    return std::sinh(y) / s;
}

namespace {

// One RK4 step of (G, G') with G'' = -kappa G.
inline void rk4_step(const KappaProfile& kappa, double t, double h, double& g, double& dg) {
    auto f = [&kappa](double tt, double gg, double dgg, double& kg, double& kdg) {
        kg = dgg;
        kdg = -kappa(tt) * gg;
    };
    double k1g, k1d, k2g, k2d, k3g, k3d, k4g, k4d;
    f(t, g, dg, k1g, k1d);
    f(t + 0.5 * h, g + 0.5 * h * k1g, dg + 0.5 * h * k1d, k2g, k2d);
    f(t + 0.5 * h, g + 0.5 * h * k2g, dg + 0.5 * h * k2d, k3g, k3d);
    f(t + h, g + h * k3g, dg + h * k3d, k4g, k4d);
    g += h / 6.0 * (k1g + 2.0 * k2g + 2.0 * k3g + k4g);
    dg += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
}

} // namespace

JacobiSolution::JacobiSolution(KappaProfile kappa, double t_max) : t_max_(t_max) {
    if (t_max <= 0.0) t_max_ = t_max = 1.0;
    // Fixed fine grid with one halving refinement check; RK4's h^4 error at
    // h ~ 1e-3 t_max is far below the 1e-9 target for smooth profiles.
    int n = std::max(2000, static_cast<int>(t_max / 0.002));
    n = std::min(n, 4000000);
    double h = t_max / n;
    ts_.reserve(n + 1);
    gs_.reserve(n + 1);
    dgs_.reserve(n + 1);
    double g = 0.0, dg = 1.0, t = 0.0;
    ts_.push_back(t);
    gs_.push_back(g);
    dgs_.push_back(dg);
    for (int i = 0; i < n; ++i) {
        rk4_step(kappa, t, h, g, dg);
        t += h;
        if (!std::isfinite(g) || !std::isfinite(dg))
            throw SolverFailure("JacobiSolution: solution overflowed at t = " +
                                std::to_string(t));
        ts_.push_back(t);
        gs_.push_back(g);
        dgs_.push_back(dg);
    }
}

double JacobiSolution::operator()(double t) const {
    if (t <= 0.0) return 0.0;
    if (t >= t_max_) t = t_max_;
    double h = ts_[1] - ts_[0];
    size_t i = std::min(ts_.size() - 2, static_cast<size_t>(t / h));
    // cubic Hermite on the step
    double u = (t - ts_[i]) / h;
    double g0 = gs_[i], g1 = gs_[i + 1], d0 = dgs_[i] * h, d1 = dgs_[i + 1] * h;
    double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * g0 + (u3 - 2 * u2 + u) * d0 + (-2 * u3 + 3 * u2) * g1 +
           (u3 - u2) * d1;
}

double jacobi_G(const KappaProfile& kappa, double t) {
    JacobiSolution sol(kappa, t);
    return sol(t);
}

ComparisonReport comparison_check(const KappaProfile& kappa, const std::vector<double>& t_grid,
                                  double tol) {
    ComparisonReport rep;
    double tmax = 0.0;
    for (double t : t_grid) tmax = std::max(tmax, t);
    JacobiSolution sol(kappa, tmax);
    for (double t : t_grid) {
        if (t < 0.0) throw Error("comparison_check: negative grid point");
        double g = sol(t);
        double lower = chi(0.0, t);
        double k = kappa(t);
        if (k > 1e-12) throw Error("comparison_check: profile must stay nonpositive");
        double upper = chi(std::sqrt(std::max(0.0, -k)), t);
        double scale = std::max({1.0, std::abs(lower), std::abs(upper)});
        rep.worst_lower = std::max(rep.worst_lower, (lower - g) / scale);
        rep.worst_upper = std::max(rep.worst_upper, (g - upper) / scale);
    }
    rep.holds = rep.worst_lower <= tol && rep.worst_upper <= tol;
    return rep;
}

double K_factor(double r, double delta, const KappaProfile& kappa, int m) {
    if (r <= 1.0 / 3.0) throw Error("K_factor: r must exceed 1/3");
    JacobiSolution sol(kappa, r);
    const double p = 1.0 - 2.0 * m;
    // integral of G^{1-2m} over [1/3, r] by composite Simpson on a fine grid
    int n = 4000;
    double a = 1.0 / 3.0;
    double h = (r - a) / n;
    double acc = std::pow(sol(a), p) + std::pow(sol(r), p);
    for (int i = 1; i < n; ++i)
        acc += std::pow(sol(a + i * h), p) * ((i % 2) ? 4.0 : 2.0);
    double integral = acc * h / 3.0;
    double one_plus = (1.0 + delta);
    return std::pow(r, p) * std::pow(integral, one_plus * one_plus) /
           std::pow(sol(r), p * one_plus);
}

LogKBound logK_bound_check(const KappaProfile& kappa, int m, double delta,
                           const std::vector<double>& r_grid, bool kappa_is_flat) {
    LogKBound rep;
    rep.r = r_grid;
    double worst = 0.0;
    for (double r : r_grid) {
        double logK = std::log(std::max(1e-300, K_factor(r, delta, kappa, m)));
        rep.logK.push_back(logK);
        double logK_plus = std::max(0.0, logK);
        double shape = kappa_is_flat ? (delta * std::log(r) + 1.0)
                                     : (std::sqrt(std::max(0.0, -kappa(r))) * r + 1.0);
        worst = std::max(worst, logK_plus / shape);
    }
    rep.fitted_c = worst;
    if (kappa_is_flat) {
        // the paper-rate check: log+ K / log r stays below (2m-1) delta
        // asymptotically; test at the largest grid point with 20% slack
        double r = r_grid.back();
        double logK_plus = std::max(0.0, rep.logK.back());
        rep.flat_rate_ok = logK_plus <= (2.0 * m - 1.0) * delta * std::log(r) * 1.2 + 1.0;
    }
    return rep;
}

VolumeProfile VolumeProfile::power_law(double coeff, double exponent) {
    VolumeProfile v;
    v.kind_ = Kind::Power;
    v.coeff_ = coeff;
    v.exponent_ = exponent;
    if (coeff <= 0.0) throw Error("VolumeProfile: coefficient must be positive");
    return v;
}

VolumeProfile VolumeProfile::from_expression(const std::string& text) {
    VolumeProfile v;
    v.kind_ = Kind::Expr;
    v.expr_ = parse_expression(text);
    return v;
}

double VolumeProfile::operator()(double t) const {
    double val = (kind_ == Kind::Power) ? coeff_ * std::pow(t, exponent_)
                                        : expr::eval(*expr_, Complex(t, 0.0)).real();
    if (!(val > 0.0)) throw Error("VolumeProfile: V(t) must stay positive");
    return val;
}

double VolumeProfile::tail_integral(double rho) const {
    if (rho <= 0.0) throw Error("VolumeProfile: tail integral needs rho > 0");
    if (kind_ == Kind::Power) {
        if (exponent_ <= 2.0)
            throw NonParabolicityViolated("VolumeProfile: power-law tail diverges for p <= 2");
        // int_rho^inf t^{1-p} dt / c = rho^{2-p} / (c (p-2))
        return std::pow(rho, 2.0 - exponent_) / (coeff_ * (exponent_ - 2.0));
    }
    // Numeric to a cutoff, then a fitted power-law tail bound. The local
    // log-log slope at the cutoff stands in for the asymptotic exponent.
    const double cutoff = std::max(1e6, rho * 1e3);
    double p_fit;
    {
        double t1 = cutoff * 0.5, t2 = cutoff;
        p_fit = std::log((*this)(t2) / (*this)(t1)) / std::log(t2 / t1);
    }
    if (p_fit <= 2.02)
        throw NonParabolicityViolated("VolumeProfile: fitted tail exponent " +
                                      std::to_string(p_fit) + " violates non-parabolicity");
    // Simpson over [rho, cutoff] in log-space
    int n = 20000;
    double la = std::log(rho), lb = std::log(cutoff), h = (lb - la) / n;
    auto f = [this](double lt) {
        double t = std::exp(lt);
        return t * t / (*this)(t);  // t/V dt = t^2/V dlog t
    };
    double acc = f(la) + f(lb);
    for (int i = 1; i < n; ++i) acc += f(la + i * h) * ((i % 2) ? 4.0 : 2.0);
    double head = acc * h / 3.0;
    double tail = std::pow(cutoff, 2.0 - p_fit) * std::pow(cutoff, p_fit) / (*this)(cutoff) /
                  (p_fit - 2.0);
    return head + tail;
}

HFactors H_factors(const VolumeProfile& V, double r, double delta) {
    HFactors h;
    double tail = V.tail_integral(r);
    double vr = V(r);
    h.H = vr / (r * r) * tail;
    h.H_delta = std::pow(vr / r, 1.0 + delta) * tail / r;
    return h;
}

std::pair<double, double> green_band(const VolumeProfile& V, double rho, double A, double B) {
    double tail = V.tail_integral(rho);
    return {A * tail, B * tail};
}

} // namespace algcurve
