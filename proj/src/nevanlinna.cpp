#include "algcurve/nevanlinna.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "algcurve/util.hpp"

namespace algcurve {

double GreenKernel::value(Complex z) const {
    double a = std::abs(z);
    if (a == 0.0 || a >= r) return a == 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return std::log(r / a) / M_PI;
}

double GreenKernel::boundary_average(const std::function<double(Complex)>& f, int samples) const {
    double acc = 0.0;
    for (int i = 0; i < samples; ++i) {
        double ang = 2.0 * M_PI * i / samples;
        acc += f(std::polar(r, ang));
    }
    return acc / samples;
}

HyperplaneTarget HyperplaneTarget::from_vector(std::vector<Complex> coeffs, std::string label) {
    double norm = 0.0;
    for (Complex c : coeffs) norm += std::norm(c);
    norm = std::sqrt(norm);
    if (norm == 0.0) throw Error("HyperplaneTarget: zero coefficient vector");
    for (Complex& c : coeffs) c /= norm;
    HyperplaneTarget t;
    t.a = std::move(coeffs);
    t.label = std::move(label);
    return t;
}

HyperplaneTarget HyperplaneTarget::from_value(Complex v) {
    std::ostringstream os;
    os << "value " << v.real();
    if (v.imag() != 0.0) os << (v.imag() > 0 ? "+" : "") << v.imag() << "i";
    return from_vector({-v, Complex(1.0, 0.0)}, os.str());
}

HyperplaneTarget HyperplaneTarget::infinity() {
    return from_vector({Complex(1.0, 0.0), Complex(0.0, 0.0)}, "value inf");
}

double HyperplaneTarget::u_D(const std::vector<Complex>& w) const {
    if (w.size() + 1 != a.size())
        throw Error("HyperplaneTarget: tuple dimension mismatch");
    // scale by the largest coordinate to stay finite near poles
    double mx = 1.0;
    for (Complex wi : w) mx = std::max(mx, std::abs(wi));
    double norm2 = 1.0 / (mx * mx);
    Complex ip = a[0] / mx;
    for (size_t i = 0; i < w.size(); ++i) {
        norm2 += std::norm(w[i] / mx);
        ip += a[i + 1] * (w[i] / mx);
    }
    double ip2 = std::norm(ip);
    if (ip2 == 0.0) throw BoundaryHitsDivisor("u_D: sheet lies on the target divisor");
    return 0.5 * std::log(norm2 / ip2);
}

DivisorTarget HyperplaneTarget::divisor_target() const {
    if (a.size() == 2) {
        if (std::abs(a[1]) == 0.0) return DivisorTarget::at_infinity();
        return DivisorTarget::at_value(-a[0] / a[1]);
    }
    return DivisorTarget::at_hyperplane(a);
}

// ---------------------------------------------------------------------------

NevanlinnaEngine::NevanlinnaEngine(const CoveringModel& model, QuadratureOptions opt)
    : model_(model), opt_(opt) {
    for (Complex p : model_.critical.critical_points) {
        double m = std::abs(p);
        if (m > 0.0) singular_radii_.push_back(m);
    }
    // coefficient poles contribute integrable density spikes as well
    if (model_.curve.backend() == Backend::Exact) {
        for (const auto& comp : model_.curve.components())
            for (const auto& c : comp.coeffs()) {
                const ZPoly& den = c.exact().denominator();
                if (den.degree() > 0)
                    for (auto& [root, mult] : zpoly_roots_in_disk(den, model_.disk_radius)) {
                        double m = std::abs(root);
                        if (m > 0.0) singular_radii_.push_back(m);
                    }
            }
    }
    std::sort(singular_radii_.begin(), singular_radii_.end());
    singular_radii_.erase(std::unique(singular_radii_.begin(), singular_radii_.end(),
                                      [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                          singular_radii_.end());
}

double NevanlinnaEngine::density(Complex z) const {
    const AlgebroidCurve& C = model_.curve;
    SolveOptions so;
    so.allow_near_critical = true;
    // roots and implicit derivatives per component
    std::vector<std::vector<Complex>> roots(C.dim()), deriv(C.dim());
    for (int i = 0; i < C.dim(); ++i) {
        const DefiningPolynomial& P = C.component(i);
        auto cv = P.coeff_values(z);
        auto dv = P.coeff_derivative_values(z);
        roots[i] = solve_component(P, z);
        deriv[i].resize(roots[i].size());
        for (size_t k = 0; k < roots[i].size(); ++k) {
            Complex w = roots[i][k];
            Complex psi_z(0.0, 0.0), psi_w(0.0, 0.0), wp(1.0, 0.0);
            for (size_t j = 0; j < cv.size(); ++j) {
                psi_z += dv[j] * wp;
                if (j + 1 < cv.size()) psi_w += static_cast<double>(j + 1) * cv[j + 1] * wp;
                wp *= w;
            }
            deriv[i][k] = (std::abs(psi_w) > 0.0) ? -psi_z / psi_w
                                                  : std::numeric_limits<double>::infinity();
        }
    }
    Fiber f(z, roots);
    double total = 0.0;
    for (int j = 0; j < f.nu(); ++j) {
        auto digits = f.decode(j);
        // zeta = (1, w_1..w_d), zeta' = (0, w'_1..w'_d), scaled by max |w|
        double mx = 1.0;
        for (int i = 0; i < C.dim(); ++i) mx = std::max(mx, std::abs(roots[i][digits[i]]));
        double n2 = 1.0 / (mx * mx), d2 = 0.0;
        Complex ip(0.0, 0.0);
        for (int i = 0; i < C.dim(); ++i) {
            Complex w = roots[i][digits[i]] / mx;
            Complex dw = deriv[i][digits[i]] / mx;
            n2 += std::norm(w);
            d2 += std::norm(dw);
            ip += dw * std::conj(w);
        }
        double s = (n2 * d2 - std::norm(ip)) / (n2 * n2);
        if (std::isfinite(s)) total += std::max(0.0, s);
        // non-finite sheets sit exactly on the multiple set; the excision
        // annulus makes their contribution negligible
    }
    return total / M_PI;
}

double NevanlinnaEngine::phi_average(double s) const {
    // Adaptive Simpson over theta with a periodic base grid.
    const int base = opt_.theta_base_panels;
    auto f = [this, s](double theta) {
        if (++evals_ > opt_.evaluation_budget)
            throw QuadratureBudgetExceeded("characteristic: theta quadrature budget exceeded");
        return density(std::polar(s, theta));
    };
    double total = 0.0;
    std::function<double(double, double, double, double, double, double, int)> simpson =
        [&](double a, double b, double fa, double fm, double fb, double whole,
            int depth) -> double {
        double m = 0.5 * (a + b);
        double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
        double flm = f(lm), frm = f(rm);
        double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        double err = left + right - whole;
        if (depth > 22 ||
            std::abs(err) < 15.0 * (opt_.theta_abs_tol + opt_.theta_rel_tol * std::abs(whole)))
            return left + right + err / 15.0;
        return simpson(a, m, fa, flm, fm, left, depth + 1) +
               simpson(m, b, fm, frm, fb, right, depth + 1);
    };
    for (int i = 0; i < base; ++i) {
        double a = 2.0 * M_PI * i / base;
        double b = 2.0 * M_PI * (i + 1) / base;
        double m = 0.5 * (a + b);
        double fa = f(a), fm = f(m), fb = f(b);
        double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        total += simpson(a, b, fa, fm, fb, whole, 0);
    }
    return total / (2.0 * M_PI);
}

namespace {

// 12-point Gauss-Legendre on [-1, 1].
const double kGLx[12] = {-0.9815606342467192, -0.9041172563704749, -0.7699026741943047,
                         -0.5873179542866175, -0.3678314989981802, -0.1252334085114689,
                         0.1252334085114689,  0.3678314989981802,  0.5873179542866175,
                         0.7699026741943047,  0.9041172563704749,  0.9815606342467192};
const double kGLw[12] = {0.0471753363865118, 0.1069393259953184, 0.1600783285433462,
                         0.2031674267230659, 0.2334925365383548, 0.2491470458134028,
                         0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
                         0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

struct RadialNode {
    double s, weight;  // quadrature node and weight for ds integration
};

} // namespace

std::vector<double> NevanlinnaEngine::characteristic_grid(const std::vector<double>& rs) const {
    if (rs.empty()) return {};
    for (size_t i = 1; i < rs.size(); ++i)
        if (rs[i] <= rs[i - 1]) throw Error("characteristic_grid: radii must be ascending");
    const double rmax = rs.back();
    if (rmax > model_.disk_radius + 1e-9)
        throw Error("characteristic_grid: grid exceeds the covering disk");

    // Panel breakpoints: grid radii plus singular radii, with excision
    // annuli around the singular ones.
    std::vector<std::pair<double, double>> panels;  // raw [a, b] before refinement
    std::vector<double> bps;
    for (double r : rs) bps.push_back(r);
    std::vector<double> excised;  // singular radii inside the range
    for (double m : singular_radii_)
        if (m < rmax * (1.0 + 1e-12)) {
            bps.push_back(m);
            excised.push_back(m);
        }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());

    auto is_singular = [&excised](double x) {
        for (double m : excised)
            if (std::abs(x - m) < 1e-12 * std::max(1.0, m)) return true;
        return false;
    };

    std::vector<RadialNode> nodes;
    auto add_panel = [&nodes, this](double a, double b) {
        if (b <= a) return;
        for (int q = 0; q < opt_.gauss_points; ++q) {
            double s = 0.5 * (a + b) + 0.5 * (b - a) * kGLx[q];
            nodes.push_back({s, 0.5 * (b - a) * kGLw[q]});
        }
    };
    // Geometric panels accumulating at the left endpoint; the last sliver of
    // relative width `cut` stays excised (the density spike there is
    // integrable and its mass is below tolerance).
    auto refine_left = [&add_panel](double a, double b, int levels, double cut) {
        double hi = b;
        for (int l = 0; l < levels && hi - a > cut; ++l) {
            double lo = a + 0.5 * (hi - a);
            if (lo - a < cut) lo = a + cut;
            add_panel(lo, hi);
            hi = lo;
        }
    };
    auto refine_right = [&add_panel](double a, double b, int levels, double cut) {
        double lo = a;
        for (int l = 0; l < levels && b - lo > cut; ++l) {
            double hi = b - 0.5 * (b - lo);
            if (b - hi < cut) hi = b - cut;
            add_panel(lo, hi);
            lo = hi;
        }
    };

    // Leading interval (0, first breakpoint]: geometric toward 0, and toward
    // the breakpoint when that radius is singular.
    {
        double b0 = bps.front();
        double top = b0;
        if (is_singular(b0)) {
            double cut = opt_.excise * std::max(1.0, b0);
            refine_right(0.5 * b0, b0 - cut, opt_.singular_levels, cut * 0.5);
            top = 0.5 * b0;
        }
        double hi = top;
        for (int l = 0; l < opt_.zero_end_levels; ++l) {
            double lo = 0.5 * hi;
            add_panel(lo, hi);
            hi = lo;
        }
        // the remaining (0, hi] mass is dropped; after 48 halvings it is far
        // below quadrature tolerance for any integrable density
    }
    for (size_t i = 0; i + 1 < bps.size(); ++i) {
        double a = bps[i], b = bps[i + 1];
        double cut_a = opt_.excise * std::max(1.0, a);
        double cut_b = opt_.excise * std::max(1.0, b);
        bool sing_a = is_singular(a), sing_b = is_singular(b);
        double mid = 0.5 * (a + b);
        if (!sing_a && !sing_b) {
            add_panel(a, b);
        } else if (sing_a && !sing_b) {
            refine_left(a, mid, opt_.singular_levels, cut_a);
            add_panel(mid, b);
        } else if (!sing_a && sing_b) {
            add_panel(a, mid);
            refine_right(mid, b, opt_.singular_levels, cut_b);
        } else {
            refine_left(a, mid, opt_.singular_levels, cut_a);
            refine_right(mid, b, opt_.singular_levels, cut_b);
        }
    }

    // Evaluate the angular average once per node.
    std::vector<double> phi(nodes.size());
    for (size_t i = 0; i < nodes.size(); ++i) phi[i] = phi_average(nodes[i].s);

    // T(r) = (2 pi / nu) Integral_0^r log(r/s) Phi(s) s ds, where Phi is the
    // circle average of the pullback density (per Lebesgue measure).
    std::vector<double> T(rs.size(), 0.0);
    for (size_t k = 0; k < rs.size(); ++k) {
        double r = rs[k];
        double acc = 0.0;
        for (size_t i = 0; i < nodes.size(); ++i) {
            if (nodes[i].s >= r) continue;
            acc += nodes[i].weight * std::log(r / nodes[i].s) * phi[i] * nodes[i].s;
        }
        T[k] = 2.0 * M_PI * acc / model_.nu;
    }
    return T;
}

double NevanlinnaEngine::characteristic(double r) const {
    return characteristic_grid({r}).front();
}

double NevanlinnaEngine::characteristic_direct(double r, int radial_steps,
                                               int theta_steps) const {
    // Midpoint in t against trapezoid in theta of the Green-weighted density:
    // T = (pi/nu) Int g_r(z) F*omega = (1/nu) Int log(r/|z|) sigma(z)/pi dA.
    double acc = 0.0;
    for (int i = 0; i < radial_steps; ++i) {
        double t = r * (i + 0.5) / radial_steps;
        bool near_singular = false;
        for (double m : singular_radii_)
            if (std::abs(t - m) < 2.0 * r / radial_steps) near_singular = true;
        if (near_singular) continue;  // midpoint cells straddling a spike are skipped
        double ring = 0.0;
        for (int j = 0; j < theta_steps; ++j)
            ring += density(std::polar(t, 2.0 * M_PI * j / theta_steps));
        ring /= theta_steps;
        acc += std::log(r / t) * ring * t * (r / radial_steps) * 2.0 * M_PI;
    }
    return acc / model_.nu;
}

double NevanlinnaEngine::proximity(const HyperplaneTarget& target, double r,
                                   std::vector<std::string>* warn) const {
    SolveOptions so;
    so.allow_near_critical = true;
    double radius = r;
    for (int attempt = 0; attempt < 4; ++attempt) {
        try {
            auto sheet_sum = [this, &target, &so, radius](double theta) {
                Fiber f = solve_fiber(model_.curve, std::polar(radius, theta), so);
                double acc = 0.0;
                for (int j = 0; j < f.nu(); ++j) acc += target.u_D(f.tuple(j));
                return acc;
            };
            // Trapezoid with doubling and one Richardson step; the integrand
            // is periodic and smooth off divisor hits.
            int m = 64;
            double prev = 0.0;
            for (int i = 0; i < m; ++i) prev += sheet_sum(2.0 * M_PI * i / m);
            prev /= m;
            for (int round = 0; round < 6; ++round) {
                int m2 = m * 2;
                double acc = 0.0;
                for (int i = 0; i < m; ++i) acc += sheet_sum(2.0 * M_PI * (2 * i + 1) / m2);
                double cur = 0.5 * prev + 0.5 * acc / m;
                double rich = cur + (cur - prev) / 3.0;
                if (std::abs(cur - prev) < 1e-9 + 1e-8 * std::abs(cur))
                    return rich / model_.nu;
                prev = cur;
                m = m2;
            }
            return prev / model_.nu;
        } catch (const BoundaryHitsDivisor&) {
            radius *= 1.0 + 1e-6;
            if (warn)
                warn->push_back("proximity: boundary hit a divisor point, r nudged to " +
                                fmt17(radius));
        }
    }
    throw BoundaryHitsDivisor("proximity: boundary keeps hitting the divisor after nudges");
}

double NevanlinnaEngine::counting(const ValueDivisor& divisor, double r, bool truncated) const {
    double acc = 0.0;
    for (const auto& [p, mult] : divisor.points) {
        double m = std::abs(p);
        if (m >= r) continue;
        if (m < 1e-12)
            throw DivisorPointAtOrigin(
                "counting: divisor point at the origin; use the base-shift option");
        acc += (truncated ? 1.0 : static_cast<double>(mult)) * std::log(r / m);
    }
    return acc / model_.nu;
}

double NevanlinnaEngine::branch_counting(double r) const {
    double acc = 0.0;
    for (const auto& rec : model_.records) {
        double m = std::abs(rec.point);
        if (rec.order <= 0 || m >= r) continue;
        if (m < 1e-12)
            throw DivisorPointAtOrigin(
                "branch_counting: branch point at the origin; use the base-shift option");
        acc += rec.order * std::log(r / m);
    }
    return acc / model_.nu;
}

FmtReport fmt_check(const NevanlinnaEngine& engine, const HyperplaneTarget& target,
                    const std::vector<double>& r_grid) {
    FmtReport rep;
    rep.r = r_grid;
    rep.T = engine.characteristic_grid(r_grid);
    ValueDivisor div = value_divisor(engine.model().curve, target.divisor_target(),
                                     engine.model().disk_radius);
    for (size_t i = 0; i < r_grid.size(); ++i) {
        double m = engine.proximity(target, r_grid[i]);
        double N = engine.counting(div, r_grid[i], false);
        rep.m.push_back(m);
        rep.N.push_back(N);
        rep.residual.push_back(rep.T[i] - m - N);
    }
    double med = median(rep.residual);
    for (double res : rep.residual)
        rep.max_deviation_from_median =
            std::max(rep.max_deviation_from_median, std::abs(res - med));
    return rep;
}

BranBoundReport bran_bound_check(const NevanlinnaEngine& engine,
                                 const std::vector<double>& r_grid) {
    BranBoundReport rep;
    rep.r = r_grid;
    rep.T = engine.characteristic_grid(r_grid);
    const int nu = engine.model().nu;
    for (size_t i = 0; i < r_grid.size(); ++i) {
        rep.n_bran.push_back(engine.branch_counting(r_grid[i]));
        rep.slack.push_back(rep.n_bran[i] - (2.0 * nu - 2.0) * rep.T[i]);
    }
    // After an initial ramp (first fifth of the grid), the slack must not
    // climb above its running maximum.
    size_t ramp = std::max<size_t>(1, r_grid.size() / 5);
    double runmax = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < r_grid.size(); ++i) {
        if (i >= ramp)
            rep.max_above_running_max =
                std::max(rep.max_above_running_max, rep.slack[i] - runmax);
        runmax = std::max(runmax, rep.slack[i]);
    }
    if (!std::isfinite(rep.max_above_running_max)) rep.max_above_running_max = 0.0;
    return rep;
}

NevanlinnaReport build_report(const NevanlinnaEngine& engine,
                              const std::vector<HyperplaneTarget>& targets,
                              const std::vector<double>& r_grid) {
    NevanlinnaReport rep;
    rep.r = r_grid;
    rep.T = engine.characteristic_grid(r_grid);
    rep.nu = engine.model().nu;
    rep.n = engine.model().curve.dim();
    for (const auto& t : targets) rep.target_labels.push_back(t.label);
    for (double r : r_grid) rep.N_bran.push_back(engine.branch_counting(r));
    for (const auto& t : targets) {
        ValueDivisor div =
            value_divisor(engine.model().curve, t.divisor_target(), engine.model().disk_radius);
        std::vector<double> mi, Ni, Nbari, resi;
        for (size_t i = 0; i < r_grid.size(); ++i) {
            double m = engine.proximity(t, r_grid[i]);
            double N = engine.counting(div, r_grid[i], false);
            double Nbar = engine.counting(div, r_grid[i], true);
            mi.push_back(m);
            Ni.push_back(N);
            Nbari.push_back(Nbar);
            resi.push_back(rep.T[i] - m - N);
        }
        rep.m.push_back(std::move(mi));
        rep.N.push_back(std::move(Ni));
        rep.Nbar.push_back(std::move(Nbari));
        rep.fmt_residual.push_back(std::move(resi));
    }
    return rep;
}

std::string NevanlinnaReport::to_csv() const {
    std::ostringstream os;
    os << "r,T";
    for (size_t t = 0; t < target_labels.size(); ++t)
        os << ",m_" << t << ",N_" << t << ",Nbar_" << t;
    os << ",N_bran";
    for (size_t t = 0; t < target_labels.size(); ++t) os << ",fmt_residual_" << t;
    os << "\n";
    for (size_t i = 0; i < r.size(); ++i) {
        os << fmt17(r[i]) << "," << fmt17(T[i]);
        for (size_t t = 0; t < target_labels.size(); ++t)
            os << "," << fmt17(m[t][i]) << "," << fmt17(N[t][i]) << "," << fmt17(Nbar[t][i]);
        os << "," << fmt17(N_bran[i]);
        for (size_t t = 0; t < target_labels.size(); ++t) os << "," << fmt17(fmt_residual[t][i]);
        os << "\n";
    }
    return os.str();
}

} // namespace algcurve
