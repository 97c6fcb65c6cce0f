#include "algcurve/covering.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "algcurve/aberth.hpp"
#include "algcurve/zero_search.hpp"

namespace algcurve {

std::vector<std::pair<Complex, double>> CoveringModel::loop_obstacles() const {
    std::vector<std::pair<Complex, double>> obs;
    obs.reserve(records.size());
    for (const auto& r : records) obs.emplace_back(r.point, r.loop_radius);
    return obs;
}

namespace {

// Points lift_evaluate and base selection must keep away from: the critical
// set plus coefficient poles (exact backend denominators).
std::vector<Complex> avoid_points(const AlgebroidCurve& C, const CriticalData& crit,
                                  double disk_radius) {
    std::vector<Complex> avoid = crit.critical_points;
    if (C.backend() == Backend::Exact) {
        for (const auto& comp : C.components())
            for (const auto& a : comp.coeffs()) {
                const ZPoly& den = a.exact().denominator();
                if (den.degree() > 0)
                    for (auto& [r, m] : zpoly_roots_in_disk(den, disk_radius))
                        avoid.push_back(r);
            }
    }
    return avoid;
}

Complex pick_base_point(const std::vector<Complex>& avoid, double disk_radius) {
    Complex best(0.0, 0.0);
    double best_d = -1.0;
    const int n_angles = 24;
    for (int a = 0; a < n_angles; ++a) {
        for (double frac : {0.0, 0.2, 0.35, 0.5, 0.65, 0.8}) {
            double ang = 2.0 * M_PI * a / n_angles + 0.2183;
            Complex cand = std::polar(frac * disk_radius, ang);
            double d = disk_radius;
            for (Complex q : avoid) d = std::min(d, std::abs(q - cand));
            if (d > best_d) {
                best_d = d;
                best = cand;
            }
        }
    }
    return best;
}

} // namespace

CoveringModel build_covering(const AlgebroidCurve& C, double disk_radius,
                             const CoveringOptions& opt) {
    CoveringModel model;
    model.curve = C;
    model.disk_radius = disk_radius;
    model.nu = C.total_sheets();
    model.critical = critical_data(C, disk_radius, opt.critical);

    auto avoid = avoid_points(C, model.critical, disk_radius);
    Complex base = pick_base_point(avoid, disk_radius);
    model.base_fiber = solve_fiber(C, base);

    // Loop radius per multiple point: half the distance to the nearest other
    // critical point, capped relative to the disk.
    std::vector<std::pair<Complex, double>> loops;
    for (Complex p : model.critical.multiple_points) {
        double d = disk_radius;
        for (Complex q : avoid)
            if (std::abs(q - p) > 1e-12) d = std::min(d, std::abs(q - p));
        d = std::min(d, std::abs(base - p));
        loops.emplace_back(p, std::max(1e-6, std::min(0.5 * d, 0.2 * disk_radius)));
    }

    for (const auto& [p, r] : loops) {
        std::vector<int> sigma =
            conjugated_loop_permutation(C, model.base_fiber, p, r, loops, opt.track);
        auto cycles = permutation_cycles(sigma);
        BranchRecord rec;
        rec.point = p;
        rec.loop_radius = r;
        for (const auto& c : cycles) rec.cycle_lengths.push_back(static_cast<int>(c.size()));
        rec.order = model.nu - static_cast<int>(cycles.size());
        rec.sigma.branch_point = p;
        rec.sigma.loop_radius = r;
        rec.sigma.sigma = std::move(sigma);
        model.records.push_back(std::move(rec));
    }
    return model;
}

namespace {

void route_around(PathSpec& path, Complex from, Complex to,
                  const std::vector<std::pair<Complex, double>>& obstacles, int depth) {
    if (depth > 8) {
        path.line_to(to);
        return;
    }
    Complex dir = to - from;
    double len = std::abs(dir);
    if (len == 0.0) return;
    for (const auto& [c, r] : obstacles) {
        Complex rel = c - from;
        double t = std::clamp((rel.real() * dir.real() + rel.imag() * dir.imag()) / (len * len),
                              0.0, 1.0);
        Complex nearest = from + t * dir;
        double d = std::abs(c - nearest);
        if (t > 1e-9 && t < 1.0 - 1e-9 && d < 1.2 * r) {
            Complex n = (d > 1e-12) ? (nearest - c) / d : Complex(0.0, 1.0) * (dir / len);
            Complex w = c + n * (1.7 * r);
            route_around(path, from, w, obstacles, depth + 1);
            route_around(path, w, to, obstacles, depth + 1);
            return;
        }
    }
    path.line_to(to);
}

} // namespace

std::vector<Complex> lift_evaluate(const CoveringModel& model, int sheet, Complex z,
                                   const PathSpec* hint, const TrackOptions& opt) {
    if (sheet < 0 || sheet >= model.nu) throw Error("lift_evaluate: sheet index out of range");
    Complex base = model.base_fiber.base_point();

    PathSpec path(base);
    if (hint) {
        path = *hint;
        if (std::abs(path.start() - base) > 1e-9 * std::max(1.0, std::abs(base)))
            throw Error("lift_evaluate: hint path must start at the model base point");
        if (std::abs(path.end() - z) > 1e-9 * std::max(1.0, std::abs(z)))
            throw Error("lift_evaluate: hint path must end at z");
    } else {
        // Default route: radial leg to |z| along the base ray, then an arc to
        // arg z. Falls back to a detoured straight route when the default
        // passes too close to a branch loop.
        PathSpec radial(base);
        double rz = std::abs(z);
        double rb = std::abs(base);
        if (rb == 0.0) {
            radial.line_to(z);
        } else {
            Complex mid = base / rb * rz;
            radial.line_to(mid);
            double sweep = std::arg(z) - std::arg(mid);
            while (sweep > M_PI) sweep -= 2.0 * M_PI;
            while (sweep < -M_PI) sweep += 2.0 * M_PI;
            if (rz > 0.0 && std::abs(sweep) > 1e-15) radial.arc(Complex(0.0, 0.0), sweep);
        }
        bool clear = true;
        for (const auto& [p, r] : model.loop_obstacles()) {
            if (std::abs(p - z) <= r || std::abs(p - base) <= r) continue;
            if (radial.distance_to(p) < 0.5 * r) {
                clear = false;
                break;
            }
        }
        if (clear) {
            path = radial;
        } else {
            std::vector<std::pair<Complex, double>> obstacles;
            for (const auto& ob : model.loop_obstacles())
                if (std::abs(ob.first - z) > ob.second) obstacles.push_back(ob);
            route_around(path, base, z, obstacles, 0);
        }
    }

    TrackResult res;
    try {
        res = track(model.curve, path, model.base_fiber, opt);
    } catch (const SheetCollision& e) {
        throw PathCrossesBranchSet(std::string("lift_evaluate: ") + e.what());
    } catch (const StepCollapse& e) {
        throw PathCrossesBranchSet(std::string("lift_evaluate: ") + e.what());
    }
    return res.end.tuple(res.sheet_map[sheet]);
}

// ---- divisors ---------------------------------------------------------------

int ValueDivisor::total_multiplicity(double r) const {
    int total = 0;
    for (const auto& [p, m] : points)
        if (std::abs(p) < r) total += m;
    return total;
}

DivisorTarget DivisorTarget::at_value(Complex v) {
    DivisorTarget t;
    t.kind = Kind::Value;
    t.value = v;
    return t;
}

DivisorTarget DivisorTarget::at_infinity() {
    DivisorTarget t;
    t.kind = Kind::Infinity;
    return t;
}

DivisorTarget DivisorTarget::at_hyperplane(std::vector<Complex> a) {
    DivisorTarget t;
    t.kind = Kind::Hyperplane;
    t.hyperplane = std::move(a);
    return t;
}

std::string DivisorTarget::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Value:
            os << "value " << value.real();
            if (value.imag() != 0.0) os << (value.imag() > 0 ? "+" : "") << value.imag() << "i";
            break;
        case Kind::Infinity: os << "value inf"; break;
        case Kind::Hyperplane: os << "hyperplane"; break;
    }
    return os.str();
}

namespace {

GaussianRational dyadic(Complex v) {
    return GaussianRational(mpq_class(v.real()), mpq_class(v.imag()));
}

std::vector<std::pair<Complex, int>> exact_value_points(const DefiningPolynomial& comp,
                                                        Complex a, double radius) {
    WPoly cleared = clear_and_primitive(to_wpoly(comp));
    GaussianRational av = dyadic(a);
    ZPoly acc;
    GaussianRational apow(1);
    for (int j = 0; j <= cleared.degree(); ++j) {
        acc = acc + cleared[j].numerator().scaled(apow);
        apow *= av;
    }
    if (acc.is_zero())
        throw TargetDegenerate("value_divisor: Psi(., a) vanishes identically");
    return zpoly_roots_in_disk(acc, radius);
}

std::vector<std::pair<Complex, int>> exact_infinity_points(const DefiningPolynomial& comp,
                                                           double radius) {
    WPoly cleared = clear_and_primitive(to_wpoly(comp));
    return zpoly_roots_in_disk(cleared.leading().numerator(), radius);
}

std::vector<std::pair<Complex, int>> numeric_search(const std::function<Complex(Complex)>& f,
                                                    double radius) {
    ZeroSearchOptions opt;
    auto zs = find_zeros(f, Complex(0.0, 0.0), radius * 1.0000001, opt);
    std::vector<std::pair<Complex, int>> out;
    for (const auto& z : zs)
        if (std::abs(z.location) < radius) out.emplace_back(z.location, z.multiplicity);
    return out;
}

} // namespace

ValueDivisor value_divisor(const AlgebroidCurve& C, const DivisorTarget& target,
                           double disk_radius) {
    ValueDivisor div;
    div.target = target.describe();
    const int d = C.dim();

    if (target.kind == DivisorTarget::Kind::Infinity) {
        // (W_i = inf) = (A_{i nu_i} = 0), per component.
        for (const auto& comp : C.components()) {
            if (C.backend() == Backend::Exact) {
                for (auto& pm : exact_infinity_points(comp, disk_radius)) div.points.push_back(pm);
            } else {
                const Coefficient& an = comp.leading();
                if (an.numeric()->kind == AnalyticExpr::Kind::Const) continue;
                for (auto& pm : numeric_search([&an](Complex z) { return an.eval(z); },
                                               disk_radius))
                    div.points.push_back(pm);
            }
        }
        return div;
    }

    if (target.kind == DivisorTarget::Kind::Value ||
        (target.kind == DivisorTarget::Kind::Hyperplane && d == 1)) {
        Complex a = target.value;
        if (target.kind == DivisorTarget::Kind::Hyperplane) {
            const auto& h = target.hyperplane;
            if (h.size() != 2) throw Error("value_divisor: hyperplane size mismatch for d=1");
            if (std::abs(h[1]) == 0.0)
                return value_divisor(C, DivisorTarget::at_infinity(), disk_radius);
            a = -h[0] / h[1];
        }
        if (d != 1)
            throw Error("value_divisor: coordinate-value targets require d = 1");
        const DefiningPolynomial& comp = C.component(0);
        if (C.backend() == Backend::Exact) {
            div.points = exact_value_points(comp, a, disk_radius);
        } else {
            // Psi(z, a) = A_nu prod (a - w_j): single-valued, zeros carry the
            // full multiplicity of (W = a).
            div.points = numeric_search([&comp, a](Complex z) { return comp.eval(z, a); },
                                        disk_radius);
        }
        return div;
    }

    // General hyperplane for d > 1: product over sheets of <a, (1, W)>.
    const auto& a = target.hyperplane;
    if (static_cast<int>(a.size()) != d + 1)
        throw Error("value_divisor: hyperplane coefficient count must be d+1");
    SolveOptions so;
    so.allow_near_critical = true;
    auto sheet_product = [&C, &a, &so](Complex z) {
        Fiber f = solve_fiber(C, z, so);
        Complex acc(1.0, 0.0);
        for (int j = 0; j < f.nu(); ++j) {
            auto t = f.tuple(j);
            Complex ip = a[0];
            for (size_t i = 0; i < t.size(); ++i) ip += a[i + 1] * t[i];
            acc *= ip;
        }
        return acc;
    };
    div.points = numeric_search(sheet_product, disk_radius);
    return div;
}

std::vector<std::pair<Complex, int>> branch_divisor(const CoveringModel& model) {
    std::vector<std::pair<Complex, int>> out;
    for (const auto& rec : model.records)
        if (rec.order > 0) out.emplace_back(rec.point, rec.order);
    return out;
}

// ---- J_k --------------------------------------------------------------------

namespace {

Complex component_discriminant_eval(const DefiningPolynomial& P, Complex z) {
    auto cv = P.coeff_values(z);
    auto roots = polynomial_roots(cv);
    Complex lead = cv.back();
    Complex acc(1.0, 0.0);
    for (int i = 0; i < 2 * P.degree() - 2; ++i) acc *= lead;
    for (size_t i = 0; i < roots.size(); ++i)
        for (size_t j = i + 1; j < roots.size(); ++j) {
            Complex d = roots[i] - roots[j];
            acc *= d * d;
        }
    return acc;
}

int order_at(const std::function<Complex(Complex)>& f, Complex p, double radius) {
    return winding_number(f, p, radius);
}

} // namespace

JkDivisor jk_divisor(const CoveringModel& model, int k) {
    const AlgebroidCurve& C = model.curve;
    if (k < 0 || k >= C.dim()) throw Error("jk_divisor: component index out of range");
    JkDivisor jk;
    jk.k = k;
    const int nu = model.nu;
    const int nuk = C.component(k).degree();
    const int rep = nu / nuk;  // sheet repetition count of coordinate k
    jk.identically_zero = rep > 1;

    // Candidate support: component-k multiple points plus every leading
    // coefficient zero.
    std::vector<Complex> support = model.critical.per_component_multiple.empty()
                                       ? std::vector<Complex>{}
                                       : model.critical.per_component_multiple[k];
    for (Complex p : model.critical.leading_coeff_zeros) support.push_back(p);

    for (Complex p : support) {
        double radius = model.disk_radius;
        for (Complex q : model.critical.critical_points)
            if (std::abs(q - p) > 1e-12) radius = std::min(radius, 0.45 * std::abs(q - p));
        radius = std::max(1e-7, std::min(radius, 0.1 * model.disk_radius));

        int ord = 0;
        if (C.component(k).degree() >= 2) {
            const DefiningPolynomial& comp = C.component(k);
            int disc_ord = order_at(
                [&comp](Complex z) { return component_discriminant_eval(comp, z); }, p, radius);
            ord += rep * rep * disc_ord;
        }
        for (int i = 0; i < C.dim(); ++i) {
            const Coefficient& an = C.component(i).leading();
            bool constant = C.backend() == Backend::Exact
                                ? an.exact().is_constant()
                                : an.numeric()->kind == AnalyticExpr::Kind::Const;
            if (constant) continue;
            int a_ord = order_at([&an](Complex z) { return an.eval(z); }, p, radius);
            ord += (2 * nu - 2) * (nu / C.component(i).degree()) * a_ord;
        }
        bool merged = false;
        for (auto& [q, o] : jk.points)
            if (std::abs(q - p) < 1e-8 * std::max(1.0, std::abs(p))) {
                o = std::max(o, ord);
                merged = true;
                break;
            }
        if (!merged && ord > 0) jk.points.emplace_back(p, ord);
    }
    return jk;
}

EstiCheck check_esti(const CoveringModel& model, const JkDivisor& jk) {
    EstiCheck chk;
    chk.k = jk.k;
    chk.vacuous = jk.identically_zero;
    for (const auto& rec : model.records) {
        int ord_jk = 0;
        for (const auto& [q, o] : jk.points)
            if (std::abs(q - rec.point) < 1e-7 * std::max(1.0, std::abs(rec.point))) ord_jk = o;
        chk.comparisons.emplace_back(rec.point, rec.order, ord_jk);
        if (!chk.vacuous && rec.order > ord_jk) chk.holds = false;
    }
    return chk;
}

std::string covering_report_json(const CoveringModel& model) {
    nlohmann::json j;
    j["sheets"] = model.nu;
    j["disk_radius"] = model.disk_radius;
    j["base_point"] = {model.base_fiber.base_point().real(),
                       model.base_fiber.base_point().imag()};
    j["branch_records"] = nlohmann::json::array();
    for (const auto& rec : model.records) {
        nlohmann::json rj;
        rj["point"] = {rec.point.real(), rec.point.imag()};
        rj["cycle_lengths"] = rec.cycle_lengths;
        rj["order"] = rec.order;
        rj["loop_radius"] = rec.loop_radius;
        rj["permutation"] = rec.sigma.sigma;
        j["branch_records"].push_back(rj);
    }
    j["multiple_points"] = nlohmann::json::array();
    for (Complex p : model.critical.multiple_points)
        j["multiple_points"].push_back({p.real(), p.imag()});
    j["leading_coeff_zeros"] = nlohmann::json::array();
    for (Complex p : model.critical.leading_coeff_zeros)
        j["leading_coeff_zeros"].push_back({p.real(), p.imag()});
    return j.dump(2);
}

} // namespace algcurve
