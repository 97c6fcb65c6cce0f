#include "algcurve/tracking.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace algcurve {

namespace {

double min_pairwise(const std::vector<Complex>& v) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = i + 1; j < v.size(); ++j) best = std::min(best, std::abs(v[i] - v[j]));
    return best;
}

// One predictor-corrector step of all roots of one component from z0 to z1.
// Returns false when Newton fails to converge or a root strays far enough to
// risk a sheet swap; the caller halves the step.
bool advance_component(const DefiningPolynomial& P, Complex z0, Complex z1,
                       std::vector<Complex>& roots, const TrackOptions& opt) {
    const Complex dz = z1 - z0;
    double guard = 0.35 * min_pairwise(roots);
    auto c1 = P.coeff_values(z1);
    double cscale = 0.0;
    for (const auto& c : c1) cscale = std::max(cscale, std::abs(c));
    if (cscale == 0.0 || std::abs(c1.back()) < 1e-280 * cscale) return false;
    auto c0 = P.coeff_values(z0);
    auto d0 = P.coeff_derivative_values(z0);

    std::vector<Complex> next(roots.size());
    for (size_t k = 0; k < roots.size(); ++k) {
        Complex w = roots[k];
        // first-order predictor where the implicit derivative is usable
        {
            Complex psi_z(0.0, 0.0), psi_w(0.0, 0.0), wp(1.0, 0.0);
            for (size_t j = 0; j < c0.size(); ++j) {
                psi_z += d0[j] * wp;
                if (j + 1 < c0.size()) psi_w += static_cast<double>(j + 1) * c0[j + 1] * wp;
                wp *= w;
            }
            if (std::abs(psi_w) > 0.0) {
                Complex step = -psi_z / psi_w * dz;
                if (std::isfinite(std::abs(step)) && std::abs(step) <= guard) w += step;
            }
        }
        // Newton on Psi(z1, .)
        bool ok = false;
        for (int it = 0; it < opt.newton_iters; ++it) {
            Complex p(0.0, 0.0), dp(0.0, 0.0);
            for (auto cit = c1.rbegin(); cit != c1.rend(); ++cit) {
                dp = dp * w + p;
                p = p * w + *cit;
            }
            double wsc = std::max(1.0, std::abs(w));
            double psc = cscale * std::pow(wsc, P.degree());
            if (std::abs(p) < opt.newton_tol * psc) {
                ok = true;
                break;
            }
            if (std::abs(dp) == 0.0) break;
            Complex step = p / dp;
            if (!std::isfinite(std::abs(step))) break;
            w -= step;
        }
        if (!ok) return false;
        if (std::abs(w - roots[k]) > guard && guard > 0.0) return false;
        next[k] = w;
    }
    double sep = min_pairwise(next);
    double scale = 1.0;
    for (const auto& w : next) scale = std::max(scale, std::abs(w));
    if (next.size() > 1 && sep < opt.collision_threshold * scale) return false;
    roots = std::move(next);
    return true;
}

} // namespace

std::vector<std::vector<int>> permutation_cycles(const std::vector<int>& sigma) {
    std::vector<std::vector<int>> cycles;
    std::vector<bool> seen(sigma.size(), false);
    for (size_t i = 0; i < sigma.size(); ++i) {
        if (seen[i]) continue;
        std::vector<int> cyc;
        int j = static_cast<int>(i);
        while (!seen[j]) {
            seen[j] = true;
            cyc.push_back(j);
            j = sigma[j];
        }
        cycles.push_back(std::move(cyc));
    }
    std::sort(cycles.begin(), cycles.end(),
              [](const auto& a, const auto& b) { return a.size() > b.size(); });
    return cycles;
}

std::vector<int> compose(const std::vector<int>& first, const std::vector<int>& then) {
    std::vector<int> out(first.size());
    for (size_t i = 0; i < first.size(); ++i) out[i] = then[first[i]];
    return out;
}

std::vector<int> inverse_permutation(const std::vector<int>& sigma) {
    std::vector<int> inv(sigma.size());
    for (size_t i = 0; i < sigma.size(); ++i) inv[sigma[i]] = static_cast<int>(i);
    return inv;
}

TrackResult track(const AlgebroidCurve& C, const PathSpec& path, const Fiber& start,
                  const TrackOptions& opt) {
    if (std::abs(start.base_point() - path.start()) > 1e-9 * std::max(1.0, std::abs(path.start())))
        throw Error("track: start fiber does not sit at the path start");

    const double total_length = std::max(path.total_length(), 1e-300);
    std::vector<std::vector<Complex>> cur = start.component_roots();

    for (size_t seg = 0; seg < path.segments().size(); ++seg) {
        double seg_len = path.segment_length(seg);
        if (seg_len == 0.0) continue;
        double t = 0.0;
        double dt = opt.initial_step;
        while (t < 1.0) {
            double step = std::min(dt, 1.0 - t);
            Complex z0 = path.at(seg, t);
            Complex z1 = path.at(seg, t + step);
            bool ok = true;
            std::vector<std::vector<Complex>> trial = cur;
            for (int i = 0; i < C.dim() && ok; ++i)
                ok = advance_component(C.component(i), z0, z1, trial[i], opt);
            if (ok) {
                cur = std::move(trial);
                t += step;
                dt = std::min(dt * 1.5, 0.25);
            } else {
                dt *= 0.5;
                if (dt * seg_len < opt.min_step_fraction * total_length) {
                    double sep = 1e300;
                    for (const auto& r : cur) sep = std::min(sep, min_pairwise(r));
                    if (sep < 1e-6)
                        throw SheetCollision(
                            "track: sheets collided; the path runs too close to the multiple set");
                    throw StepCollapse("track: step size collapsed at segment " +
                                       std::to_string(seg));
                }
            }
        }
    }

    // Canonicalize the end fiber and record the tracked bijection. Closed
    // loops reuse the start fiber's root list verbatim, so loop permutations
    // are immune to re-solve ordering noise.
    Complex zend = path.end();
    bool closed = std::abs(zend - path.start()) <= 1e-12 * std::max(1.0, std::abs(zend));
    std::vector<std::vector<Complex>> sorted = closed ? start.component_roots() : cur;
    std::vector<std::vector<int>> comp_maps(C.dim());
    for (int i = 0; i < C.dim(); ++i) {
        if (!closed) canonical_sort(sorted[i]);
        comp_maps[i].resize(cur[i].size());
        std::vector<bool> used(sorted[i].size(), false);
        for (size_t k = 0; k < cur[i].size(); ++k) {
            int best = -1;
            double bestd = std::numeric_limits<double>::infinity();
            for (size_t m = 0; m < sorted[i].size(); ++m) {
                if (used[m]) continue;
                double d = std::abs(cur[i][k] - sorted[i][m]);
                if (d < bestd) {
                    bestd = d;
                    best = static_cast<int>(m);
                }
            }
            double scale = std::max(1.0, std::abs(cur[i][k]));
            if (best < 0 || bestd > opt.match_tol * scale)
                throw SheetCollision("track: end fiber matching failed (ambiguous sheets)");
            used[best] = true;
            comp_maps[i][k] = best;
        }
    }
    Fiber end(zend, sorted);

    std::vector<int> sheet_map(start.nu());
    for (int j = 0; j < start.nu(); ++j) {
        auto digits = start.decode(j);
        for (int i = 0; i < C.dim(); ++i) digits[i] = comp_maps[i][digits[i]];
        sheet_map[j] = end.encode(digits);
    }

    TrackResult res;
    res.end = std::move(end);
    res.sheet_map = std::move(sheet_map);
    for (const auto& m : comp_maps)
        res.component_maps_flat.insert(res.component_maps_flat.end(), m.begin(), m.end());
    return res;
}

MonodromyPermutation monodromy(const AlgebroidCurve& C, Complex around, double radius,
                               const Fiber& base_fiber, const TrackOptions& opt,
                               const std::vector<Complex>* known_critical) {
    if (known_critical) {
        for (Complex c : *known_critical) {
            double d = std::abs(c - around);
            if (d > 1e-9 * std::max(1.0, std::abs(around)) && d <= radius)
                throw LoopContainsOtherBranchPoints(
                    "monodromy: loop of radius " + std::to_string(radius) +
                    " encloses another critical point");
        }
    }
    Complex east = around + radius;
    if (std::abs(base_fiber.base_point() - east) > 1e-9 * std::max(1.0, std::abs(east)))
        throw Error("monodromy: base fiber must sit at the east point of the loop");
    PathSpec loop = PathSpec::circle_loop(around, east, 2.0 * M_PI);
    TrackResult res = track(C, loop, base_fiber, opt);
    MonodromyPermutation mp;
    mp.branch_point = around;
    mp.loop_radius = radius;
    mp.sigma = res.sheet_map;
    return mp;
}

BranchOrderResult branch_order(const AlgebroidCurve& C, Complex point, double radius,
                               const TrackOptions& opt) {
    Fiber base = solve_fiber(C, point + radius);
    MonodromyPermutation mp = monodromy(C, point, radius, base, opt);
    auto cycles = permutation_cycles(mp.sigma);
    BranchOrderResult r;
    r.l = static_cast<int>(cycles.size());
    for (const auto& c : cycles) r.cycle_lengths.push_back(static_cast<int>(c.size()));
    r.order = C.total_sheets() - r.l;
    return r;
}

namespace {

// Straight spoke from `from` to `to`, detouring around obstacle disks.
void route_segment(PathSpec& path, Complex from, Complex to,
                   const std::vector<std::pair<Complex, double>>& obstacles, int depth) {
    if (depth > 8) {
        path.line_to(to);
        return;
    }
    Complex dir = to - from;
    double len = std::abs(dir);
    if (len == 0.0) return;
    for (const auto& [c, r] : obstacles) {
        // distance from obstacle center to the segment
        Complex rel = c - from;
        double t = std::clamp((rel.real() * dir.real() + rel.imag() * dir.imag()) / (len * len),
                              0.0, 1.0);
        Complex nearest = from + t * dir;
        double d = std::abs(c - nearest);
        if (t > 1e-9 && t < 1.0 - 1e-9 && d < 1.3 * r) {
            Complex n = (d > 1e-12) ? (nearest - c) / d : Complex(0.0, 1.0) * (dir / len);
            Complex waypoint = c + n * (1.8 * r);
            route_segment(path, from, waypoint, obstacles, depth + 1);
            route_segment(path, waypoint, to, obstacles, depth + 1);
            return;
        }
    }
    path.line_to(to);
}

} // namespace

std::vector<int> conjugated_loop_permutation(const AlgebroidCurve& C, const Fiber& base,
                                             Complex around, double radius,
                                             const std::vector<std::pair<Complex, double>>& obstacles,
                                             const TrackOptions& opt) {
    std::vector<std::pair<Complex, double>> others;
    for (const auto& ob : obstacles)
        if (std::abs(ob.first - around) > 1e-12) others.push_back(ob);

    Complex east = around + radius;
    PathSpec to_loop(base.base_point());
    route_segment(to_loop, base.base_point(), east, others, 0);
    TrackResult leg_in = track(C, to_loop, base, opt);
    MonodromyPermutation mp = monodromy(C, around, radius, leg_in.end, opt);
    TrackResult leg_back = track(C, to_loop.reversed(), leg_in.end, opt);
    // base -> east (m), loop (s), east -> base (m^{-1} by symmetry of the
    // reversed path): conjugate back to base indices.
    const std::vector<int>& m = leg_in.sheet_map;
    return compose(compose(m, mp.sigma), leg_back.sheet_map);
}

bool is_irreducible(const AlgebroidCurve& C, double disk_radius, const TrackOptions& opt) {
    if (C.dim() != 1)
        throw Error("is_irreducible: defined for single-component curves");
    const int nu = C.total_sheets();
    if (nu == 1) return true;

    CriticalData crit;
    try {
        crit = critical_data(C, disk_radius);
    } catch (const Error& e) {
        throw Inconclusive(std::string("is_irreducible: critical data failed: ") + e.what());
    }

    // Loop radii: half the distance to the nearest other critical point.
    std::vector<std::pair<Complex, double>> loops;
    for (Complex p : crit.multiple_points) {
        double d = disk_radius;
        for (Complex q : crit.critical_points)
            if (std::abs(q - p) > 1e-12) d = std::min(d, std::abs(q - p));
        loops.emplace_back(p, std::min(0.5 * d, 0.25 * disk_radius + 0.25));
    }

    // Base point: stay away from every critical point.
    const int visit_angles = 16;
    Complex base(0.0, 0.0);
    double best = -1.0;
    for (int a = 0; a < visit_angles; ++a) {
        for (double rad : {0.15, 0.35, 0.55, 0.75}) {
            double ang = 2.0 * M_PI * a / visit_angles + 0.19;
            Complex cand = std::polar(rad * disk_radius, ang);
            double d = 1e300;
            for (Complex q : crit.critical_points) d = std::min(d, std::abs(q - cand));
            if (d > best) {
                best = d;
                base = cand;
            }
        }
    }

    Fiber base_fiber;
    try {
        base_fiber = solve_fiber(C, base);
    } catch (const Error& e) {
        throw Inconclusive(std::string("is_irreducible: base fiber failed: ") + e.what());
    }

    // Union-find over sheet orbits of the generated monodromy group.
    std::vector<int> parent(nu);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };

    for (const auto& [p, r] : loops) {
        std::vector<int> sigma;
        try {
            sigma = conjugated_loop_permutation(C, base_fiber, p, r, loops, opt);
        } catch (const Error& e) {
            throw Inconclusive(std::string("is_irreducible: monodromy failed: ") + e.what());
        }
        for (int i = 0; i < nu; ++i) {
            int a = find(i), b = find(sigma[i]);
            if (a != b) parent[a] = b;
        }
    }
    int root0 = find(0);
    for (int i = 1; i < nu; ++i)
        if (find(i) != root0) return false;
    return true;
}

} // namespace algcurve
