#include "algcurve/puiseux.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace algcurve {

double PuiseuxSeries::leading_exponent() const {
    for (const auto& t : terms)
        if (t.k != 0) return static_cast<double>(t.k) / lambda;
    return 0.0;
}

Complex PuiseuxSeries::eval_eta(Complex eta) const {
    Complex acc(0.0, 0.0);
    for (const auto& t : terms) {
        Complex p = std::pow(eta, static_cast<double>(t.k));
        acc += t.b * p;
    }
    return acc;
}

std::vector<Complex> PuiseuxSeries::eval_at(Complex z) const {
    Complex rel = z - branch_point;
    double mag = std::pow(std::abs(rel), 1.0 / lambda);
    double ang = std::arg(rel);
    std::vector<Complex> out;
    out.reserve(lambda);
    for (int m = 0; m < lambda; ++m)
        out.push_back(eval_eta(std::polar(mag, (ang + 2.0 * M_PI * m) / lambda)));
    return out;
}

namespace {

// Track all roots of one component around `lambda_total` turns of the circle
// |z - p| = s, recording positions at each sample angle. Row m holds the
// roots (in start order) at angle 2 pi m / M.
std::vector<std::vector<Complex>> sample_loops(const DefiningPolynomial& P, Complex p, double s,
                                               int turns, int M,
                                               const std::vector<Complex>& start_roots,
                                               const TrackOptions& opt) {
    std::vector<std::vector<Complex>> samples;
    samples.reserve(turns * M + 1);
    samples.push_back(start_roots);
    std::vector<Complex> cur = start_roots;
    AlgebroidCurve single{std::vector<DefiningPolynomial>{P}};
    for (int m = 1; m <= turns * M; ++m) {
        double a0 = 2.0 * M_PI * (m - 1) / M;
        double a1 = 2.0 * M_PI * m / M;
        Complex from = p + std::polar(s, a0);
        PathSpec step(from);
        step.arc(p, a1 - a0);
        Fiber f(from, {cur});
        TrackResult tr = track(single, step, f, opt);
        // keep tracked (not canonical) order: invert the map
        std::vector<Complex> next(cur.size());
        const auto& sorted = tr.end.component_roots()[0];
        for (size_t k = 0; k < cur.size(); ++k) next[k] = sorted[tr.sheet_map[k]];
        cur = std::move(next);
        samples.push_back(cur);
    }
    return samples;
}

} // namespace

std::vector<PuiseuxSeries> puiseux_expand(const AlgebroidCurve& C, Complex point, int n_terms,
                                          const PuiseuxOptions& opt) {
    if (n_terms < 1) throw Error("puiseux_expand: n_terms must be positive");

    double s = opt.sample_radius;
    if (s <= 0.0) {
        double d = 1.0;
        CriticalData crit = critical_data(C, std::abs(point) + 2.0);
        for (Complex q : crit.critical_points) {
            double dist = std::abs(q - point);
            if (dist > 1e-10) d = std::min(d, 0.45 * dist);
        }
        s = std::min(0.1 * std::max(1.0, std::abs(point)), d);
    }

    std::vector<PuiseuxSeries> out;
    const int M = opt.samples_per_turn;

    for (int ci = 0; ci < C.dim(); ++ci) {
        const DefiningPolynomial& P = C.component(ci);
        Complex east = point + s;
        auto roots = solve_component(P, east);
        canonical_sort(roots);

        // One preliminary turn for the cycle structure of this component.
        AlgebroidCurve single{std::vector<DefiningPolynomial>{P}};
        Fiber base(east, {roots});
        MonodromyPermutation mp = monodromy(single, point, s, base, opt.track);
        auto cycles = permutation_cycles(mp.sigma);

        int turns = 1;
        for (const auto& c : cycles)
            turns = std::lcm(turns, static_cast<int>(c.size()));
        auto samples = sample_loops(P, point, s, turns, M, roots, opt.track);

        for (const auto& cyc : cycles) {
            const int lambda = static_cast<int>(cyc.size());
            const int N = lambda * M;
            const int rep = cyc.front();

            // Uniformized samples: following sheet `rep` through lambda
            // consecutive turns traces w as a function of eta on the circle
            // |eta| = s^{1/lambda}.
            std::vector<Complex> w(N);
            bool pole = false;
            for (int m = 0; m < N; ++m) {
                w[m] = samples[m][rep];
                if (!std::isfinite(std::abs(w[m])) || std::abs(w[m]) > 1e12) pole = true;
            }
            if (pole)
                throw ExpansionDiverged(
                    "puiseux_expand: sheet magnitude overflow on the sample circle");

            // DFT: c_k = (1/N) sum w_m e^{-2 pi i k m / N} estimates
            // b_k s^{k/lambda}. Negative k capture pole cycles.
            double wmax = 0.0;
            for (const auto& v : w) wmax = std::max(wmax, std::abs(v));
            const int kmin = -(2 * lambda * C.total_sheets());
            const int kmax = N / 2 - 1;
            std::vector<std::pair<int, Complex>> measured;
            for (int k = kmin; k <= kmax; ++k) {
                Complex acc(0.0, 0.0);
                for (int m = 0; m < N; ++m)
                    acc += w[m] * std::polar(1.0, -2.0 * M_PI * k * m / N);
                acc /= static_cast<double>(N);
                if (std::abs(acc) > opt.drop_tolerance * std::max(wmax, 1e-30))
                    measured.emplace_back(k, acc);
            }

            // Truncate: constant plus slots tau .. tau+n_terms-1, where tau is
            // the first nonconstant index present.
            int tau = 0;
            for (const auto& [k, c] : measured)
                if (k != 0) {
                    tau = k;
                    break;
                }
            PuiseuxSeries series;
            series.branch_point = point;
            series.component = ci;
            series.lambda = lambda;
            series.cycle = cyc;
            double sl = std::pow(s, 1.0 / lambda);
            for (const auto& [k, c] : measured) {
                bool keep = (k == 0) || (tau != 0 && k >= tau && k < tau + n_terms);
                if (!keep) continue;
                series.terms.push_back({k, c / std::pow(sl, static_cast<double>(k))});
            }

            // Consistency check against freshly solved roots closer in.
            Complex ztest = point + std::polar(0.5 * s, 0.7);
            auto test_roots = solve_component(P, ztest);
            auto vals = series.eval_at(ztest);
            double scale = std::max(1.0, wmax);
            double worst = 0.0;
            for (Complex v : vals) {
                double bestd = std::numeric_limits<double>::infinity();
                for (Complex r : test_roots) bestd = std::min(bestd, std::abs(v - r));
                worst = std::max(worst, bestd);
            }
            double trunc_scale = std::pow(std::pow(0.5 * s, 1.0 / lambda),
                                          static_cast<double>(std::max(1, tau + n_terms)));
            if (worst > opt.validate_tolerance * scale + 10.0 * trunc_scale)
                throw ExpansionDiverged("puiseux_expand: fitted residual " +
                                        std::to_string(worst) + " exceeds tolerance");
            out.push_back(std::move(series));
        }
    }
    return out;
}

} // namespace algcurve
