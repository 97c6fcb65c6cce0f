#include "algcurve/aberth.hpp"

#include <cmath>

#include "algcurve/errors.hpp"

namespace algcurve {

void horner_eval(const std::vector<Complex>& coeffs, Complex x, Complex& p, Complex& dp) {
    p = Complex(0.0, 0.0);
    dp = Complex(0.0, 0.0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        dp = dp * x + p;
        p = p * x + *it;
    }
}

std::vector<Complex> polynomial_roots(const std::vector<Complex>& coeffs_in,
                                      const AberthOptions& opt) {
    std::vector<Complex> coeffs = coeffs_in;
    // Strip high-order zeros defensively; callers should pass a true degree.
    while (coeffs.size() > 1 && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
    const int n = static_cast<int>(coeffs.size()) - 1;
    if (n <= 0) return {};

    std::vector<Complex> roots;
    roots.reserve(n);

    // Roots at the origin come off directly.
    size_t zero_count = 0;
    while (zero_count < coeffs.size() - 1 && std::abs(coeffs[zero_count]) == 0.0) ++zero_count;
    for (size_t i = 0; i < zero_count; ++i) roots.push_back(Complex(0.0, 0.0));
    std::vector<Complex> c(coeffs.begin() + zero_count, coeffs.end());
    const int m = static_cast<int>(c.size()) - 1;
    if (m == 0) return roots;

    // Scale to unit leading coefficient.
    for (auto& ck : c) ck /= c.back();

    // Cauchy bound, with a geometric-mean lower radius to spread the start
    // circle between the smallest and largest root magnitudes.
    double upper = 0.0;
    for (int k = 0; k < m; ++k) upper = std::max(upper, std::abs(c[k]));
    upper = 1.0 + upper;
    double lower = std::pow(std::max(std::abs(c[0]), 1e-300), 1.0 / m);
    double radius = std::sqrt(std::max(lower, 1e-12) * upper);
    if (!std::isfinite(radius) || radius <= 0.0) radius = 1.0;

    std::vector<Complex> x(m);
    const double offset = 0.3764528;  // fixed phase so starts avoid axes
    for (int j = 0; j < m; ++j) {
        double ang = 2.0 * M_PI * (j + 0.5) / m + offset;
        x[j] = radius * Complex(std::cos(ang), std::sin(ang));
    }

    bool converged = false;
    for (int iter = 0; iter < opt.max_iterations && !converged; ++iter) {
        converged = true;
        for (int j = 0; j < m; ++j) {
            Complex p, dp;
            horner_eval(c, x[j], p, dp);
            if (std::abs(p) == 0.0) continue;
            Complex newton = (std::abs(dp) > 0.0) ? p / dp : Complex(1e-3, 1e-3);
            Complex sum(0.0, 0.0);
            for (int k = 0; k < m; ++k) {
                if (k == j) continue;
                Complex d = x[j] - x[k];
                if (std::abs(d) < 1e-300) d = Complex(1e-300, 0.0);
                sum += 1.0 / d;
            }
            Complex denom = 1.0 - newton * sum;
            Complex w = (std::abs(denom) > 1e-300) ? newton / denom : newton;
            x[j] -= w;
            if (std::abs(w) > opt.tolerance * (1.0 + std::abs(x[j]))) converged = false;
        }
    }
    if (!converged) {
        // Accept if residuals are small anyway (clustered roots converge
        // slowly in step size but sit on the polynomial).
        double worst = 0.0;
        for (int j = 0; j < m; ++j) {
            Complex p, dp;
            horner_eval(c, x[j], p, dp);
            double scale = std::max(1.0, std::pow(std::abs(x[j]), m));
            worst = std::max(worst, std::abs(p) / scale);
        }
        if (worst > 1e-8)
            throw RootFindingFailure("polynomial_roots: Aberth iteration stalled, residual " +
                                     std::to_string(worst));
    }

    for (int j = 0; j < m; ++j) {
        for (int s = 0; s < opt.polish_steps; ++s) {
            Complex p, dp;
            horner_eval(c, x[j], p, dp);
            if (std::abs(dp) == 0.0) break;
            Complex step = p / dp;
            if (!std::isfinite(std::abs(step))) break;
            x[j] -= step;
        }
        roots.push_back(x[j]);
    }
    return roots;
}

} // namespace algcurve
