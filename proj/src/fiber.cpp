#include "algcurve/fiber.hpp"

#include <algorithm>
#include <cmath>

#include "algcurve/aberth.hpp"

namespace algcurve {

Fiber::Fiber(Complex base_point, std::vector<std::vector<Complex>> component_roots)
    : base_(base_point), roots_(std::move(component_roots)) {
    nu_ = 1;
    for (const auto& r : roots_) nu_ *= static_cast<int>(r.size());
}

std::vector<int> Fiber::decode(int sheet) const {
    std::vector<int> digits(roots_.size());
    for (size_t i = roots_.size(); i-- > 0;) {
        int ni = static_cast<int>(roots_[i].size());
        digits[i] = sheet % ni;
        sheet /= ni;
    }
    return digits;
}

int Fiber::encode(const std::vector<int>& digits) const {
    int idx = 0;
    for (size_t i = 0; i < roots_.size(); ++i)
        idx = idx * static_cast<int>(roots_[i].size()) + digits[i];
    return idx;
}

std::vector<Complex> Fiber::tuple(int sheet) const {
    auto digits = decode(sheet);
    std::vector<Complex> t(roots_.size());
    for (size_t i = 0; i < roots_.size(); ++i) t[i] = roots_[i][digits[i]];
    return t;
}

std::vector<std::vector<Complex>> Fiber::tuples() const {
    std::vector<std::vector<Complex>> out;
    out.reserve(nu_);
    for (int j = 0; j < nu_; ++j) out.push_back(tuple(j));
    return out;
}

void canonical_sort(std::vector<Complex>& roots) {
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    // Re-sort groups whose real parts agree up to solver noise by imaginary
    // part, so the canonical order is stable across repeated solves (e.g.
    // conjugate root pairs on the imaginary axis).
    size_t i = 0;
    while (i < roots.size()) {
        size_t j = i + 1;
        double scale = std::max(1.0, std::abs(roots[i]));
        while (j < roots.size() && std::abs(roots[j].real() - roots[i].real()) < 1e-9 * scale)
            ++j;
        if (j - i > 1)
            std::sort(roots.begin() + i, roots.begin() + j,
                      [](Complex a, Complex b) { return a.imag() < b.imag(); });
        i = j;
    }
}

std::vector<Complex> solve_component(const DefiningPolynomial& P, Complex z) {
    auto cv = P.coeff_values(z);
    double scale = 0.0;
    for (const auto& c : cv) scale = std::max(scale, std::abs(c));
    if (scale == 0.0) throw RootFindingFailure("solve_component: all coefficients vanish at z");
    if (std::abs(cv.back()) <= 1e-300 * scale)
        throw PoleAtBase("solve_component: leading coefficient vanishes at z");
    return polynomial_roots(cv);
}

Fiber solve_fiber(const AlgebroidCurve& C, Complex z, const SolveOptions& opt) {
    std::vector<std::vector<Complex>> roots;
    roots.reserve(C.dim());
    for (const auto& comp : C.components()) {
        auto r = solve_component(comp, z);
        if (!opt.allow_near_critical) {
            for (size_t i = 0; i < r.size(); ++i)
                for (size_t j = i + 1; j < r.size(); ++j) {
                    double sep = std::abs(r[i] - r[j]);
                    double scale = std::max({1.0, std::abs(r[i]), std::abs(r[j])});
                    if (sep < opt.separation_threshold * scale)
                        throw NearCritical("solve_fiber: root separation " +
                                           std::to_string(sep) + " below threshold at z");
                }
        }
        canonical_sort(r);
        roots.push_back(std::move(r));
    }
    return Fiber(z, std::move(roots));
}

} // namespace algcurve
