#include "algcurve/util.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace algcurve {

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double median(std::vector<double> v) {
    if (v.empty()) throw std::runtime_error("median of empty vector");
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::runtime_error("linear_fit: need at least two points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    double denom = n * sxx - sx * sx;
    double b = (n * sxy - sx * sy) / denom;
    double a = (sy - b * sx) / n;
    return {a, b};
}

std::vector<double> log_grid(double rmin, double rmax, int steps) {
    if (steps < 2 || rmin <= 0.0 || rmax <= rmin)
        throw std::runtime_error("log_grid: invalid parameters");
    std::vector<double> out(steps);
    for (int i = 0; i < steps; ++i)
        out[i] = rmin * std::pow(rmax / rmin, double(i) / (steps - 1));
    return out;
}

unsigned long long fnv1a(const std::string& data) {
    unsigned long long h = 1469598103934665603ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace algcurve
