#ifndef ALGCURVE_UTIL_HPP
#define ALGCURVE_UTIL_HPP

#include <string>
#include <vector>

namespace algcurve {

// Full-precision decimal formatting (17 significant digits) so CSV diffs
// are meaningful across reruns.
std::string fmt17(double v);

double median(std::vector<double> v);

// Least-squares line y = a + b x; returns {a, b}.
std::pair<double, double> linear_fit(const std::vector<double>& x, const std::vector<double>& y);

// Log-spaced grid, inclusive endpoints.
std::vector<double> log_grid(double rmin, double rmax, int steps);

// FNV-1a over bytes, for input manifests.
unsigned long long fnv1a(const std::string& data);

} // namespace algcurve

#endif
