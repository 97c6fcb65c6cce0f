#ifndef ALGCURVE_PROBLEM_IO_HPP
#define ALGCURVE_PROBLEM_IO_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "algcurve/defining_system.hpp"
#include "algcurve/nevanlinna.hpp"

namespace algcurve {

struct TargetSpec {
    std::string type;  // "value" | "infinity" | "hyperplane"
    std::array<double, 2> value{0.0, 0.0};
    std::vector<std::array<double, 2>> coeffs;

    bool operator==(const TargetSpec&) const = default;
};

// Everything a run needs, round-trippable: parse(serialize(p)) == p.
struct ProblemFile {
    std::vector<std::vector<std::string>> components;  // coefficient strings A_0..A_nu
    std::string backend = "exact";
    double disk_radius = 0.0;  // 0: derived from the grid
    std::optional<std::array<double, 2>> base_point;
    double rmin = 2.0, rmax = 100.0;
    int steps = 25;
    std::vector<TargetSpec> targets;
    double track_tol = 1e-13;
    double cluster_tol = 1e-9;
    double quad_rel = 1e-6;
    std::array<double, 2> base_shift{0.0, 0.0};
    unsigned long long seed = 0;

    bool operator==(const ProblemFile&) const = default;

    std::string serialize() const;
    static ProblemFile parse(const std::string& text);

    AlgebroidCurve build_curve() const;  // base shift applied
    std::vector<HyperplaneTarget> build_targets() const;
    std::vector<double> grid() const;
    double effective_disk_radius() const;
};

struct RunManifest {
    std::string tool_version;
    std::string command;
    std::string input_hash;  // fnv1a of the problem text, hex
    unsigned long long seed = 0;
    double timing_ms = 0.0;
    std::vector<std::string> warnings;
    std::vector<std::string> outputs;

    std::string serialize() const;
};

// Writes via a temp file and rename, so readers never observe partial files.
void atomic_write(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

extern const char* kToolVersion;

} // namespace algcurve

#endif
