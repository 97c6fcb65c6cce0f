#ifndef ALGCURVE_TRACKING_HPP
#define ALGCURVE_TRACKING_HPP

#include <vector>

#include "algcurve/fiber.hpp"
#include "algcurve/path.hpp"

namespace algcurve {

struct TrackOptions {
    double newton_tol = 1e-13;
    int newton_iters = 40;
    double initial_step = 1.0 / 32.0;     // fraction of a segment
    double min_step_fraction = 1e-14;     // of total path length -> StepCollapse
    double collision_threshold = 1e-9;    // relative sheet separation floor
    double match_tol = 1e-6;              // end-fiber matching slack
};

struct TrackResult {
    Fiber end;                   // canonical fiber at gamma(1)
    std::vector<int> sheet_map;  // start canonical sheet -> end canonical sheet
    std::vector<int> component_maps_flat;  // per-component maps, concatenated (diagnostic)
};

// Analytic continuation of a full fiber along a path by first-order
// prediction and Newton correction, with adaptive step halving. The start
// fiber must sit at path.start().
TrackResult track(const AlgebroidCurve& C, const PathSpec& path, const Fiber& start,
                  const TrackOptions& opt = {});

struct MonodromyPermutation {
    Complex branch_point{0.0, 0.0};
    double loop_radius = 0.0;
    std::vector<int> sigma;  // canonical index at base -> canonical index after the loop

    bool is_identity() const {
        for (size_t i = 0; i < sigma.size(); ++i)
            if (sigma[i] != static_cast<int>(i)) return false;
        return true;
    }
};

std::vector<std::vector<int>> permutation_cycles(const std::vector<int>& sigma);
std::vector<int> compose(const std::vector<int>& first, const std::vector<int>& then);
std::vector<int> inverse_permutation(const std::vector<int>& sigma);

// Permutation of the canonical fiber at `around + radius` under one
// counterclockwise loop. `base_fiber` must live at that east point; pass
// known critical points to reject loops enclosing more than one of them.
MonodromyPermutation monodromy(const AlgebroidCurve& C, Complex around, double radius,
                               const Fiber& base_fiber, const TrackOptions& opt = {},
                               const std::vector<Complex>* known_critical = nullptr);

struct BranchOrderResult {
    int l = 0;                      // number of local sheet cycles
    std::vector<int> cycle_lengths; // lambda_1..lambda_l, descending
    int order = 0;                  // nu - l
};

BranchOrderResult branch_order(const AlgebroidCurve& C, Complex point, double radius,
                               const TrackOptions& opt = {});

// Loop permutation conjugated back to an arbitrary base fiber: base -> east
// point of the loop circle (detouring around obstacle disks), once around,
// and back. Obstacles are (center, radius) pairs of loops to stay clear of.
std::vector<int> conjugated_loop_permutation(const AlgebroidCurve& C, const Fiber& base,
                                             Complex around, double radius,
                                             const std::vector<std::pair<Complex, double>>& obstacles,
                                             const TrackOptions& opt = {});

// Monodromy-transitivity irreducibility test for a single-component curve:
// true iff the group generated by loops around all multiple points inside
// the disk acts transitively on the sheets.
bool is_irreducible(const AlgebroidCurve& C, double disk_radius, const TrackOptions& opt = {});

} // namespace algcurve

#endif
