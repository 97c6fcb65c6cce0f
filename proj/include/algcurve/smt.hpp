#ifndef ALGCURVE_SMT_HPP
#define ALGCURVE_SMT_HPP

#include "algcurve/nevanlinna.hpp"

namespace algcurve {

struct SMTConfig {
    std::vector<HyperplaneTarget> targets;
    double delta = 0.05;
    std::vector<double> r_grid;
    double epsilon_margin = 0.05;  // tolerance for the normalized-slack assertion
};

struct SMTReport {
    int q = 0, nu = 0, n = 0;
    double coefficient = 0.0;  // q - 2 nu - n + 1
    std::vector<double> r, T, sum_nbar;
    std::vector<double> slack;             // D(r) = sum Nbar - coefficient * T
    std::vector<double> normalized_slack;  // D(r) / T(r)
    double top_decile_min_normalized = 0.0;
    bool slack_assertion = false;
    // smallest nonnegative constants with D(r) >= -C1 (log(1+T) + delta log r) - C2
    double fitted_c1 = 0.0, fitted_c2 = 0.0;

    struct DefectRow {
        std::string label;
        double defect = 0.0;        // clamped
        double raw_defect = 0.0;    // before clamping
        bool omitted = false;       // no divisor points in the disk
    };
    std::vector<DefectRow> defects;
    double defect_sum = 0.0;
    double defect_bound = 0.0;  // 2 nu + n - 1
    std::string to_csv() const;
};

// Every subset of size min(q, n+1) of the coefficient vectors must be
// linearly independent (smallest singular value above 1e-10 of the largest).
bool general_position_check(const std::vector<HyperplaneTarget>& targets);

// Slack of the flat-plane second-main-theorem inequality
// (q - 2 nu - n + 1) T_F <= sum Nbar_F + small error. The assertion is the
// liminf form on the top decile of the grid.
SMTReport smt_margin(const NevanlinnaEngine& engine, const SMTConfig& config);

struct DefectTable {
    std::vector<SMTReport::DefectRow> rows;
    double sum = 0.0;
    double bound = 0.0;
    int omitted_count = 0;
};

// Defect per target: 1 - (slope of Nbar against T over the top half of the
// grid), clamped to [0, 1]. Throws NotTranscendentalEnough when T stays
// below 5 at the largest radius.
DefectTable defects(const NevanlinnaEngine& engine, const std::vector<HyperplaneTarget>& targets,
                    const std::vector<double>& r_grid);

} // namespace algcurve

#endif
