#include "algcurve/smt.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "algcurve/util.hpp"

namespace algcurve {

bool general_position_check(const std::vector<HyperplaneTarget>& targets) {
    if (targets.empty()) return true;
    const int n1 = static_cast<int>(targets.front().a.size());  // n + 1
    for (const auto& t : targets)
        if (static_cast<int>(t.a.size()) != n1)
            throw Error("general_position_check: mixed target dimensions");
    const int q = static_cast<int>(targets.size());
    const int k = std::min(q, n1);

    std::vector<int> idx(k);
    std::function<bool(int, int)> scan = [&](int pos, int start) -> bool {
        if (pos == k) {
            Eigen::MatrixXcd m(k, n1);
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < n1; ++j) m(i, j) = targets[idx[i]].a[j];
            Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
            const auto& sv = svd.singularValues();
            return sv(sv.size() - 1) > 1e-10 * sv(0);
        }
        for (int i = start; i < q; ++i) {
            idx[pos] = i;
            if (!scan(pos + 1, i + 1)) return false;
        }
        return true;
    };
    return scan(0, 0);
}

SMTReport smt_margin(const NevanlinnaEngine& engine, const SMTConfig& config) {
    if (!general_position_check(config.targets))
        throw DegenerateTargets("smt_margin: targets are not in general position");
    SMTReport rep;
    rep.q = static_cast<int>(config.targets.size());
    rep.nu = engine.model().nu;
    rep.n = config.targets.empty() ? 1 : config.targets.front().n();
    rep.coefficient = rep.q - 2.0 * rep.nu - rep.n + 1.0;
    rep.r = config.r_grid;
    rep.T = engine.characteristic_grid(config.r_grid);

    std::vector<ValueDivisor> divisors;
    for (const auto& t : config.targets)
        divisors.push_back(value_divisor(engine.model().curve, t.divisor_target(),
                                         engine.model().disk_radius));

    rep.sum_nbar.assign(config.r_grid.size(), 0.0);
    for (size_t i = 0; i < config.r_grid.size(); ++i)
        for (const auto& div : divisors)
            rep.sum_nbar[i] += engine.counting(div, config.r_grid[i], true);

    for (size_t i = 0; i < config.r_grid.size(); ++i) {
        double D = rep.sum_nbar[i] - rep.coefficient * rep.T[i];
        rep.slack.push_back(D);
        rep.normalized_slack.push_back(rep.T[i] > 1e-12 ? D / rep.T[i] : 0.0);
    }

    // liminf surrogate: minimum over the top decile of the grid
    size_t start = config.r_grid.size() - std::max<size_t>(1, config.r_grid.size() / 10);
    double minq = std::numeric_limits<double>::infinity();
    for (size_t i = start; i < config.r_grid.size(); ++i)
        minq = std::min(minq, rep.normalized_slack[i]);
    rep.top_decile_min_normalized = minq;
    rep.slack_assertion = minq >= -config.epsilon_margin;

    // smallest C with D >= -C (log(1+T) + delta log r + 1)
    double need = 0.0;
    for (size_t i = 0; i < config.r_grid.size(); ++i) {
        double scale = std::log(1.0 + std::max(0.0, rep.T[i])) +
                       config.delta * std::log(config.r_grid[i]) + 1.0;
        if (rep.slack[i] < 0.0) need = std::max(need, -rep.slack[i] / scale);
    }
    rep.fitted_c1 = need;
    rep.fitted_c2 = need;

    try {
        DefectTable table = defects(engine, config.targets, config.r_grid);
        rep.defects = table.rows;
        rep.defect_sum = table.sum;
        rep.defect_bound = table.bound;
    } catch (const NotTranscendentalEnough&) {
        rep.defect_bound = 2.0 * rep.nu + rep.n - 1.0;
    }
    return rep;
}

DefectTable defects(const NevanlinnaEngine& engine, const std::vector<HyperplaneTarget>& targets,
                    const std::vector<double>& r_grid) {
    DefectTable table;
    const int nu = engine.model().nu;
    const int n = targets.empty() ? 1 : targets.front().n();
    table.bound = 2.0 * nu + n - 1.0;

    std::vector<double> T = engine.characteristic_grid(r_grid);
    if (T.back() < 5.0)
        throw NotTranscendentalEnough("defects: T(r_max) = " + fmt17(T.back()) +
                                      " < 5, slope fit unreliable");

    size_t start = r_grid.size() / 2;
    std::vector<double> Ttop(T.begin() + start, T.end());
    for (const auto& t : targets) {
        ValueDivisor div =
            value_divisor(engine.model().curve, t.divisor_target(), engine.model().disk_radius);
        std::vector<double> nbar;
        for (size_t i = start; i < r_grid.size(); ++i)
            nbar.push_back(engine.counting(div, r_grid[i], true));
        double slope = 0.0;
        if (Ttop.size() >= 2) slope = linear_fit(Ttop, nbar).second;
        SMTReport::DefectRow row;
        row.label = t.label;
        row.raw_defect = 1.0 - slope;
        row.defect = std::clamp(row.raw_defect, 0.0, 1.0);
        row.omitted = div.points.empty();
        if (row.omitted) ++table.omitted_count;
        table.sum += row.defect;
        table.rows.push_back(row);
    }
    return table;
}

std::string SMTReport::to_csv() const {
    std::ostringstream os;
    os << "r,T,sum_nbar,slack,normalized_slack\n";
    for (size_t i = 0; i < r.size(); ++i)
        os << fmt17(r[i]) << "," << fmt17(T[i]) << "," << fmt17(sum_nbar[i]) << ","
           << fmt17(slack[i]) << "," << fmt17(normalized_slack[i]) << "\n";
    return os.str();
}

} // namespace algcurve
