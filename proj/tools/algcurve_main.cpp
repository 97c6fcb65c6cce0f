// Command-line front end: constructing algebroid curves, continuing their
// fibers, and measuring the Nevanlinna functionals at desk scale.

#include <chrono>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "algcurve/covering.hpp"
#include "algcurve/curvature.hpp"
#include "algcurve/nevanlinna.hpp"
#include "algcurve/problem_io.hpp"
#include "algcurve/puiseux.hpp"
#include "algcurve/smt.hpp"
#include "algcurve/util.hpp"

using namespace algcurve;

namespace {

Complex parse_complex(const std::string& s) {
    ExprPtr e = parse_expression(s);
    return expr::eval(*e, Complex(0.0, 0.0));
}

std::string complex_str(Complex z) {
    std::string s = fmt17(z.real());
    if (z.imag() != 0.0) s += (z.imag() > 0 ? "+" : "") + fmt17(z.imag()) + "i";
    return s;
}

struct RunContext {
    ProblemFile problem;
    std::string problem_text;
    std::string out_dir;
    std::string format = "csv";
    RunManifest manifest;
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

    void load(const std::string& path) {
        problem_text = read_file(path);
        problem = ProblemFile::parse(problem_text);
        manifest.tool_version = kToolVersion;
        manifest.seed = problem.seed;
        char hex[32];
        std::snprintf(hex, sizeof(hex), "%016llx", fnv1a(problem_text));
        manifest.input_hash = hex;
    }

    void emit(const std::string& name, const std::string& content) {
        if (out_dir.empty()) return;
        std::filesystem::create_directories(out_dir);
        std::string path = out_dir + "/" + name;
        atomic_write(path, content);
        manifest.outputs.push_back(name);
    }

    void finish(const std::string& command) {
        manifest.command = command;
        manifest.timing_ms = std::chrono::duration<double, std::milli>(
                                 std::chrono::steady_clock::now() - t0)
                                 .count();
        if (!out_dir.empty()) {
            std::filesystem::create_directories(out_dir);
            atomic_write(out_dir + "/manifest.json", manifest.serialize());
        }
    }
};

nlohmann::json cycles_json(const std::vector<int>& sigma) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& c : permutation_cycles(sigma)) out.push_back(c);
    return out;
}

int cmd_define(RunContext& ctx) {
    AlgebroidCurve curve = ctx.problem.build_curve();
    std::cout << "backend: " << ctx.problem.backend << "\n";
    std::cout << "components: " << curve.dim() << ", total sheets nu = "
              << curve.total_sheets() << "\n";
    for (int i = 0; i < curve.dim(); ++i) {
        const auto& comp = curve.component(i);
        std::cout << "  W" << (i + 1) << ": degree " << comp.degree() << ", "
                  << comp.str("W" + std::to_string(i + 1)) << "\n";
        if (curve.backend() == Backend::Exact && comp.degree() >= 2)
            std::cout << "    discriminant: " << discriminant(comp).str() << "\n";
    }
    double R = ctx.problem.effective_disk_radius();
    CriticalData crit = critical_data(curve, R);
    std::cout << "critical points in |z| < " << R << ": " << crit.critical_points.size() << "\n";
    for (Complex p : crit.multiple_points)
        std::cout << "  multiple point " << complex_str(p) << "\n";
    for (Complex p : crit.leading_coeff_zeros)
        std::cout << "  leading-coefficient zero " << complex_str(p) << "\n";
    ctx.finish("define");
    return 0;
}

int cmd_fiber(RunContext& ctx, const std::string& at) {
    AlgebroidCurve curve = ctx.problem.build_curve();
    Fiber f = solve_fiber(curve, parse_complex(at));
    std::cout << "fiber over " << at << " (" << f.nu() << " sheets):\n";
    for (int j = 0; j < f.nu(); ++j) {
        std::cout << "  sheet " << j << ": (";
        auto t = f.tuple(j);
        for (size_t i = 0; i < t.size(); ++i)
            std::cout << (i ? ", " : "") << complex_str(t[i]);
        std::cout << ")\n";
    }
    ctx.finish("fiber");
    return 0;
}

int cmd_track(RunContext& ctx, const std::string& path_file) {
    AlgebroidCurve curve = ctx.problem.build_curve();
    PathSpec path = PathSpec::from_json_text(read_file(path_file));
    Fiber start = solve_fiber(curve, path.start());
    TrackResult res = track(curve, path, start);
    std::cout << "tracked " << start.nu() << " sheets from " << complex_str(path.start())
              << " to " << complex_str(path.end()) << "\n";
    for (int j = 0; j < start.nu(); ++j) {
        auto t = res.end.tuple(res.sheet_map[j]);
        std::cout << "  sheet " << j << " -> (";
        for (size_t i = 0; i < t.size(); ++i)
            std::cout << (i ? ", " : "") << complex_str(t[i]);
        std::cout << ")\n";
    }
    ctx.finish("track");
    return 0;
}

int cmd_monodromy(RunContext& ctx, const std::string& around, double radius) {
    AlgebroidCurve curve = ctx.problem.build_curve();
    Complex p = parse_complex(around);
    Fiber base = solve_fiber(curve, p + radius);
    MonodromyPermutation mp = monodromy(curve, p, radius, base);
    auto cycles = permutation_cycles(mp.sigma);
    std::cout << "monodromy around " << around << " radius " << radius << ": cycle type (";
    for (size_t i = 0; i < cycles.size(); ++i)
        std::cout << (i ? " " : "") << cycles[i].size();
    std::cout << ")\n";
    nlohmann::json j;
    j["around"] = {p.real(), p.imag()};
    j["radius"] = radius;
    j["permutation"] = mp.sigma;
    j["cycles"] = cycles_json(mp.sigma);
    ctx.emit("monodromy.json", j.dump(2));
    ctx.finish("monodromy");
    return 0;
}

int cmd_puiseux(RunContext& ctx, const std::string& at, int terms) {
    AlgebroidCurve curve = ctx.problem.build_curve();
    auto series = puiseux_expand(curve, parse_complex(at), terms);
    for (const auto& s : series) {
        std::cout << "component " << (s.component + 1) << " cycle of length " << s.lambda
                  << " at " << at << ":\n  w = ";
        bool first = true;
        for (const auto& t : s.terms) {
            if (!first) std::cout << " + ";
            first = false;
            std::cout << "(" << complex_str(t.b) << ")";
            if (t.k != 0) std::cout << "*(z-p)^(" << t.k << "/" << s.lambda << ")";
        }
        std::cout << "\n";
    }
    ctx.finish("puiseux");
    return 0;
}

int cmd_branch(RunContext& ctx) {
    AlgebroidCurve curve = ctx.problem.build_curve();
    CoveringModel model = build_covering(curve, ctx.problem.effective_disk_radius());
    std::cout << "covering: " << model.nu << " sheets, " << model.records.size()
              << " branch records\n";
    for (const auto& rec : model.records) {
        std::cout << "  at " << complex_str(rec.point) << ": cycles (";
        for (size_t i = 0; i < rec.cycle_lengths.size(); ++i)
            std::cout << (i ? " " : "") << rec.cycle_lengths[i];
        std::cout << "), order " << rec.order << "\n";
    }
    for (int k = 0; k < curve.dim(); ++k) {
        JkDivisor jk = jk_divisor(model, k);
        EstiCheck chk = check_esti(model, jk);
        std::cout << "J_" << (k + 1) << ": "
                  << (chk.vacuous ? "vacuous (repeated sheets)"
                                  : (chk.holds ? "D_F <= (J_k=0) holds" : "VIOLATED"))
                  << "\n";
    }
    ctx.emit("covering.json", covering_report_json(model));
    ctx.finish("branch");
    return 0;
}

int cmd_nevanlinna(RunContext& ctx) {
    AlgebroidCurve curve = ctx.problem.build_curve();
    CoveringModel model = build_covering(curve, ctx.problem.effective_disk_radius());
    NevanlinnaEngine engine(model);
    auto targets = ctx.problem.build_targets();
    NevanlinnaReport rep = build_report(engine, targets, ctx.problem.grid());
    std::string csv = rep.to_csv();
    if (ctx.out_dir.empty())
        std::cout << csv;
    else
        ctx.emit("nevanlinna.csv", csv);
    for (const auto& w : engine.warnings) ctx.manifest.warnings.push_back(w);
    ctx.finish("nevanlinna");
    return 0;
}

int cmd_fmt(RunContext& ctx, double max_dev) {
    AlgebroidCurve curve = ctx.problem.build_curve();
    CoveringModel model = build_covering(curve, ctx.problem.effective_disk_radius());
    NevanlinnaEngine engine(model);
    auto targets = ctx.problem.build_targets();
    if (targets.empty()) throw Error("fmt: no targets in problem file");
    bool pass = true;
    std::ostringstream csv;
    csv << "target,r,T,m,N,residual\n";
    for (size_t t = 0; t < targets.size(); ++t) {
        FmtReport rep = fmt_check(engine, targets[t], ctx.problem.grid());
        for (size_t i = 0; i < rep.r.size(); ++i)
            csv << t << "," << fmt17(rep.r[i]) << "," << fmt17(rep.T[i]) << ","
                << fmt17(rep.m[i]) << "," << fmt17(rep.N[i]) << "," << fmt17(rep.residual[i])
                << "\n";
        std::cout << "target " << targets[t].label << ": max residual deviation "
                  << rep.max_deviation_from_median
                  << (rep.max_deviation_from_median < max_dev ? " < " : " >= ") << max_dev
                  << "\n";
        if (!(rep.max_deviation_from_median < max_dev)) pass = false;
    }
    if (ctx.out_dir.empty())
        std::cout << csv.str();
    else
        ctx.emit("fmt.csv", csv.str());
    ctx.finish("fmt");
    return pass ? 0 : 2;
}

int cmd_smt(RunContext& ctx, double delta, double margin) {
    AlgebroidCurve curve = ctx.problem.build_curve();
    CoveringModel model = build_covering(curve, ctx.problem.effective_disk_radius());
    NevanlinnaEngine engine(model);
    SMTConfig config;
    config.targets = ctx.problem.build_targets();
    config.delta = delta;
    config.r_grid = ctx.problem.grid();
    config.epsilon_margin = margin;
    SMTReport rep = smt_margin(engine, config);
    std::cout << "coefficient (q - 2nu - n + 1) = " << rep.coefficient << "\n";
    std::cout << "top-decile min normalized slack = " << rep.top_decile_min_normalized << "\n";
    std::cout << "slack assertion: " << (rep.slack_assertion ? "pass" : "FAIL") << "\n";
    for (const auto& d : rep.defects)
        std::cout << "defect " << d.label << " = " << d.defect << (d.omitted ? " (omitted)" : "")
                  << "\n";
    if (rep.defect_bound > 0.0)
        std::cout << "defect sum " << rep.defect_sum << " <= bound " << rep.defect_bound << "\n";

    nlohmann::json summary;
    summary["coefficient"] = rep.coefficient;
    summary["top_decile_min_normalized_slack"] = rep.top_decile_min_normalized;
    summary["slack_assertion"] = rep.slack_assertion;
    summary["fitted_c1"] = rep.fitted_c1;
    summary["fitted_c2"] = rep.fitted_c2;
    summary["defect_sum"] = rep.defect_sum;
    summary["defect_bound"] = rep.defect_bound;
    ctx.emit("smt.csv", rep.to_csv());
    ctx.emit("smt_summary.json", summary.dump(2));
    ctx.finish("smt");
    return rep.slack_assertion ? 0 : 2;
}

KappaProfile kappa_from_json(const nlohmann::json& j) {
    std::string type = j.value("type", "constant");
    if (type == "constant") return KappaProfile::constant(j.value("value", 0.0));
    if (type == "expr") return KappaProfile::from_expression(j.at("expr"));
    if (type == "table")
        return KappaProfile::from_table(j.at("t").get<std::vector<double>>(),
                                        j.at("kappa").get<std::vector<double>>());
    throw ParseError("curvature: unknown kappa profile type '" + type + "'");
}

VolumeProfile volume_from_json(const nlohmann::json& j) {
    std::string type = j.value("type", "power");
    if (type == "power")
        return VolumeProfile::power_law(j.value("coeff", 1.0), j.value("exponent", 4.0));
    if (type == "expr") return VolumeProfile::from_expression(j.at("expr"));
    throw ParseError("curvature: unknown volume profile type '" + type + "'");
}

int cmd_curvature(const std::string& op, const std::string& profile_path,
                  const std::string& out_dir) {
    nlohmann::json j = nlohmann::json::parse(read_file(profile_path));
    std::ostringstream csv;
    if (op == "jacobi") {
        KappaProfile kappa = kappa_from_json(j.at("kappa"));
        auto grid = j.at("t_grid").get<std::vector<double>>();
        double tmax = *std::max_element(grid.begin(), grid.end());
        JacobiSolution sol(kappa, tmax);
        csv << "t,G,chi_lower,chi_upper\n";
        for (double t : grid)
            csv << fmt17(t) << "," << fmt17(sol(t)) << "," << fmt17(chi(0.0, t)) << ","
                << fmt17(chi(std::sqrt(std::max(0.0, -kappa(t))), t)) << "\n";
        ComparisonReport rep = comparison_check(kappa, grid);
        std::cout << "comparison bounds: " << (rep.holds ? "hold" : "VIOLATED") << "\n";
    } else if (op == "kfactor") {
        KappaProfile kappa = kappa_from_json(j.at("kappa"));
        int m = j.value("m", 1);
        double delta = j.value("delta", 0.05);
        auto grid = j.at("r_grid").get<std::vector<double>>();
        csv << "r,K,logK\n";
        for (double r : grid) {
            double K = K_factor(r, delta, kappa, m);
            csv << fmt17(r) << "," << fmt17(K) << "," << fmt17(std::log(K)) << "\n";
        }
        std::cout << "K factor evaluated at " << grid.size() << " radii\n";
    } else if (op == "hfactor") {
        VolumeProfile V = volume_from_json(j.at("volume"));
        double delta = j.value("delta", 0.0);
        auto grid = j.at("r_grid").get<std::vector<double>>();
        csv << "r,H,H_delta\n";
        for (double r : grid) {
            HFactors h = H_factors(V, r, delta);
            csv << fmt17(r) << "," << fmt17(h.H) << "," << fmt17(h.H_delta) << "\n";
        }
        std::cout << "H factors evaluated at " << grid.size() << " radii\n";
    } else if (op == "band") {
        VolumeProfile V = volume_from_json(j.at("volume"));
        double rho = j.value("rho", 1.0);
        auto [lo, hi] = green_band(V, rho, j.value("A", 1.0), j.value("B", 1.0));
        std::cout << "green band at rho=" << rho << ": [" << lo << ", " << hi << "]\n";
    } else {
        throw ParseError("curvature: unknown op '" + op + "'");
    }
    if (!out_dir.empty() && csv.tellp() > 0) {
        std::filesystem::create_directories(out_dir);
        atomic_write(out_dir + "/curvature.csv", csv.str());
    } else if (csv.tellp() > 0) {
        std::cout << csv.str();
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"algebroid curve construction, continuation, and value distribution"};
    app.require_subcommand(1);

    std::string problem_path, out_dir, format = "csv";
    unsigned long long seed_override = 0;
    bool seed_given = false;
    double rmin = 0, rmax = 0;
    int steps = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--problem", problem_path, "problem JSON file")->required();
        sub->add_option("--out-dir", out_dir, "output directory (stdout when omitted)");
        sub->add_option("--format", format, "csv|json");
        sub->add_option("--seed", seed_override, "override the problem seed")
            ->each([&](const std::string&) { seed_given = true; });
        sub->add_option("--rmin", rmin, "override grid rmin");
        sub->add_option("--rmax", rmax, "override grid rmax");
        sub->add_option("--steps", steps, "override grid steps");
    };

    auto* define = app.add_subcommand("define", "validate and summarize a curve");
    add_common(define);

    auto* fiber = app.add_subcommand("fiber", "solve one fiber");
    add_common(fiber);
    std::string at = "1";
    fiber->add_option("--at", at, "base point, e.g. 4+0i")->required();

    auto* track_cmd = app.add_subcommand("track", "continue a fiber along a path");
    add_common(track_cmd);
    std::string path_file;
    track_cmd->add_option("--path", path_file, "path JSON file")->required();

    auto* mono = app.add_subcommand("monodromy", "loop permutation around a point");
    add_common(mono);
    std::string around = "0";
    double radius = 0.5;
    mono->add_option("--around", around, "loop center")->required();
    mono->add_option("--radius", radius, "loop radius")->required();

    auto* puiseux_cmd = app.add_subcommand("puiseux", "fractional-power expansions");
    add_common(puiseux_cmd);
    std::string pu_at = "0";
    int terms = 3;
    puiseux_cmd->add_option("--at", pu_at, "branch point")->required();
    puiseux_cmd->add_option("--terms", terms, "retained exponent slots");

    auto* branch = app.add_subcommand("branch", "covering model and branch records");
    add_common(branch);

    auto* nev = app.add_subcommand("nevanlinna", "full functional table");
    add_common(nev);

    auto* fmt_cmd = app.add_subcommand("fmt", "first-main-theorem residual check");
    add_common(fmt_cmd);
    double max_dev = 0.05;
    fmt_cmd->add_option("--max-dev", max_dev, "residual deviation threshold");

    auto* smt_cmd = app.add_subcommand("smt", "second-main-theorem slack check");
    add_common(smt_cmd);
    double delta = 0.05, margin = 0.05;
    smt_cmd->add_option("--delta", delta, "Borel delta in the error shape");
    smt_cmd->add_option("--margin", margin, "normalized slack tolerance");

    auto* curv = app.add_subcommand("curvature", "curvature formula evaluators");
    std::string cop = "jacobi", profile_path, curv_out;
    curv->add_option("--op", cop, "jacobi|kfactor|hfactor|band")->required();
    curv->add_option("--profile", profile_path, "profile JSON file")->required();
    curv->add_option("--out-dir", curv_out, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (curv->parsed()) return cmd_curvature(cop, profile_path, curv_out);

        RunContext ctx;
        ctx.load(problem_path);
        ctx.out_dir = out_dir;
        ctx.format = format;
        if (seed_given) ctx.problem.seed = seed_override;
        if (rmin > 0) ctx.problem.rmin = rmin;
        if (rmax > 0) ctx.problem.rmax = rmax;
        if (steps > 0) ctx.problem.steps = steps;

        if (define->parsed()) return cmd_define(ctx);
        if (fiber->parsed()) return cmd_fiber(ctx, at);
        if (track_cmd->parsed()) return cmd_track(ctx, path_file);
        if (mono->parsed()) return cmd_monodromy(ctx, around, radius);
        if (puiseux_cmd->parsed()) return cmd_puiseux(ctx, pu_at, terms);
        if (branch->parsed()) return cmd_branch(ctx);
        if (nev->parsed()) return cmd_nevanlinna(ctx);
        if (fmt_cmd->parsed()) return cmd_fmt(ctx, max_dev);
        if (smt_cmd->parsed()) return cmd_smt(ctx, delta, margin);
        std::cerr << "no subcommand\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
