#include "algcurve/problem_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "algcurve/util.hpp"

namespace algcurve {

const char* kToolVersion = "algcurve 0.1.0";

namespace {

nlohmann::json complex_pair(const std::array<double, 2>& v) {
    return nlohmann::json::array({v[0], v[1]});
}

std::array<double, 2> pair_from(const nlohmann::json& j) {
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

} // namespace

std::string ProblemFile::serialize() const {
    nlohmann::json j;
    j["curve"]["backend"] = backend;
    j["curve"]["components"] = nlohmann::json::array();
    for (size_t i = 0; i < components.size(); ++i) {
        nlohmann::json cj;
        cj["var"] = "W" + std::to_string(i + 1);
        cj["coeffs"] = components[i];
        j["curve"]["components"].push_back(cj);
    }
    j["disk_radius"] = disk_radius;
    if (base_point) j["base_point"] = complex_pair(*base_point);
    j["r_grid"] = {{"rmin", rmin}, {"rmax", rmax}, {"steps", steps}};
    j["targets"] = nlohmann::json::array();
    for (const auto& t : targets) {
        nlohmann::json tj;
        tj["type"] = t.type;
        if (t.type == "value") tj["value"] = complex_pair(t.value);
        if (t.type == "hyperplane") {
            tj["coeffs"] = nlohmann::json::array();
            for (const auto& c : t.coeffs) tj["coeffs"].push_back(complex_pair(c));
        }
        j["targets"].push_back(tj);
    }
    j["tolerances"] = {{"track_tol", track_tol},
                       {"cluster_tol", cluster_tol},
                       {"quad_rel", quad_rel}};
    j["base_shift"] = complex_pair(base_shift);
    j["seed"] = seed;
    return j.dump(2);
}

ProblemFile ProblemFile::parse(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ProblemFile p;
    const auto& curve = j.at("curve");
    p.backend = curve.value("backend", "exact");
    if (p.backend != "exact" && p.backend != "numeric")
        throw ParseError("problem: unknown backend '" + p.backend + "'");
    for (const auto& cj : curve.at("components"))
        p.components.push_back(cj.at("coeffs").get<std::vector<std::string>>());
    p.disk_radius = j.value("disk_radius", 0.0);
    if (j.contains("base_point")) p.base_point = pair_from(j["base_point"]);
    if (j.contains("r_grid")) {
        p.rmin = j["r_grid"].value("rmin", 2.0);
        p.rmax = j["r_grid"].value("rmax", 100.0);
        p.steps = j["r_grid"].value("steps", 25);
    }
    if (j.contains("targets")) {
        for (const auto& tj : j["targets"]) {
            TargetSpec t;
            t.type = tj.at("type");
            if (t.type == "value")
                t.value = pair_from(tj.at("value"));
            else if (t.type == "hyperplane")
                for (const auto& c : tj.at("coeffs")) t.coeffs.push_back(pair_from(c));
            else if (t.type != "infinity")
                throw ParseError("problem: unknown target type '" + t.type + "'");
            p.targets.push_back(std::move(t));
        }
    }
    if (j.contains("tolerances")) {
        p.track_tol = j["tolerances"].value("track_tol", 1e-13);
        p.cluster_tol = j["tolerances"].value("cluster_tol", 1e-9);
        p.quad_rel = j["tolerances"].value("quad_rel", 1e-6);
    }
    if (j.contains("base_shift")) p.base_shift = pair_from(j["base_shift"]);
    p.seed = j.value("seed", 0ULL);
    if (p.track_tol <= 0 || p.cluster_tol <= 0 || p.quad_rel <= 0)
        throw ParseError("problem: tolerances must be positive");
    return p;
}

AlgebroidCurve ProblemFile::build_curve() const {
    Backend b = (backend == "exact") ? Backend::Exact : Backend::Numeric;
    std::vector<DefiningPolynomial> comps;
    for (const auto& strings : components) {
        std::vector<Coefficient> coeffs;
        for (const auto& s : strings) coeffs.push_back(parse_coefficient(s, b));
        comps.push_back(DefiningPolynomial(std::move(coeffs)));
    }
    AlgebroidCurve curve(std::move(comps));
    if (base_shift[0] != 0.0 || base_shift[1] != 0.0)
        curve = curve.shifted(GaussianRational(mpq_class(base_shift[0]), mpq_class(base_shift[1])));
    return curve;
}

std::vector<HyperplaneTarget> ProblemFile::build_targets() const {
    std::vector<HyperplaneTarget> out;
    for (const auto& t : targets) {
        if (t.type == "value")
            out.push_back(HyperplaneTarget::from_value(Complex(t.value[0], t.value[1])));
        else if (t.type == "infinity")
            out.push_back(HyperplaneTarget::infinity());
        else {
            std::vector<Complex> a;
            for (const auto& c : t.coeffs) a.emplace_back(c[0], c[1]);
            out.push_back(HyperplaneTarget::from_vector(std::move(a), "hyperplane"));
        }
    }
    return out;
}

std::vector<double> ProblemFile::grid() const { return log_grid(rmin, rmax, steps); }

double ProblemFile::effective_disk_radius() const {
    if (disk_radius > 0.0) return disk_radius;
    return rmax * 1.0000001;
}

std::string RunManifest::serialize() const {
    nlohmann::json j;
    j["tool_version"] = tool_version;
    j["command"] = command;
    j["input_hash"] = input_hash;
    j["seed"] = seed;
    j["timing_ms"] = timing_ms;
    j["warnings"] = warnings;
    j["outputs"] = outputs;
    return j.dump(2);
}

void atomic_write(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("atomic_write: cannot open " + tmp);
        os << content;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw Error("atomic_write: rename failed for " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("read_file: cannot open " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

} // namespace algcurve
