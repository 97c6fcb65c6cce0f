#include "algcurve/path.hpp"

#include <cmath>

#include <json.hpp>

#include "algcurve/errors.hpp"

namespace algcurve {

PathSpec PathSpec::line(Complex from, Complex to) {
    PathSpec p(from);
    p.line_to(to);
    return p;
}

PathSpec PathSpec::circle_loop(Complex center, Complex from, double angle) {
    PathSpec p(from);
    p.arc(center, angle);
    return p;
}

PathSpec& PathSpec::line_to(Complex to) {
    segments_.push_back({Segment::Type::Line, to, Complex(0, 0), 0.0});
    return *this;
}

PathSpec& PathSpec::arc(Complex center, double angle) {
    segments_.push_back({Segment::Type::Arc, Complex(0, 0), center, angle});
    return *this;
}

Complex PathSpec::segment_start(size_t k) const {
    Complex cur = start_;
    for (size_t i = 0; i < k; ++i) {
        const Segment& s = segments_[i];
        if (s.type == Segment::Type::Line) {
            cur = s.to;
        } else {
            Complex rel = cur - s.center;
            cur = s.center + rel * std::polar(1.0, s.angle);
        }
    }
    return cur;
}

Complex PathSpec::at(size_t k, double t) const {
    Complex from = segment_start(k);
    const Segment& s = segments_[k];
    if (s.type == Segment::Type::Line) return from + t * (s.to - from);
    Complex rel = from - s.center;
    return s.center + rel * std::polar(1.0, t * s.angle);
}

Complex PathSpec::end() const { return segment_start(segments_.size()); }

double PathSpec::segment_length(size_t k) const {
    Complex from = segment_start(k);
    const Segment& s = segments_[k];
    if (s.type == Segment::Type::Line) return std::abs(s.to - from);
    return std::abs(from - s.center) * std::abs(s.angle);
}

double PathSpec::total_length() const {
    double L = 0.0;
    for (size_t k = 0; k < segments_.size(); ++k) L += segment_length(k);
    return L;
}

PathSpec PathSpec::reversed() const {
    PathSpec r(end());
    for (size_t k = segments_.size(); k-- > 0;) {
        const Segment& s = segments_[k];
        if (s.type == Segment::Type::Line)
            r.line_to(segment_start(k));
        else
            r.arc(s.center, -s.angle);
    }
    r.min_clearance = min_clearance;
    return r;
}

double PathSpec::distance_to(Complex p, int samples_per_segment) const {
    double best = std::abs(start_ - p);
    for (size_t k = 0; k < segments_.size(); ++k)
        for (int i = 1; i <= samples_per_segment; ++i)
            best = std::min(best, std::abs(at(k, double(i) / samples_per_segment) - p));
    return best;
}

std::string PathSpec::to_json_text() const {
    nlohmann::json j;
    j["start"] = {start_.real(), start_.imag()};
    j["segments"] = nlohmann::json::array();
    for (const auto& s : segments_) {
        nlohmann::json sj;
        if (s.type == Segment::Type::Line) {
            sj["type"] = "line";
            sj["to"] = {s.to.real(), s.to.imag()};
        } else {
            sj["type"] = "arc";
            sj["center"] = {s.center.real(), s.center.imag()};
            sj["angle"] = s.angle;
        }
        j["segments"].push_back(sj);
    }
    return j.dump();
}

PathSpec PathSpec::from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    auto pt = [](const nlohmann::json& a) { return Complex(a.at(0), a.at(1)); };
    PathSpec p(pt(j.at("start")));
    for (const auto& sj : j.at("segments")) {
        std::string type = sj.at("type");
        if (type == "line")
            p.line_to(pt(sj.at("to")));
        else if (type == "arc")
            p.arc(pt(sj.at("center")), sj.at("angle").get<double>());
        else
            throw ParseError("path: unknown segment type '" + type + "'");
    }
    if (j.contains("min_clearance")) p.min_clearance = j["min_clearance"];
    return p;
}

} // namespace algcurve
