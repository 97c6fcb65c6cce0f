#ifndef ALGCURVE_PATH_HPP
#define ALGCURVE_PATH_HPP

#include <complex>
#include <string>
#include <vector>

namespace algcurve {

using Complex = std::complex<double>;

// Piecewise-smooth curve gamma: [0,1] -> C built from line and arc segments.
// Arcs start at the current endpoint and rotate around the given center by a
// signed angle (positive = counterclockwise).
class PathSpec {
public:
    struct Segment {
        enum class Type { Line, Arc };
        Type type;
        Complex to;      // Line target
        Complex center;  // Arc center
        double angle;    // Arc sweep, radians
    };

    PathSpec() : start_(0.0, 0.0) {}
    explicit PathSpec(Complex start) : start_(start) {}

    static PathSpec line(Complex from, Complex to);
    // Full or partial circle around `center`, starting at `from`.
    static PathSpec circle_loop(Complex center, Complex from, double angle);

    PathSpec& line_to(Complex to);
    PathSpec& arc(Complex center, double angle);

    Complex start() const { return start_; }
    Complex end() const;
    const std::vector<Segment>& segments() const { return segments_; }
    double min_clearance = 0.0;

    // Position within segment k at local parameter t in [0,1].
    Complex at(size_t k, double t) const;
    Complex segment_start(size_t k) const;
    double segment_length(size_t k) const;
    double total_length() const;

    PathSpec reversed() const;

    // Smallest distance from the path to a point (sampled; adequate for
    // clearance checks, not exact geometry).
    double distance_to(Complex p, int samples_per_segment = 64) const;

    std::string to_json_text() const;
    static PathSpec from_json_text(const std::string& text);

private:
    Complex start_;
    std::vector<Segment> segments_;
};

} // namespace algcurve

#endif
