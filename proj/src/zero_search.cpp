#include "algcurve/zero_search.hpp"

#include <cmath>
#include <optional>

#include "algcurve/errors.hpp"

namespace algcurve {

namespace {

struct Box {
    double x0, x1, y0, y1;
    double width() const { return std::max(x1 - x0, y1 - y0); }
    Complex center() const { return Complex(0.5 * (x0 + x1), 0.5 * (y0 + y1)); }
};

class Search {
public:
    Search(const std::function<Complex(Complex)>& f, const ZeroSearchOptions& opt)
        : f_(f), opt_(opt) {}

    std::vector<FoundZero> run(Box box) {
        explore(box, 0);
        return std::move(found_);
    }

private:
    Complex eval(Complex z) {
        if (++evals_ > opt_.max_evaluations)
            throw RootFindingFailure("find_zeros: evaluation budget exceeded");
        return f_(z);
    }

    // Winding number of f along the box boundary, or nullopt when a sample
    // comes too close to a zero of f (caller nudges the box).
    std::optional<int> winding(const Box& b) {
        std::vector<Complex> corners = {Complex(b.x0, b.y0), Complex(b.x1, b.y0),
                                        Complex(b.x1, b.y1), Complex(b.x0, b.y1)};
        double total = 0.0;
        for (int side = 0; side < 4; ++side) {
            Complex a = corners[side], c = corners[(side + 1) % 4];
            auto piece = side_argument(a, c);
            if (!piece) return std::nullopt;
            total += *piece;
        }
        double turns = total / (2.0 * M_PI);
        int w = static_cast<int>(std::lround(turns));
        if (std::abs(turns - w) > 0.25) return std::nullopt;  // under-resolved
        return w;
    }

    std::optional<double> side_argument(Complex a, Complex b) {
        Complex fa = eval(a), fb = eval(b);
        double scale = std::max(std::abs(fa), std::abs(fb));
        if (scale == 0.0) return std::nullopt;
        return segment_argument(a, fa, b, fb, 0);
    }

    std::optional<double> segment_argument(Complex a, Complex fa, Complex b, Complex fb,
                                            int depth) {
        if (std::abs(fa) == 0.0 || std::abs(fb) == 0.0) return std::nullopt;
        double d = std::arg(fb / fa);
        // A full phase wrap between samples aliases to a small |d|, so the
        // first few levels subdivide unconditionally.
        if (depth >= opt_.min_refine_depth && std::abs(d) < M_PI / 2.0) return d;
        if (depth >= opt_.max_refine_depth) return std::nullopt;
        Complex m = 0.5 * (a + b);
        Complex fm = eval(m);
        if (std::abs(fm) <= opt_.boundary_tiny * (std::abs(fa) + std::abs(fb)))
            return std::nullopt;
        auto left = segment_argument(a, fa, m, fm, depth + 1);
        if (!left) return std::nullopt;
        auto right = segment_argument(m, fm, b, fb, depth + 1);
        if (!right) return std::nullopt;
        return *left + *right;
    }

    void explore(Box b, int nudge) {
        auto w = winding(b);
        if (!w) {
            if (nudge >= 6)
                throw RootFindingFailure("find_zeros: could not resolve a box boundary");
            // Inflate slightly; the parent partition tolerates small overlaps
            // because results are deduplicated at collection time.
            double g = b.width() * 0.013776 * (nudge + 1);
            explore(Box{b.x0 - g, b.x1 + g, b.y0 - g, b.y1 + g}, nudge + 1);
            return;
        }
        if (*w == 0) return;
        if (b.width() <= opt_.isolate_width) {
            record(b.center(), *w);
            return;
        }
        // Split at an irrational fraction so axis-sitting zeros miss edges.
        double fx = 0.5000137 + 0.0007 * std::sin(double(7 * nudge + 1));
        double mx = b.x0 + (b.x1 - b.x0) * fx;
        double my = b.y0 + (b.y1 - b.y0) * fx;
        explore(Box{b.x0, mx, b.y0, my}, 0);
        explore(Box{mx, b.x1, b.y0, my}, 0);
        explore(Box{b.x0, mx, my, b.y1}, 0);
        explore(Box{mx, b.x1, my, b.y1}, 0);
    }

    void record(Complex z, int mult) {
        if (mult == 1) {
            for (int i = 0; i < opt_.newton_polish; ++i) {
                double h = 1e-7 * std::max(1.0, std::abs(z));
                Complex fz = eval(z);
                Complex df = (eval(z + h) - eval(z - h)) / (2.0 * h);
                if (std::abs(df) == 0.0) break;
                Complex step = fz / df;
                if (!std::isfinite(std::abs(step)) || std::abs(step) > 1.0) break;
                z -= step;
            }
        }
        for (auto& fz : found_) {
            if (std::abs(fz.location - z) < 20.0 * opt_.isolate_width * std::max(1.0, std::abs(z)))
                return;  // duplicate from an inflated sibling
        }
        found_.push_back({z, mult});
    }

    const std::function<Complex(Complex)>& f_;
    ZeroSearchOptions opt_;
    std::vector<FoundZero> found_;
    long evals_ = 0;
};

} // namespace

int winding_number(const std::function<Complex(Complex)>& f, Complex center, double radius,
                   const ZeroSearchOptions& opt) {
    const int base = 64;
    double total = 0.0;
    std::vector<std::pair<double, Complex>> ring(base + 1);
    for (int i = 0; i <= base; ++i) {
        double ang = 2.0 * M_PI * i / base;
        ring[i] = {ang, f(center + std::polar(radius, ang))};
        if (std::abs(ring[i].second) == 0.0)
            throw RootFindingFailure("winding_number: sample hit a zero on the circle");
    }
    // refine each span until the argument increment is below pi/2
    std::function<double(double, Complex, double, Complex, int)> span =
        [&](double a0, Complex f0, double a1, Complex f1, int depth) -> double {
        double d = std::arg(f1 / f0);
        if (std::abs(d) < M_PI / 2.0) return d;
        if (depth >= opt.max_refine_depth)
            throw RootFindingFailure("winding_number: argument not resolved");
        double am = 0.5 * (a0 + a1);
        Complex fm = f(center + std::polar(radius, am));
        if (std::abs(fm) == 0.0)
            throw RootFindingFailure("winding_number: sample hit a zero on the circle");
        return span(a0, f0, am, fm, depth + 1) + span(am, fm, a1, f1, depth + 1);
    };
    for (int i = 0; i < base; ++i)
        total += span(ring[i].first, ring[i].second, ring[i + 1].first, ring[i + 1].second, 0);
    double turns = total / (2.0 * M_PI);
    int w = static_cast<int>(std::lround(turns));
    if (std::abs(turns - w) > 0.25)
        throw RootFindingFailure("winding_number: non-integer winding " + std::to_string(turns));
    return w;
}

std::vector<FoundZero> find_zeros(const std::function<Complex(Complex)>& f, Complex center,
                                  double half_width, const ZeroSearchOptions& opt) {
    // Fixed asymmetric offset: keeps common configurations (zeros on the real
    // axis, boxes centered at the origin) away from subdivision edges.
    Complex shift = half_width * Complex(3.1e-4, 1.7e-4);
    Box root{center.real() - half_width + shift.real(), center.real() + half_width + shift.real(),
             center.imag() - half_width + shift.imag(), center.imag() + half_width + shift.imag()};
    // Cover the asked-for square despite the shift.
    root.x0 -= 2.0 * std::abs(shift.real());
    root.x1 += 2.0 * std::abs(shift.real());
    root.y0 -= 2.0 * std::abs(shift.imag());
    root.y1 += 2.0 * std::abs(shift.imag());
    Search s(f, opt);
    return s.run(root);
}

} // namespace algcurve
