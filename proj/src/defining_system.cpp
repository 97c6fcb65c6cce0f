#include "algcurve/defining_system.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "algcurve/aberth.hpp"
#include "algcurve/zero_search.hpp"

namespace algcurve {

DefiningPolynomial::DefiningPolynomial(std::vector<Coefficient> coeffs)
    : coeffs_(std::move(coeffs)) {
    while (coeffs_.size() > 1 && coeffs_.back().is_zero()) coeffs_.pop_back();
    if (coeffs_.size() < 2)
        throw Error("DefiningPolynomial: degree must be at least 1");
    Backend b = coeffs_.front().backend();
    for (const auto& c : coeffs_)
        if (c.backend() != b)
            throw BackendMismatch("DefiningPolynomial: mixed coefficient backends");
    if (coeffs_.back().is_zero())
        throw Error("DefiningPolynomial: leading coefficient vanishes identically");
    dcoeffs_.reserve(coeffs_.size());
    for (const auto& c : coeffs_) dcoeffs_.push_back(c.derivative());
}

std::vector<Complex> DefiningPolynomial::coeff_values(Complex z) const {
    std::vector<Complex> v(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i) v[i] = coeffs_[i].eval(z);
    return v;
}

std::vector<Complex> DefiningPolynomial::coeff_derivative_values(Complex z) const {
    std::vector<Complex> v(dcoeffs_.size());
    for (size_t i = 0; i < dcoeffs_.size(); ++i) v[i] = dcoeffs_[i].eval(z);
    return v;
}

Complex DefiningPolynomial::eval(Complex z, Complex w) const {
    Complex acc(0.0, 0.0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * w + it->eval(z);
    return acc;
}

Complex DefiningPolynomial::implicit_derivative(Complex z, Complex w) const {
    Complex psi_z(0.0, 0.0), psi_w(0.0, 0.0);
    Complex wp(1.0, 0.0);
    for (size_t j = 0; j < coeffs_.size(); ++j) {
        psi_z += dcoeffs_[j].eval(z) * wp;
        if (j + 1 < coeffs_.size())
            psi_w += static_cast<double>(j + 1) * coeffs_[j + 1].eval(z) * wp;
        wp *= w;
    }
    return -psi_z / psi_w;
}

DefiningPolynomial DefiningPolynomial::shifted(const GaussianRational& c) const {
    std::vector<Coefficient> sc;
    sc.reserve(coeffs_.size());
    for (const auto& a : coeffs_) sc.push_back(a.shifted(c));
    return DefiningPolynomial(std::move(sc));
}

bool DefiningPolynomial::defines_zero_function() const {
    for (size_t j = 0; j + 1 < coeffs_.size(); ++j)
        if (!coeffs_[j].is_zero()) return false;
    return true;
}

std::string DefiningPolynomial::str(const std::string& var) const {
    std::ostringstream os;
    for (int j = degree(); j >= 0; --j) {
        if (coeffs_[j].is_zero()) continue;
        if (os.tellp() > 0) os << " + ";
        os << "(" << coeffs_[j].str() << ")";
        if (j >= 1) {
            os << "*" << var;
            if (j > 1) os << "^" << j;
        }
    }
    if (os.tellp() == 0) os << "0";
    return os.str();
}

AlgebroidCurve::AlgebroidCurve(std::vector<DefiningPolynomial> components)
    : components_(std::move(components)) {
    if (components_.empty()) throw Error("AlgebroidCurve: needs at least one component");
    Backend b = components_.front().backend();
    nu_ = 1;
    for (const auto& c : components_) {
        if (c.backend() != b)
            throw BackendMismatch("AlgebroidCurve: components use different backends");
        nu_ *= c.degree();
    }
}

AlgebroidCurve AlgebroidCurve::shifted(const GaussianRational& c) const {
    std::vector<DefiningPolynomial> sc;
    sc.reserve(components_.size());
    for (const auto& p : components_) sc.push_back(p.shifted(c));
    return AlgebroidCurve(std::move(sc));
}

// ---- exact elimination ----------------------------------------------------

WPoly to_wpoly(const DefiningPolynomial& p) {
    std::vector<RationalFunction> c;
    c.reserve(p.coeffs().size());
    for (const auto& a : p.coeffs()) c.push_back(a.exact());
    return WPoly(std::move(c));
}

DefiningPolynomial from_wpoly(const WPoly& p) {
    std::vector<Coefficient> c;
    for (int i = 0; i <= p.degree(); ++i) c.push_back(Coefficient(p[i]));
    return DefiningPolynomial(std::move(c));
}

static ZPoly zpoly_lcm(const ZPoly& a, const ZPoly& b) {
    ZPoly g = gcd(a, b);
    return exact_div(a * b, g).monic();
}

WPoly clear_and_primitive(const WPoly& p) {
    if (p.is_zero()) return p;
    ZPoly den(1);
    for (int i = 0; i <= p.degree(); ++i)
        if (!p[i].is_zero()) den = zpoly_lcm(den, p[i].denominator());
    std::vector<ZPoly> nums(p.degree() + 1);
    ZPoly content;
    for (int i = 0; i <= p.degree(); ++i) {
        if (p[i].is_zero()) continue;
        nums[i] = p[i].numerator() * exact_div(den, p[i].denominator());
        content = content.is_zero() ? nums[i].monic() : gcd(content, nums[i]);
    }
    std::vector<RationalFunction> out(p.degree() + 1);
    for (int i = 0; i <= p.degree(); ++i) {
        if (nums[i].is_zero()) continue;
        out[i] = RationalFunction::from_poly(
            content.degree() > 0 ? exact_div(nums[i], content) : nums[i]);
    }
    WPoly cleared{std::move(out)};
    // Scale so the leading z-coefficient of A_nu equals 1.
    GaussianRational lead = cleared.leading().numerator().leading();
    return cleared.scaled(RationalFunction::constant(GaussianRational(1) / lead));
}

static Coefficient resultant_wpoly(const WPoly& P, const WPoly& Q) {
    const int m = P.degree(), n = Q.degree();
    if (m < 0 || n < 0) throw Error("resultant: zero polynomial");
    if (m + n == 0) return Coefficient(RationalFunction(1));
    std::vector<std::vector<RationalFunction>> S(
        m + n, std::vector<RationalFunction>(m + n, RationalFunction(0)));
    for (int r = 0; r < n; ++r)
        for (int j = 0; j <= m; ++j) S[r][r + j] = P[m - j];
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n; ++j) S[n + r][r + j] = Q[n - j];
    RationalFunction det = bareiss_determinant<RationalFunction>(
        std::move(S), [](const RationalFunction& a, const RationalFunction& b) { return a / b; });
    return Coefficient(det);
}

Coefficient resultant(const DefiningPolynomial& P, const DefiningPolynomial& Q) {
    if (P.backend() != Backend::Exact || Q.backend() != Backend::Exact)
        throw BackendUnsupported("resultant: requires the exact backend");
    return resultant_wpoly(to_wpoly(P), to_wpoly(Q));
}

Coefficient discriminant(const DefiningPolynomial& P) {
    if (P.backend() != Backend::Exact)
        throw BackendUnsupported("discriminant: requires the exact backend");
    const int nu = P.degree();
    if (nu < 2) throw DegreeTooLow("discriminant: degree must be at least 2");
    WPoly psi = to_wpoly(P);
    Coefficient res = resultant_wpoly(psi, psi.derivative());
    RationalFunction j = res.exact() / psi.leading();
    if ((static_cast<long>(nu) * (nu - 1) / 2) % 2 != 0) j = -j;
    return Coefficient(j);
}

DefiningPolynomial square_free_part(const DefiningPolynomial& P) {
    if (P.backend() != Backend::Exact)
        throw BackendUnsupported("square_free_part: requires the exact backend");
    WPoly sf = squarefree_part(to_wpoly(P));
    return from_wpoly(clear_and_primitive(sf));
}

static long binomial(int n, int k) {
    long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

DefiningPolynomial alg_op(const DefiningPolynomial& P1, const DefiningPolynomial& P2, AlgOp op) {
    if (P1.backend() != Backend::Exact || P2.backend() != Backend::Exact)
        throw BackendUnsupported("alg_op: requires the exact backend");
    if (op == AlgOp::Product && P2.defines_zero_function())
        throw ZeroFunctionError("alg_op: product with the zero function");
    if (op == AlgOp::Product && P1.defines_zero_function())
        throw ZeroFunctionError("alg_op: product with the zero function");

    WPoly p1 = clear_and_primitive(to_wpoly(P1));
    WPoly p2 = clear_and_primitive(to_wpoly(P2));
    const int n1 = p1.degree(), n2 = p2.degree();

    // Polynomials in W1 whose coefficients live in Q(i)(z)[W]; eliminating W1
    // leaves the defining polynomial of the composed function in W.
    std::vector<WPoly> a(n1 + 1), b(n2 + 1);
    for (int i = 0; i <= n1; ++i) a[i] = WPoly::constant(p1[i]);
    if (op == AlgOp::Sum) {
        // Substitute W2 = W - W1 into P2.
        for (int j = 0; j <= n2; ++j) {
            std::vector<RationalFunction> cw;
            for (int k = j; k <= n2; ++k) {
                int idx = k - j;
                if (static_cast<int>(cw.size()) <= idx) cw.resize(idx + 1, RationalFunction(0));
                RationalFunction term = p2[k] * RationalFunction(binomial(k, j));
                cw[idx] += (j % 2 == 0) ? term : -term;
            }
            b[j] = WPoly(std::move(cw));
        }
    } else {
        // Q(W1) = W1^{n2} P2(W / W1); coefficient of W1^{n2-k} is b_k W^k.
        for (int k = 0; k <= n2; ++k) {
            if (p2[k].is_zero()) continue;
            b[n2 - k] = WPoly::constant(p2[k]).shifted(k);
        }
    }

    int db = n2;
    while (db > 0 && b[db].is_zero()) --db;  // product drops degree if P2 has a zero branch
    b.resize(db + 1);
    if (db == 0)
        throw ZeroFunctionError("alg_op: elimination degenerated to a constant");

    const int m = n1, n = db;
    std::vector<std::vector<WPoly>> S(m + n, std::vector<WPoly>(m + n, WPoly()));
    for (int r = 0; r < n; ++r)
        for (int j = 0; j <= m; ++j) S[r][r + j] = a[m - j];
    for (int r = 0; r < m; ++r)
        for (int j = 0; j <= n; ++j) S[n + r][r + j] = b[n - j];
    WPoly res = bareiss_determinant<WPoly>(
        std::move(S), [](const WPoly& x, const WPoly& y) { return exact_div(x, y); });
    if (res.is_zero()) throw ZeroFunctionError("alg_op: resultant vanished identically");

    if (op == AlgOp::Product && db < n2) res = res.shifted(1);  // restore the zero branch

    WPoly sf = squarefree_part(res);
    return from_wpoly(clear_and_primitive(sf));
}

DefiningPolynomial alg_negate(const DefiningPolynomial& P) {
    const int nu = P.degree();
    std::vector<Coefficient> c;
    c.reserve(nu + 1);
    for (int j = 0; j <= nu; ++j) {
        if ((nu - j) % 2 != 0)
            c.push_back(coefficient_negate(P.coeff(j)));
        else
            c.push_back(P.coeff(j));
    }
    return DefiningPolynomial(std::move(c));
}

DefiningPolynomial alg_reciprocal(const DefiningPolynomial& P) {
    if (P.defines_zero_function())
        throw NotInvertible("alg_reciprocal: the zero function has no reciprocal");
    if (P.coeff(0).is_zero())
        throw NotInvertible("alg_reciprocal: A_0 vanishes identically");
    std::vector<Coefficient> c(P.coeffs().rbegin(), P.coeffs().rend());
    return DefiningPolynomial(std::move(c));
}

// ---- critical data ----------------------------------------------------------

std::vector<std::pair<Complex, int>> zpoly_roots_in_disk(const ZPoly& p, double radius) {
    std::vector<std::pair<Complex, int>> out;
    if (p.degree() <= 0) return out;
    auto factors = squarefree_decomposition(p);
    for (size_t i = 0; i < factors.size(); ++i) {
        if (factors[i].degree() <= 0) continue;
        std::vector<Complex> c;
        for (int j = 0; j <= factors[i].degree(); ++j) c.push_back(factors[i][j].to_complex());
        for (Complex r : polynomial_roots(c)) {
            // polish against the factor
            for (int s = 0; s < 4; ++s) {
                Complex v, dv;
                horner_eval(c, r, v, dv);
                if (std::abs(dv) == 0.0) break;
                r -= v / dv;
            }
            if (std::abs(r) < radius) out.emplace_back(r, static_cast<int>(i + 1));
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
        if (x.first.real() != y.first.real()) return x.first.real() < y.first.real();
        return x.first.imag() < y.first.imag();
    });
    return out;
}

static std::vector<Complex> cluster_points(std::vector<Complex> pts, double tol) {
    std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    std::vector<Complex> out;
    for (Complex p : pts) {
        bool dup = false;
        for (Complex q : out)
            if (std::abs(p - q) < tol * std::max(1.0, std::abs(q))) {
                dup = true;
                break;
            }
        if (!dup) out.push_back(p);
    }
    return out;
}

// Single-valued discriminant evaluator A_nu^{2nu-2} prod (w_i - w_j)^2 used
// by the numeric backend's zero search.
static Complex discriminant_from_roots(const DefiningPolynomial& P, Complex z) {
    auto cv = P.coeff_values(z);
    auto roots = polynomial_roots(cv);
    Complex lead = cv.back();
    const int nu = P.degree();
    Complex acc(1.0, 0.0);
    for (int i = 0; i < 2 * nu - 2; ++i) acc *= lead;
    for (size_t i = 0; i < roots.size(); ++i)
        for (size_t j = i + 1; j < roots.size(); ++j) {
            Complex d = roots[i] - roots[j];
            acc *= d * d;
        }
    return acc;
}

CriticalData critical_data(const AlgebroidCurve& C, double disk_radius,
                           const CriticalOptions& opt) {
    CriticalData data;
    std::vector<Complex> crit, mult, lcz;
    for (const auto& comp : C.components()) {
        std::vector<Complex> comp_mult;
        if (C.backend() == Backend::Exact) {
            const RationalFunction& an = comp.leading().exact();
            for (auto& [r, m] : zpoly_roots_in_disk(an.numerator(), disk_radius)) {
                lcz.push_back(r);
                crit.push_back(r);
            }
            if (comp.degree() >= 2) {
                RationalFunction j = discriminant(comp).exact();
                if (j.is_zero())
                    throw Error("critical_data: discriminant vanishes identically "
                                "(defining polynomial is not square-free)");
                for (auto& [r, m] : zpoly_roots_in_disk(j.numerator(), disk_radius)) {
                    comp_mult.push_back(r);
                    mult.push_back(r);
                    crit.push_back(r);
                }
            }
        } else {
            ZeroSearchOptions zopt;
            zopt.isolate_width = opt.isolate_width;
            if (comp.degree() >= 2) {
                auto zs = find_zeros([&comp](Complex z) { return discriminant_from_roots(comp, z); },
                                     Complex(0, 0), disk_radius, zopt);
                for (const auto& f : zs)
                    if (std::abs(f.location) < disk_radius) {
                        comp_mult.push_back(f.location);
                        mult.push_back(f.location);
                        crit.push_back(f.location);
                    }
            }
            const Coefficient& an = comp.leading();
            if (!an.is_zero() && !(an.numeric()->kind == AnalyticExpr::Kind::Const)) {
                auto zs = find_zeros([&an](Complex z) { return an.eval(z); }, Complex(0, 0),
                                     disk_radius, zopt);
                for (const auto& f : zs)
                    if (std::abs(f.location) < disk_radius) {
                        lcz.push_back(f.location);
                        crit.push_back(f.location);
                    }
            }
        }
        data.per_component_multiple.push_back(cluster_points(comp_mult, opt.cluster_tolerance));
    }
    data.critical_points = cluster_points(crit, opt.cluster_tolerance);
    data.multiple_points = cluster_points(mult, opt.cluster_tolerance);
    data.leading_coeff_zeros = cluster_points(lcz, opt.cluster_tolerance);
    return data;
}

// ---- JSON -------------------------------------------------------------------

AlgebroidCurve curve_from_json_text(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::string backend_name = j.value("backend", "exact");
    Backend backend;
    if (backend_name == "exact")
        backend = Backend::Exact;
    else if (backend_name == "numeric")
        backend = Backend::Numeric;
    else
        throw ParseError("curve: unknown backend '" + backend_name + "'");
    if (!j.contains("components") || !j["components"].is_array() || j["components"].empty())
        throw ParseError("curve: 'components' must be a non-empty array");
    std::vector<DefiningPolynomial> comps;
    for (const auto& cj : j["components"]) {
        std::vector<Coefficient> coeffs;
        for (const auto& s : cj.at("coeffs"))
            coeffs.push_back(parse_coefficient(s.get<std::string>(), backend));
        comps.push_back(DefiningPolynomial(std::move(coeffs)));
    }
    return AlgebroidCurve(std::move(comps));
}

std::string curve_to_json_text(const AlgebroidCurve& c,
                               const std::vector<std::vector<std::string>>& coeff_strings) {
    nlohmann::json j;
    j["backend"] = (c.backend() == Backend::Exact) ? "exact" : "numeric";
    j["components"] = nlohmann::json::array();
    for (int i = 0; i < c.dim(); ++i) {
        nlohmann::json cj;
        cj["var"] = "W" + std::to_string(i + 1);
        cj["coeffs"] = coeff_strings.at(i);
        j["components"].push_back(cj);
    }
    return j.dump(2);
}

} // namespace algcurve
