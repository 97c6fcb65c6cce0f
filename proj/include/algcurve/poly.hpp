#ifndef ALGCURVE_POLY_HPP
#define ALGCURVE_POLY_HPP

#include <cassert>
#include <utility>
#include <vector>

#include "algcurve/errors.hpp"

namespace algcurve {

// Dense univariate polynomial over a field K. K must provide arithmetic
// operators, is_zero(), construction from long, and operator==. Coefficients
// are stored lowest degree first; the representation is always trimmed, so
// the zero polynomial has an empty coefficient vector and degree() == -1.
template <class K>
class Poly {
public:
    Poly() = default;
    explicit Poly(long v) {
        if (v != 0) c_.push_back(K(v));
    }
    explicit Poly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Poly constant(const K& k) {
        if (k.is_zero()) return Poly();
        return Poly(std::vector<K>{k});
    }
    static Poly variable() { return Poly(std::vector<K>{K(0), K(1)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    bool is_one() const { return c_.size() == 1 && c_[0] == K(1); }
    bool is_constant() const { return c_.size() <= 1; }

    const std::vector<K>& coeffs() const { return c_; }
    const K& operator[](int i) const {
        static const K zero = K(0);
        return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : zero;
    }
    const K& leading() const {
        assert(!c_.empty());
        return c_.back();
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& k : r.c_) k = -k;
        return r;
    }

    Poly operator+(const Poly& o) const {
        std::vector<K> r(std::max(c_.size(), o.c_.size()), K(0));
        for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
        for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
        return Poly(std::move(r));
    }
    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        if (is_zero() || o.is_zero()) return Poly();
        std::vector<K> r(c_.size() + o.c_.size() - 1, K(0));
        for (size_t i = 0; i < c_.size(); ++i)
            for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
        return Poly(std::move(r));
    }

    Poly scaled(const K& k) const {
        if (k.is_zero()) return Poly();
        Poly r = *this;
        for (auto& x : r.c_) x *= k;
        return r;
    }

    Poly shifted(int n) const {  // multiply by x^n
        if (is_zero()) return Poly();
        std::vector<K> r(c_.size() + n, K(0));
        for (size_t i = 0; i < c_.size(); ++i) r[i + n] = c_[i];
        return Poly(std::move(r));
    }

    bool operator==(const Poly& o) const { return c_ == o.c_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    K eval(const K& x) const {  // Horner
        K acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<K> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * K(static_cast<long>(i));
        return Poly(std::move(r));
    }

    // Substitute x -> x + a.
    Poly compose_shift(const K& a) const {
        Poly r;
        Poly xp = Poly(std::vector<K>{a, K(1)});
        Poly acc = Poly::constant(K(1));
        for (size_t i = 0; i < c_.size(); ++i) {
            r = r + acc.scaled(c_[i]);
            acc = acc * xp;
        }
        return r;
    }

    // Reverse coefficient order: x^n P(1/x) for n = degree().
    Poly reversed() const {
        std::vector<K> r(c_.rbegin(), c_.rend());
        return Poly(std::move(r));
    }

    Poly monic() const {
        if (is_zero()) return Poly();
        return scaled(K(1) / leading());
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<K> c_;
};

template <class K>
std::pair<Poly<K>, Poly<K>> divmod(const Poly<K>& a, const Poly<K>& b) {
    if (b.is_zero()) throw DivisionByZeroFunction("Poly: division by zero polynomial");
    std::vector<K> rem(a.coeffs());
    int db = b.degree();
    if (a.degree() < db) return {Poly<K>(), a};
    std::vector<K> quot(a.degree() - db + 1, K(0));
    K lead_inv = K(1) / b.leading();
    for (int i = a.degree(); i >= db; --i) {
        if (rem[i].is_zero()) continue;
        K q = rem[i] * lead_inv;
        quot[i - db] = q;
        for (int j = 0; j <= db; ++j) rem[i - db + j] -= q * b[j];
    }
    return {Poly<K>(std::move(quot)), Poly<K>(std::move(rem))};
}

template <class K>
Poly<K> exact_div(const Poly<K>& a, const Poly<K>& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw Error("Poly: exact division with nonzero remainder");
    return q;
}

// Monic gcd via the Euclidean algorithm; remainders are re-scaled to monic
// at every step to control coefficient growth.
template <class K>
Poly<K> gcd(Poly<K> a, Poly<K> b) {
    if (a.is_zero()) return b.monic();
    if (b.is_zero()) return a.monic();
    a = a.monic();
    b = b.monic();
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = r.is_zero() ? Poly<K>() : r.monic();
    }
    return a;
}

// Square-free factorization of a polynomial over a field of characteristic 0
// (Yun). Returns factors f_i with multiplicity i (1-based); factors may be
// constant 1 placeholders for missing multiplicities.
template <class K>
std::vector<Poly<K>> squarefree_decomposition(const Poly<K>& f) {
    std::vector<Poly<K>> out;
    if (f.degree() <= 0) return out;
    Poly<K> fp = f.derivative();
    Poly<K> a = gcd(f, fp);
    Poly<K> b = exact_div(f.monic(), a);
    Poly<K> c = exact_div(fp.scaled(K(1) / f.leading()), a);
    Poly<K> d = c - b.derivative();
    while (!(b.degree() <= 0)) {
        Poly<K> g = gcd(b, d);
        out.push_back(g);
        b = exact_div(b, g);
        d = exact_div(d, g) - b.derivative();
    }
    return out;
}

template <class K>
Poly<K> squarefree_part(const Poly<K>& f) {
    if (f.degree() <= 0) return f;
    Poly<K> g = gcd(f, f.derivative());
    if (g.degree() <= 0) return f;
    return exact_div(f.monic(), g);
}

// Fraction-free Bareiss determinant over an integral domain E with exact
// division. E needs +, -, *, is_zero(), construction from long, and a free
// function exact_div(E, E) (fields can route it through operator/).
template <class E, class ExactDiv>
E bareiss_determinant(std::vector<std::vector<E>> m, ExactDiv ediv) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return E(1);
    E prev = E(1);
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k].is_zero()) {
            int p = -1;
            for (int i = k + 1; i < n; ++i)
                if (!m[i][k].is_zero()) { p = i; break; }
            if (p < 0) return E(0);
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                E num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
                m[i][j] = ediv(num, prev);
            }
            m[i][k] = E(0);
        }
        prev = m[k][k];
    }
    E det = m[n - 1][n - 1];
    if (sign < 0) det = -det;
    return det;
}

} // namespace algcurve

#endif
