#ifndef ALGCURVE_GAUSSIAN_RATIONAL_HPP
#define ALGCURVE_GAUSSIAN_RATIONAL_HPP

#include <complex>
#include <string>

#include <gmpxx.h>

#include "algcurve/errors.hpp"

namespace algcurve {

using Complex = std::complex<double>;

// Element of Q(i): re + im*i with exact rational parts. mpq_class keeps each
// part canonical (coprime numerator/denominator, positive denominator), so
// equality is plain component comparison.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long n) : re_(n), im_(0) {}
    GaussianRational(const mpq_class& re, const mpq_class& im = 0) : re_(re), im_(im) {
        re_.canonicalize();
        im_.canonicalize();
    }
    static GaussianRational from_ratio(long num, long den) {
        if (den == 0) throw DivisionByZeroFunction("GaussianRational: zero denominator");
        return GaussianRational(mpq_class(num, den));
    }
    static GaussianRational i() { return GaussianRational(mpq_class(0), mpq_class(1)); }

    const mpq_class& real() const { return re_; }
    const mpq_class& imag() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }

    GaussianRational operator-() const { return GaussianRational(-re_, -im_); }

    GaussianRational operator+(const GaussianRational& o) const {
        return GaussianRational(re_ + o.re_, im_ + o.im_);
    }
    GaussianRational operator-(const GaussianRational& o) const {
        return GaussianRational(re_ - o.re_, im_ - o.im_);
    }
    GaussianRational operator*(const GaussianRational& o) const {
        return GaussianRational(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
    }
    GaussianRational operator/(const GaussianRational& o) const {
        if (o.is_zero()) throw DivisionByZeroFunction("GaussianRational: division by zero");
        mpq_class n2 = o.re_ * o.re_ + o.im_ * o.im_;
        return GaussianRational((re_ * o.re_ + im_ * o.im_) / n2,
                                (im_ * o.re_ - re_ * o.im_) / n2);
    }

    GaussianRational& operator+=(const GaussianRational& o) { return *this = *this + o; }
    GaussianRational& operator-=(const GaussianRational& o) { return *this = *this - o; }
    GaussianRational& operator*=(const GaussianRational& o) { return *this = *this * o; }
    GaussianRational& operator/=(const GaussianRational& o) { return *this = *this / o; }

    bool operator==(const GaussianRational& o) const { return re_ == o.re_ && im_ == o.im_; }
    bool operator!=(const GaussianRational& o) const { return !(*this == o); }

    GaussianRational conj() const { return GaussianRational(re_, -im_); }

    Complex to_complex() const { return Complex(re_.get_d(), im_.get_d()); }

    std::string str() const;

private:
    mpq_class re_, im_;
};

std::string rational_str(const mpq_class& q);

} // namespace algcurve

#endif
