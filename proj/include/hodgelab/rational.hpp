#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace hodgelab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Gaussian rational a + b i with exact arithmetic throughout.
struct GaussRat {
    Rational re, im;

    GaussRat() = default;
    GaussRat(Rational r) : re(std::move(r)) {}
    GaussRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
    GaussRat(long r) : re(r) {}
    GaussRat(long r, long i) : re(r), im(i) {}

    bool isZero() const { return re == 0 && im == 0; }

    GaussRat operator-() const { return {-re, -im}; }
    GaussRat& operator+=(const GaussRat& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    GaussRat& operator-=(const GaussRat& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    GaussRat& operator*=(const GaussRat& o) {
        Rational r = re * o.re - im * o.im;
        im = re * o.im + im * o.re;
        re = std::move(r);
        return *this;
    }
    friend GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
    friend GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
    friend GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
    friend bool operator==(const GaussRat& a, const GaussRat& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

inline GaussRat conj(const GaussRat& z) { return {z.re, -z.im}; }

inline GaussRat inverse(const GaussRat& z) {
    Rational d = z.re * z.re + z.im * z.im;
    if (d == 0) throw std::domain_error("GaussRat: division by zero");
    return {z.re / d, -z.im / d};
}

inline GaussRat operator/(const GaussRat& a, const GaussRat& b) { return a * inverse(b); }

inline std::string toString(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

inline std::string toString(const GaussRat& z) {
    if (z.im == 0) return toString(z.re);
    if (z.re == 0) return toString(z.im) + "*i";
    return toString(z.re) + (z.im > 0 ? "+" : "") + toString(z.im) + "*i";
}

inline double toDouble(const Rational& r) { return r.convert_to<double>(); }

} // namespace hodgelab
