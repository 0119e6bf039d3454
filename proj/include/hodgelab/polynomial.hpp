#pragma once

#include "hodgelab/rational.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace hodgelab {

// Polynomial in z_1..z_n and zbar_1..zbar_n with Gaussian-rational
// coefficients.  Exponent keys store the z exponents first, then the zbar
// exponents.  All arithmetic is exact.
class PolyCoeff {
public:
    using Exponents = std::vector<int>;

    PolyCoeff() = default;
    explicit PolyCoeff(int n) : n_(n) {}

    static PolyCoeff constant(int n, GaussRat v) {
        PolyCoeff p(n);
        if (!v.isZero()) p.terms_[Exponents(2 * n, 0)] = std::move(v);
        return p;
    }
    static PolyCoeff monomial(int n, Exponents e, GaussRat v) {
        if (static_cast<int>(e.size()) != 2 * n)
            throw std::invalid_argument("PolyCoeff: exponent vector has wrong length");
        for (int x : e)
            if (x < 0) throw std::invalid_argument("PolyCoeff: negative exponent");
        PolyCoeff p(n);
        if (!v.isZero()) p.terms_[std::move(e)] = std::move(v);
        return p;
    }
    // z_j (bar=false) or zbar_j (bar=true); j is 0-based.
    static PolyCoeff variable(int n, int j, bool bar) {
        Exponents e(2 * n, 0);
        e[(bar ? n : 0) + j] = 1;
        return monomial(n, std::move(e), GaussRat(1));
    }

    int vars() const { return n_; }
    bool isZero() const { return terms_.empty(); }
    const std::map<Exponents, GaussRat>& terms() const { return terms_; }
    long termCount() const { return static_cast<long>(terms_.size()); }

    PolyCoeff& operator+=(const PolyCoeff& o) {
        for (const auto& [e, v] : o.terms_) addTerm(e, v);
        return *this;
    }
    PolyCoeff& operator-=(const PolyCoeff& o) {
        for (const auto& [e, v] : o.terms_) addTerm(e, -v);
        return *this;
    }
    PolyCoeff& operator*=(const GaussRat& s) {
        if (s.isZero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, v] : terms_) v *= s;
        return *this;
    }
    friend PolyCoeff operator+(PolyCoeff a, const PolyCoeff& b) { return a += b; }
    friend PolyCoeff operator-(PolyCoeff a, const PolyCoeff& b) { return a -= b; }
    friend PolyCoeff operator*(PolyCoeff a, const GaussRat& s) { return a *= s; }
    PolyCoeff operator-() const {
        PolyCoeff r(n_);
        for (const auto& [e, v] : terms_) r.terms_[e] = -v;
        return r;
    }
    friend PolyCoeff operator*(const PolyCoeff& a, const PolyCoeff& b) {
        PolyCoeff r(a.n_);
        for (const auto& [ea, va] : a.terms_)
            for (const auto& [eb, vb] : b.terms_) {
                Exponents e(ea);
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                r.addTerm(e, va * vb);
            }
        return r;
    }
    friend bool operator==(const PolyCoeff& a, const PolyCoeff& b) {
        return (a - b).isZero();
    }

    // Complex conjugate: swaps the z / zbar exponent blocks and conjugates
    // each coefficient.
    PolyCoeff conjugate() const {
        PolyCoeff r(n_);
        for (const auto& [e, v] : terms_) {
            Exponents f(2 * n_);
            for (int i = 0; i < n_; ++i) {
                f[i] = e[n_ + i];
                f[n_ + i] = e[i];
            }
            r.addTerm(f, conj(v));
        }
        return r;
    }

    PolyCoeff dz(int j) const { return derivative(j); }
    PolyCoeff dzbar(int j) const { return derivative(n_ + j); }

    // Evaluates at the point z with zbar = conj(z).
    GaussRat eval(const std::vector<GaussRat>& z) const {
        if (static_cast<int>(z.size()) != n_)
            throw std::invalid_argument("PolyCoeff::eval: wrong point dimension");
        GaussRat acc(0);
        for (const auto& [e, v] : terms_) {
            GaussRat t = v;
            for (int i = 0; i < n_; ++i) {
                for (int k = 0; k < e[i]; ++k) t *= z[i];
                for (int k = 0; k < e[n_ + i]; ++k) t *= conj(z[i]);
            }
            acc += t;
        }
        return acc;
    }

    int degree() const {
        int d = -1;
        for (const auto& [e, v] : terms_) {
            (void)v;
            int s = 0;
            for (int x : e) s += x;
            if (s > d) d = s;
        }
        return d;
    }

private:
    PolyCoeff derivative(int slot) const {
        PolyCoeff r(n_);
        for (const auto& [e, v] : terms_) {
            if (e[slot] == 0) continue;
            Exponents f(e);
            f[slot] -= 1;
            r.addTerm(f, v * GaussRat(e[slot]));
        }
        return r;
    }
    void addTerm(const Exponents& e, GaussRat v) {
        if (v.isZero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, std::move(v));
        } else {
            it->second += v;
            if (it->second.isZero()) terms_.erase(it);
        }
    }

    int n_ = 0;
    std::map<Exponents, GaussRat> terms_;
};

std::string toString(const PolyCoeff& p);

} // namespace hodgelab
