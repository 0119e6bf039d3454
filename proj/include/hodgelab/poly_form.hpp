#pragma once

#include "hodgelab/fourier_form.hpp"
#include "hodgelab/polynomial.hpp"

#include <map>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace hodgelab {

enum class PolyValue { Scalar, Tangent, Module };

// Shape of a polynomial-coefficient form on the chart C^n: bidegree (p,q),
// value kind, and the number of value slots (1 / n / bundle rank).  p or q may
// sit one step outside [0,n]; such shapes carry no components.
struct PolyShape {
    int n = 0;
    int p = 0;
    int q = 0;
    PolyValue value = PolyValue::Scalar;
    int rank = 1;

    friend bool operator==(const PolyShape&, const PolyShape&) = default;

    int valueCount() const {
        switch (value) {
            case PolyValue::Scalar: return 1;
            case PolyValue::Tangent: return n;
            case PolyValue::Module: return rank;
        }
        return 1;
    }
    bool degenerate() const { return p < 0 || p > n || q < 0 || q > n; }
    void validate() const;
    std::vector<ComponentKey> componentKeys() const;
};

class PolyForm {
public:
    explicit PolyForm(PolyShape s) : shape_(std::move(s)) { shape_.validate(); }

    const PolyShape& shape() const { return shape_; }
    int n() const { return shape_.n; }
    int p() const { return shape_.p; }
    int q() const { return shape_.q; }

    bool isZero() const {
        for (const auto& [k, c] : comps_)
            if (!c.isZero()) return false;
        return true;
    }
    long monomialCount() const {
        long t = 0;
        for (const auto& [k, c] : comps_) t += c.termCount();
        return t;
    }

    PolyCoeff& component(const ComponentKey& k);
    const PolyCoeff* findComponent(const ComponentKey& k) const {
        auto it = comps_.find(k);
        return it == comps_.end() ? nullptr : &it->second;
    }
    const std::map<ComponentKey, PolyCoeff>& components() const { return comps_; }

    void prune() {
        for (auto it = comps_.begin(); it != comps_.end();)
            it = it->second.isZero() ? comps_.erase(it) : std::next(it);
    }

    PolyForm& operator+=(const PolyForm& o);
    PolyForm& operator-=(const PolyForm& o);
    PolyForm& operator*=(const GaussRat& s);
    friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
    friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
    friend PolyForm operator*(const GaussRat& s, PolyForm f) { return f *= s; }
    PolyForm operator-() const;
    friend bool operator==(const PolyForm& a, const PolyForm& b) {
        return (a - b).isZero();
    }

private:
    PolyShape shape_;
    std::map<ComponentKey, PolyCoeff> comps_;
};

// Connection nabla = d + A on a rank-r module over the chart, A an r x r
// matrix of (1,0)-forms: A[i](alpha, beta) is the dz^i coefficient.  The
// (0,1)-part of nabla is plain dbar.
struct PolyConnection {
    int n = 0;
    int r = 1;
    std::vector<std::vector<std::vector<PolyCoeff>>> A; // [i][alpha][beta]

    static PolyConnection trivial(int n, int r);
    const PolyCoeff& entry(int i, int alpha, int beta) const { return A[i][alpha][beta]; }
    PolyCoeff& entry(int i, int alpha, int beta) { return A[i][alpha][beta]; }
};

// Coefficient-wise holomorphic differential with frame insertion signs.
PolyForm polyDel(const PolyForm& f);
PolyForm polyDbar(const PolyForm& f);
// (1,0)-part of the connection: polyDel plus the A-wedge term on module
// values; equal to polyDel for scalar and tangent values (conn may be null).
PolyForm polyNablaHolo(const PolyForm& f, const PolyConnection* conn);

PolyForm polyWedge(const PolyForm& a, const PolyForm& b);
PolyForm polyContract(const PolyForm& phi, const PolyForm& omega);
PolyForm polyBracket(const PolyForm& phi, const PolyForm& psi);

struct PolyLie {
    PolyForm holo;     // (-1)^q nabla' i_phi + i_phi nabla'
    PolyForm antiholo; // (-1)^q dbar i_phi + i_phi dbar
};
PolyLie polyLie(const PolyForm& phi, const PolyForm& omega, const PolyConnection* conn = nullptr);

// dz^1 ^ ... ^ dz^n with unit coefficient.
PolyForm polyVolume(int n);

// Mixed-bidegree container; the value kind is uniform across pieces.
class GradedPolyForm {
public:
    GradedPolyForm(int n, PolyValue value, int rank)
        : n_(n), value_(value), rank_(rank) {}
    explicit GradedPolyForm(const PolyForm& f)
        : n_(f.n()), value_(f.shape().value), rank_(f.shape().rank) {
        add(f);
    }

    int n() const { return n_; }
    PolyValue value() const { return value_; }
    int rank() const { return rank_; }

    // Accumulates f into the (f.p, f.q) piece; out-of-range bidegrees are
    // identically zero and are dropped.
    void add(const PolyForm& f);
    const std::map<std::pair<int, int>, PolyForm>& pieces() const { return pieces_; }

    bool isZero() const {
        for (const auto& [d, f] : pieces_)
            if (!f.isZero()) return false;
        return true;
    }
    long monomialCount() const {
        long t = 0;
        for (const auto& [d, f] : pieces_) t += f.monomialCount();
        return t;
    }
    void prune();

    GradedPolyForm& operator+=(const GradedPolyForm& o);
    GradedPolyForm& operator-=(const GradedPolyForm& o);
    GradedPolyForm& operator*=(const GaussRat& s);
    friend GradedPolyForm operator+(GradedPolyForm a, const GradedPolyForm& b) { return a += b; }
    friend GradedPolyForm operator-(GradedPolyForm a, const GradedPolyForm& b) { return a -= b; }
    friend bool operator==(const GradedPolyForm& a, const GradedPolyForm& b) {
        return (a - b).isZero();
    }

private:
    int n_;
    PolyValue value_;
    int rank_;
    std::map<std::pair<int, int>, PolyForm> pieces_;
};

GradedPolyForm gradedDel(const GradedPolyForm& f);
GradedPolyForm gradedDbar(const GradedPolyForm& f);
GradedPolyForm gradedNablaHolo(const GradedPolyForm& f, const PolyConnection* conn);
// Full connection: nabla' + dbar.
GradedPolyForm gradedNabla(const GradedPolyForm& f, const PolyConnection* conn);
GradedPolyForm gradedContract(const PolyForm& phi, const GradedPolyForm& f);
GradedPolyForm gradedLie(const PolyForm& phi, const GradedPolyForm& f,
                         const PolyConnection* conn = nullptr);
GradedPolyForm gradedLieHolo(const PolyForm& phi, const GradedPolyForm& f,
                             const PolyConnection* conn = nullptr);
GradedPolyForm gradedLieAnti(const PolyForm& phi, const GradedPolyForm& f);
// e^{sign * i_phi}: the finite sum over contraction powers with exact 1/k!.
GradedPolyForm gradedExpContract(const PolyForm& phi, const GradedPolyForm& f, int sign);

// Word-based public entry: ops apply left to right.  Operand-bearing steps
// (contract, Lie, exp, wedge, bracket) carry their operand.  Kind mismatches
// report the offending word position.
enum class PolyOpKind {
    Del,
    Dbar,
    Nabla,
    NablaHolo,
    Contract,
    Lie,
    LieHolo,
    LieAnti,
    ExpContract,
    ExpContractInv,
    WedgeLeft, // operand ^ current
    Bracket    // [operand, current]
};

struct PolyOp {
    PolyOpKind kind;
    std::shared_ptr<const PolyForm> operand;
};

inline PolyOp polyOp(PolyOpKind k) { return {k, nullptr}; }
inline PolyOp polyOp(PolyOpKind k, PolyForm operand) {
    return {k, std::make_shared<const PolyForm>(std::move(operand))};
}

GradedPolyForm applyOperatorWord(const std::vector<PolyOp>& word, const GradedPolyForm& start,
                                 const PolyConnection* conn = nullptr);

// Homotopy for dbar on polynomial coefficients: for each piece that is
// zbar-homogeneous of degree d with |J| = s > 0 or d > 0,
//   dbar(anti(w)) + anti(dbar(w)) = w.
// In particular dbar(anti(w)) = w for dbar-closed w with no (d,s) = (0,0) part.
PolyForm dbarAntiderivative(const PolyForm& w);

} // namespace hodgelab
