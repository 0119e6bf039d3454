#include "hodgelab/spectral.hpp"

#include <algorithm>

#include <cmath>

#include "hodgelab/grid_transform.hpp"

namespace hodgelab {

FormShape opOutputShape(LinearOp op, FormShape s) {
    switch (op) {
        case LinearOp::Dbar: s.q += 1; break;
        case LinearOp::Del: s.p += 1; break;
        case LinearOp::DbarStar: s.q -= 1; break;
        case LinearOp::DelStar: s.p -= 1; break;
    }
    // Degrees one step outside [0, n] mark identically-zero forms; clamp so
    // repeated raising or lowering of such a form stays representable.
    s.p = std::clamp(s.p, -1, s.n + 1);
    s.q = std::clamp(s.q, -1, s.n + 1);
    return s;
}

// Sign conventions, fixed once here:
//   dbar     adds dzbar^j on the left of dzbar^J and crosses dz^I:
//              nu_j * (-1)^p * insertionSign(j, J)
//   del      adds dz^i on the left of dz^I:
//              mu_i * insertionSign(i, I)
//   dbar*    removes dzbar^j, the formal adjoint in the Parseval product
//            (the factor 2 is the frame-weight ratio between q and q-1):
//              2 * conj(nu_j) * (-1)^p * insertionSign(j, J \ j)
//   del*     symmetric:  2 * conj(mu_i) * insertionSign(i, I \ i)
std::vector<Transition> opTransitions(LinearOp op, const FormShape& s) {
    std::vector<Transition> out;
    for (const ComponentKey& c : s.componentKeys()) {
        Real pSign = (s.p % 2 == 0) ? 1 : -1;
        for (int d = 0; d < s.n; ++d) {
            IndexMask bit = IndexMask(1) << d;
            switch (op) {
                case LinearOp::Dbar:
                    if (!maskContains(c.anti, d))
                        out.push_back({c,
                                       ComponentKey{c.holo, c.anti | bit, c.value},
                                       pSign * insertionSign(d, c.anti),
                                       SymbolFactor{SymbolFactor::Nu, d}});
                    break;
                case LinearOp::Del:
                    if (!maskContains(c.holo, d))
                        out.push_back({c,
                                       ComponentKey{c.holo | bit, c.anti, c.value},
                                       Real(insertionSign(d, c.holo)),
                                       SymbolFactor{SymbolFactor::Mu, d}});
                    break;
                case LinearOp::DbarStar:
                    if (maskContains(c.anti, d))
                        out.push_back({c,
                                       ComponentKey{c.holo, c.anti & ~bit, c.value},
                                       2 * pSign * insertionSign(d, c.anti & ~bit),
                                       SymbolFactor{SymbolFactor::NuConj, d}});
                    break;
                case LinearOp::DelStar:
                    if (maskContains(c.holo, d))
                        out.push_back({c,
                                       ComponentKey{c.holo & ~bit, c.anti, c.value},
                                       2 * Real(insertionSign(d, c.holo & ~bit)),
                                       SymbolFactor{SymbolFactor::MuConj, d}});
                    break;
            }
        }
    }
    return out;
}

Complex evalSymbol(const SymbolFactor& sym, const int* coords, int n) {
    switch (sym.kind) {
        case SymbolFactor::One: return Complex(1, 0);
        case SymbolFactor::Mu: return symbolMu(coords, n, sym.dir);
        case SymbolFactor::Nu: return symbolNu(coords, n, sym.dir);
        case SymbolFactor::MuConj: return std::conj(symbolMu(coords, n, sym.dir));
        case SymbolFactor::NuConj: return std::conj(symbolNu(coords, n, sym.dir));
    }
    return Complex(0, 0);
}

VectorXcd symbolVector(const ModeLayout& layout, const SymbolFactor& sym) {
    VectorXcd v(layout.size());
    std::vector<int> coords(2 * layout.n);
    for (std::int64_t i = 0; i < v.size(); ++i) {
        layout.decode(i, coords.data());
        v[i] = evalSymbol(sym, coords.data(), layout.n);
    }
    return v;
}

FourierForm applyLinear(LinearOp op, const FourierForm& f) {
    FormShape os = opOutputShape(op, f.shape());
    FourierForm out(f.geometry(), os.p, os.q, os.kind, f.band());
    ModeLayout lay = f.layout();
    std::map<int, VectorXcd> symCache;
    for (const Transition& t : opTransitions(op, f.shape())) {
        const VectorXcd* src = f.findComponent(t.from);
        if (!src) continue;
        int cacheKey = int(t.sym.kind) * 64 + t.sym.dir;
        auto it = symCache.find(cacheKey);
        if (it == symCache.end()) it = symCache.emplace(cacheKey, symbolVector(lay, t.sym)).first;
        out.component(t.to) += t.scale * it->second.cwiseProduct(*src);
    }
    out.pruneZeroComponents();
    return out;
}

FourierForm green(const FourierForm& f) {
    FourierForm out(f.geometry(), f.p(), f.q(), f.kind(), f.band());
    ModeLayout lay = f.layout();
    VectorXcd inv(lay.size());
    std::vector<int> coords(2 * lay.n);
    for (std::int64_t i = 0; i < inv.size(); ++i) {
        lay.decode(i, coords.data());
        Real lam = symbolLaplace(coords.data(), lay.n);
        inv[i] = (lam == 0) ? Complex(0, 0) : Complex(1.0 / lam, 0);
    }
    for (const auto& [k, v] : f.components()) out.component(k) = inv.cwiseProduct(v);
    out.pruneZeroComponents();
    return out;
}

FourierForm harmonic(const FourierForm& f) {
    FourierForm out(f.geometry(), f.p(), f.q(), f.kind(), 0);
    std::vector<int> zero(2 * f.shape().n, 0);
    std::int64_t idx0 = f.layout().encode(zero.data());
    for (const auto& [k, v] : f.components()) out.component(k)[0] = v[idx0];
    out.pruneZeroComponents();
    return out;
}

Eigen::MatrixXcd modeMatrix(const std::vector<LinearOp>& word, const FormShape& in,
                            const int* coords) {
    FormShape cur = in;
    std::vector<ComponentKey> keys = cur.componentKeys();
    std::map<ComponentKey, int> cols;
    for (std::size_t i = 0; i < keys.size(); ++i) cols[keys[i]] = int(i);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(keys.size(), keys.size());
    for (LinearOp op : word) {
        FormShape next = opOutputShape(op, cur);
        std::vector<ComponentKey> nextKeys = next.componentKeys();
        std::map<ComponentKey, int> rows;
        for (std::size_t i = 0; i < nextKeys.size(); ++i) rows[nextKeys[i]] = int(i);
        Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(nextKeys.size(), keys.size());
        for (const Transition& t : opTransitions(op, cur))
            T(rows.at(t.to), cols.at(t.from)) += t.scale * evalSymbol(t.sym, coords, cur.n);
        M = (T * M).eval();
        cur = next;
        keys = std::move(nextKeys);
        cols = std::move(rows);
    }
    return M;
}

// A form supported on a single mode has constant pointwise frame norm, so
// the grid sup collapses to a closed form shared with the general path.
static bool singleModeNorms(const FourierForm& f, bool withDerivatives, SupNorms& r) {
    ModeLayout lay = f.layout();
    std::int64_t mode = -1;
    Real sumSq = 0;
    for (const auto& [k, v] : f.components())
        for (std::int64_t i = 0; i < v.size(); ++i) {
            if (v[i] == Complex(0, 0)) continue;
            if (mode < 0) mode = i;
            else if (mode != i) return false;
            sumSq += std::norm(v[i]);
        }
    Real w = f.shape().weight();
    if (mode < 0) {
        r.c0 = r.c1 = 0;
        return true;
    }
    std::vector<int> coords(lay.n * 2);
    lay.decode(mode, coords.data());
    r.c0 = std::sqrt(w * sumSq);
    Real derivSum = 0;
    if (withDerivatives)
        for (int d = 0; d < 2 * lay.n; ++d) derivSum += 2 * kPi * std::abs(coords[d]);
    r.c1 = r.c0 * (1 + derivSum);
    return true;
}

SupNorms norms(const FourierForm& f, bool withDerivatives) {
    SupNorms r;
    r.l2 = l2Norm(f);
    if (f.components().empty()) return r;
    if (singleModeNorms(f, withDerivatives, r)) return r;

    const TorusGeometry& g = f.geometry();
    int n2 = g.dims();
    int G = g.normGridSide();
    int B = f.band();
    ModeLayout lay = f.layout();
    std::int64_t M = lay.size();

    std::vector<const VectorXcd*> comps;
    for (const auto& [k, v] : f.components()) comps.push_back(&v);
    int C = int(comps.size());
    Real w = f.shape().weight();

    std::vector<int> coordTable(std::size_t(M) * n2);
    for (std::int64_t i = 0; i < M; ++i) lay.decode(i, coordTable.data() + i * n2);

    std::int64_t P = 1;
    for (int d = 0; d < n2; ++d) P *= G;

    // All components and derivative fields ride one synthesis.  The last
    // axis is fused with the frame-norm accumulation so the full grid of
    // every field is never materialised.
    int passes = withDerivatives ? n2 + 1 : 1;
    int F = C * passes;
    std::vector<Complex> buf(std::size_t(M) * F);
    for (int c = 0; c < C; ++c) {
        const VectorXcd& v = *comps[c];
        for (std::int64_t i = 0; i < M; ++i) {
            Complex* slot = buf.data() + i * F + c * passes;
            slot[0] = v[i];
            for (int d = 1; d < passes; ++d)
                slot[d] = v[i] * Complex(0, 2 * kPi * coordTable[i * n2 + (d - 1)]);
        }
    }
    Eigen::MatrixXcd E = synthesisMatrix(G, B);
    std::vector<std::int64_t> dims(n2, 2 * B + 1);
    dims.push_back(F);
    for (int d = 0; d + 1 < n2; ++d) buf = applyAlongAxis(buf, dims, d, E);

    int len = 2 * B + 1;
    std::int64_t outer = P / G;
    std::vector<Real> sq(std::size_t(passes) * G, 0.0);
    std::vector<Complex> tmp(std::size_t(G) * F);
    for (std::int64_t o = 0; o < outer; ++o) {
        const Complex* src = buf.data() + o * len * F;
        std::fill(tmp.begin(), tmp.end(), Complex(0, 0));
        for (int k = 0; k < len; ++k) {
            const Real* s = reinterpret_cast<const Real*>(src + k * F);
            for (int g = 0; g < G; ++g) {
                Real er = E(g, k).real(), ei = E(g, k).imag();
                Real* t = reinterpret_cast<Real*>(tmp.data() + std::size_t(g) * F);
                for (int f = 0; f < F; ++f) {
                    Real sr = s[2 * f], si = s[2 * f + 1];
                    t[2 * f] += er * sr - ei * si;
                    t[2 * f + 1] += er * si + ei * sr;
                }
            }
        }
        std::fill(sq.begin(), sq.end(), 0.0);
        for (int g = 0; g < G; ++g)
            for (int c = 0; c < C; ++c)
                for (int d = 0; d < passes; ++d)
                    sq[std::size_t(d) * G + g] += std::norm(tmp[std::size_t(g) * F + c * passes + d]);
        for (int g = 0; g < G; ++g) {
            Real v = std::sqrt(w * sq[g]);
            r.c0 = std::max(r.c0, v);
            Real acc = v;
            for (int d = 1; d < passes; ++d) acc += std::sqrt(w * sq[std::size_t(d) * G + g]);
            r.c1 = std::max(r.c1, acc);
        }
    }
    return r;
}

} // namespace hodgelab
