#include "hodgelab/products.hpp"

#include <bit>
#include <cmath>

#include "hodgelab/grid_transform.hpp"
#include "hodgelab/spectral.hpp"

namespace hodgelab {
namespace {

Real powSign(int e) { return (e % 2 == 0) ? 1 : -1; }

struct BilinearTerm {
    ComponentKey aKey, bKey, outKey;
    Complex scale;
    SymbolFactor aSym{}, bSym{};
};

int symCacheKey(const SymbolFactor& s) { return int(s.kind) * 64 + s.dir; }

// Lazily transforms (component, optional derivative symbol) pairs of one
// factor to the shared product grid; empty cache entries mark absent (zero)
// components.
class SideGrids {
public:
    SideGrids(const FourierForm& f, int G) : f_(f), G_(G) {}

    const std::vector<Complex>* grid(const ComponentKey& key, const SymbolFactor& sym) {
        auto ck = std::make_pair(key, symCacheKey(sym));
        auto it = cache_.find(ck);
        if (it == cache_.end()) {
            std::vector<Complex> g;
            if (const VectorXcd* comp = f_.findComponent(key)) {
                ModeLayout lay = f_.layout();
                std::vector<Complex> modes(comp->data(), comp->data() + comp->size());
                if (sym.kind != SymbolFactor::One) {
                    VectorXcd sv = symbolVector(lay, sym);
                    for (std::int64_t i = 0; i < comp->size(); ++i) modes[i] *= sv[i];
                }
                g = modesToGrid(modes, 2 * lay.n, lay.band, G_, 1);
            }
            it = cache_.emplace(ck, std::move(g)).first;
        }
        return it->second.empty() ? nullptr : &it->second;
    }

private:
    const FourierForm& f_;
    int G_;
    std::map<std::pair<ComponentKey, int>, std::vector<Complex>> cache_;
};

ProductResult convolve(const FourierForm& A, const FourierForm& B, const FormShape& outShape,
                       const std::vector<BilinearTerm>& terms) {
    const TorusGeometry& g = A.geometry();
    if (!(g == B.geometry())) throw std::invalid_argument("product: geometry mismatch");
    int n2 = g.dims();
    int Braw = A.band() + B.band();
    int cap = std::min(Braw, g.K);
    int G = 2 * Braw + 1;
    ProductResult res{FourierForm(g, outShape.p, outShape.q, outShape.kind, cap),
                      TruncationReceipt{0, cap}};

    SideGrids ga(A, G), gb(B, G);
    std::int64_t P = 1;
    for (int d = 0; d < n2; ++d) P *= G;
    std::map<ComponentKey, std::vector<Complex>> outGrids;
    for (const BilinearTerm& t : terms) {
        const std::vector<Complex>* x = ga.grid(t.aKey, t.aSym);
        if (!x) continue;
        const std::vector<Complex>* y = gb.grid(t.bKey, t.bSym);
        if (!y) continue;
        std::vector<Complex>& og = outGrids[t.outKey];
        if (og.empty()) og.assign(P, Complex(0, 0));
        Eigen::Map<Eigen::ArrayXcd> out(og.data(), P);
        Eigen::Map<const Eigen::ArrayXcd> xa(x->data(), P), ya(y->data(), P);
        out += t.scale * xa * ya;
    }

    ModeLayout rawLay{g.n, Braw};
    ModeLayout capLay{g.n, cap};
    Real w = res.form.shape().weight();
    Real dropped = 0;
    std::vector<int> coords(n2);
    for (auto& [key, og] : outGrids) {
        std::vector<Complex> modes = gridToModes(og, n2, G, Braw, 1);
        VectorXcd& dst = res.form.component(key);
        for (std::int64_t i = 0; i < rawLay.size(); ++i) {
            rawLay.decode(i, coords.data());
            if (rawLay.inBand(coords.data(), cap))
                dst[capLay.encode(coords.data())] = modes[i];
            else
                dropped += w * std::norm(modes[i]);
        }
    }
    res.receipt.discardedMass = std::sqrt(dropped);
    res.form.pruneZeroComponents();
    return res;
}

} // namespace

ProductResult wedge(const FourierForm& a, const FourierForm& b) {
    bool aVal = a.kind() != ValueKind::Scalar;
    bool bVal = b.kind() != ValueKind::Scalar;
    if (aVal && bVal) throw std::invalid_argument("wedge: two value-carrying factors");
    int n = a.geometry().n;
    FormShape out{n, std::min(a.p() + b.p(), n + 1), std::min(a.q() + b.q(), n + 1),
                  aVal ? a.kind() : b.kind()};
    std::vector<BilinearTerm> terms;
    for (const ComponentKey& ka : a.shape().componentKeys())
        for (const ComponentKey& kb : b.shape().componentKeys()) {
            if ((ka.holo & kb.holo) || (ka.anti & kb.anti)) continue;
            Real s = powSign(a.q() * b.p()) * mergeSign(ka.holo, kb.holo) *
                     mergeSign(ka.anti, kb.anti);
            int v = (ka.value >= 0) ? ka.value : kb.value;
            terms.push_back({ka, kb,
                             ComponentKey{ka.holo | kb.holo, ka.anti | kb.anti, v},
                             Complex(s, 0),
                             {},
                             {}});
        }
    return convolve(a, b, out, terms);
}

ProductResult contract(const FourierForm& phi, const FourierForm& omega) {
    if (phi.kind() != ValueKind::Tangent || phi.p() != 0)
        throw std::invalid_argument("contract: first factor must be a tangent-valued (0,s)-form");
    if (omega.kind() != ValueKind::Scalar)
        throw std::invalid_argument("contract: second factor must be scalar-valued");
    const TorusGeometry& g = phi.geometry();
    int n = g.n;
    int s = phi.q();
    int p = omega.p(), q = omega.q();
    int outQ = std::min(q + s, n + 1);
    if (p < 1)
        return {FourierForm(g, p - 1, outQ, ValueKind::Scalar,
                            std::min(phi.band() + omega.band(), g.K)),
                TruncationReceipt{0, -1}};

    FormShape out{n, p - 1, outQ, ValueKind::Scalar};
    std::vector<BilinearTerm> terms;
    for (const ComponentKey& ka : phi.shape().componentKeys())
        for (const ComponentKey& kb : omega.shape().componentKeys()) {
            if (!maskContains(kb.holo, ka.value)) continue;
            if (ka.anti & kb.anti) continue;
            Real sign = powSign(maskPosition(kb.holo, ka.value)) * powSign(s * (p - 1)) *
                        mergeSign(ka.anti, kb.anti);
            terms.push_back({ka, kb,
                             ComponentKey{kb.holo & ~(IndexMask(1) << ka.value),
                                          ka.anti | kb.anti, -1},
                             Complex(sign, 0),
                             {},
                             {}});
        }
    return convolve(phi, omega, out, terms);
}

ProductResult bracket(const FourierForm& phi, const FourierForm& psi) {
    if (phi.kind() != ValueKind::Tangent || psi.kind() != ValueKind::Tangent || phi.p() != 0 ||
        psi.p() != 0)
        throw std::invalid_argument("bracket: expects tangent-valued (0,*)-forms");
    const TorusGeometry& g = phi.geometry();
    int n = g.n;
    int p = phi.q(), q = psi.q();
    FormShape out{n, 0, std::min(p + q, n + 1), ValueKind::Tangent};

    // One convolution per orientation; the derivative d/dz^i rides on the
    // right factor as a mode symbol.
    auto dirTerms = [&](const FourierForm& left, const FourierForm& right) {
        std::vector<BilinearTerm> terms;
        for (const ComponentKey& ka : left.shape().componentKeys())
            for (const ComponentKey& kb : right.shape().componentKeys()) {
                if (ka.anti & kb.anti) continue;
                terms.push_back({ka, kb,
                                 ComponentKey{0, ka.anti | kb.anti, kb.value},
                                 Complex(mergeSign(ka.anti, kb.anti), 0),
                                 {},
                                 SymbolFactor{SymbolFactor::Mu, ka.value}});
            }
        return terms;
    };
    ProductResult r1 = convolve(phi, psi, out, dirTerms(phi, psi));
    ProductResult r2 = convolve(psi, phi, out, dirTerms(psi, phi));
    r1.form -= Complex(powSign(p * q), 0) * r2.form;
    r1.form.pruneZeroComponents();
    r1.receipt += r2.receipt;
    return r1;
}

LieDerivative lieDerivative(const FourierForm& phi, const FourierForm& omega) {
    Complex sk(powSign(phi.q()), 0);
    FourierForm iw = contract(phi, omega).form;
    return {sk * del(iw) + contract(phi, del(omega)).form,
            sk * dbar(iw) + contract(phi, dbar(omega)).form};
}

// Band widening that tolerates a carrier holding components of several
// frame ranks (the nominal bidegree stays that of the constructor).
static FourierForm widenMixed(const FourierForm& f, int newBand) {
    FourierForm out(f.geometry(), f.p(), f.q(), f.kind(), newBand);
    ModeLayout src = f.layout();
    ModeLayout dst = out.layout();
    std::vector<int> coords(std::size_t(2) * f.geometry().n);
    for (const auto& [k, v] : f.components()) {
        VectorXcd& o = out.components()[k];
        if (o.size() == 0) o = VectorXcd::Zero(dst.size());
        for (std::int64_t i = 0; i < v.size(); ++i) {
            if (v[i] == Complex(0, 0)) continue;
            src.decode(i, coords.data());
            o[dst.encode(coords.data())] = v[i];
        }
    }
    return out;
}

// Merges coefficients into the carrier's component map directly: the graded
// pieces of an exponential contraction have differing (p,q) splits but share
// the total degree p+q, the value kind and hence the frame weight, so norms
// and linear combinations of the carrier remain meaningful.
static void mergeGraded(FourierForm& acc, const FourierForm& piece, Complex scale) {
    if (piece.band() > acc.band()) acc = widenMixed(acc, piece.band());
    FourierForm widened;
    const FourierForm* src = &piece;
    if (piece.band() < acc.band()) {
        widened = widenMixed(piece, acc.band());
        src = &widened;
    }
    std::int64_t size = acc.layout().size();
    for (const auto& [k, v] : src->components()) {
        VectorXcd& dst = acc.components()[k];
        if (dst.size() == 0) dst = VectorXcd::Zero(size);
        dst += scale * v;
    }
}

ProductResult expContract(const FourierForm& phi, const FourierForm& omega) {
    if (phi.q() != 1 || phi.kind() != ValueKind::Tangent)
        throw std::invalid_argument("expContract: expects a tangent-valued (0,1)-form");
    ProductResult res{omega, TruncationReceipt{0, 0}};
    FourierForm cur = omega;
    Real factorial = 1;
    for (int k = 1; k <= omega.p(); ++k) {
        ProductResult c = contract(phi, cur);
        cur = std::move(c.form);
        res.receipt += c.receipt;
        factorial *= k;
        mergeGraded(res.form, cur, Complex(1.0 / factorial, 0));
        if (cur.isZero()) break;
    }
    return res;
}

FourierForm volumeForm(const TorusGeometry& g) {
    FourierForm out(g, g.n, 0, ValueKind::Scalar, 0);
    out.component(ComponentKey{(IndexMask(1) << g.n) - 1u, 0, -1})[0] = Complex(1, 0);
    return out;
}

FourierForm contractDualVolume(const FourierForm& alpha) {
    const TorusGeometry& g = alpha.geometry();
    int n = g.n;
    if (alpha.kind() != ValueKind::Scalar || alpha.p() != n - 1)
        throw std::invalid_argument("contractDualVolume: expects a scalar (n-1,q)-form");
    int q = alpha.q();
    IndexMask full = (IndexMask(1) << n) - 1u;
    FourierForm out(g, 0, q, ValueKind::Tangent, alpha.band());
    for (const auto& [k, v] : alpha.components()) {
        int lambda = std::countr_zero(IndexMask(full & ~k.holo));
        Real sign = powSign(lambda + q * (n - 1));
        out.component(ComponentKey{0, k.anti, lambda}) = sign * v;
    }
    out.pruneZeroComponents();
    return out;
}

} // namespace hodgelab
