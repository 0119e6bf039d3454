#include "hodgelab/poly_form.hpp"

#include <stdexcept>
#include <string>

namespace hodgelab {

namespace {

int powSign(long e) { return (e % 2 == 0) ? 1 : -1; }

void addScaled(PolyCoeff& dst, const PolyCoeff& src, int sign) {
    if (sign >= 0)
        dst += src;
    else
        dst -= src;
}

} // namespace

void PolyShape::validate() const {
    if (n < 1 || n > 8) throw std::invalid_argument("PolyShape: n out of range");
    switch (value) {
        case PolyValue::Scalar:
            if (rank != 1) throw std::invalid_argument("PolyShape: scalar rank must be 1");
            break;
        case PolyValue::Tangent:
            if (rank != n) throw std::invalid_argument("PolyShape: tangent rank must be n");
            break;
        case PolyValue::Module:
            if (rank < 1) throw std::invalid_argument("PolyShape: module rank must be >= 1");
            break;
    }
}

std::vector<ComponentKey> PolyShape::componentKeys() const {
    std::vector<ComponentKey> keys;
    if (degenerate()) return keys;
    const auto holos = masksOfRank(n, p);
    const auto antis = masksOfRank(n, q);
    const int vals = valueCount();
    for (IndexMask I : holos)
        for (IndexMask J : antis) {
            if (value == PolyValue::Scalar) {
                keys.push_back({I, J, -1});
            } else {
                for (int v = 0; v < vals; ++v) keys.push_back({I, J, v});
            }
        }
    return keys;
}

PolyCoeff& PolyForm::component(const ComponentKey& k) {
    if (maskRank(k.holo) != shape_.p || maskRank(k.anti) != shape_.q)
        throw std::invalid_argument("PolyForm: component key has wrong degree");
    if (shape_.value == PolyValue::Scalar) {
        if (k.value != -1) throw std::invalid_argument("PolyForm: scalar form with value index");
    } else if (k.value < 0 || k.value >= shape_.valueCount()) {
        throw std::invalid_argument("PolyForm: value index out of range");
    }
    auto it = comps_.find(k);
    if (it == comps_.end()) it = comps_.emplace(k, PolyCoeff(shape_.n)).first;
    return it->second;
}

PolyForm& PolyForm::operator+=(const PolyForm& o) {
    if (!(shape_ == o.shape_)) throw std::invalid_argument("PolyForm: shape mismatch in +=");
    for (const auto& [k, c] : o.comps_)
        if (!c.isZero()) component(k) += c;
    return *this;
}

PolyForm& PolyForm::operator-=(const PolyForm& o) {
    if (!(shape_ == o.shape_)) throw std::invalid_argument("PolyForm: shape mismatch in -=");
    for (const auto& [k, c] : o.comps_)
        if (!c.isZero()) component(k) -= c;
    return *this;
}

PolyForm& PolyForm::operator*=(const GaussRat& s) {
    for (auto& [k, c] : comps_) c *= s;
    return *this;
}

PolyForm PolyForm::operator-() const {
    PolyForm r(shape_);
    for (const auto& [k, c] : comps_) r.comps_.emplace(k, -c);
    return r;
}

PolyConnection PolyConnection::trivial(int n, int r) {
    PolyConnection c;
    c.n = n;
    c.r = r;
    c.A.assign(n, std::vector<std::vector<PolyCoeff>>(
                      r, std::vector<PolyCoeff>(r, PolyCoeff(n))));
    return c;
}

PolyForm polyDel(const PolyForm& f) {
    PolyShape out = f.shape();
    out.p += 1;
    PolyForm r(out);
    for (const auto& [k, c] : f.components()) {
        if (c.isZero()) continue;
        for (int i = 0; i < f.n(); ++i) {
            if (maskContains(k.holo, i)) continue;
            PolyCoeff d = c.dz(i);
            if (d.isZero()) continue;
            ComponentKey t{static_cast<IndexMask>(k.holo | maskBit(i)), k.anti, k.value};
            addScaled(r.component(t), d, insertionSign(i, k.holo));
        }
    }
    r.prune();
    return r;
}

PolyForm polyDbar(const PolyForm& f) {
    PolyShape out = f.shape();
    out.q += 1;
    PolyForm r(out);
    const int sp = powSign(f.p());
    for (const auto& [k, c] : f.components()) {
        if (c.isZero()) continue;
        for (int j = 0; j < f.n(); ++j) {
            if (maskContains(k.anti, j)) continue;
            PolyCoeff d = c.dzbar(j);
            if (d.isZero()) continue;
            ComponentKey t{k.holo, static_cast<IndexMask>(k.anti | maskBit(j)), k.value};
            addScaled(r.component(t), d, sp * insertionSign(j, k.anti));
        }
    }
    r.prune();
    return r;
}

PolyForm polyNablaHolo(const PolyForm& f, const PolyConnection* conn) {
    PolyForm r = polyDel(f);
    if (f.shape().value != PolyValue::Module || conn == nullptr) return r;
    if (conn->n != f.n() || conn->r != f.shape().rank)
        throw std::invalid_argument("polyNablaHolo: connection rank/dimension mismatch");
    for (const auto& [k, c] : f.components()) {
        if (c.isZero()) continue;
        for (int i = 0; i < f.n(); ++i) {
            if (maskContains(k.holo, i)) continue;
            const int sign = insertionSign(i, k.holo);
            for (int alpha = 0; alpha < conn->r; ++alpha) {
                const PolyCoeff& a = conn->entry(i, alpha, k.value);
                if (a.isZero()) continue;
                ComponentKey t{static_cast<IndexMask>(k.holo | maskBit(i)), k.anti, alpha};
                addScaled(r.component(t), a * c, sign);
            }
        }
    }
    r.prune();
    return r;
}

PolyForm polyWedge(const PolyForm& a, const PolyForm& b) {
    if (a.n() != b.n()) throw std::invalid_argument("polyWedge: dimension mismatch");
    const bool av = a.shape().value != PolyValue::Scalar;
    const bool bv = b.shape().value != PolyValue::Scalar;
    if (av && bv) throw std::invalid_argument("polyWedge: at most one valued factor");
    PolyShape out;
    out.n = a.n();
    out.p = a.p() + b.p();
    out.q = a.q() + b.q();
    out.value = av ? a.shape().value : b.shape().value;
    out.rank = av ? a.shape().rank : b.shape().rank;
    PolyForm r(out);
    if (out.degenerate()) return r;
    const int cross = powSign(static_cast<long>(a.q()) * b.p());
    for (const auto& [ka, ca] : a.components()) {
        if (ca.isZero()) continue;
        for (const auto& [kb, cb] : b.components()) {
            if (cb.isZero()) continue;
            if ((ka.holo & kb.holo) != 0 || (ka.anti & kb.anti) != 0) continue;
            const int sign = cross * mergeSign(ka.holo, kb.holo) * mergeSign(ka.anti, kb.anti);
            ComponentKey t{static_cast<IndexMask>(ka.holo | kb.holo),
                           static_cast<IndexMask>(ka.anti | kb.anti),
                           av ? ka.value : kb.value};
            addScaled(r.component(t), ca * cb, sign);
        }
    }
    r.prune();
    return r;
}

PolyForm polyContract(const PolyForm& phi, const PolyForm& omega) {
    if (phi.n() != omega.n()) throw std::invalid_argument("polyContract: dimension mismatch");
    if (phi.shape().value != PolyValue::Tangent || phi.p() != 0)
        throw std::invalid_argument("polyContract: first argument must be a tangent-valued (0,s) form");
    if (omega.shape().value == PolyValue::Tangent)
        throw std::invalid_argument("polyContract: target must be scalar or module valued");
    const int s = phi.q();
    PolyShape out = omega.shape();
    out.p -= 1;
    out.q += s;
    PolyForm r(out);
    if (out.degenerate()) return r;
    const int typeSign = powSign(static_cast<long>(s) * (omega.p() - 1));
    for (const auto& [ka, ca] : phi.components()) {
        if (ca.isZero()) continue;
        for (const auto& [kb, cb] : omega.components()) {
            if (cb.isZero()) continue;
            if (!maskContains(kb.holo, ka.value)) continue;
            if ((ka.anti & kb.anti) != 0) continue;
            const int sign = typeSign * powSign(maskPosition(kb.holo, ka.value)) *
                             mergeSign(ka.anti, kb.anti);
            ComponentKey t{static_cast<IndexMask>(kb.holo & ~maskBit(ka.value)),
                           static_cast<IndexMask>(ka.anti | kb.anti), kb.value};
            addScaled(r.component(t), ca * cb, sign);
        }
    }
    r.prune();
    return r;
}

PolyForm polyBracket(const PolyForm& phi, const PolyForm& psi) {
    if (phi.n() != psi.n()) throw std::invalid_argument("polyBracket: dimension mismatch");
    if (phi.shape().value != PolyValue::Tangent || psi.shape().value != PolyValue::Tangent ||
        phi.p() != 0 || psi.p() != 0)
        throw std::invalid_argument("polyBracket: arguments must be tangent-valued (0,s) forms");
    PolyShape out = phi.shape();
    out.q = phi.q() + psi.q();
    PolyForm r(out);
    if (out.degenerate()) return r;
    auto accumulate = [&r](const PolyForm& a, const PolyForm& b, int outer) {
        for (const auto& [ka, ca] : a.components()) {
            if (ca.isZero()) continue;
            for (const auto& [kb, cb] : b.components()) {
                if ((ka.anti & kb.anti) != 0) continue;
                PolyCoeff d = cb.dz(ka.value);
                if (d.isZero()) continue;
                ComponentKey t{0, static_cast<IndexMask>(ka.anti | kb.anti), kb.value};
                addScaled(r.component(t), ca * d, outer * mergeSign(ka.anti, kb.anti));
            }
        }
    };
    accumulate(phi, psi, 1);
    accumulate(psi, phi, -powSign(static_cast<long>(phi.q()) * psi.q()));
    r.prune();
    return r;
}

PolyLie polyLie(const PolyForm& phi, const PolyForm& omega, const PolyConnection* conn) {
    const int sk = powSign(phi.q());
    PolyForm iw = polyContract(phi, omega);
    PolyForm holo = polyNablaHolo(iw, conn);
    holo *= GaussRat(sk);
    holo += polyContract(phi, polyNablaHolo(omega, conn));
    PolyForm anti = polyDbar(iw);
    anti *= GaussRat(sk);
    anti += polyContract(phi, polyDbar(omega));
    return {std::move(holo), std::move(anti)};
}

PolyForm polyVolume(int n) {
    PolyShape s;
    s.n = n;
    s.p = n;
    PolyForm f(s);
    f.component({static_cast<IndexMask>((1u << n) - 1u), 0, -1}) =
        PolyCoeff::constant(n, GaussRat(1));
    return f;
}

void GradedPolyForm::add(const PolyForm& f) {
    if (f.n() != n_ || f.shape().value != value_ || f.shape().rank != rank_)
        throw std::invalid_argument("GradedPolyForm: value kind mismatch");
    if (f.shape().degenerate() || f.isZero()) return;
    auto key = std::make_pair(f.p(), f.q());
    auto it = pieces_.find(key);
    if (it == pieces_.end())
        pieces_.emplace(key, f);
    else
        it->second += f;
}

void GradedPolyForm::prune() {
    for (auto it = pieces_.begin(); it != pieces_.end();) {
        it->second.prune();
        it = it->second.isZero() ? pieces_.erase(it) : std::next(it);
    }
}

GradedPolyForm& GradedPolyForm::operator+=(const GradedPolyForm& o) {
    if (o.n_ != n_ || o.value_ != value_ || o.rank_ != rank_)
        throw std::invalid_argument("GradedPolyForm: value kind mismatch in +=");
    for (const auto& [d, f] : o.pieces_) add(f);
    return *this;
}

GradedPolyForm& GradedPolyForm::operator-=(const GradedPolyForm& o) {
    if (o.n_ != n_ || o.value_ != value_ || o.rank_ != rank_)
        throw std::invalid_argument("GradedPolyForm: value kind mismatch in -=");
    for (const auto& [d, f] : o.pieces_) add(-f);
    return *this;
}

GradedPolyForm& GradedPolyForm::operator*=(const GaussRat& s) {
    for (auto& [d, f] : pieces_) f *= s;
    return *this;
}

namespace {

template <typename Fn>
GradedPolyForm mapPieces(const GradedPolyForm& f, Fn&& op) {
    GradedPolyForm out(f.n(), f.value(), f.rank());
    for (const auto& [d, piece] : f.pieces()) out.add(op(piece));
    return out;
}

} // namespace

GradedPolyForm gradedDel(const GradedPolyForm& f) {
    return mapPieces(f, [](const PolyForm& p) { return polyDel(p); });
}

GradedPolyForm gradedDbar(const GradedPolyForm& f) {
    return mapPieces(f, [](const PolyForm& p) { return polyDbar(p); });
}

GradedPolyForm gradedNablaHolo(const GradedPolyForm& f, const PolyConnection* conn) {
    return mapPieces(f, [conn](const PolyForm& p) { return polyNablaHolo(p, conn); });
}

GradedPolyForm gradedNabla(const GradedPolyForm& f, const PolyConnection* conn) {
    GradedPolyForm out = gradedNablaHolo(f, conn);
    out += gradedDbar(f);
    return out;
}

GradedPolyForm gradedContract(const PolyForm& phi, const GradedPolyForm& f) {
    return mapPieces(f, [&phi](const PolyForm& p) { return polyContract(phi, p); });
}

GradedPolyForm gradedLieHolo(const PolyForm& phi, const GradedPolyForm& f,
                             const PolyConnection* conn) {
    return mapPieces(f, [&](const PolyForm& p) { return polyLie(phi, p, conn).holo; });
}

GradedPolyForm gradedLieAnti(const PolyForm& phi, const GradedPolyForm& f) {
    return mapPieces(f, [&](const PolyForm& p) { return polyLie(phi, p, nullptr).antiholo; });
}

GradedPolyForm gradedLie(const PolyForm& phi, const GradedPolyForm& f,
                         const PolyConnection* conn) {
    GradedPolyForm out = gradedLieHolo(phi, f, conn);
    out += gradedLieAnti(phi, f);
    return out;
}

GradedPolyForm gradedExpContract(const PolyForm& phi, const GradedPolyForm& f, int sign) {
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("gradedExpContract: sign must be +-1");
    GradedPolyForm out = f;
    for (const auto& [d, piece] : f.pieces()) {
        PolyForm cur = piece;
        Rational fact = 1;
        for (int k = 1; cur.p() >= 1; ++k) {
            cur = polyContract(phi, cur);
            if (cur.isZero()) break;
            fact *= k;
            PolyForm term = cur;
            term *= GaussRat(Rational(sign < 0 && k % 2 == 1 ? -1 : 1) / fact);
            out.add(term);
        }
    }
    return out;
}

GradedPolyForm applyOperatorWord(const std::vector<PolyOp>& word, const GradedPolyForm& start,
                                 const PolyConnection* conn) {
    GradedPolyForm cur = start;
    for (size_t pos = 0; pos < word.size(); ++pos) {
        const PolyOp& op = word[pos];
        auto needOperand = [&]() -> const PolyForm& {
            if (!op.operand)
                throw std::invalid_argument("missing operand");
            return *op.operand;
        };
        try {
            switch (op.kind) {
                case PolyOpKind::Del: cur = gradedDel(cur); break;
                case PolyOpKind::Dbar: cur = gradedDbar(cur); break;
                case PolyOpKind::Nabla: cur = gradedNabla(cur, conn); break;
                case PolyOpKind::NablaHolo: cur = gradedNablaHolo(cur, conn); break;
                case PolyOpKind::Contract: cur = gradedContract(needOperand(), cur); break;
                case PolyOpKind::Lie: cur = gradedLie(needOperand(), cur, conn); break;
                case PolyOpKind::LieHolo: cur = gradedLieHolo(needOperand(), cur, conn); break;
                case PolyOpKind::LieAnti: cur = gradedLieAnti(needOperand(), cur); break;
                case PolyOpKind::ExpContract:
                    cur = gradedExpContract(needOperand(), cur, 1);
                    break;
                case PolyOpKind::ExpContractInv:
                    cur = gradedExpContract(needOperand(), cur, -1);
                    break;
                case PolyOpKind::WedgeLeft: {
                    const PolyForm& a = needOperand();
                    cur = mapPieces(cur, [&a](const PolyForm& p) { return polyWedge(a, p); });
                    break;
                }
                case PolyOpKind::Bracket: {
                    const PolyForm& a = needOperand();
                    cur = mapPieces(cur, [&a](const PolyForm& p) { return polyBracket(a, p); });
                    break;
                }
            }
        } catch (const std::exception& e) {
            throw std::invalid_argument("apply_operator: step " + std::to_string(pos + 1) + ": " +
                                        e.what());
        }
        cur.prune();
    }
    return cur;
}

PolyForm dbarAntiderivative(const PolyForm& w) {
    PolyShape out = w.shape();
    out.q -= 1;
    PolyForm r(out);
    if (out.degenerate()) {
        // only a (p,0) form reaches here; its homotopy image is zero
        return r;
    }
    const int n = w.n();
    const int sp = powSign(w.p());
    for (const auto& [k, c] : w.components()) {
        const int s = maskRank(k.anti);
        const auto J = maskToList(k.anti);
        for (const auto& [e, v] : c.terms()) {
            int d = 0;
            for (int i = 0; i < n; ++i) d += e[n + i];
            if (d + s == 0) continue;
            const Rational inv = Rational(1, d + s);
            for (int rpos = 0; rpos < s; ++rpos) {
                const int j = J[static_cast<size_t>(rpos)];
                PolyCoeff::Exponents f(e);
                f[n + j] += 1;
                GaussRat coeff = v * GaussRat(inv);
                const int sign = sp * powSign(rpos);
                ComponentKey t{k.holo, static_cast<IndexMask>(k.anti & ~maskBit(j)), k.value};
                addScaled(r.component(t), PolyCoeff::monomial(n, std::move(f), std::move(coeff)),
                          sign);
            }
        }
    }
    r.prune();
    return r;
}

} // namespace hodgelab
