#include "hodgelab/identities.hpp"

#include <functional>
#include <map>
#include <random>
#include <stdexcept>

namespace hodgelab {

namespace {

int randInt(std::mt19937_64& g, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(g);
}

Rational randRational(std::mt19937_64& g) { return {randInt(g, -9, 9), randInt(g, 1, 9)}; }

GaussRat randGauss(std::mt19937_64& g) {
    GaussRat v{randRational(g), randRational(g)};
    if (v.isZero()) v = GaussRat(1);
    return v;
}

enum class VarPolicy { All, HoloOnly, HoloPlusOneAnti };

PolyCoeff randCoeff(std::mt19937_64& g, int n, int maxDeg, VarPolicy pol = VarPolicy::All,
                    int antiVar = 0) {
    PolyCoeff c(n);
    const int terms = randInt(g, 1, 2);
    for (int t = 0; t < terms; ++t) {
        const int d = randInt(g, 0, maxDeg);
        PolyCoeff::Exponents e(static_cast<size_t>(2 * n), 0);
        for (int k = 0; k < d; ++k) {
            int slot = 0;
            switch (pol) {
                case VarPolicy::All: slot = randInt(g, 0, 2 * n - 1); break;
                case VarPolicy::HoloOnly: slot = randInt(g, 0, n - 1); break;
                case VarPolicy::HoloPlusOneAnti: {
                    const int s = randInt(g, 0, n);
                    slot = (s == n) ? n + antiVar : s;
                    break;
                }
            }
            e[static_cast<size_t>(slot)] += 1;
        }
        c += PolyCoeff::monomial(n, std::move(e), randGauss(g));
    }
    return c;
}

PolyShape shapeScalar(int n, int p, int q) { return {n, p, q, PolyValue::Scalar, 1}; }
PolyShape shapeTangent(int n, int q) { return {n, 0, q, PolyValue::Tangent, n}; }
PolyShape shapeModule(int n, int p, int q, int r) { return {n, p, q, PolyValue::Module, r}; }

void ensureNonZero(PolyForm& f) {
    if (!f.isZero()) return;
    auto keys = f.shape().componentKeys();
    if (keys.empty()) throw std::logic_error("instance generator: degenerate shape");
    f.component(keys.front()) = PolyCoeff::constant(f.n(), GaussRat(1));
}

PolyForm randForm(std::mt19937_64& g, const PolyShape& shape, int maxDeg) {
    PolyForm f(shape);
    for (const auto& k : shape.componentKeys())
        if (randInt(g, 0, 2) != 0) f.component(k) = randCoeff(g, shape.n, maxDeg);
    ensureNonZero(f);
    f.prune();
    return f;
}

PolyConnection randConnection(std::mt19937_64& g, int n, int r) {
    PolyConnection c = PolyConnection::trivial(n, r);
    for (int i = 0; i < n; ++i)
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b)
                if (randInt(g, 0, 1) == 0) c.entry(i, a, b) = randCoeff(g, n, 2);
    return c;
}

// dbar-closed field with [phi,phi] = 0: components share one dzbar direction
// and coefficients depend on z_1..z_n and that direction's conjugate only.
PolyForm randSharedDirectionField(std::mt19937_64& g, int n, int maxDeg) {
    const int j = randInt(g, 0, n - 1);
    PolyForm f(shapeTangent(n, 1));
    for (int lam = 0; lam < n; ++lam)
        if (randInt(g, 0, 2) != 0)
            f.component({0, maskBit(j), lam}) =
                randCoeff(g, n, maxDeg, VarPolicy::HoloPlusOneAnti, j);
    ensureNonZero(f);
    f.prune();
    if (!polyDbar(f).isZero() || !polyBracket(f, f).isZero())
        throw std::logic_error("instance generator: shared-direction field not flat");
    return f;
}

// dbar-closed (0,1) field: holomorphic polynomial coefficients, any dzbar
// directions and tangent values.
PolyForm randHolomorphicField(std::mt19937_64& g, int n, int maxDeg) {
    PolyForm f(shapeTangent(n, 1));
    for (const auto& k : f.shape().componentKeys())
        if (randInt(g, 0, 2) != 0) f.component(k) = randCoeff(g, n, maxDeg, VarPolicy::HoloOnly);
    ensureNonZero(f);
    f.prune();
    return f;
}

// Divergence-free (0,1) field via antisymmetric potentials: each pair (a,b)
// contributes (d_b g) to the a-component and -(d_a g) to the b-component, so
// sum_lam d_lam f^lam = 0 per dzbar direction and del(phi . volume) = 0.
PolyForm randDivergenceFreeField(std::mt19937_64& g, int n, int maxDeg) {
    PolyForm f(shapeTangent(n, 1));
    for (int j = 0; j < n; ++j) {
        const int pairs = randInt(g, 0, 2);
        for (int t = 0; t < pairs; ++t) {
            int a = randInt(g, 0, n - 1);
            int b = randInt(g, 0, n - 1);
            if (a == b) continue;
            PolyCoeff pot = randCoeff(g, n, maxDeg);
            f.component({0, maskBit(j), a}) += pot.dz(b);
            f.component({0, maskBit(j), b}) -= pot.dz(a);
        }
    }
    if (f.isZero()) {
        PolyCoeff pot = PolyCoeff::monomial(
            n, [&] {
                PolyCoeff::Exponents e(static_cast<size_t>(2 * n), 0);
                e[0] = 1;
                e[1] = 1;
                return e;
            }(),
            GaussRat(1));
        f.component({0, maskBit(0), 0}) += pot.dz(1);
        f.component({0, maskBit(0), 1}) -= pot.dz(0);
    }
    f.prune();
    if (!polyDel(polyContract(f, polyVolume(n))).isZero())
        throw std::logic_error("instance generator: potential field has divergence");
    return f;
}

struct Outcome {
    bool pass = false;
    long diff = 0;
};

Outcome judge(const PolyForm& difference) {
    PolyForm d = difference;
    d.prune();
    return {d.isZero(), d.monomialCount()};
}

Outcome judge(const GradedPolyForm& difference) {
    GradedPolyForm d = difference;
    d.prune();
    return {d.isZero(), d.monomialCount()};
}

// target form: scalar or rank-2 module by coin flip; connection drawn for the
// module case and null for the scalar one.
struct Target {
    PolyForm alpha;
    PolyConnection conn;
    const PolyConnection* connPtr = nullptr;
};

Target randTarget(std::mt19937_64& g, int n, int p, int q, int maxDeg) {
    Target t{PolyForm(shapeScalar(n, p, q)), PolyConnection::trivial(n, 1), nullptr};
    if (randInt(g, 0, 1) == 0) {
        t.alpha = randForm(g, shapeScalar(n, p, q), maxDeg);
    } else {
        const int r = 2;
        t.alpha = randForm(g, shapeModule(n, p, q, r), maxDeg);
        t.conn = randConnection(g, n, r);
        t.connPtr = &t.conn;
    }
    return t;
}

int powSign(long e) { return (e % 2 == 0) ? 1 : -1; }

Outcome checkDb2(std::mt19937_64& g) {
    const int n = randInt(g, 2, 3);
    // ranks with a chance of nonzero content: q0 + q + s <= n, p >= 2
    struct Pick {
        int q, s;
    };
    std::vector<Pick> picks;
    for (int q = 0; q <= 2; ++q)
        for (int s = 0; s <= 2; ++s)
            if (q + s <= n) picks.push_back({q, s});
    const Pick pk = picks[static_cast<size_t>(randInt(g, 0, static_cast<int>(picks.size()) - 1))];
    const int q0 = randInt(g, 0, n - pk.q - pk.s);
    const int p = randInt(g, 2, n);
    PolyForm phi = randForm(g, shapeTangent(n, pk.q), 2);
    PolyForm psi = randForm(g, shapeTangent(n, pk.s), 2);
    PolyForm alpha = randForm(g, shapeScalar(n, p, q0), 3);
    PolyForm lhs = polyContract(phi, polyContract(psi, alpha));
    PolyForm rhs = polyContract(psi, polyContract(phi, alpha));
    rhs *= GaussRat(powSign(static_cast<long>(pk.q + 1) * (pk.s + 1)));
    return judge(lhs - rhs);
}

Outcome checkLieContract(std::mt19937_64& g) {
    const int n = randInt(g, 2, 3);
    const int k = randInt(g, 1, n - 1);
    const int kp = randInt(g, 1, n - k);
    const int p = randInt(g, 1, n);
    const int q0 = randInt(g, 0, std::max(0, n - k - kp));
    PolyForm phi = randForm(g, shapeTangent(n, k), 2);
    PolyForm phip = randForm(g, shapeTangent(n, kp), 2);
    Target t = randTarget(g, n, p, q0, 3);
    GradedPolyForm A(t.alpha);
    GradedPolyForm lhs = gradedContract(phi, gradedLie(phip, A, t.connPtr));
    lhs *= GaussRat(powSign(kp));
    GradedPolyForm l2 = gradedLie(phip, gradedContract(phi, A), t.connPtr);
    l2 *= GaussRat(powSign(static_cast<long>(kp) * k + 1));
    lhs += l2;
    GradedPolyForm rhs(polyContract(polyBracket(phi, phip), t.alpha));
    return judge(lhs - rhs);
}

Outcome checkF1(std::mt19937_64& g) {
    const int n = randInt(g, 2, 3);
    const int p = randInt(g, 2, n);
    const int q0 = randInt(g, 0, n - 2);
    PolyForm phi = randForm(g, shapeTangent(n, 1), 2);
    PolyForm phip = randForm(g, shapeTangent(n, 1), 2);
    Target t = randTarget(g, n, p, q0, 3);
    const PolyConnection* c = t.connPtr;
    const PolyForm& a = t.alpha;
    PolyForm lhs = polyContract(polyBracket(phi, phip), a);
    PolyForm rhs = -polyNablaHolo(polyContract(phip, polyContract(phi, a)), c);
    rhs -= polyContract(phi, polyContract(phip, polyNablaHolo(a, c)));
    rhs += polyContract(phi, polyNablaHolo(polyContract(phip, a), c));
    rhs += polyContract(phip, polyNablaHolo(polyContract(phi, a), c));
    return judge(lhs - rhs);
}

Outcome checkF2(std::mt19937_64& g) {
    const int n = 3;
    const int p = randInt(g, 2, n);
    PolyForm phi = randForm(g, shapeTangent(n, 1), 2);
    PolyForm phip = randForm(g, shapeTangent(n, 1), 2);
    Target t = randTarget(g, n, p, 0, 3);
    const PolyForm& a = t.alpha;
    PolyForm sum = -polyDbar(polyContract(phip, polyContract(phi, a)));
    sum -= polyContract(phi, polyContract(phip, polyDbar(a)));
    sum += polyContract(phi, polyDbar(polyContract(phip, a)));
    sum += polyContract(phip, polyDbar(polyContract(phi, a)));
    return judge(sum);
}

Outcome checkTT(std::mt19937_64& g) {
    const int n = randInt(g, 2, 3);
    PolyForm phi = randForm(g, shapeTangent(n, 1), 2);
    PolyForm psi = randForm(g, shapeTangent(n, 1), 2);
    PolyForm omega(shapeScalar(n, n, 0));
    omega.component({static_cast<IndexMask>((1u << n) - 1u), 0, -1}) = randCoeff(g, n, 3);
    PolyForm lhs = polyContract(polyBracket(phi, psi), omega);
    PolyForm rhs = -polyDel(polyContract(psi, polyContract(phi, omega)));
    rhs += polyContract(phi, polyDel(polyContract(psi, omega)));
    rhs += polyContract(psi, polyDel(polyContract(phi, omega)));
    return judge(lhs - rhs);
}

Outcome checkTTCY(std::mt19937_64& g) {
    const int n = randInt(g, 2, 3);
    PolyForm phi = randDivergenceFreeField(g, n, 3);
    PolyForm psi = randDivergenceFreeField(g, n, 3);
    PolyForm vol = polyVolume(n);
    PolyForm lhs = polyContract(polyBracket(phi, psi), vol);
    PolyForm rhs = -polyDel(polyContract(psi, polyContract(phi, vol)));
    return judge(lhs - rhs);
}

Outcome checkF3(std::mt19937_64& g) {
    const int n = randInt(g, 2, 3);
    const int p = randInt(g, 1, n);
    const int q0 = randInt(g, 0, n - 1);
    PolyForm phi = randForm(g, shapeTangent(n, 1), 2);
    Target t = randTarget(g, n, p, q0, 3);
    GradedPolyForm A(t.alpha);
    GradedPolyForm lhs =
        gradedExpContract(phi, gradedDbar(gradedExpContract(phi, A, 1)), -1);
    GradedPolyForm rhs = gradedDbar(A);
    rhs -= gradedLieAnti(phi, A);
    return judge(lhs - rhs);
}

Outcome checkF4(std::mt19937_64& g) {
    const int n = randInt(g, 2, 3);
    const int p = randInt(g, 1, n);
    const int q0 = randInt(g, 0, n - 1);
    PolyForm phi = randForm(g, shapeTangent(n, 1), 2);
    Target t = randTarget(g, n, p, q0, 3);
    GradedPolyForm A(t.alpha);
    GradedPolyForm lhs =
        gradedExpContract(phi, gradedNablaHolo(gradedExpContract(phi, A, 1), t.connPtr), -1);
    GradedPolyForm rhs = gradedNablaHolo(A, t.connPtr);
    rhs -= gradedLieHolo(phi, A, t.connPtr);
    GradedPolyForm curv = gradedContract(polyBracket(phi, phi), A);
    curv *= GaussRat(Rational(1, 2));
    rhs -= curv;
    return judge(lhs - rhs);
}

Outcome checkF35(std::mt19937_64& g) {
    const int n = randInt(g, 2, 3);
    const int p = randInt(g, 1, n);
    const int q0 = randInt(g, 0, n - 1);
    PolyForm phi = randSharedDirectionField(g, n, 2);
    Target t = randTarget(g, n, p, q0, 3);
    GradedPolyForm A(t.alpha);
    GradedPolyForm lhs = gradedDbar(A);
    lhs -= gradedLieHolo(phi, A, t.connPtr);
    GradedPolyForm inner = gradedExpContract(phi, A, 1);
    GradedPolyForm mid = gradedDbar(inner);
    mid -= gradedLie(phi, inner, t.connPtr);
    GradedPolyForm rhs = gradedExpContract(phi, mid, -1);
    return judge(lhs - rhs);
}

Outcome checkFk(std::mt19937_64& g) {
    const int n = randInt(g, 2, 3);
    const int q0 = randInt(g, 0, n - 1);
    PolyForm phi = randForm(g, shapeTangent(n, 1), 2);
    Target t = randTarget(g, n, n, q0, 3);
    const PolyConnection* c = t.connPtr;
    const PolyForm& a = t.alpha;
    PolyForm bb = polyBracket(phi, phi);
    auto ipow = [&phi](PolyForm f, int k) {
        for (int i = 0; i < k; ++i) f = polyContract(phi, f);
        return f;
    };
    Outcome total{true, 0};
    for (int k = 2; k <= n + 1; ++k) {
        PolyForm term = ipow(polyNablaHolo(polyContract(phi, a), c), k - 1);
        term *= GaussRat(-k);
        PolyForm t2 = ipow(polyNablaHolo(a, c), k);
        t2 *= GaussRat(k - 1);
        term += t2;
        term += polyNablaHolo(ipow(a, k), c);
        PolyForm t4 = ipow(polyContract(bb, a), k - 2);
        t4 *= GaussRat(Rational(static_cast<long>(k) * (k - 1), 2));
        term += t4;
        Outcome o = judge(term);
        total.pass = total.pass && o.pass;
        total.diff += o.diff;
    }
    return total;
}

Outcome checkRec1(std::mt19937_64& g) {
    const int n = randInt(g, 2, 3);
    const int q0 = randInt(g, 0, n - 1);
    PolyForm phi = randSharedDirectionField(g, n, 2);
    Target t = randTarget(g, n, n, q0, 3);
    GradedPolyForm S(t.alpha);
    GradedPolyForm lhs =
        gradedExpContract(phi, gradedNabla(gradedExpContract(phi, S, 1), t.connPtr), -1);
    GradedPolyForm rhs = gradedDbar(S);
    rhs += GradedPolyForm(polyNablaHolo(polyContract(phi, t.alpha), t.connPtr));
    return judge(lhs - rhs);
}

Outcome checkBracketSumClosed(std::mt19937_64& g) {
    const int n = randInt(g, 2, 3);
    const int K = randInt(g, 2, 3);
    std::vector<PolyForm> phi;
    phi.push_back(randHolomorphicField(g, n, 2));
    for (int nu = 2; nu <= K; ++nu) {
        PolyForm B(shapeTangent(n, 2));
        for (int a = 1; a < nu; ++a) B += polyBracket(phi[static_cast<size_t>(a - 1)],
                                                      phi[static_cast<size_t>(nu - a - 1)]);
        B *= GaussRat(Rational(1, 2));
        if (!polyDbar(B).isZero()) return {false, polyDbar(B).monomialCount()};
        PolyForm next = dbarAntiderivative(B);
        if (!(polyDbar(next) == B))
            throw std::logic_error("instance generator: homotopy step failed");
        phi.push_back(std::move(next));
    }
    PolyForm S(shapeTangent(n, 2));
    for (int a = 1; a <= K; ++a)
        S += polyBracket(phi[static_cast<size_t>(a - 1)], phi[static_cast<size_t>(K - a)]);
    return judge(polyDbar(S));
}

using Check = Outcome (*)(std::mt19937_64&);

const std::vector<std::pair<std::string, Check>>& checkTable() {
    static const std::vector<std::pair<std::string, Check>> table = {
        {"db2", checkDb2},
        {"lie-contract", checkLieContract},
        {"f1", checkF1},
        {"f2", checkF2},
        {"tt", checkTT},
        {"ttcy", checkTTCY},
        {"f3", checkF3},
        {"f4", checkF4},
        {"f35", checkF35},
        {"fk", checkFk},
        {"rec1", checkRec1},
        {"bracket-sum-closed", checkBracketSumClosed},
    };
    return table;
}

} // namespace

const std::vector<std::string>& identityTags() {
    static const std::vector<std::string> tags = [] {
        std::vector<std::string> t;
        for (const auto& [name, fn] : checkTable()) t.push_back(name);
        return t;
    }();
    return tags;
}

IdentityVerdict verifyIdentity(const std::string& tag, std::uint64_t seed) {
    for (const auto& [name, fn] : checkTable()) {
        if (name == tag) {
            std::mt19937_64 g(seed);
            Outcome o = fn(g);
            return {tag, seed, o.pass, o.diff};
        }
    }
    throw std::invalid_argument("verifyIdentity: unknown tag " + tag);
}

namespace {

GaussRat evalAt(const PolyCoeff& c, const std::vector<GaussRat>& pt) { return c.eval(pt); }

std::vector<std::vector<GaussRat>> invertHermitian(std::vector<std::vector<GaussRat>> m) {
    const int r = static_cast<int>(m.size());
    std::vector<std::vector<GaussRat>> inv(static_cast<size_t>(r),
                                           std::vector<GaussRat>(static_cast<size_t>(r)));
    for (int i = 0; i < r; ++i) inv[static_cast<size_t>(i)][static_cast<size_t>(i)] = GaussRat(1);
    for (int col = 0; col < r; ++col) {
        int piv = -1;
        for (int row = col; row < r; ++row)
            if (!m[static_cast<size_t>(row)][static_cast<size_t>(col)].isZero()) {
                piv = row;
                break;
            }
        if (piv < 0) throw std::domain_error("curvatureNakano: metric singular at the point");
        std::swap(m[static_cast<size_t>(col)], m[static_cast<size_t>(piv)]);
        std::swap(inv[static_cast<size_t>(col)], inv[static_cast<size_t>(piv)]);
        const GaussRat scale = inverse(m[static_cast<size_t>(col)][static_cast<size_t>(col)]);
        for (int j = 0; j < r; ++j) {
            m[static_cast<size_t>(col)][static_cast<size_t>(j)] =
                m[static_cast<size_t>(col)][static_cast<size_t>(j)] * scale;
            inv[static_cast<size_t>(col)][static_cast<size_t>(j)] =
                inv[static_cast<size_t>(col)][static_cast<size_t>(j)] * scale;
        }
        for (int row = 0; row < r; ++row) {
            if (row == col) continue;
            const GaussRat f = m[static_cast<size_t>(row)][static_cast<size_t>(col)];
            if (f.isZero()) continue;
            for (int j = 0; j < r; ++j) {
                m[static_cast<size_t>(row)][static_cast<size_t>(j)] -=
                    f * m[static_cast<size_t>(col)][static_cast<size_t>(j)];
                inv[static_cast<size_t>(row)][static_cast<size_t>(j)] -=
                    f * inv[static_cast<size_t>(col)][static_cast<size_t>(j)];
            }
        }
    }
    return inv;
}

GaussRat hermitianDet(std::vector<std::vector<GaussRat>> m) {
    const int r = static_cast<int>(m.size());
    GaussRat det(1);
    for (int col = 0; col < r; ++col) {
        int piv = -1;
        for (int row = col; row < r; ++row)
            if (!m[static_cast<size_t>(row)][static_cast<size_t>(col)].isZero()) {
                piv = row;
                break;
            }
        if (piv < 0) return GaussRat(0);
        if (piv != col) {
            std::swap(m[static_cast<size_t>(col)], m[static_cast<size_t>(piv)]);
            det = -det;
        }
        det *= m[static_cast<size_t>(col)][static_cast<size_t>(col)];
        const GaussRat inv = inverse(m[static_cast<size_t>(col)][static_cast<size_t>(col)]);
        for (int row = col + 1; row < r; ++row) {
            const GaussRat f = m[static_cast<size_t>(row)][static_cast<size_t>(col)] * inv;
            if (f.isZero()) continue;
            for (int j = col; j < r; ++j)
                m[static_cast<size_t>(row)][static_cast<size_t>(j)] -=
                    f * m[static_cast<size_t>(col)][static_cast<size_t>(j)];
        }
    }
    return det;
}

} // namespace

CurvatureReport curvatureNakano(const std::vector<std::vector<PolyCoeff>>& h,
                                const std::vector<GaussRat>& point,
                                const std::vector<std::vector<GaussRat>>& vectors) {
    const int r = static_cast<int>(h.size());
    if (r < 1) throw std::invalid_argument("curvatureNakano: empty metric");
    const int n = h[0][0].vars();
    if (static_cast<int>(point.size()) != n)
        throw std::invalid_argument("curvatureNakano: point dimension mismatch");
    for (int a = 0; a < r; ++a) {
        if (static_cast<int>(h[static_cast<size_t>(a)].size()) != r)
            throw std::invalid_argument("curvatureNakano: metric not square");
        for (int b = 0; b < r; ++b)
            if (!(h[static_cast<size_t>(b)][static_cast<size_t>(a)] ==
                  h[static_cast<size_t>(a)][static_cast<size_t>(b)].conjugate()))
                throw std::invalid_argument("curvatureNakano: metric not Hermitian");
    }

    // H[a][d] = h_{a dbar}(point); positive definiteness via leading minors
    std::vector<std::vector<GaussRat>> H(static_cast<size_t>(r),
                                         std::vector<GaussRat>(static_cast<size_t>(r)));
    for (int a = 0; a < r; ++a)
        for (int d = 0; d < r; ++d)
            H[static_cast<size_t>(a)][static_cast<size_t>(d)] =
                evalAt(h[static_cast<size_t>(a)][static_cast<size_t>(d)], point);
    for (int k = 1; k <= r; ++k) {
        std::vector<std::vector<GaussRat>> lead(static_cast<size_t>(k),
                                                std::vector<GaussRat>(static_cast<size_t>(k)));
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                lead[static_cast<size_t>(a)][static_cast<size_t>(b)] =
                    H[static_cast<size_t>(a)][static_cast<size_t>(b)];
        GaussRat det = hermitianDet(std::move(lead));
        if (!(det.im == 0) || !(det.re > 0))
            throw std::domain_error("curvatureNakano: metric not positive definite at the point");
    }
    const auto Hinv = invertHermitian(H);
    // raised metric: h^{g dbar} = (H^{-1})[d][g]
    auto raised = [&Hinv](int gam, int del) -> const GaussRat& {
        return Hinv[static_cast<size_t>(del)][static_cast<size_t>(gam)];
    };

    CurvatureReport rep;
    rep.n = n;
    rep.r = r;
    rep.tensor.assign(static_cast<size_t>(n) * n * r * r, GaussRat(0));
    auto slot = [n, r](int i, int j, int a, int b) {
        return static_cast<size_t>(((i * n + j) * r + a) * r + b);
    };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int a = 0; a < r; ++a)
                for (int b = 0; b < r; ++b) {
                    GaussRat val = -evalAt(
                        h[static_cast<size_t>(a)][static_cast<size_t>(b)].dz(i).dzbar(j), point);
                    for (int gam = 0; gam < r; ++gam)
                        for (int del = 0; del < r; ++del)
                            val += raised(gam, del) *
                                   evalAt(h[static_cast<size_t>(a)][static_cast<size_t>(del)].dz(i),
                                          point) *
                                   evalAt(h[static_cast<size_t>(gam)][static_cast<size_t>(b)]
                                              .dzbar(j),
                                          point);
                    rep.tensor[slot(i, j, a, b)] = std::move(val);
                }

    for (const auto& u : vectors) {
        if (static_cast<int>(u.size()) != n * r)
            throw std::invalid_argument("curvatureNakano: sample vector has wrong size");
        NakanoSample s;
        s.vector = u;
        GaussRat acc(0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int a = 0; a < r; ++a)
                    for (int b = 0; b < r; ++b)
                        acc += rep.tensor[slot(i, j, a, b)] *
                               u[static_cast<size_t>(i * r + a)] *
                               conj(u[static_cast<size_t>(j * r + b)]);
        s.nonNegative = acc.im == 0 && acc.re >= 0;
        s.value = std::move(acc);
        rep.semiPositiveOnSamples = rep.semiPositiveOnSamples && s.nonNegative;
        rep.samples.push_back(std::move(s));
    }
    return rep;
}

} // namespace hodgelab
