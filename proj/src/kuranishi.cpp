#include "hodgelab/kuranishi.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>
#include <utility>

#include "hodgelab/index_algebra.hpp"
#include "hodgelab/majorant.hpp"
#include "hodgelab/products.hpp"
#include "hodgelab/spectral.hpp"

namespace hodgelab {

namespace {
constexpr std::uint64_t kStride = 0x9e3779b97f4a7c15ULL;
constexpr double kRelSlop = 1e-10;
}  // namespace

int multiIndexOrder(const MultiIndex& I) {
    int s = 0;
    for (int v : I) s += v;
    return s;
}

bool GradedLexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
    int oa = multiIndexOrder(a), ob = multiIndexOrder(b);
    if (oa != ob) return oa < ob;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

static void compositionsInto(int m, int slot, int rest, MultiIndex& cur,
                             std::vector<MultiIndex>& out) {
    if (slot == m - 1) {
        cur[slot] = rest;
        out.push_back(cur);
        return;
    }
    for (int v = 0; v <= rest; ++v) {
        cur[slot] = v;
        compositionsInto(m, slot + 1, rest - v, cur, out);
    }
}

std::vector<MultiIndex> multiIndicesUpTo(int m, int lo, int hi) {
    std::vector<MultiIndex> out;
    MultiIndex cur(m, 0);
    for (int ord = std::max(lo, 0); ord <= hi; ++ord) compositionsInto(m, 0, ord, cur, out);
    return out;
}

// All J with 0 < J < I componentwise (so J and I-J are both nonzero).
static std::vector<MultiIndex> properSubIndices(const MultiIndex& I) {
    std::vector<MultiIndex> out;
    MultiIndex J(I.size(), 0);
    for (;;) {
        int slot = int(I.size()) - 1;
        while (slot >= 0 && J[slot] == I[slot]) J[slot--] = 0;
        if (slot < 0) break;
        ++J[slot];
        if (J != I) out.push_back(J);
    }
    return out;
}

static MultiIndex subIndex(const MultiIndex& I, const MultiIndex& J) {
    MultiIndex K(I.size());
    for (std::size_t i = 0; i < I.size(); ++i) K[i] = I[i] - J[i];
    return K;
}

// ---------------------------------------------------------------------------
// Seeds

static FourierForm divergenceFreeDraw(const TorusGeometry& g, int band, std::mt19937_64& rng) {
    int n = g.n;
    FourierForm f = randomForm(g, band, 0, 0, ValueKind::Tangent, rng);
    ModeLayout lay = f.layout();
    std::vector<int> coords(2 * n);
    std::vector<VectorXcd*> comp(n);
    for (int l = 0; l < n; ++l) comp[l] = &f.component(ComponentKey{0, 0, l});
    for (std::int64_t idx = 0; idx < lay.size(); ++idx) {
        lay.decode(idx, coords.data());
        Complex s(0, 0);
        Real m2 = 0;
        for (int l = 0; l < n; ++l) {
            Complex mu = symbolMu(coords.data(), n, l);
            s += mu * (*comp[l])[idx];
            m2 += std::norm(mu);
        }
        if (m2 == 0) continue;
        for (int l = 0; l < n; ++l)
            (*comp[l])[idx] -= s * std::conj(symbolMu(coords.data(), n, l)) / m2;
    }
    FourierForm phi = dbar(f);
    std::normal_distribution<Real> dist(0.0, 1.0);
    ModeIndex zero{std::vector<int>(n, 0), std::vector<int>(n, 0)};
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
            ComponentKey key{0, maskBit(j), l};
            Real re = dist(rng), im = dist(rng);
            phi.setCoeff(key, zero, phi.coeff(key, zero) + Complex(re, im));
        }
    return phi;
}

DeformationSeed makeSeed(const TorusGeometry& g, const SeedSpec& spec, double c1hat) {
    g.validate();
    if (spec.m < 1) throw std::invalid_argument("makeSeed: parameter count must be >= 1");
    if (spec.band < 0 || spec.band > g.K)
        throw std::invalid_argument("makeSeed: seed band outside [0, K]");
    double target = spec.targetC1Norm;
    if (target <= 0) {
        if (c1hat <= 0)
            throw std::invalid_argument(
                "makeSeed: automatic target norm requires a positive calibration constant");
        target = spec.m == 1 ? 1.0 / (4.0 * c1hat) : 1.0 / (8.0 * spec.m * c1hat);
    }

    DeformationSeed seed;
    seed.kind = spec.kind;
    if (spec.kind == "harmonic-constant") {
        for (int i = 0; i < spec.m; ++i) {
            int j = i % g.n, lam = (i + i / g.n) % g.n;
            FourierForm f(g, 0, 1, ValueKind::Tangent, 0);
            f.component(ComponentKey{0, maskBit(j), lam})[0] = Complex(1, 0);
            seed.fields.push_back(std::move(f));
        }
    } else if (spec.kind == "divergence-free-synthetic") {
        for (int i = 0; i < spec.m; ++i) {
            std::mt19937_64 rng(spec.rngSeed + kStride * std::uint64_t(i + 1));
            FourierForm f = divergenceFreeDraw(g, spec.band, rng);
            if (l2Norm(f) == 0)
                throw SeedRetryError("makeSeed: degenerate draw (projection left no field)");
            seed.fields.push_back(std::move(f));
        }
    } else if (spec.kind == "explicit") {
        if (int(spec.explicitFields.size()) != spec.m)
            throw std::invalid_argument("makeSeed: explicit seed needs m fields");
        seed.fields = spec.explicitFields;
    } else {
        throw std::invalid_argument("makeSeed: unknown seed kind '" + spec.kind + "'");
    }

    FourierForm vol = volumeForm(g);
    for (std::size_t i = 0; i < seed.fields.size(); ++i) {
        FourierForm& f = seed.fields[i];
        if (!(f.geometry() == g) || f.p() != 0 || f.q() != 1 || f.kind() != ValueKind::Tangent)
            throw std::invalid_argument("makeSeed: field " + std::to_string(i) +
                                        " is not a tangent-valued (0,1) form on this torus");
        double ref = std::max(1.0, l2Norm(f));
        double r1 = l2Norm(dbar(f));
        double r2 = l2Norm(del(contract(f, vol).form));
        if (r1 > 1e-12 * ref || r2 > 1e-10 * ref) {
            std::ostringstream os;
            os << "makeSeed: field " << i << " violates the seed invariants: |dbar phi| = " << r1
               << ", |del(phi . Omega0)| = " << r2;
            throw std::invalid_argument(os.str());
        }
        double c1 = norms(f).c1;
        if (c1 == 0) {
            if (spec.kind == "explicit")
                throw std::invalid_argument("makeSeed: explicit field " + std::to_string(i) +
                                            " is zero");
            throw SeedRetryError("makeSeed: degenerate draw (zero C1 norm)");
        }
        double factor = target / c1;
        f *= Complex(factor, 0);
        seed.scales.push_back(factor);
        seed.c1Norms.push_back(target);
        seed.dbarResidual = std::max(seed.dbarResidual, r1 * factor);
        seed.divergenceResidual = std::max(seed.divergenceResidual, r2 * factor);
    }
    return seed;
}

// ---------------------------------------------------------------------------
// Series

static void checkSeriesArgs(const TorusGeometry& g, const DeformationSeed& seed, int N) {
    g.validate();
    if (seed.fields.empty()) throw std::invalid_argument("iterateBeltrami: empty seed");
    if (N < 1) throw std::invalid_argument("iterateBeltrami: order must be >= 1");
}

static void seedOrderOne(BeltramiSeries& s, const DeformationSeed& seed) {
    for (int i = 0; i < s.m; ++i) {
        MultiIndex e(s.m, 0);
        e[i] = 1;
        s.phi[e] = seed.fields[i];
        s.receipts[e] = TruncationReceipt{};
    }
}

BeltramiSeries iterateBeltrami(const TorusGeometry& g, const DeformationSeed& seed, int N) {
    checkSeriesArgs(g, seed, N);
    BeltramiSeries s;
    s.geom = g;
    s.m = int(seed.fields.size());
    s.N = N;
    s.seedKind = seed.kind;
    seedOrderOne(s, seed);
    FourierForm vol = volumeForm(g);
    for (int k = 2; k <= N; ++k)
        for (const MultiIndex& I : multiIndicesUpTo(s.m, k, k)) {
            TruncationReceipt rec{};
            FourierForm X;
            bool first = true;
            for (const MultiIndex& J : properSubIndices(I)) {
                ProductResult inner = contract(s.phi.at(subIndex(I, J)), vol);
                rec += inner.receipt;
                ProductResult outer = contract(s.phi.at(J), inner.form);
                rec += outer.receipt;
                if (first) {
                    X = std::move(outer.form);
                    first = false;
                } else {
                    X += outer.form;
                }
            }
            FourierForm Psi = dbarStar(green(del(X)));
            Psi *= Complex(-0.5, 0);
            s.phi[I] = contractDualVolume(Psi);
            s.receipts[I] = rec;
        }
    return s;
}

BeltramiSeries iterateBeltramiBracket(const TorusGeometry& g, const DeformationSeed& seed,
                                      int N) {
    checkSeriesArgs(g, seed, N);
    BeltramiSeries s;
    s.geom = g;
    s.m = int(seed.fields.size());
    s.N = N;
    s.seedKind = seed.kind;
    seedOrderOne(s, seed);
    for (int k = 2; k <= N; ++k)
        for (const MultiIndex& I : multiIndicesUpTo(s.m, k, k)) {
            TruncationReceipt rec{};
            FourierForm B;
            bool first = true;
            for (const MultiIndex& J : properSubIndices(I)) {
                ProductResult br = bracket(s.phi.at(J), s.phi.at(subIndex(I, J)));
                rec += br.receipt;
                if (first) {
                    B = std::move(br.form);
                    first = false;
                } else {
                    B += br.form;
                }
            }
            FourierForm phiI = dbarStar(green(B));
            phiI *= Complex(0.5, 0);
            s.phi[I] = std::move(phiI);
            s.receipts[I] = rec;
        }
    return s;
}

IntegrabilityTable integrabilityResidual(const BeltramiSeries& s) {
    IntegrabilityTable t;
    for (const auto& [I, phiI] : s.phi) {
        FourierForm d = dbar(phiI);
        TruncationReceipt rec = s.receipts.at(I);
        FourierForm B;
        bool first = true;
        for (const MultiIndex& J : properSubIndices(I)) {
            ProductResult br = bracket(s.phi.at(J), s.phi.at(subIndex(I, J)));
            rec += br.receipt;
            if (first) {
                B = std::move(br.form);
                first = false;
            } else {
                B += br.form;
            }
        }
        if (!first) {
            B *= Complex(0.5, 0);
            d -= B;
        }
        t.rows.push_back(IntegrabilityRow{I, l2Norm(d), rec.discardedMass});
    }
    for (const MultiIndex& I : multiIndicesUpTo(s.m, s.N + 1, s.N + 1)) {
        FourierForm B;
        bool first = true;
        for (const MultiIndex& J : properSubIndices(I)) {
            ProductResult br = bracket(s.phi.at(J), s.phi.at(subIndex(I, J)));
            if (first) {
                B = std::move(br.form);
                first = false;
            } else {
                B += br.form;
            }
        }
        if (!first) t.formalNextOrder = std::max(t.formalNextOrder, 0.5 * l2Norm(B));
    }
    return t;
}

std::vector<SideConditionRow> sideConditions(const BeltramiSeries& s) {
    std::vector<SideConditionRow> rows;
    FourierForm vol = volumeForm(s.geom);
    for (const auto& [I, phiI] : s.phi) {
        SideConditionRow row;
        row.index = I;
        int k = multiIndexOrder(I);
        row.applicable = k >= 2 || s.seedKind == "harmonic-constant";
        row.coclosed = l2Norm(dbarStar(phiI));
        if (k >= 2) {
            FourierForm w = contract(phiI, vol).form;
            row.delExact = l2Norm(w - del(delStar(green(w))));
            row.harmonicMass = l2Norm(harmonic(w));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<BracketClosednessRow> bracketSumClosedness(const BeltramiSeries& s) {
    std::vector<BracketClosednessRow> rows;
    for (int K = 1; K <= s.N; ++K) {
        BracketClosednessRow row;
        row.K = K;
        for (const MultiIndex& I : multiIndicesUpTo(s.m, K + 1, K + 1)) {
            FourierForm B;
            TruncationReceipt rec{};
            bool first = true;
            for (const MultiIndex& J : properSubIndices(I)) {
                ProductResult br = bracket(s.phi.at(J), s.phi.at(subIndex(I, J)));
                rec += br.receipt;
                if (first) {
                    B = std::move(br.form);
                    first = false;
                } else {
                    B += br.form;
                }
            }
            if (first) continue;
            row.residual = std::max(row.residual, l2Norm(dbar(B)));
            row.truncationMass = std::max(row.truncationMass, rec.discardedMass);
        }
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// Families

CanonicalFamily canonicalFamily(const BeltramiSeries& s, const FourierForm& omega0) {
    int n = s.geom.n;
    if (!(omega0.geometry() == s.geom) || omega0.p() != n || omega0.q() != 0 ||
        omega0.kind() != ValueKind::Scalar)
        throw std::invalid_argument("canonicalFamily: expected a scalar (n,0) form");
    CanonicalFamily fam;
    fam.m = s.m;
    fam.N = s.N;
    for (const MultiIndex& I : multiIndicesUpTo(s.m, 0, s.N)) {
        int ord = multiIndexOrder(I);
        TruncationReceipt rec{};
        int kMax = std::min(ord, n);
        std::vector<FourierForm> pieces;
        pieces.reserve(kMax + 1);
        pieces.push_back(ord == 0 ? omega0 : FourierForm(s.geom, n, 0, ValueKind::Scalar, 0));
        for (int k = 1; k <= kMax; ++k) {
            FourierForm acc(s.geom, n - k, k, ValueKind::Scalar, 0);
            for (const MultiIndex& J : properSubIndices(I)) {
                const std::vector<FourierForm>& lower = fam.coefficients.at(subIndex(I, J));
                if (k - 1 >= int(lower.size())) continue;
                ProductResult c = contract(s.phi.at(J), lower[k - 1]);
                rec += c.receipt;
                acc += c.form;
            }
            if (k == 1) {  // the split J = I against the order-zero coefficient
                ProductResult c = contract(s.phi.at(I), omega0);
                rec += c.receipt;
                acc += c.form;
            }
            acc *= Complex(1.0 / k, 0);
            pieces.push_back(std::move(acc));
        }
        fam.coefficients[I] = std::move(pieces);
        fam.receipts[I] = rec;
        if (ord == 0)
            fam.residuals[I] = l2Norm(dbar(omega0));
        else
            fam.residuals[I] = l2Norm(del(contract(s.phi.at(I), omega0).form));
    }
    return fam;
}

KahlerFamily kahlerFamily(const BeltramiSeries& s, const FourierForm& omegaIn) {
    int n = s.geom.n;
    if (!(omegaIn.geometry() == s.geom) || omegaIn.p() != n || omegaIn.q() != 0 ||
        omegaIn.kind() != ValueKind::Scalar)
        throw std::invalid_argument("kahlerFamily: expected a scalar (n,0) form");
    double l2 = l2Norm(omegaIn);
    if (l2 == 0) throw std::invalid_argument("kahlerFamily: zero input form");
    if (l2Norm(dbar(omegaIn)) > 1e-9 * std::max(1.0, l2))
        throw std::invalid_argument("kahlerFamily: input form is not dbar-closed");

    KahlerFamily fam;
    fam.inputScale = 1.0 / l2;
    FourierForm om0 = omegaIn;
    om0 *= Complex(fam.inputScale, 0);
    MultiIndex zero(s.m, 0);
    fam.omega[zero] = om0;

    for (int k = 1; k <= s.N; ++k)
        for (const MultiIndex& I : multiIndicesUpTo(s.m, k, k)) {
            FourierForm S;
            bool first = true;
            for (const MultiIndex& J : multiIndicesUpTo(s.m, 1, k)) {
                bool within = true;
                for (std::size_t t = 0; t < I.size(); ++t)
                    if (J[t] > I[t]) within = false;
                if (!within) continue;
                ProductResult c = contract(s.phi.at(J), fam.omega.at(subIndex(I, J)));
                if (first) {
                    S = std::move(c.form);
                    first = false;
                } else {
                    S += c.form;
                }
            }
            FourierForm omI = del(dbarStar(green(S)));
            KahlerFamilyRow row;
            row.index = I;
            row.delExact = l2Norm(omI - del(delStar(green(omI))));
            row.dbarStarExact = l2Norm(omI - dbarStar(dbar(green(omI))));
            row.holomorphicity = l2Norm(dbar(omI) + del(S));
            fam.rows.push_back(std::move(row));
            fam.omega[I] = std::move(omI);
        }

    fam.beltramiC0.assign(s.N + 1, 0.0);
    fam.omegaNorm.assign(s.N + 1, 0.0);
    fam.orderBound.assign(s.N + 1, 0.0);
    fam.omegaNorm[0] = 1.0;
    for (const auto& [I, phiI] : s.phi)
        fam.beltramiC0[multiIndexOrder(I)] += norms(phiI, false).c0;
    for (const auto& [I, omI] : fam.omega) {
        int ord = multiIndexOrder(I);
        if (ord > 0) fam.omegaNorm[ord] += l2Norm(omI);
    }
    for (int i = 1; i <= s.N; ++i) fam.xi = std::max(fam.xi, fam.beltramiC0[i]);
    double pow1p = 1.0;
    for (int i = 1; i <= s.N; ++i) {
        fam.orderBound[i] = fam.xi * pow1p;
        pow1p *= 1.0 + fam.xi;
        if (fam.omegaNorm[i] > fam.orderBound[i] * (1 + kRelSlop)) fam.orderBoundHolds = false;
    }
    return fam;
}

CohomologyTable cohomologyExpansion(const CanonicalFamily& family, const BeltramiSeries& s,
                                    const FourierForm& omega0) {
    CohomologyTable tab;
    for (const auto& [I, pieces] : family.coefficients) {
        std::vector<FourierForm> h;
        h.reserve(pieces.size());
        for (const FourierForm& piece : pieces) h.push_back(harmonic(piece));
        tab.harmonicPieces[I] = std::move(h);
    }
    for (const auto& [I, phiI] : s.phi)
        tab.beltramiHarmonicMass[I] = l2Norm(harmonic(contract(phiI, omega0).form));
    return tab;
}

// ---------------------------------------------------------------------------
// Calibration

namespace {

struct ProbeConfig {
    std::vector<int> coords;  // 2n mode coordinates
    int j = 0;                // dzbar direction
    int lam = 0;              // tangent slot
};

// Modes with |m|_1 <= 1: the smoothing ratio decays in the mode, so the
// extremal pairs sit at the bottom of the spectrum.
std::vector<std::vector<int>> lowModes(int n) {
    std::vector<std::vector<int>> modes;
    std::vector<int> zero(2 * n, 0);
    modes.push_back(zero);
    for (int d = 0; d < 2 * n; ++d)
        for (int sgn : {1, -1}) {
            std::vector<int> m = zero;
            m[d] = sgn;
            modes.push_back(m);
        }
    return modes;
}

std::vector<ProbeConfig> probeFamily(const TorusGeometry& g) {
    std::vector<ProbeConfig> fam;
    for (const std::vector<int>& m : lowModes(g.n))
        for (int j = 0; j < g.n; ++j)
            for (int lam = 0; lam < g.n; ++lam) fam.push_back(ProbeConfig{m, j, lam});
    return fam;
}

FourierForm probeForm(const TorusGeometry& g, const ProbeConfig& pc, Complex amp) {
    FourierForm f(g, 0, 1, ValueKind::Tangent, 1);
    f.component(ComponentKey{0, maskBit(pc.j), pc.lam})[f.layout().encode(pc.coords.data())] =
        amp;
    return f;
}

struct SampleDraw {
    FourierForm e1, e2, sForm;
};

// Sample mixture: dense band-1 pairs, dense band-2 pairs, single-mode pairs
// from the probe family (whose ratios the deterministic sweep already
// dominates), and diagonal pairs drawn like divergence-free seeds so the
// estimate covers the self-bracket ratios the recursion actually uses.
SampleDraw drawSample(const TorusGeometry& g, const std::vector<ProbeConfig>& fam,
                      std::uint64_t baseSeed, long i) {
    std::mt19937_64 rng(baseSeed + kStride * std::uint64_t(i + 1));
    SampleDraw d;
    int cls = int(i % 4);
    if (cls == 2) {
        std::normal_distribution<Real> dist(0.0, 1.0);
        auto amp = [&] { return Complex(dist(rng), dist(rng)); };
        const ProbeConfig& p1 = fam[rng() % fam.size()];
        const ProbeConfig& p2 = fam[rng() % fam.size()];
        d.e1 = probeForm(g, p1, amp());
        d.e2 = probeForm(g, p2, amp());
        d.sForm = volumeForm(g);
        d.sForm *= amp();
    } else if (cls == 3) {
        FourierForm phi = divergenceFreeDraw(g, std::min(1, g.K), rng);
        d.e1 = phi;
        d.e2 = std::move(phi);
        d.sForm = randomForm(g, 1, g.n, 0, ValueKind::Scalar, rng);
    } else {
        int band = cls == 0 ? 1 : std::min(2, g.K);
        d.e1 = randomForm(g, band, 0, 1, ValueKind::Tangent, rng);
        d.e2 = randomForm(g, band, 0, 1, ValueKind::Tangent, rng);
        d.sForm = randomForm(g, band, g.n, 0, ValueKind::Scalar, rng);
    }
    return d;
}

// Ratio of the smoothed bracket and of the double contraction against the
// product of input norms; false when a zero-norm input makes them undefined.
bool sampleRatios(const SampleDraw& d, double& r1, double& r2) {
    double c1a = norms(d.e1).c1, c1b = norms(d.e2).c1;
    double l2s = l2Norm(d.sForm);
    if (c1a == 0 || c1b == 0 || l2s == 0) return false;
    FourierForm sm = dbarStar(green(bracket(d.e1, d.e2).form));
    sm *= Complex(0.5, 0);
    r1 = norms(sm).c1 / (c1a * c1b);
    FourierForm dc = contract(d.e1, contract(d.e2, d.sForm).form).form;
    r2 = l2Norm(dc) / (c1a * c1b * l2s);
    return true;
}

}  // namespace

CalibrationRecord calibrateConstants(const TorusGeometry& g, int sampleCount,
                                     std::uint64_t rngSeed) {
    g.validate();
    if (sampleCount < 1) throw std::invalid_argument("calibrateConstants: sampleCount >= 1");
    CalibrationRecord rec;
    rec.sampleCount = sampleCount;
    rec.rngSeed = rngSeed;

    std::vector<ProbeConfig> fam = probeFamily(g);
    FourierForm vol = volumeForm(g);
    for (const ProbeConfig& a : fam)
        for (const ProbeConfig& b : fam) {
            SampleDraw d;
            d.e1 = probeForm(g, a, Complex(1, 0));
            d.e2 = probeForm(g, b, Complex(1, 0));
            d.sForm = vol;
            double r1 = 0, r2 = 0;
            if (!sampleRatios(d, r1, r2)) continue;
            rec.C1hat = std::max(rec.C1hat, r1);
            rec.C2hat = std::max(rec.C2hat, r2);
        }

    for (long i = 0; i < sampleCount; ++i) {
        SampleDraw d = drawSample(g, fam, rngSeed, i);
        double r1 = 0, r2 = 0;
        if (!sampleRatios(d, r1, r2)) {
            ++rec.skipped;
            continue;
        }
        if (r1 > rec.C1hat) {
            rec.C1hat = r1;
            rec.maxPairC1 = i;
        }
        if (r2 > rec.C2hat) {
            rec.C2hat = r2;
            rec.maxPairC2 = i;
        }
    }
    return rec;
}

HoldoutResult holdoutValidate(const TorusGeometry& g, const CalibrationRecord& record,
                              int sampleCount, std::uint64_t rngSeed) {
    g.validate();
    HoldoutResult res;
    std::vector<ProbeConfig> fam = probeFamily(g);
    for (long i = 0; i < sampleCount; ++i) {
        SampleDraw d = drawSample(g, fam, rngSeed, i);
        double r1 = 0, r2 = 0;
        if (!sampleRatios(d, r1, r2)) continue;
        res.worstC1Ratio = std::max(res.worstC1Ratio, r1);
        res.worstC2Ratio = std::max(res.worstC2Ratio, r2);
    }
    res.ok = res.worstC1Ratio <= record.C1hat * (1 + kRelSlop) &&
             res.worstC2Ratio <= record.C2hat * (1 + kRelSlop);
    return res;
}

// ---------------------------------------------------------------------------
// Domination

static Rational rationalFromDouble(double v) { return Rational(v); }

DominationReport dominationReport(const BeltramiSeries& s, double c1hat) {
    if (c1hat <= 0) throw std::invalid_argument("dominationReport: constant must be positive");
    DominationReport rep;
    rep.c1hat = c1hat;
    std::vector<double> orderC1(s.N + 1, 0.0);
    for (const auto& [I, phiI] : s.phi) orderC1[multiIndexOrder(I)] += norms(phiI).c1;
    MajorantSeries maj =
        majorantCoefficients(rationalFromDouble(c1hat), rationalFromDouble(orderC1[1]), s.N);
    for (int k = 1; k <= s.N; ++k) {
        DominationRow row;
        row.order = k;
        row.c1Norm = orderC1[k];
        row.majorant = toDouble(maj.x[k]);
        row.ok = k == 1 || row.c1Norm <= row.majorant * (1 + kRelSlop);
        rep.allOk = rep.allOk && row.ok;
        rep.rows.push_back(row);
    }
    return rep;
}

std::vector<RadiusScanRow> radiusScan(const BeltramiSeries& s, const FourierForm& omega0,
                                      const std::vector<double>& tGrid, double c1hat) {
    if (c1hat <= 0) throw std::invalid_argument("radiusScan: constant must be positive");
    std::vector<double> orderMass(s.N + 1, 0.0), orderC1(s.N + 1, 0.0);
    for (const auto& [I, phiI] : s.phi) {
        int ord = multiIndexOrder(I);
        orderMass[ord] += l2Norm(contract(phiI, omega0).form);
        if (ord == 1) orderC1[1] += norms(phiI).c1;
    }
    MajorantSeries maj =
        majorantCoefficients(rationalFromDouble(c1hat), rationalFromDouble(orderC1[1]), s.N);
    double omNorm = l2Norm(omega0);
    std::vector<RadiusScanRow> rows;
    for (double t : tGrid) {
        if (t < 0 || t >= 1) throw std::invalid_argument("radiusScan: t values must be in [0,1)");
        RadiusScanRow row;
        row.t = t;
        double tk = 1;
        for (int k = 1; k <= s.N; ++k) {
            tk *= t;
            row.partialSum += orderMass[k] * tk;
            row.envelope += toDouble(maj.x[k]) * tk;
        }
        row.envelope *= omNorm;
        row.bounded = row.partialSum <= row.envelope * (1 + kRelSlop) + 1e-300;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace hodgelab
