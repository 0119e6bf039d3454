#include <doctest.h>

#include "hodgelab/kuranishi.hpp"

#include <cmath>
#include <string>

#include "hodgelab/products.hpp"
#include "hodgelab/spectral.hpp"

using namespace hodgelab;

namespace {

const ModeIndex kZeroMode{{0, 0}, {0, 0}};

FourierForm constantField(const TorusGeometry& g, int j, int lam, Complex amp) {
    FourierForm f(g, 0, 1, ValueKind::Tangent, 0);
    f.component(ComponentKey{0, maskBit(j), lam})[0] = amp;
    return f;
}

double seriesGap(const BeltramiSeries& a, const BeltramiSeries& b, const MultiIndex& I) {
    return l2Norm(a.phi.at(I) - b.phi.at(I));
}

} // namespace

TEST_CASE("multi-index enumeration is graded lexicographic") {
    std::vector<MultiIndex> got = multiIndicesUpTo(2, 1, 2);
    std::vector<MultiIndex> want = {{0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}};
    CHECK(got == want);

    CHECK(multiIndicesUpTo(1, 0, 3) == std::vector<MultiIndex>{{0}, {1}, {2}, {3}});
    CHECK(multiIndicesUpTo(3, 2, 2).size() == 6);
    CHECK(multiIndicesUpTo(2, 3, 2).empty());
    CHECK(multiIndexOrder({3, 0, 2}) == 5);

    GradedLexLess less;
    CHECK(less({0, 2}, {1, 1}));
    CHECK_FALSE(less({1, 1}, {0, 2}));
    CHECK_FALSE(less({1, 1}, {1, 1}));
}

TEST_CASE("constant harmonic seeds terminate at order one") {
    const TorusGeometry g{2, 2, 2};
    SeedSpec spec;
    spec.kind = "harmonic-constant";
    spec.m = 1;
    spec.band = 0;
    spec.targetC1Norm = 0.25;
    DeformationSeed seed = makeSeed(g, spec, 0.0);

    REQUIRE(seed.fields.size() == 1);
    CHECK(seed.scales == std::vector<double>{0.25});
    CHECK(seed.c1Norms == std::vector<double>{0.25});
    CHECK(seed.dbarResidual == 0.0);
    CHECK(seed.divergenceResidual == 0.0);
    CHECK(seed.fields[0].coeff(ComponentKey{0, maskBit(0), 0}, kZeroMode) == Complex(0.25, 0));

    const int N = 3;
    BeltramiSeries vol = iterateBeltrami(g, seed, N);
    BeltramiSeries br = iterateBeltramiBracket(g, seed, N);
    CHECK(vol.N == N);
    CHECK(vol.seedKind == "harmonic-constant");
    for (int k = 2; k <= N; ++k) {
        CHECK(l2Norm(vol.phi.at({k})) == 0.0);
        CHECK(l2Norm(br.phi.at({k})) == 0.0);
        CHECK(vol.receipts.at({k}).discardedMass == 0.0);
    }

    FourierForm om0 = volumeForm(g);
    CanonicalFamily fam = canonicalFamily(vol, om0);
    // F(t) = Omega0 + t (phi . Omega0); the double contraction vanishes
    // because phi maps onto a single tangent direction.
    REQUIRE(fam.coefficients.at({0}).size() == 1);
    REQUIRE(fam.coefficients.at({1}).size() == 2);
    REQUIRE(fam.coefficients.at({2}).size() == 3);
    CHECK(l2Norm(fam.coefficients.at({0})[0] - om0) == 0.0);
    CHECK(l2Norm(fam.coefficients.at({1})[0]) == 0.0);
    CHECK(fam.coefficients.at({1})[1].coeff(ComponentKey{maskBit(1), maskBit(0), -1},
                                            kZeroMode) == Complex(-0.25, 0));
    for (const FourierForm& piece : fam.coefficients.at({2})) CHECK(l2Norm(piece) == 0.0);
    for (const auto& [I, r] : fam.residuals) {
        CAPTURE(I);
        CHECK(r == 0.0);
    }

    IntegrabilityTable tab = integrabilityResidual(vol);
    REQUIRE(tab.rows.size() == std::size_t(N));
    for (const IntegrabilityRow& row : tab.rows) {
        CHECK(row.residual == 0.0);
        CHECK(row.truncationMass == 0.0);
    }
    CHECK(tab.formalNextOrder == 0.0);

    for (const SideConditionRow& row : sideConditions(vol)) {
        CHECK(row.applicable);
        CHECK(row.coclosed == 0.0);
        CHECK(row.delExact == 0.0);
        CHECK(row.harmonicMass == 0.0);
    }
    for (const BracketClosednessRow& row : bracketSumClosedness(vol)) {
        CHECK(row.residual == 0.0);
        CHECK(row.truncationMass == 0.0);
    }

    DominationReport dom = dominationReport(vol, 1.0);
    CHECK(dom.allOk);
    REQUIRE(dom.rows.size() == std::size_t(N));
    CHECK(dom.rows[0].c1Norm == doctest::Approx(0.25));
    CHECK(dom.rows[0].majorant == doctest::Approx(0.25));
    CHECK(dom.rows[1].majorant == doctest::Approx(0.0625));
    CHECK(dom.rows[1].c1Norm == 0.0);
    CHECK_THROWS_AS(dominationReport(vol, 0.0), std::invalid_argument);

    std::vector<RadiusScanRow> scan = radiusScan(vol, om0, {0.0, 0.5}, 1.0);
    REQUIRE(scan.size() == 2);
    CHECK(scan[0].partialSum == 0.0);
    CHECK(scan[0].envelope == 0.0);
    CHECK(scan[0].bounded);
    // order-one mass is |phi . Omega0| = 0.5, and x = (1/4, 1/16, 1/32)
    CHECK(scan[1].partialSum == doctest::Approx(0.25));
    CHECK(scan[1].envelope == doctest::Approx(0.2890625));
    CHECK(scan[1].bounded);
    CHECK_THROWS_AS(radiusScan(vol, om0, {1.0}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(radiusScan(vol, om0, {-0.1}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(radiusScan(vol, om0, {0.5}, -2.0), std::invalid_argument);
}

TEST_CASE("a two-direction constant seed populates the order-two coefficient") {
    const TorusGeometry g{2, 2, 2};
    FourierForm f = constantField(g, 0, 0, Complex(1, 0));
    f.component(ComponentKey{0, maskBit(1), 1})[0] = Complex(1, 0);

    SeedSpec spec;
    spec.kind = "explicit";
    spec.m = 1;
    spec.band = 0;
    spec.targetC1Norm = 0.3;
    spec.explicitFields = {f};
    DeformationSeed seed = makeSeed(g, spec, 0.0);
    const double c = 0.3 / std::sqrt(2.0);
    CHECK(seed.scales[0] == doctest::Approx(c));
    CHECK(seed.c1Norms[0] == doctest::Approx(0.3));

    BeltramiSeries s = iterateBeltrami(g, seed, 2);
    CHECK(l2Norm(s.phi.at({2})) == 0.0);

    FourierForm om0 = volumeForm(g);
    CanonicalFamily fam = canonicalFamily(s, om0);
    const FourierForm& phi1 = s.phi.at({1});
    FourierForm once = contract(phi1, om0).form;
    FourierForm twice = contract(phi1, once).form;
    twice *= Complex(0.5, 0);
    CHECK(l2Norm(fam.coefficients.at({1})[1] - once) == 0.0);
    CHECK(l2Norm(fam.coefficients.at({2})[1]) == 0.0);
    CHECK(l2Norm(fam.coefficients.at({2})[2] - twice) == 0.0);
    // i_phi i_phi Omega0 = 2 c^2 dzbar^1 ^ dzbar^2, so the halved piece has
    // mass c^2 * |dzbar^12| = 2 c^2
    CHECK(l2Norm(fam.coefficients.at({2})[2]) == doctest::Approx(0.09));

    CohomologyTable coh = cohomologyExpansion(fam, s, om0);
    // constant coefficients are their own harmonic projection
    CHECK(l2Norm(coh.harmonicPieces.at({1})[1] - once) == 0.0);
    CHECK(coh.beltramiHarmonicMass.at({1}) == doctest::Approx(0.6));
}

TEST_CASE("order-two coefficients carry the branch multiplicity of their index") {
    const TorusGeometry g{2, 4, 2};
    SeedSpec spec;
    spec.kind = "divergence-free-synthetic";
    spec.m = 2;
    spec.band = 1;
    spec.rngSeed = 12;
    spec.targetC1Norm = 0.15;
    DeformationSeed seed = makeSeed(g, spec, 0.0);
    REQUIRE(seed.fields.size() == 2);
    CHECK(seed.dbarResidual <= 1e-13);
    CHECK(seed.divergenceResidual <= 1e-11);

    DeformationSeed again = makeSeed(g, spec, 0.0);
    CHECK(l2Norm(seed.fields[0] - again.fields[0]) == 0.0);
    CHECK(l2Norm(seed.fields[1] - again.fields[1]) == 0.0);

    BeltramiSeries br = iterateBeltramiBracket(g, seed, 2);
    const FourierForm& p10 = br.phi.at({1, 0});
    const FourierForm& p01 = br.phi.at({0, 1});
    CHECK(l2Norm(p10 - seed.fields[0]) == 0.0);
    CHECK(l2Norm(p01 - seed.fields[1]) == 0.0);

    // diagonal index: one ordered pair (J = K); mixed index: both orders
    FourierForm diag = dbarStar(green(bracket(p10, p10).form));
    diag *= Complex(0.5, 0);
    FourierForm mixed = bracket(p10, p01).form;
    mixed += bracket(p01, p10).form;
    mixed = dbarStar(green(mixed));
    mixed *= Complex(0.5, 0);
    CHECK(l2Norm(br.phi.at({2, 0}) - diag) <= 1e-14);
    CHECK(l2Norm(br.phi.at({1, 1}) - mixed) <= 1e-14);
    CHECK(l2Norm(br.phi.at({1, 1})) > 1e-8);

    BeltramiSeries vol = iterateBeltrami(g, seed, 2);
    for (const MultiIndex& I : multiIndicesUpTo(2, 1, 2)) {
        CAPTURE(I);
        CHECK(seriesGap(vol, br, I) <= 1e-12);
    }

    IntegrabilityTable tab = integrabilityResidual(br);
    std::vector<MultiIndex> want = {{0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}};
    REQUIRE(tab.rows.size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
        CHECK(tab.rows[i].index == want[i]);
        CHECK(tab.rows[i].residual <= 1e-12);
        CHECK(tab.rows[i].truncationMass == 0.0);
    }
}

TEST_CASE("a synthetic series satisfies the formal machinery through order five") {
    const TorusGeometry g{2, 6, 2};
    CalibrationRecord rec = calibrateConstants(g, 24, 20260816);
    CHECK(rec.C1hat > 0);
    CHECK(rec.C2hat > 0);

    SeedSpec spec;
    spec.kind = "divergence-free-synthetic";
    spec.m = 1;
    spec.band = 1;
    spec.rngSeed = 42;
    DeformationSeed seed = makeSeed(g, spec, rec.C1hat);
    CHECK(seed.c1Norms[0] == doctest::Approx(0.25 / rec.C1hat));

    const int N = 5;
    BeltramiSeries vol = iterateBeltrami(g, seed, N);
    BeltramiSeries br = iterateBeltramiBracket(g, seed, N);
    for (int k = 1; k <= N; ++k) {
        CAPTURE(k);
        CHECK(l2Norm(vol.phi.at({k})) > 1e-16);
        CHECK(seriesGap(vol, br, {k}) <= 1e-12);
        CHECK(vol.receipts.at({k}).discardedMass == 0.0);
    }

    IntegrabilityTable tab = integrabilityResidual(vol);
    REQUIRE(tab.rows.size() == std::size_t(N));
    for (const IntegrabilityRow& row : tab.rows) {
        CAPTURE(row.index);
        CHECK(row.residual <= 1e-12);
        CHECK(row.truncationMass == 0.0);
    }
    CHECK(tab.formalNextOrder >= 0.0);

    std::vector<SideConditionRow> side = sideConditions(vol);
    REQUIRE(side.size() == std::size_t(N));
    CHECK_FALSE(side[0].applicable); // synthetic seeds need no order-one gauge
    for (std::size_t i = 1; i < side.size(); ++i) {
        CAPTURE(i);
        CHECK(side[i].applicable);
        CHECK(side[i].coclosed <= 1e-12);
        CHECK(side[i].delExact <= 1e-12);
        CHECK(side[i].harmonicMass <= 1e-12);
    }

    for (const BracketClosednessRow& row : bracketSumClosedness(vol)) {
        CAPTURE(row.K);
        CHECK(row.residual <= 1e-12);
        CHECK(row.truncationMass == 0.0);
    }

    FourierForm om0 = volumeForm(g);
    CanonicalFamily fam = canonicalFamily(vol, om0);
    for (const auto& [I, r] : fam.residuals) {
        CAPTURE(I);
        CHECK(r <= 1e-12);
        CHECK(fam.receipts.at(I).discardedMass == 0.0);
    }
    REQUIRE(fam.coefficients.at({5}).size() == 3); // contractions clamp at n = 2

    CohomologyTable coh = cohomologyExpansion(fam, vol, om0);
    FourierForm h1 = harmonic(contract(vol.phi.at({1}), om0).form);
    CHECK(l2Norm(coh.harmonicPieces.at({1})[1] - h1) == 0.0);
    CHECK(coh.beltramiHarmonicMass.at({1}) == doctest::Approx(l2Norm(h1)));
    CHECK(coh.beltramiHarmonicMass.at({1}) > 1e-8); // the class genuinely moves

    KahlerFamily kf = kahlerFamily(vol, om0);
    CHECK(kf.inputScale == doctest::Approx(0.5));
    CHECK(kf.orderBoundHolds);
    CHECK(kf.xi > 0);
    REQUIRE(kf.rows.size() == std::size_t(N));
    for (const KahlerFamilyRow& row : kf.rows) {
        CAPTURE(row.index);
        CHECK(row.delExact <= 1e-10);
        CHECK(row.dbarStarExact <= 1e-10);
        CHECK(row.holomorphicity <= 1e-10);
    }
    for (int i = 1; i <= N; ++i) {
        CAPTURE(i);
        CHECK(kf.omegaNorm[i] <= kf.orderBound[i] * (1 + 1e-10));
    }

    DominationReport dom = dominationReport(vol, rec.C1hat);
    CHECK(dom.allOk);
    CHECK(dom.rows[0].c1Norm == doctest::Approx(dom.rows[0].majorant));

    std::vector<RadiusScanRow> scan = radiusScan(vol, om0, {0.0, 0.5, 0.9}, rec.C1hat);
    for (const RadiusScanRow& row : scan) {
        CAPTURE(row.t);
        CHECK(row.bounded);
    }

    FourierForm bad(g, 2, 0, ValueKind::Scalar, 1);
    bad.setCoeff(ComponentKey{maskBit(0) | maskBit(1), 0, -1}, ModeIndex{{1, 0}, {0, 0}},
                 Complex(1, 0));
    CHECK_THROWS_AS(kahlerFamily(vol, bad), std::invalid_argument);
    CHECK_THROWS_AS(canonicalFamily(vol, contract(vol.phi.at({1}), om0).form),
                    std::invalid_argument);
}

TEST_CASE("calibration is deterministic and monotone in the sample count") {
    const TorusGeometry g{2, 2, 2};
    CalibrationRecord a = calibrateConstants(g, 30, 777);
    CalibrationRecord b = calibrateConstants(g, 30, 777);
    CHECK(a.C1hat == b.C1hat);
    CHECK(a.C2hat == b.C2hat);
    CHECK(a.maxPairC1 == b.maxPairC1);
    CHECK(a.maxPairC2 == b.maxPairC2);
    CHECK(a.skipped == b.skipped);
    CHECK(a.sampleCount == 30);
    CHECK(a.rngSeed == 777);

    CalibrationRecord wide = calibrateConstants(g, 90, 777);
    CHECK(a.C1hat <= wide.C1hat);
    CHECK(a.C2hat <= wide.C2hat);

    HoldoutResult replay = holdoutValidate(g, wide, 90, 777);
    CHECK(replay.ok);
    CHECK(replay.worstC1Ratio <= wide.C1hat);
    HoldoutResult fresh = holdoutValidate(g, wide, 60, 999);
    CHECK(fresh.ok);
    CHECK(fresh.worstC1Ratio > 0);
    CHECK(fresh.worstC2Ratio > 0);

    CHECK_THROWS_AS(calibrateConstants(g, 0, 1), std::invalid_argument);
}

TEST_CASE("seed construction rejects malformed requests") {
    const TorusGeometry g{2, 2, 2};
    SeedSpec spec;
    spec.kind = "harmonic-constant";
    spec.m = 1;
    spec.targetC1Norm = 0.1;

    SUBCASE("parameter count") {
        spec.m = 0;
        CHECK_THROWS_AS(makeSeed(g, spec, 0.0), std::invalid_argument);
    }
    SUBCASE("band range") {
        spec.band = 3;
        CHECK_THROWS_AS(makeSeed(g, spec, 0.0), std::invalid_argument);
    }
    SUBCASE("automatic target needs a constant") {
        spec.targetC1Norm = -1;
        CHECK_THROWS_WITH_AS(makeSeed(g, spec, 0.0),
                             doctest::Contains("positive calibration constant"),
                             std::invalid_argument);
    }
    SUBCASE("unknown kind") {
        spec.kind = "mystery";
        CHECK_THROWS_WITH_AS(makeSeed(g, spec, 0.0), doctest::Contains("unknown seed kind"),
                             std::invalid_argument);
    }
    SUBCASE("explicit seed needs matching field count") {
        spec.kind = "explicit";
        spec.m = 2;
        spec.explicitFields = {constantField(g, 0, 0, Complex(1, 0))};
        CHECK_THROWS_WITH_AS(makeSeed(g, spec, 0.0), doctest::Contains("needs m fields"),
                             std::invalid_argument);
    }
    SUBCASE("explicit zero field") {
        spec.kind = "explicit";
        spec.explicitFields = {FourierForm(g, 0, 1, ValueKind::Tangent, 0)};
        CHECK_THROWS_WITH_AS(makeSeed(g, spec, 0.0), doctest::Contains("is zero"),
                             std::invalid_argument);
    }
    SUBCASE("explicit field of the wrong shape") {
        spec.kind = "explicit";
        FourierForm f(g, 0, 1, ValueKind::Scalar, 0);
        f.component(ComponentKey{0, maskBit(0), -1})[0] = Complex(1, 0);
        spec.explicitFields = {f};
        CHECK_THROWS_WITH_AS(makeSeed(g, spec, 0.0), doctest::Contains("tangent-valued"),
                             std::invalid_argument);
    }
    SUBCASE("explicit field violating the invariants reports residuals") {
        spec.kind = "explicit";
        FourierForm f(g, 0, 1, ValueKind::Tangent, 1);
        f.setCoeff(ComponentKey{0, maskBit(0), 0}, ModeIndex{{0, 1}, {0, 0}}, Complex(1, 0));
        spec.explicitFields = {f};
        try {
            makeSeed(g, spec, 0.0);
            FAIL("expected a rejection");
        } catch (const std::invalid_argument& e) {
            std::string msg = e.what();
            CHECK(msg.find("violates the seed invariants") != std::string::npos);
            CHECK(msg.find("|dbar phi| = ") != std::string::npos);
        }
    }
    SUBCASE("explicit closed field passes and is rescaled") {
        spec.kind = "explicit";
        spec.explicitFields = {constantField(g, 1, 0, Complex(0, 2))};
        DeformationSeed seed = makeSeed(g, spec, 0.0);
        CHECK(seed.scales[0] == doctest::Approx(0.05));
        CHECK(seed.c1Norms[0] == doctest::Approx(0.1));
    }
}

TEST_CASE("series constructors validate their arguments") {
    const TorusGeometry g{2, 2, 2};
    SeedSpec spec;
    spec.kind = "harmonic-constant";
    spec.targetC1Norm = 0.1;
    DeformationSeed seed = makeSeed(g, spec, 0.0);
    CHECK_THROWS_AS(iterateBeltrami(g, seed, 0), std::invalid_argument);
    CHECK_THROWS_AS(iterateBeltramiBracket(g, seed, 0), std::invalid_argument);
    DeformationSeed empty;
    CHECK_THROWS_AS(iterateBeltrami(g, empty, 2), std::invalid_argument);
}
