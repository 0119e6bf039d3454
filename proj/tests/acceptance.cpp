// Acceptance gate: one check per release criterion, each printed as a single
// PASS/FAIL line.  Exit status is nonzero when any criterion fails.  All
// tolerances and budgets are pinned here, next to the checks they gate.

#include "hodgelab/identities.hpp"
#include "hodgelab/inverse.hpp"
#include "hodgelab/kuranishi.hpp"
#include "hodgelab/majorant.hpp"
#include "hodgelab/products.hpp"
#include "hodgelab/spectral.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;
using namespace hodgelab;

namespace {

constexpr double kAxiomTol = 1e-10;        // criterion 1: operator axioms / Hodge identity
constexpr double kAxiomBudgetSec = 10.0;   //   and its runtime budget
constexpr double kEnergySlackTol = 1e-10;  // criterion 2: <g,Gg> - |dbarStar G g|^2 >= -tol
constexpr double kFourTermTol = 1e-8;      //   four-term norm identity
constexpr double kIsometryTol = 1e-8;      //   |ratio - 1| on delStar-exact inputs
constexpr double kInverseTol = 1e-10;      // criterion 3: residual, energy, normalization
constexpr int kInstancesPerTag = 50;       // criterion 4
constexpr double kIdentityBudgetSec = 60.0;
constexpr int kMajorantOrder = 50;         // criterion 5
constexpr double kSeriesTol = 1e-9;        // criteria 6/8/9 and the order >= 2 tail in 10
constexpr double kSeriesBudgetSec = 120.0; // criterion 6 runtime budget
constexpr int kSeriesOrder = 6;            // criterion 6/8/9/10 series order
constexpr int kCalibrationSamples = 1000;  // criterion 7
constexpr int kDominationOrder = 8;
constexpr double kClosedFormTol = 1e-12;   // criterion 8 constant-seed closed form
constexpr double kHarmonicTol = 1e-10;     // criterion 10 order-one harmonic pieces

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

struct Outcome {
    bool ok = false;
    std::string note;
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void writeText(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    out << text;
}

int runCli(const fs::path& logFile, const std::string& args) {
    std::string cmd = std::string("\"") + HODGELAB_CLI_PATH + "\" " + args + " > \"" +
                      logFile.string() + "\" 2>&1";
    int rc = std::system(cmd.c_str());
    return (rc != -1 && WIFEXITED(rc)) ? WEXITSTATUS(rc) : -1;
}

FourierForm unitized(FourierForm f) {
    Real nrm = l2Norm(f);
    if (nrm > 0) f *= Complex(1.0 / nrm, 0);
    return f;
}

} // namespace

int main() {
    int failures = 0;
    auto criterion = [&](int idx, const char* what, const std::function<Outcome()>& body) {
        Outcome o;
        try {
            o = body();
        } catch (const std::exception& e) {
            o = {false, std::string("unhandled exception: ") + e.what()};
        }
        if (!o.ok) ++failures;
        std::printf("%s criterion %d: %s%s%s%s\n", o.ok ? "PASS" : "FAIL", idx, what,
                    o.note.empty() ? "" : " (", o.note.c_str(), o.note.empty() ? "" : ")");
        std::fflush(stdout);
    };

    const TorusGeometry gBig{2, 6, 2};
    const FourierForm om0 = volumeForm(gBig);
    // Built by criterion 6 and reused by 8/9/10 so the series is computed once.
    std::optional<BeltramiSeries> series;
    std::optional<CanonicalFamily> family;

    criterion(1, "operator axioms and the Hodge decomposition on 100 random band-limited forms",
              [&]() -> Outcome {
        Timer timer;
        std::mt19937_64 rng(101);
        const ValueKind kinds[] = {ValueKind::Scalar, ValueKind::Tangent, ValueKind::DualTangent};
        double worst = 0;
        for (int i = 0; i < 100; ++i) {
            int p = i % (gBig.n + 1);
            int q = (i / (gBig.n + 1)) % (gBig.n + 1);
            ValueKind kind = kinds[i % 3];
            FourierForm f = unitized(randomForm(gBig, gBig.K, p, q, kind, rng));

            worst = std::max(worst, l2Norm(dbar(dbar(f))));
            worst = std::max(worst, l2Norm(del(del(f))));
            worst = std::max(worst, l2Norm(del(dbar(f)) + dbar(del(f))));

            if (q + 1 <= gBig.n) {
                FourierForm b = unitized(randomForm(gBig, gBig.K, p, q + 1, kind, rng));
                worst = std::max(worst, std::abs(l2Inner(dbar(f), b) - l2Inner(f, dbarStar(b))));
            }
            if (p + 1 <= gBig.n) {
                FourierForm b = unitized(randomForm(gBig, gBig.K, p + 1, q, kind, rng));
                worst = std::max(worst, std::abs(l2Inner(del(f), b) - l2Inner(f, delStar(b))));
            }

            FourierForm gf = green(f);
            FourierForm rem = f - harmonic(f) - dbarStar(dbar(gf)) - dbar(dbarStar(gf));
            worst = std::max(worst, l2Norm(rem));
        }
        double dt = timer.seconds();
        if (worst > kAxiomTol)
            return {false, "max residual " + num(worst) + " exceeds " + num(kAxiomTol)};
        if (dt >= kAxiomBudgetSec)
            return {false, "took " + num(dt) + " s, budget " + num(kAxiomBudgetSec) + " s"};
        return {true, "max residual " + num(worst) + ", " + num(dt) + " s"};
    });

    criterion(2, "Green-operator energy inequality, four-term norm identity, and the isometric "
                 "delStar-exact case",
              [&]() -> Outcome {
        std::mt19937_64 rng(211);
        double worstSlack = 0, worstFour = 0;
        for (int i = 0; i < 100; ++i) {
            int q = i % (gBig.n + 1);
            FourierForm f = unitized(randomForm(gBig, gBig.K, gBig.n, q, ValueKind::Scalar, rng));
            QuasiIsometryReport r = quasiIsometryReport(f);
            worstSlack = std::max(worstSlack, r.opNormSq - r.energy);
            double rhs = r.fourNormSq - r.fourHarmonicSq - r.fourDelStar - r.fourMixedSq;
            worstFour = std::max(worstFour, std::abs(r.fourLhs - rhs));
        }
        int built = 0;
        double worstRatio = 0;
        for (int i = 0; i < 40 && built < 12; ++i) {
            FourierForm h = randomForm(gBig, gBig.K, gBig.n, 1, ValueKind::Scalar, rng);
            h = projectToKernel(h, {{LinearOp::DelStar, LinearOp::Del, LinearOp::Dbar}});
            FourierForm f = delStar(h);
            if (l2Norm(f) < 1e-8) continue;
            ++built;
            f = unitized(std::move(f));
            QuasiIsometryReport r = quasiIsometryReport(f);
            if (!r.isometry)
                return {false, "projected delStar-exact input not flagged isometric"};
            worstRatio = std::max(worstRatio, std::abs(std::sqrt(r.fourLhs / r.fourNormSq) - 1.0));
        }
        if (built < 10) return {false, "only " + std::to_string(built) + " isometric inputs built"};
        if (worstSlack > kEnergySlackTol)
            return {false, "energy inequality slack " + num(worstSlack)};
        if (worstFour > kFourTermTol)
            return {false, "four-term identity residual " + num(worstFour)};
        if (worstRatio > kIsometryTol)
            return {false, "isometry ratio off by " + num(worstRatio)};
        return {true, "slack " + num(worstSlack) + ", four-term " + num(worstFour) +
                          ", isometry ratio off by " + num(worstRatio) + " on " +
                          std::to_string(built) + " inputs"};
    });

    criterion(3, "dbar-inverse equation residual, energy bound, and uniqueness normalization on "
                 "projected inputs",
              [&]() -> Outcome {
        std::mt19937_64 rng(307);
        const ValueKind kinds[] = {ValueKind::Scalar, ValueKind::Tangent, ValueKind::DualTangent};
        int built = 0;
        double worstEq = 0, worstEnergy = 0, worstSide = 0;
        for (int i = 0; i < 60; ++i) {
            int q = i % (gBig.n + 1);
            ValueKind kind = kinds[(i / 3) % 3];
            FourierForm raw = randomForm(gBig, gBig.K, gBig.n - 1, q, kind, rng);
            FourierForm f = projectToKernel(raw, {{LinearOp::Del, LinearOp::Dbar}});
            if (l2Norm(f) < 1e-9) continue;
            ++built;
            f = unitized(std::move(f));
            DbarInverseResult r = dbarInverse(f);
            worstEq = std::max(worstEq, r.residual);
            worstEnergy = std::max(worstEnergy, r.solutionNormSq - r.energyBound);
            worstSide = std::max({worstSide, r.harmonicDefect, r.coclosedDefect});
        }
        if (built < 50) return {false, "only " + std::to_string(built) + " inputs survived"};
        if (worstEq > kInverseTol) return {false, "equation residual " + num(worstEq)};
        if (worstEnergy > kInverseTol) return {false, "energy bound violated by " + num(worstEnergy)};
        if (worstSide > kInverseTol) return {false, "normalization defect " + num(worstSide)};
        return {true, std::to_string(built) + " inputs, residual " + num(worstEq) +
                          ", energy slack " + num(worstEnergy) + ", normalization " +
                          num(worstSide)};
    });

    criterion(4, "exact operator identity suite, 50 randomized instances per tag with zero "
                 "monomial difference",
              [&]() -> Outcome {
        Timer timer;
        const std::vector<std::string>& tags = identityTags();
        long bad = 0;
        std::string firstBad;
        for (std::size_t t = 0; t < tags.size(); ++t) {
            for (int i = 0; i < kInstancesPerTag; ++i) {
                IdentityVerdict v = verifyIdentity(tags[t], (t + 1) * 10000 + i);
                if (!v.pass || v.differingMonomials != 0) {
                    ++bad;
                    if (firstBad.empty())
                        firstBad = tags[t] + " seed " + std::to_string(v.seed);
                }
            }
        }
        double dt = timer.seconds();
        if (bad > 0)
            return {false, std::to_string(bad) + " instances differ, first: " + firstBad};
        if (dt >= kIdentityBudgetSec)
            return {false, "took " + num(dt) + " s, budget " + num(kIdentityBudgetSec) + " s"};
        return {true, std::to_string(tags.size()) + " tags x " +
                          std::to_string(kInstancesPerTag) + " instances, " + num(dt) + " s"};
    });

    criterion(5, "majorant recursion equals the closed form exactly, with Catalan start and "
                 "exact radii",
              [&]() -> Outcome {
        MajorantSeries cat = majorantCoefficients(Rational(1), Rational(1), kMajorantOrder);
        const long catalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862};
        for (int k = 1; k <= 10; ++k)
            if (cat.x[k] != Rational(catalan[k - 1]))
                return {false, "x_" + std::to_string(k) + " = " + toString(cat.x[k]) +
                                   ", expected " + std::to_string(catalan[k - 1])};
        for (int k = 1; k <= kMajorantOrder; ++k)
            if (cat.x[k] != majorantClosedForm(Rational(1), Rational(1), k))
                return {false, "recursion and closed form differ at order " + std::to_string(k)};
        if (majorantFunctionalEquationDefect(cat) != 0)
            return {false, "functional equation fails at order " +
                               std::to_string(majorantFunctionalEquationDefect(cat))};
        MajorantRadius r1 = majorantRadius(Rational(1), Rational(1));
        if (!r1.finite || r1.value != Rational(1, 4))
            return {false, "radius at c = x1 = 1 is " + toString(r1.value) + ", expected 1/4"};

        const Rational c(3), x1(1, 12);
        MajorantSeries s2 = majorantCoefficients(c, x1, kMajorantOrder);
        for (int k = 1; k <= kMajorantOrder; ++k)
            if (s2.x[k] != majorantClosedForm(c, x1, k))
                return {false, "second parameter set differs at order " + std::to_string(k)};
        if (majorantFunctionalEquationDefect(s2) != 0)
            return {false, "second functional equation fails at order " +
                               std::to_string(majorantFunctionalEquationDefect(s2))};
        MajorantRadius r2 = majorantRadius(c, x1);
        if (!r2.finite || r2.value != Rational(1))
            return {false, "radius at c = 3, x1 = 1/12 is " + toString(r2.value) + ", expected 1"};
        return {true, "orders 1..50 exact; radius(1,1) = 1/4, radius(3,1/12) = 1"};
    });

    criterion(6, "Beltrami recursion integrability, side conditions, and volume/bracket route "
                 "agreement at order 6",
              [&]() -> Outcome {
        Timer timer;
        SeedSpec spec;
        spec.kind = "divergence-free-synthetic";
        spec.m = 1;
        spec.band = 1;
        spec.rngSeed = 20260816;
        spec.targetC1Norm = 0.05;
        DeformationSeed seed = makeSeed(gBig, spec, 1.0);
        BeltramiSeries vol = iterateBeltrami(gBig, seed, kSeriesOrder);
        BeltramiSeries brk = iterateBeltramiBracket(gBig, seed, kSeriesOrder);

        double worstInt = 0;
        for (const IntegrabilityRow& row : integrabilityResidual(vol).rows)
            worstInt = std::max(worstInt, row.residual);
        double worstSide = 0;
        for (const SideConditionRow& row : sideConditions(vol)) {
            if (multiIndexOrder(row.index) < 2) continue;
            worstSide = std::max({worstSide, row.coclosed, row.delExact, row.harmonicMass});
        }
        double worstGap = 0;
        for (const auto& [I, f] : vol.phi)
            worstGap = std::max(worstGap, l2Norm(f - brk.phi.at(I)));
        double dt = timer.seconds();
        series = std::move(vol);

        if (worstInt > kSeriesTol) return {false, "integrability residual " + num(worstInt)};
        if (worstSide > kSeriesTol) return {false, "side-condition defect " + num(worstSide)};
        if (worstGap > kSeriesTol) return {false, "route disagreement " + num(worstGap)};
        if (dt >= kSeriesBudgetSec)
            return {false, "took " + num(dt) + " s, budget " + num(kSeriesBudgetSec) + " s"};
        return {true, "integrability " + num(worstInt) + ", side conditions " + num(worstSide) +
                          ", route gap " + num(worstGap) + ", " + num(dt) + " s"};
    });

    criterion(7, "calibrated majorant dominates the Beltrami series through order 8",
              [&]() -> Outcome {
        Timer timer;
        CalibrationRecord rec = calibrateConstants(gBig, kCalibrationSamples, 20260816);
        if (!(rec.C1hat > 0)) return {false, "calibration produced C1hat = " + num(rec.C1hat)};

        SeedSpec spec;
        spec.kind = "divergence-free-synthetic";
        spec.m = 1;
        spec.band = 1;
        spec.rngSeed = 20260816;
        spec.targetC1Norm = -1; // automatic target 1/(4 C1hat)
        DeformationSeed seed = makeSeed(gBig, spec, rec.C1hat);
        double target = 1.0 / (4.0 * rec.C1hat);
        if (std::abs(seed.c1Norms[0] - target) > 1e-12 * target)
            return {false, "seed C1 norm " + num(seed.c1Norms[0]) + " misses " + num(target)};

        BeltramiSeries s = iterateBeltrami(gBig, seed, kDominationOrder);
        DominationReport rep = dominationReport(s, rec.C1hat);
        double worstRatio = 0;
        for (const DominationRow& row : rep.rows)
            if (row.order >= 2 && row.majorant > 0)
                worstRatio = std::max(worstRatio, row.c1Norm / row.majorant);
        if (rep.rows.size() != static_cast<std::size_t>(kDominationOrder))
            return {false, "expected " + std::to_string(kDominationOrder) + " orders, got " +
                               std::to_string(rep.rows.size())};
        if (!rep.allOk) return {false, "domination fails, worst ratio " + num(worstRatio)};
        return {true, "C1hat = " + num(rec.C1hat) + ", max |phi_k|_C1 / x_k = " +
                          num(worstRatio) + " for k >= 2, " + num(timer.seconds()) + " s"};
    });

    criterion(8, "canonical family holomorphicity residuals and the constant-seed closed form",
              [&]() -> Outcome {
        if (!series) return {false, "order-6 series unavailable"};
        CanonicalFamily fam = canonicalFamily(*series, om0);
        double worstRes = 0;
        for (const auto& [I, r] : fam.residuals) worstRes = std::max(worstRes, r);
        family = std::move(fam);
        if (worstRes > kSeriesTol) return {false, "cascade residual " + num(worstRes)};

        // A constant seed terminates at order one, so the family must equal
        // Omega0 + t (phi . Omega0) + (t^2/2) (phi . phi . Omega0) exactly.
        const TorusGeometry gs{2, 2, 2};
        const ModeIndex zero{{0, 0}, {0, 0}};
        FourierForm field(gs, 0, 1, ValueKind::Tangent, 0);
        field.setCoeff(ComponentKey{0, maskBit(0), 0}, zero, Complex(1, 0));
        field.setCoeff(ComponentKey{0, maskBit(1), 1}, zero, Complex(1, 0));
        SeedSpec es;
        es.kind = "explicit";
        es.m = 1;
        es.targetC1Norm = 0.3;
        es.explicitFields = {field};
        DeformationSeed eseed = makeSeed(gs, es, 1.0);
        BeltramiSeries s2 = iterateBeltrami(gs, eseed, 2);
        if (l2Norm(s2.phi.at({2})) != 0.0)
            return {false, "constant seed produced a nonzero order-two coefficient"};

        FourierForm om0s = volumeForm(gs);
        const FourierForm& ph = s2.phi.at({1});
        FourierForm once = contract(ph, om0s).form;
        FourierForm twice = contract(ph, once).form;
        twice *= Complex(0.5, 0);
        if (l2Norm(twice) < 1e-6)
            return {false, "closed-form check degenerate: double contraction vanished"};
        CanonicalFamily cf = canonicalFamily(s2, om0s);
        double gap = std::max({l2Norm(cf.coefficients.at({0})[0] - om0s),
                               l2Norm(cf.coefficients.at({1})[0]),
                               l2Norm(cf.coefficients.at({1})[1] - once),
                               l2Norm(cf.coefficients.at({2})[0]),
                               l2Norm(cf.coefficients.at({2})[1]),
                               l2Norm(cf.coefficients.at({2})[2] - twice)});
        if (gap > kClosedFormTol) return {false, "closed-form gap " + num(gap)};
        return {true, "max cascade residual " + num(worstRes) + ", closed-form gap " + num(gap)};
    });

    criterion(9, "Kahler cascade exactness projections, holomorphicity, and the measured order "
                 "bound",
              [&]() -> Outcome {
        if (!series) return {false, "order-6 series unavailable"};
        KahlerFamily kf = kahlerFamily(*series, om0);
        double worstDel = 0, worstStar = 0, worstHolo = 0;
        for (const KahlerFamilyRow& row : kf.rows) {
            worstDel = std::max(worstDel, row.delExact);
            worstStar = std::max(worstStar, row.dbarStarExact);
            worstHolo = std::max(worstHolo, row.holomorphicity);
        }
        if (worstDel > kSeriesTol) return {false, "del-exactness defect " + num(worstDel)};
        if (worstStar > kSeriesTol) return {false, "dbarStar-exactness defect " + num(worstStar)};
        if (worstHolo > kSeriesTol) return {false, "holomorphicity residual " + num(worstHolo)};
        if (!kf.orderBoundHolds)
            return {false, "measured order bound violated (xi = " + num(kf.xi) + ")"};
        return {true, "projection defects " + num(std::max(worstDel, worstStar)) +
                          ", holomorphicity " + num(worstHolo) + ", xi = " + num(kf.xi)};
    });

    criterion(10, "cohomology expansion: order-one harmonic classes and vanishing higher-order "
                  "tails",
              [&]() -> Outcome {
        if (!series) return {false, "order-6 series unavailable"};
        if (!family) family = canonicalFamily(*series, om0);
        CohomologyTable coh = cohomologyExpansion(*family, *series, om0);
        FourierForm h1 = harmonic(contract(series->phi.at({1}), om0).form);
        if (l2Norm(h1) < 1e-8)
            return {false, "order-one harmonic class unexpectedly vanished"};
        double gap1 = l2Norm(coh.harmonicPieces.at({1})[1] - h1);
        double worstTail = 0;
        for (const auto& [I, mass] : coh.beltramiHarmonicMass)
            if (multiIndexOrder(I) >= 2) worstTail = std::max(worstTail, mass);
        if (gap1 > kHarmonicTol) return {false, "order-one harmonic gap " + num(gap1)};
        if (worstTail > kSeriesTol) return {false, "higher-order harmonic mass " + num(worstTail)};
        return {true, "order-one gap " + num(gap1) + ", max tail mass " + num(worstTail)};
    });

    criterion(11, "repeated runs of one config produce identical reports modulo timestamp",
              [&]() -> Outcome {
        fs::path scratch = fs::temp_directory_path() / "hodgelab_acceptance";
        fs::remove_all(scratch);
        fs::create_directories(scratch);
        writeText(scratch / "sweep.json",
                  nlohmann::json{{"experiment", "quasi-isometry"},
                                 {"geometry", {{"n", 2}, {"K", 2}, {"oversample", 2}}},
                                 {"sampleCount", 8}}
                          .dump(2) +
                      "\n");
        writeText(scratch / "exact.json",
                  nlohmann::json{{"experiment", "majorant"},
                                 {"majorant",
                                  {{"c", "1"}, {"x1", "1"}, {"order", 40}, {"tau", "1/8"}}}}
                          .dump(2) +
                      "\n");
        for (const std::string name : {"sweep", "exact"}) {
            fs::path cfg = scratch / (name + ".json");
            fs::path outA = scratch / (name + "_a");
            fs::path outB = scratch / (name + "_b");
            for (const fs::path& out : {outA, outB}) {
                int rc = runCli(scratch / (name + "_log.txt"),
                                "run --config \"" + cfg.string() + "\" --out \"" + out.string() +
                                    "\"");
                if (rc != 0)
                    return {false, name + " run exited with code " + std::to_string(rc)};
            }
            nlohmann::json ra = nlohmann::json::parse(slurp(outA / "report.json"));
            nlohmann::json rb = nlohmann::json::parse(slurp(outB / "report.json"));
            ra.erase("generatedAt");
            rb.erase("generatedAt");
            if (ra != rb) return {false, name + " reports differ beyond the timestamp"};
            int compared = 0;
            for (const fs::directory_entry& e : fs::directory_iterator(outA)) {
                if (e.path().filename() == "report.json") continue;
                ++compared;
                if (slurp(e.path()) != slurp(outB / e.path().filename()))
                    return {false, name + ": " + e.path().filename().string() + " differs"};
            }
            if (compared == 0) return {false, name + " produced no tables to compare"};
        }
        return {true, "2 configs x 2 runs, reports and tables identical"};
    });

    std::printf("%d/11 criteria passed\n", 11 - failures);
    return failures == 0 ? 0 : 1;
}
