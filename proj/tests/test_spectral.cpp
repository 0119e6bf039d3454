#include <doctest.h>

#include "hodgelab/spectral.hpp"

#include <cmath>
#include <random>

using namespace hodgelab;

namespace {

const TorusGeometry kGeom{2, 6, 2};

FourierForm character(const TorusGeometry& g, const ModeIndex& m) {
    FourierForm f(g, 0, 0, ValueKind::Scalar, g.K);
    f.setCoeff(ComponentKey{}, m, Complex(1, 0));
    return f;
}

Real relErr(const FourierForm& got, const FourierForm& want) {
    Real scale = std::max(l2Norm(want), Real(1));
    return l2Norm(got - want) / scale;
}

struct ShapeCase {
    int p, q;
    ValueKind kind;
};

const ShapeCase kShapes[] = {
    {0, 0, ValueKind::Scalar},  {1, 0, ValueKind::Scalar},  {0, 1, ValueKind::Scalar},
    {1, 1, ValueKind::Scalar},  {2, 1, ValueKind::Scalar},  {2, 2, ValueKind::Scalar},
    {0, 1, ValueKind::Tangent}, {1, 1, ValueKind::Tangent}, {0, 2, ValueKind::Tangent},
    {1, 0, ValueKind::DualTangent},
};

} // namespace

TEST_CASE("dbar of a single character lands on dzbar with coefficient pi*i per direction") {
    ModeIndex m{{1, 0}, {0, 0}};
    FourierForm f = character(kGeom, m);
    FourierForm df = dbar(f);
    REQUIRE(df.p() == 0);
    REQUIRE(df.q() == 1);
    // nu_j(m) = pi i (a_j + i b_j); here only j = 1 contributes, value pi i.
    Complex c = df.coeff(ComponentKey{0, maskBit(0), -1}, m);
    CHECK(c.real() == 0.0);
    CHECK(c.imag() == doctest::Approx(kPi).epsilon(1e-15));
    CHECK(df.coeff(ComponentKey{0, maskBit(1), -1}, m) == Complex(0, 0));

    // del picks up mu_j(m) = pi i (a_j - i b_j) on dz^j instead.
    FourierForm pf = del(f);
    Complex d = pf.coeff(ComponentKey{maskBit(0), 0, -1}, m);
    CHECK(d.real() == 0.0);
    CHECK(d.imag() == doctest::Approx(kPi).epsilon(1e-15));

    SUBCASE("a mode with both x and y frequencies splits mu and nu") {
        ModeIndex w{{0, 1}, {0, 1}};
        FourierForm h = character(kGeom, w);
        // nu_2(w) = pi i (1 + i) = pi(-1 + i); mu_2(w) = pi i (1 - i) = pi(1 + i).
        Complex nu = dbar(h).coeff(ComponentKey{0, maskBit(1), -1}, w);
        CHECK(nu.real() == doctest::Approx(-kPi).epsilon(1e-15));
        CHECK(nu.imag() == doctest::Approx(kPi).epsilon(1e-15));
        Complex mu = del(h).coeff(ComponentKey{maskBit(1), 0, -1}, w);
        CHECK(mu.real() == doctest::Approx(kPi).epsilon(1e-15));
        CHECK(mu.imag() == doctest::Approx(kPi).epsilon(1e-15));
    }
}

TEST_CASE("constants are closed for every first-order operator") {
    FourierForm f = character(kGeom, ModeIndex{{0, 0}, {0, 0}});
    CHECK(dbar(f).isZero());
    CHECK(del(f).isZero());
    CHECK(dbarStar(f).isZero());
    CHECK(delStar(f).isZero());

    FourierForm g(kGeom, 0, 1, ValueKind::Scalar, 1);
    g.setCoeff(ComponentKey{0, maskBit(0), -1}, ModeIndex{{0, 0}, {0, 0}}, Complex(1, 0));
    CHECK(dbar(g).isZero());
    CHECK(dbarStar(g).isZero());
}

TEST_CASE("dbar-Laplacian is scalar per mode: dbarStar dbar e_m = 2 pi^2 |m|^2 e_m") {
    struct ModeCase {
        ModeIndex m;
        Real normSq;
    };
    const ModeCase cases[] = {
        {{{1, 0}, {0, 0}}, 1},
        {{{1, 1}, {0, 1}}, 3},
        {{{-2, 0}, {1, 3}}, 14},
        {{{0, 0}, {0, -1}}, 1},
    };
    for (const ModeCase& c : cases) {
        FourierForm f = character(kGeom, c.m);
        FourierForm lap = dbarStar(dbar(f));
        FourierForm want = Complex(2 * kPi * kPi * c.normSq, 0) * f;
        CAPTURE(c.normSq);
        CHECK(relErr(lap, want) <= 1e-13);
    }
}

TEST_CASE("adjoint pairs match under the weighted inner product") {
    std::mt19937_64 rng(100);
    int failures = 0;
    for (int i = 0; i < 50; ++i) {
        const ShapeCase& s = kShapes[i % (sizeof(kShapes) / sizeof(kShapes[0]))];
        if (s.q >= kGeom.n && s.p >= kGeom.n) continue;
        FourierForm a = randomForm(kGeom, 2, s.p, s.q, s.kind, rng);
        if (s.q < kGeom.n) {
            FourierForm b = randomForm(kGeom, 2, s.p, s.q + 1, s.kind, rng);
            Complex lhs = l2Inner(dbar(a), b);
            Complex rhs = l2Inner(a, dbarStar(b));
            if (std::abs(lhs - rhs) > 1e-10 * l2Norm(a) * l2Norm(b)) ++failures;
        }
        if (s.p < kGeom.n) {
            FourierForm b = randomForm(kGeom, 2, s.p + 1, s.q, s.kind, rng);
            Complex lhs = l2Inner(del(a), b);
            Complex rhs = l2Inner(a, delStar(b));
            if (std::abs(lhs - rhs) > 1e-10 * l2Norm(a) * l2Norm(b)) ++failures;
        }
    }
    CHECK(failures == 0);
}

TEST_CASE("complex differentials square to zero and anticommute") {
    std::mt19937_64 rng(200);
    for (const ShapeCase& s : kShapes) {
        FourierForm f = randomForm(kGeom, 3, s.p, s.q, s.kind, rng);
        Real scale = std::max(Real(1), l2Norm(f));
        CAPTURE(s.p);
        CAPTURE(s.q);
        CHECK(l2Norm(dbar(dbar(f))) <= 1e-12 * scale);
        CHECK(l2Norm(del(del(f))) <= 1e-12 * scale);
        CHECK(l2Norm(del(dbar(f)) + dbar(del(f))) <= 1e-12 * scale);
        CHECK(l2Norm(delStar(dbarStar(f)) + dbarStar(delStar(f))) <= 1e-12 * scale);
    }
}

TEST_CASE("Green operator and harmonic projection on characters") {
    ModeIndex m{{1, 1}, {0, 1}};
    FourierForm f = character(kGeom, m);
    FourierForm gf = green(f);
    FourierForm want = Complex(1.0 / (2 * kPi * kPi * 3), 0) * f;
    CHECK(relErr(gf, want) <= 1e-14);
    CHECK(harmonic(f).isZero());

    FourierForm c = character(kGeom, ModeIndex{{0, 0}, {0, 0}});
    CHECK(green(c).isZero());
    CHECK(relErr(harmonic(c), c) == 0.0);

    SUBCASE("G and H annihilate each other") {
        std::mt19937_64 rng(300);
        FourierForm r = randomForm(kGeom, 2, 1, 1, ValueKind::Scalar, rng);
        CHECK(green(harmonic(r)).isZero());
        CHECK(harmonic(green(r)).isZero());
    }
}

TEST_CASE("Hodge decomposition: identity = harmonic + Laplacian of Green") {
    std::mt19937_64 rng(400);
    for (const ShapeCase& s : kShapes) {
        FourierForm f = randomForm(kGeom, 3, s.p, s.q, s.kind, rng);
        FourierForm gf = green(f);
        FourierForm rebuilt = harmonic(f) + dbarStar(dbar(gf)) + dbar(dbarStar(gf));
        CAPTURE(s.p);
        CAPTURE(s.q);
        CHECK(relErr(rebuilt, f) <= 1e-10);
    }
}

TEST_CASE("norms of the zero form vanish") {
    FourierForm z(kGeom, 1, 1, ValueKind::Scalar, 2);
    SupNorms r = norms(z);
    CHECK(r.l2 == 0.0);
    CHECK(r.c0 == 0.0);
    CHECK(r.c1 == 0.0);
}

TEST_CASE("norms of a single character: l2 = c0 = 1, c1 = 1 + 2 pi") {
    FourierForm f = character(kGeom, ModeIndex{{1, 0}, {0, 0}});
    SupNorms r = norms(f);
    CHECK(r.l2 == 1.0);
    CHECK(r.c0 == 1.0);
    CHECK(r.c1 == doctest::Approx(1 + 2 * kPi).epsilon(1e-15));

    SUBCASE("closed form scales with the total frequency weight") {
        FourierForm h = character(kGeom, ModeIndex{{1, 1}, {0, 1}});
        SupNorms rh = norms(h);
        CHECK(rh.c0 == 1.0);
        CHECK(rh.c1 == doctest::Approx(1 + 6 * kPi).epsilon(1e-15));
    }

    SUBCASE("frame weight enters the pointwise norm") {
        // e_m dzbar^1 has weight 2, so |f| = sqrt(2) pointwise.
        FourierForm g(kGeom, 0, 1, ValueKind::Scalar, kGeom.K);
        g.setCoeff(ComponentKey{0, maskBit(0), -1}, ModeIndex{{1, 0}, {0, 0}}, Complex(1, 0));
        SupNorms rg = norms(g);
        CHECK(rg.l2 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
        CHECK(rg.c0 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
        CHECK(rg.c1 == doctest::Approx(std::sqrt(2.0) * (1 + 2 * kPi)).epsilon(1e-15));
    }
}

TEST_CASE("dense grid path agrees with hand values on two-mode forms") {
    // f = e_{(1,0)} dzbar^1 + e_{(0,1)} dzbar^2 (x-frequencies only): both
    // moduli are constant 1, so |f| = 2 everywhere and each of the two
    // x-derivatives contributes 2 sqrt(2) pi.
    FourierForm f(kGeom, 0, 1, ValueKind::Scalar, 1);
    f.setCoeff(ComponentKey{0, maskBit(0), -1}, ModeIndex{{1, 0}, {0, 0}}, Complex(1, 0));
    f.setCoeff(ComponentKey{0, maskBit(1), -1}, ModeIndex{{0, 1}, {0, 0}}, Complex(1, 0));
    SupNorms r = norms(f);
    CHECK(r.l2 == 2.0);
    CHECK(r.c0 == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(r.c1 == doctest::Approx(2 + 4 * std::sqrt(2.0) * kPi).epsilon(1e-13));

    SUBCASE("constant plus character peaks where the phases align") {
        // g = 1 + e_{(1,0)}: |g| peaks at 2 (x1 = 0, on the grid) and the
        // derivative modulus is the constant 2 pi.
        FourierForm g(kGeom, 0, 0, ValueKind::Scalar, 1);
        g.setCoeff(ComponentKey{}, ModeIndex{{0, 0}, {0, 0}}, Complex(1, 0));
        g.setCoeff(ComponentKey{}, ModeIndex{{1, 0}, {0, 0}}, Complex(1, 0));
        SupNorms rg = norms(g);
        CHECK(rg.l2 == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
        CHECK(rg.c0 == doctest::Approx(2.0).epsilon(1e-13));
        CHECK(rg.c1 == doctest::Approx(2 + 2 * kPi).epsilon(1e-13));
    }
}

TEST_CASE("operators over degenerate bidegrees stay representable") {
    // Lowering below degree zero or raising past n yields empty marker forms;
    // words may keep acting on them without throwing.
    FourierForm s = character(kGeom, ModeIndex{{1, 0}, {0, 0}});
    FourierForm low = dbarStar(s); // q = -1 marker
    CHECK(low.isZero());
    CHECK(dbarStar(low).isZero());
    CHECK(dbar(dbarStar(low)).isZero());
}
