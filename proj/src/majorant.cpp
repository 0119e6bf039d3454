#include "hodgelab/majorant.hpp"

#include <cmath>
#include <stdexcept>

namespace hodgelab {

MajorantSeries majorantCoefficients(const Rational& c, const Rational& x1, int N) {
    if (N < 1) throw std::invalid_argument("majorantCoefficients: N must be >= 1");
    MajorantSeries s;
    s.c = c;
    s.x1 = x1;
    s.x.assign(static_cast<size_t>(N) + 1, Rational(0));
    s.x[1] = x1;
    for (int n = 2; n <= N; ++n) {
        Rational acc = 0;
        for (int i = 1; i < n; ++i) acc += s.x[i] * s.x[n - i];
        s.x[n] = c * acc;
    }
    return s;
}

Rational majorantClosedForm(const Rational& c, const Rational& x1, int n) {
    if (n < 1) throw std::invalid_argument("majorantClosedForm: n must be >= 1");
    if (c == 0) return n == 1 ? x1 : Rational(0);
    // (4 c x1)^n * prod_{k=1}^{n-1} (2k-1) / (4 c n! 2^{n-1})
    Rational num = 1;
    Rational base = 4 * c * x1;
    BigInt odd = 1, fact = 1, pow2 = 1;
    for (int k = 1; k <= n; ++k) {
        num *= base;
        fact *= k;
        if (k < n) {
            odd *= 2 * k - 1;
            pow2 *= 2;
        }
    }
    return num * Rational(odd) / (4 * c * Rational(fact) * Rational(pow2));
}

MajorantRadius majorantRadius(const Rational& c, const Rational& x1) {
    MajorantRadius r;
    Rational p = c * x1;
    if (p == 0) {
        r.finite = false;
        return r;
    }
    if (p < 0) p = -p;
    r.value = Rational(1) / (4 * p);
    return r;
}

MajorantEval majorantEval(const Rational& c, const Rational& x1, const Rational& tau, int N) {
    MajorantEval e;
    MajorantRadius rad = majorantRadius(c, x1);
    e.radiusFinite = rad.finite;
    if (rad.finite) e.radius = rad.value;

    MajorantSeries s = majorantCoefficients(c, x1, N);
    e.partialSums.assign(static_cast<size_t>(N) + 1, Rational(0));
    Rational tpow = 1, sum = 0;
    for (int k = 1; k <= N; ++k) {
        tpow *= tau;
        sum += s.x[k] * tpow;
        e.partialSums[k] = sum;
    }

    double disc = 1.0 - 4.0 * toDouble(c * x1 * tau);
    if (c == 0) {
        e.closedValue = toDouble(x1 * tau);
    } else if (disc >= 0.0) {
        e.closedValue = (1.0 - std::sqrt(disc)) / (2.0 * toDouble(c));
    } else {
        e.closedValue = std::nan("");
    }
    return e;
}

BoundaryScan majorantBoundaryScan(const Rational& c, const Rational& x1, int N) {
    if (!(c > 0) || !(x1 > 0)) throw std::invalid_argument("majorantBoundaryScan: needs c, x1 > 0");
    if (N < 1) throw std::invalid_argument("majorantBoundaryScan: N must be >= 1");
    BoundaryScan out;
    out.N = N;
    // y_1 = x1 * radius = 1/(4c); thereafter y_{n+1} = y_n (2n-1)/(2n+2).
    // Track y_n = u/D and the running sum = v/D over a shared denominator, so
    // each step is two small-integer multiplies and an add.
    BigInt u = denominator(c), D = 4 * numerator(c), v = u;
    for (int n = 1; n < N; ++n) {
        u *= 2 * n - 1;
        v *= 2 * n + 2;
        D *= 2 * n + 2;
        v += u;
        // ratio (2n-1)/(2n+2) < 1, so y is strictly decreasing by construction
    }
    // bounded: v/D <= 1/(2c)  <=>  2 c v <= D
    out.bounded = 2 * numerator(c) * v <= D * denominator(c);
    out.decreasing = true;
    out.bound = 1.0 / (2.0 * toDouble(c));
    out.finalPartialSum = toDouble(Rational(v) / Rational(D));
    return out;
}

int majorantFunctionalEquationDefect(const MajorantSeries& s) {
    int N = static_cast<int>(s.x.size()) - 1;
    for (int n = 1; n <= N; ++n) {
        Rational conv = 0;
        for (int i = 1; i < n; ++i) conv += s.x[i] * s.x[n - i];
        Rational rhs = s.x[n];
        if (n == 1) rhs -= s.x1;
        if (s.c * conv != rhs) return n;
    }
    return 0;
}

} // namespace hodgelab
