#pragma once

#include "hodgelab/rational.hpp"

#include <vector>

namespace hodgelab {

// Power series S(tau) = sum_{n>=1} x_n tau^n solving the quadratic recursion
//   x_n = c * sum_{i=1}^{n-1} x_i x_{n-i}   (n >= 2),
// equivalently c S^2 = S - x1 tau.  All coefficients are exact rationals.
struct MajorantSeries {
    Rational c;
    Rational x1;
    std::vector<Rational> x; // x[k] = x_k; x[0] = 0; size N+1
};

// Coefficients x_1..x_N via the recursion.
MajorantSeries majorantCoefficients(const Rational& c, const Rational& x1, int N);

// The same coefficient in product form:
//   x_n = (4 c x1)^n / (2 c n!) * prod_{k=1}^{n-1} (k - 1/2).
Rational majorantClosedForm(const Rational& c, const Rational& x1, int n);

struct MajorantEval {
    bool radiusFinite = true;
    Rational radius;                   // 1 / (4 |c x1|) when finite
    std::vector<Rational> partialSums; // partialSums[k] = sum_{i<=k} x_i tau^i
    double closedValue = 0.0;          // (1 - sqrt(1 - 4 c x1 tau)) / (2 c)
};

// Evaluates the series at a rational point tau (exact partial sums) and the
// closed-form value of S(tau) in floating point.  tau inside the radius.
MajorantEval majorantEval(const Rational& c, const Rational& x1, const Rational& tau, int N);

// Convergence radius; radiusFinite=false when c*x1 == 0.
struct MajorantRadius {
    bool finite = true;
    Rational value;
};
MajorantRadius majorantRadius(const Rational& c, const Rational& x1);

struct BoundaryScan {
    int N = 0;
    bool decreasing = true;  // y_{n+1} <= y_n for all n in [1, N)
    bool bounded = true;     // every partial sum <= 1/(2c)
    double finalPartialSum = 0.0;
    double bound = 0.0; // 1/(2c)
};

// Behaviour of y_n = x_n * radius^n at the boundary tau = radius, for c, x1 > 0.
// Uses the exact step ratio y_{n+1}/y_n = (2n-1)/(2n+2) with a shared-denominator
// accumulator so the scan stays cheap out to N ~ 1e4.
BoundaryScan majorantBoundaryScan(const Rational& c, const Rational& x1, int N);

// Verifies c S^2 = S - x1 tau coefficient-wise through order N; returns the
// first failing order, or 0 if all orders agree exactly.
int majorantFunctionalEquationDefect(const MajorantSeries& s);

} // namespace hodgelab
