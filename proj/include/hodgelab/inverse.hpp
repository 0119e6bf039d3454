#pragma once

#include "hodgelab/spectral.hpp"

namespace hodgelab {

// s = dbarStar(G(del g)) together with the diagnostics that certify it:
// the equation residual, the energy bound, and the uniqueness normalization
// (s has no harmonic part and is dbarStar-closed).
struct DbarInverseResult {
    FourierForm s;
    Real residual = 0;       // ||dbar s - del g||
    Real solutionNormSq = 0; // ||s||^2
    Real energyBound = 0;    // Re <del g, G del g>; always >= solutionNormSq
    Real harmonicDefect = 0; // ||H s||
    Real coclosedDefect = 0; // ||dbarStar s||
};
DbarInverseResult dbarInverse(const FourierForm& g);

// Both sides of ||dbarStar G g||^2 <= <g, G g> plus the four-term identity
//   ||dbarStar G del g||^2 =
//       ||g||^2 - ||H g||^2 - <delStar g, G delStar g> - ||G dbar del g||^2,
// every term evaluated through its own operator chain.  The isometry flag is
// set when dbar del g vanishes and g has no component in ker del (i.e. g is
// delStar-exact), in which case the first and the ||g||^2 term agree.
struct QuasiIsometryReport {
    Real opNormSq = 0;       // ||dbarStar G g||^2
    Real energy = 0;         // Re <g, G g>
    Real fourLhs = 0;        // ||dbarStar G del g||^2
    Real fourNormSq = 0;     // ||g||^2
    Real fourHarmonicSq = 0; // ||H g||^2
    Real fourDelStar = 0;    // Re <delStar g, G delStar g>
    Real fourMixedSq = 0;    // ||G dbar del g||^2
    Real integrability = 0;  // ||dbar del g||
    Real kernelDefect = 0;   // ||mode-wise projection of g onto ker del||
    bool isometry = false;
};
QuasiIsometryReport quasiIsometryReport(const FourierForm& g, Real tol = 1e-9);

// Mode-by-mode orthogonal projection of f onto the intersection of the
// kernels of the given operator words (each word read left to right).  Used
// to manufacture inputs satisfying linear constraints such as dbar del g = 0
// exactly.
FourierForm projectToKernel(const FourierForm& f,
                            const std::vector<std::vector<LinearOp>>& words);

} // namespace hodgelab
