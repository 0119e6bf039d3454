#pragma once

#include "hodgelab/poly_form.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hodgelab {

// One randomized exact check of a named operator identity.  The instance is
// drawn deterministically from the seed; pass means the difference of the two
// evaluation paths is identically the zero form.
struct IdentityVerdict {
    std::string tag;
    std::uint64_t seed = 0;
    bool pass = false;
    long differingMonomials = 0;
};

// Tags: db2 (contraction anticommutation), lie-contract (commutator of Lie
// derivative and contraction), f1/f2 (its (0,1) expansions along the (1,0)
// and (0,1) connection parts), tt (degree-(n,0) bracket-contraction exchange),
// ttcy (same under divergence-free hypotheses), f3/f4 (conjugation of dbar
// and nabla' by e^{i_phi}), f35 (conjugation under the integrability
// hypothesis), fk (contraction-power commutator chain), rec1 (top-degree
// recursion formula for integrable fields), bracket-sum-closed (closedness of
// the order-(K+1) bracket sum under the truncated integrability system).
const std::vector<std::string>& identityTags();

IdentityVerdict verifyIdentity(const std::string& tag, std::uint64_t seed);

struct NakanoSample {
    std::vector<GaussRat> vector; // u^{i alpha}, flattened i * r + alpha
    GaussRat value;               // sum R_{i jbar alpha betabar} u^{i alpha} conj(u^{j beta})
    bool nonNegative = false;     // exactly real and >= 0
};

struct CurvatureReport {
    int n = 0;
    int r = 1;
    // R_{i jbar alpha betabar} at the point, index ((i*n + j)*r + alpha)*r + beta
    std::vector<GaussRat> tensor;
    std::vector<NakanoSample> samples;
    bool semiPositiveOnSamples = true;
};

// Curvature of the metric h (r x r, entries polynomial, Hermitian) evaluated
// exactly at a rational point:
//   R_{i jbar alpha betabar}
//     = -d^2 h_{alpha betabar} / dz^i dzbar^j
//       + h^{gamma deltabar} (d_i h_{alpha deltabar}) (dbar_j h_{gamma betabar}),
// followed by the pairing against each sample vector.  Throws
// std::invalid_argument if h is not Hermitian and std::domain_error if
// h(point) is not positive definite.
CurvatureReport curvatureNakano(const std::vector<std::vector<PolyCoeff>>& h,
                                const std::vector<GaussRat>& point,
                                const std::vector<std::vector<GaussRat>>& vectors);

} // namespace hodgelab
