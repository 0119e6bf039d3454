#pragma once

#include "hodgelab/fourier_form.hpp"

namespace hodgelab {

// Bilinear operations.  Mode content is an exact convolution: both factors
// are evaluated on a shared grid of 2(Ba+Bb)+1 points per real dimension
// (alias-free for their bands), multiplied pointwise, and transformed back at
// the full band Ba+Bb.  Modes beyond the geometry band K are then dropped and
// their L2 mass is recorded in the receipt.  Products of inputs supported in
// band <= K/2 are therefore exact.

struct ProductResult {
    FourierForm form;
    TruncationReceipt receipt;
};

// Exterior product; at most one factor may be tangent- or dual-tangent-valued
// (two valued factors throw).  Degrees clamp to n+1 (identically zero) past
// the top.
ProductResult wedge(const FourierForm& a, const FourierForm& b);

// Contraction of a tangent-valued (0,s)-form into a scalar (p,q)-form,
// extending i_Y by (eta (x) Y) -| omega = eta ^ (i_Y omega).  For p = 0 the
// result is the zero form and the receipt carries capUsed = -1 as a warning
// marker.
ProductResult contract(const FourierForm& phi, const FourierForm& omega);

// Graded bracket of tangent-valued (0,p) and (0,q) forms:
//   [phi,psi]^j = sum_i (phi^i ^ d_i psi^j - (-1)^{pq} psi^i ^ d_i phi^j).
ProductResult bracket(const FourierForm& phi, const FourierForm& psi);

// Lie derivative along a tangent-valued (0,k)-form phi on a scalar form:
//   L_phi = (-1)^k d o i_phi + i_phi o d.
// The two type components of d land in different bidegrees, so the result is
// returned split: holo uses d = del, antiholo uses d = dbar, and the full Lie
// derivative is the formal sum of the two.  Results are truncated to the
// geometry band (exact when the inputs sit in band <= K/2).
struct LieDerivative {
    FourierForm holo;
    FourierForm antiholo;
};
LieDerivative lieDerivative(const FourierForm& phi, const FourierForm& omega);

// e^{i_phi} omega = sum_{k>=0} (1/k!) i_phi^k omega (finite: k <= p).
// The graded pieces land in one carrier form keyed by their actual frame
// masks; they share total degree, value kind and frame weight, so norms and
// linear combinations of the result are exact, but it must not be fed to
// operators that enumerate components from the nominal bidegree.
ProductResult expContract(const FourierForm& phi, const FourierForm& omega);

// The parallel holomorphic volume form dz^1 ^ ... ^ dz^n (band 0).
FourierForm volumeForm(const TorusGeometry& g);

// Inverse of phi -> phi -| volumeForm: relabels a scalar (n-1,q)-form back to
// a tangent-valued (0,q)-form, exactly (no convolution).
FourierForm contractDualVolume(const FourierForm& alpha);

} // namespace hodgelab
