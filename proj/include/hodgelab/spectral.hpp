#pragma once

#include "hodgelab/fourier_form.hpp"

namespace hodgelab {

// The four first-order operators are mode-diagonal: each maps the coefficient
// at mode m of one component to a multiple of the same mode in another
// component.  They are described once as transition tables; the global
// operators and the per-mode matrices (used for constraint projections) are
// both generated from the same tables.

enum class LinearOp { Dbar, Del, DbarStar, DelStar };

struct SymbolFactor {
    enum Kind { One, Mu, Nu, MuConj, NuConj } kind = One;
    int dir = 0;
};

struct Transition {
    ComponentKey from, to;
    Real scale = 1;
    SymbolFactor sym;
};

FormShape opOutputShape(LinearOp op, FormShape s);
std::vector<Transition> opTransitions(LinearOp op, const FormShape& s);

Complex evalSymbol(const SymbolFactor& sym, const int* coords, int n);
VectorXcd symbolVector(const ModeLayout& layout, const SymbolFactor& sym);

FourierForm applyLinear(LinearOp op, const FourierForm& f);

inline FourierForm dbar(const FourierForm& f) { return applyLinear(LinearOp::Dbar, f); }
inline FourierForm del(const FourierForm& f) { return applyLinear(LinearOp::Del, f); }
inline FourierForm dbarStar(const FourierForm& f) { return applyLinear(LinearOp::DbarStar, f); }
inline FourierForm delStar(const FourierForm& f) { return applyLinear(LinearOp::DelStar, f); }

// Green operator of the dbar-Laplacian (divide mode m by 2 pi^2 |m|^2,
// kill the constant mode) and harmonic projection (constant mode, per
// component), both componentwise on the flat torus.
FourierForm green(const FourierForm& f);
FourierForm harmonic(const FourierForm& f);

// Dense matrix of an operator word at a single mode.  The word acts left to
// right: word = {Del, Dbar} is the map f -> dbar(del(f)).  Rows/columns are
// indexed by FormShape::componentKeys() order of the final/input shape.
Eigen::MatrixXcd modeMatrix(const std::vector<LinearOp>& word, const FormShape& in,
                            const int* coords);

struct SupNorms {
    Real l2 = 0;
    Real c0 = 0; // grid sup of the pointwise frame norm
    Real c1 = 0; // grid sup of |f|(x) + sum over the 2n real directions of |d f|(x)
};

// Sup norms are evaluated on the geometry-pinned uniform grid with
// oversample*(2K+1) points per real dimension.
SupNorms norms(const FourierForm& f, bool withDerivatives = true);

} // namespace hodgelab
