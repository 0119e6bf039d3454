#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hodgelab/geometry.hpp"

namespace hodgelab {

// Separable evaluation of band-limited sections on uniform grids.
//
// A coefficient function with modes in [-B, B]^(2n) is a tensor with 2n axes
// of length 2B+1.  Evaluation at the G^(2n) grid points x_g = g/G is the
// product of one G x (2B+1) synthesis matrix per axis, applied axis by axis
// (each application is one complex GEMM).  When G >= 2B+1 the analysis
// direction recovers the coefficients exactly.
//
// Buffers are flat row-major arrays over the axes; an optional trailing
// "field" axis lets several sections share one pass.

// E[g, k] = exp(2 pi i k g / G), k = -B..B.
Eigen::MatrixXcd synthesisMatrix(int G, int B);

// Apply M (rows x len(axis)) along `axis` of `buf` with dimensions `dims`
// (the trailing entries of `dims` beyond `axes` count as passenger axes).
std::vector<Complex> applyAlongAxis(const std::vector<Complex>& buf,
                                    std::vector<std::int64_t>& dims, int axis,
                                    const Eigen::MatrixXcd& M);

// modes (2B+1)^(2n) x fields  ->  grid G^(2n) x fields.
std::vector<Complex> modesToGrid(const std::vector<Complex>& modes, int n2, int B, int G,
                                 int fields);

// grid G^(2n) x fields -> modes (2Bout+1)^(2n) x fields; requires G >= 2*Bout+1.
std::vector<Complex> gridToModes(const std::vector<Complex>& grid, int n2, int G, int Bout,
                                 int fields);

} // namespace hodgelab
