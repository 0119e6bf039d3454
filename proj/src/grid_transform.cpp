#include "hodgelab/grid_transform.hpp"

#include <stdexcept>

namespace hodgelab {

Eigen::MatrixXcd synthesisMatrix(int G, int B) {
    Eigen::MatrixXcd E(G, 2 * B + 1);
    for (int g = 0; g < G; ++g)
        for (int k = -B; k <= B; ++k) {
            Real angle = 2.0 * kPi * Real(((k % G) + G) % G) * Real(g) / Real(G);
            E(g, k + B) = std::polar(1.0, angle);
        }
    return E;
}

std::vector<Complex> applyAlongAxis(const std::vector<Complex>& buf,
                                    std::vector<std::int64_t>& dims, int axis,
                                    const Eigen::MatrixXcd& M) {
    std::int64_t outer = 1, inner = 1;
    for (int d = 0; d < axis; ++d) outer *= dims[d];
    for (std::size_t d = axis + 1; d < dims.size(); ++d) inner *= dims[d];
    std::int64_t len = dims[axis];
    if (M.cols() != len) throw std::invalid_argument("applyAlongAxis: size mismatch");
    std::int64_t outLen = M.rows();

    std::vector<Complex> out(outer * outLen * inner);
    using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    if (outer >= 64 && inner <= 16) {
        // Many small blocks: a per-block GEMM is call-overhead bound, so run
        // the L1-resident triple loop directly.
        for (std::int64_t o = 0; o < outer; ++o) {
            const Real* src = reinterpret_cast<const Real*>(buf.data() + o * len * inner);
            Real* dst = reinterpret_cast<Real*>(out.data() + o * outLen * inner);
            for (std::int64_t r = 0; r < outLen; ++r)
                for (std::int64_t k = 0; k < len; ++k) {
                    Real er = M(r, k).real(), ei = M(r, k).imag();
                    const Real* s = src + 2 * k * inner;
                    Real* d = dst + 2 * r * inner;
                    for (std::int64_t i = 0; i < inner; ++i) {
                        Real sr = s[2 * i], si = s[2 * i + 1];
                        d[2 * i] += er * sr - ei * si;
                        d[2 * i + 1] += er * si + ei * sr;
                    }
                }
        }
    } else {
        for (std::int64_t o = 0; o < outer; ++o) {
            Eigen::Map<const RowMat> src(buf.data() + o * len * inner, len, inner);
            Eigen::Map<RowMat> dst(out.data() + o * outLen * inner, outLen, inner);
            dst.noalias() = M * src;
        }
    }
    dims[axis] = outLen;
    return out;
}

std::vector<Complex> modesToGrid(const std::vector<Complex>& modes, int n2, int B, int G,
                                 int fields) {
    Eigen::MatrixXcd E = synthesisMatrix(G, B);
    std::vector<std::int64_t> dims(n2, 2 * B + 1);
    dims.push_back(fields);
    std::vector<Complex> buf = modes;
    for (int d = 0; d < n2; ++d) buf = applyAlongAxis(buf, dims, d, E);
    return buf;
}

std::vector<Complex> gridToModes(const std::vector<Complex>& grid, int n2, int G, int Bout,
                                 int fields) {
    if (G < 2 * Bout + 1) throw std::invalid_argument("gridToModes: grid too coarse");
    Eigen::MatrixXcd A = synthesisMatrix(G, Bout).adjoint() / Real(G);
    std::vector<std::int64_t> dims(n2, G);
    dims.push_back(fields);
    std::vector<Complex> buf = grid;
    for (int d = 0; d < n2; ++d) buf = applyAlongAxis(buf, dims, d, A);
    return buf;
}

} // namespace hodgelab
