#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hodgelab {

using Real = double;
using Complex = std::complex<double>;

inline constexpr Real kPi = 3.14159265358979323846264338327950288;

// Flat torus C^n / (Z^n + i Z^n) with coordinates z^j = x^j + i y^j,
// x, y in [0,1).  Sections are stored band-limited: Fourier modes
// m = (a, b) in Z^n x Z^n with |a_j|, |b_j| <= K.  Sup-type norms are
// realized on a uniform grid with oversample*(2K+1) points per real
// dimension.
struct TorusGeometry {
    int n = 1;
    int K = 1;
    int oversample = 2;

    void validate() const {
        if (n < 1 || n > 8) throw std::invalid_argument("TorusGeometry: n out of range");
        if (K < 1) throw std::invalid_argument("TorusGeometry: band limit K must be >= 1");
        if (oversample < 2) throw std::invalid_argument("TorusGeometry: oversample must be >= 2");
    }
    int dims() const { return 2 * n; }
    int normGridSide() const { return oversample * (2 * K + 1); }
    bool operator==(const TorusGeometry& o) const {
        return n == o.n && K == o.K && oversample == o.oversample;
    }
};

// One Fourier mode: the character e_m(z) = exp(2 pi i (a.x + b.y)).
struct ModeIndex {
    std::vector<int> a, b;
};

// Dense layout of the modes of one coefficient function, band B:
// coordinates (a_1..a_n, b_1..b_n), each in [-B, B], row major in that
// order.  A band of 0 holds constants only.
struct ModeLayout {
    int n = 1;
    int band = 0;

    int side() const { return 2 * band + 1; }
    std::int64_t size() const {
        std::int64_t s = 1;
        for (int d = 0; d < 2 * n; ++d) s *= side();
        return s;
    }
    void decode(std::int64_t idx, int* coords) const {
        for (int d = 2 * n - 1; d >= 0; --d) {
            coords[d] = static_cast<int>(idx % side()) - band;
            idx /= side();
        }
    }
    std::int64_t encode(const int* coords) const {
        std::int64_t idx = 0;
        for (int d = 0; d < 2 * n; ++d) idx = idx * side() + (coords[d] + band);
        return idx;
    }
    bool inBand(const int* coords, int cap) const {
        for (int d = 0; d < 2 * n; ++d)
            if (coords[d] < -cap || coords[d] > cap) return false;
        return true;
    }
};

// Symbols of the flat derivatives on characters:
//   d/dz^j     e_m = pi i (a_j - i b_j) e_m
//   d/dzbar^j  e_m = pi i (a_j + i b_j) e_m
inline Complex symbolMu(const int* coords, int n, int j) {
    Real a = coords[j], b = coords[n + j];
    return Complex(0, kPi) * Complex(a, -b);
}
inline Complex symbolNu(const int* coords, int n, int j) {
    Real a = coords[j], b = coords[n + j];
    return Complex(0, kPi) * Complex(a, b);
}
// dbar-Laplacian eigenvalue 2 pi^2 |m|^2.
inline Real symbolLaplace(const int* coords, int n) {
    Real s = 0;
    for (int d = 0; d < 2 * n; ++d) s += Real(coords[d]) * Real(coords[d]);
    return 2.0 * kPi * kPi * s;
}

} // namespace hodgelab
