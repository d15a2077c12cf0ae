#pragma once

#include <span>
#include <vector>

#include "lbd/field.hpp"

namespace lbd {

// Multilevel 2-D orthonormal Haar coefficients, Mallat layout: after level l
// the top-left (side >> l) x (side >> l) block holds the approximation and
// the three sibling blocks hold the detail bands of that level. Full depth,
// so values[0] alone carries the global average times side.
struct WaveletCoeffs {
    int side = 0;
    int levels = 0;
    std::vector<double> values;

    WaveletCoeffs() = default;
    explicit WaveletCoeffs(int s);
};

// Forward transform. Requires side to be a power of two, >= 2.
WaveletCoeffs analyze(const Field& field);

// Exact inverse of analyze (the transform is orthonormal, so this is also
// the adjoint).
Field synthesize(const WaveletCoeffs& coeffs);

// Keeps the k largest entries by absolute value, zeroing the rest. Ties are
// broken toward the smaller flat index.
WaveletCoeffs hard_threshold(const WaveletCoeffs& coeffs, int k);

// Same keep-k-largest rule on a bare vector, in place.
void keep_largest(std::vector<double>& v, int k);

} // namespace lbd
