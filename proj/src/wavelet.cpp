#include "lbd/wavelet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lbd/errors.hpp"

namespace lbd {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

int levels_for(int side) {
    if (side < 2 || (side & (side - 1)) != 0)
        throw ShapeError("wavelet side must be a power of two, >= 2");
    int l = 0;
    while ((side >> l) > 1) ++l;
    return l;
}

// One orthonormal Haar split of the first n entries of a strided sequence:
// averages land in [0, n/2), differences in [n/2, n).
void split(double* data, int n, int stride, double* scratch) {
    const int half = n / 2;
    for (int k = 0; k < half; ++k) {
        const double a = data[2 * k * stride];
        const double b = data[(2 * k + 1) * stride];
        scratch[k] = (a + b) * kInvSqrt2;
        scratch[half + k] = (a - b) * kInvSqrt2;
    }
    for (int k = 0; k < n; ++k) data[k * stride] = scratch[k];
}

void merge(double* data, int n, int stride, double* scratch) {
    const int half = n / 2;
    for (int k = 0; k < half; ++k) {
        const double s = data[k * stride];
        const double d = data[(half + k) * stride];
        scratch[2 * k] = (s + d) * kInvSqrt2;
        scratch[2 * k + 1] = (s - d) * kInvSqrt2;
    }
    for (int k = 0; k < n; ++k) data[k * stride] = scratch[k];
}

} // namespace

WaveletCoeffs::WaveletCoeffs(int s)
    : side(s), levels(levels_for(s)), values(static_cast<std::size_t>(s) * s, 0.0) {}

WaveletCoeffs analyze(const Field& field) {
    WaveletCoeffs c(field.side);
    c.values = field.values;
    std::vector<double> scratch(c.side);
    for (int n = c.side; n >= 2; n /= 2) {
        for (int y = 0; y < n; ++y)
            split(c.values.data() + static_cast<std::size_t>(y) * c.side, n, 1, scratch.data());
        for (int x = 0; x < n; ++x)
            split(c.values.data() + x, n, c.side, scratch.data());
    }
    return c;
}

Field synthesize(const WaveletCoeffs& coeffs) {
    levels_for(coeffs.side);
    if (coeffs.values.size() != static_cast<std::size_t>(coeffs.side) * coeffs.side)
        throw ShapeError("wavelet coefficient buffer has wrong size");
    Field f(coeffs.side);
    f.values = coeffs.values;
    std::vector<double> scratch(coeffs.side);
    for (int n = 2; n <= coeffs.side; n *= 2) {
        for (int x = 0; x < n; ++x)
            merge(f.values.data() + x, n, coeffs.side, scratch.data());
        for (int y = 0; y < n; ++y)
            merge(f.values.data() + static_cast<std::size_t>(y) * coeffs.side, n, 1, scratch.data());
    }
    return f;
}

void keep_largest(std::vector<double>& v, int k) {
    const int n = static_cast<int>(v.size());
    if (k < 0 || k > n) throw ParameterError("sparsity budget out of range");
    if (k == n) return;
    if (k == 0) {
        std::fill(v.begin(), v.end(), 0.0);
        return;
    }
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::nth_element(idx.begin(), idx.begin() + (k - 1), idx.end(), [&](int a, int b) {
        const double ma = std::fabs(v[a]), mb = std::fabs(v[b]);
        if (ma != mb) return ma > mb;
        return a < b;
    });
    std::vector<char> keep(n, 0);
    for (int i = 0; i < k; ++i) keep[idx[i]] = 1;
    for (int i = 0; i < n; ++i)
        if (!keep[i]) v[i] = 0.0;
}

WaveletCoeffs hard_threshold(const WaveletCoeffs& coeffs, int k) {
    WaveletCoeffs out = coeffs;
    keep_largest(out.values, k);
    return out;
}

} // namespace lbd
