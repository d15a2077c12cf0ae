#pragma once

#include <span>
#include <vector>

namespace lbd {

// Summed-area table with one guard row and column, so box sums never branch
// on the border.
class IntegralImage {
public:
    IntegralImage(std::span<const double> values, int side);

    // Sum over the inclusive pixel box [x0, x1] x [y0, y1].
    double box_sum(int x0, int y0, int x1, int y1) const {
        const int s = stride_;
        return sums_[(y1 + 1) * s + (x1 + 1)] - sums_[y0 * s + (x1 + 1)]
             - sums_[(y1 + 1) * s + x0] + sums_[y0 * s + x0];
    }

private:
    int stride_ = 0;
    std::vector<double> sums_;
};

} // namespace lbd
