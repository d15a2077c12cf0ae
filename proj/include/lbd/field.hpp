#pragma once

#include <cstddef>
#include <vector>

namespace lbd {

// Square real-valued grid, row-major. Used for solver intermediates, whose
// values are not constrained to the pixel range.
struct Field {
    int side = 0;
    std::vector<double> values;

    Field() = default;
    explicit Field(int side_, double fill = 0.0)
        : side(side_), values(static_cast<std::size_t>(side_) * static_cast<std::size_t>(side_), fill) {}

    double& at(int x, int y) { return values[static_cast<std::size_t>(y) * side + x]; }
    double at(int x, int y) const { return values[static_cast<std::size_t>(y) * side + x]; }
    std::size_t size() const { return values.size(); }
};

} // namespace lbd
