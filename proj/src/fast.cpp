#include <algorithm>
#include <array>
#include <limits>
#include <utility>

#include "lbd/errors.hpp"
#include "lbd/pipeline.hpp"

namespace lbd {

namespace {

// Radius-3 circle, clockwise from 12 o'clock.
constexpr std::array<std::pair<int, int>, 16> kCircle = {{
    {0, -3}, {1, -3}, {2, -2}, {3, -1}, {3, 0}, {3, 1}, {2, 2}, {1, 3},
    {0, 3}, {-1, 3}, {-2, 2}, {-3, 1}, {-3, 0}, {-3, -1}, {-2, -2}, {-1, -3},
}};

// Largest threshold at which some contiguous arc of >= `arc` circle pixels
// is entirely brighter or entirely darker than the center; 0 when the test
// fails at the given threshold.
double segment_score(const GrayImage& im, int x, int y, double threshold, int arc) {
    std::array<double, 16> diff;
    for (int i = 0; i < 16; ++i)
        diff[i] = im.at(x + kCircle[i].first, y + kCircle[i].second) - im.at(x, y);

    double best = 0.0;
    for (int sign = 0; sign < 2; ++sign) {
        // Sliding minimum margin over every arc window, wrapping around.
        for (int start = 0; start < 16; ++start) {
            double margin = std::numeric_limits<double>::infinity();
            for (int k = 0; k < arc; ++k) {
                const double d = diff[(start + k) % 16];
                margin = std::min(margin, sign ? -d : d);
            }
            best = std::max(best, margin);
        }
    }
    return best > threshold ? best : 0.0;
}

} // namespace

std::vector<Keypoint> detect_fast(const GrayImage& image, double threshold, int arc, int border) {
    if (threshold <= 0.0 || threshold >= 1.0) throw ParameterError("threshold must be in (0, 1)");
    if (arc < 1 || arc > 16) throw ParameterError("arc must be in [1, 16]");
    const int margin = std::max(3, border);
    GrayImage score(image.width, image.height);
    for (int y = margin; y < image.height - margin; ++y)
        for (int x = margin; x < image.width - margin; ++x)
            score.at(x, y) = segment_score(image, x, y, threshold, arc);

    std::vector<Keypoint> out;
    for (int y = margin; y < image.height - margin; ++y)
        for (int x = margin; x < image.width - margin; ++x) {
            const double s = score.at(x, y);
            if (s <= 0.0) continue;
            bool keep = true;
            for (int dy = -1; dy <= 1 && keep; ++dy)
                for (int dx = -1; dx <= 1 && keep; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const double sn = score.at(x + dx, y + dy);
                    if (sn > s) keep = false;
                    // Equal scores: the earlier pixel in row-major order wins.
                    if (sn == s && (dy < 0 || (dy == 0 && dx < 0))) keep = false;
                }
            if (keep) out.push_back({x, y});
        }
    return out;
}

} // namespace lbd
