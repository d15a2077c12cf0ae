#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lbd/sensing.hpp"
#include "lbd/solver_biht.hpp"
#include "lbd/solver_pd.hpp"

namespace lbd {

struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> values; // row-major, [0, 1]

    GrayImage() = default;
    GrayImage(int w, int h) : width(w), height(h), values(static_cast<std::size_t>(w) * h, 0.0) {}
    double& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
};

struct Keypoint {
    int x = 0;
    int y = 0;
};

// (top-left position, patch) pairs; positions are pixel coordinates in the
// source image.
struct PlacedPatch {
    int x = 0;
    int y = 0;
    Patch patch;
};

// Tiles the image at positions (i*offset, j*offset) wherever a full patch
// fits, row-major.
std::vector<PlacedPatch> extract_grid(const GrayImage& image, int patch_side, int offset);

// FAST segment test on the 16-pixel radius-3 circle: a corner has a
// contiguous run of at least `arc` circle pixels all brighter than
// center + threshold or all darker than center - threshold. Score is the
// largest threshold at which the test still passes; 3x3 non-maximum
// suppression keeps a pixel unless a neighbor scores higher, ties going to
// the earlier pixel in row-major order. Keypoints within `border` pixels of
// an image edge are dropped. Output is row-major ordered.
std::vector<Keypoint> detect_fast(const GrayImage& image, double threshold, int arc = 9,
                                  int border = 0);

// Patches centered on keypoints, top-left clamped so the patch stays inside
// the image.
std::vector<PlacedPatch> extract_keypoints(const GrayImage& image, int patch_side,
                                           const std::vector<Keypoint>& keypoints);

// Per-pixel running sum and cover count for overlap averaging.
struct Accumulator {
    int width = 0;
    int height = 0;
    std::vector<double> sum;
    std::vector<std::uint32_t> count;

    Accumulator(int w, int h)
        : width(w), height(h), sum(static_cast<std::size_t>(w) * h, 0.0),
          count(static_cast<std::size_t>(w) * h, 0) {}
    void add(const PlacedPatch& p);
    GrayImage average() const; // sum/count where covered, 0 elsewhere
};

// Averages the patches onto a width x height canvas in list order; pixels no
// patch covers come out 0.
GrayImage assemble(const std::vector<PlacedPatch>& patches, int width, int height);

enum class SolverKind { Pd, Biht };

struct InvertConfig {
    SolverKind solver = SolverKind::Biht;
    PdConfig pd;
    BihtConfig biht;
    int threads = 1; // 0 = hardware concurrency
};

struct InvertStats {
    int patches = 0;
    double mean_consistency = 0.0; // sign-consistency solver only, else 0
};

struct PlacedDescriptor {
    std::uint32_t x = 0; // patch top-left
    std::uint32_t y = 0;
    Descriptor descriptor;
};

// Solves every descriptor independently (optionally across threads) and
// assembles the results in record order, so output is identical for any
// worker count. Canvas defaults to the bounding box of the patches; pass
// explicit dimensions to override.
GrayImage reconstruct_from_descriptors(const std::vector<PlacedDescriptor>& records,
                                       const Pattern& pattern, const InvertConfig& config,
                                       InvertStats* stats = nullptr, int width = 0, int height = 0);

// Convenience composition: extract (grid or keypoint mode), describe, solve,
// assemble, all in-process.
GrayImage reconstruct_image(const GrayImage& image, const Pattern& pattern, bool binary,
                            const InvertConfig& config, int offset, InvertStats* stats = nullptr);

// 10*log10(1 / MSE) over mask pixels (mask nonzero = included). Identical
// images give +infinity.
double psnr(const GrayImage& a, const GrayImage& b, const std::vector<std::uint8_t>& mask);

// Mask of pixels with a nonzero value, the covered region of an assembled
// reconstruction.
std::vector<std::uint8_t> nonzero_mask(const GrayImage& image);

// Pearson correlation between the absolute discrete-Laplacian maps of the
// two images (interior pixels only). Degenerate zero-variance maps give 1
// when both are equal, else 0.
double edge_correlation(const GrayImage& a, const GrayImage& b);

} // namespace lbd
