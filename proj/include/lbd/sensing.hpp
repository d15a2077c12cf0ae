#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lbd/field.hpp"

namespace lbd {

// One averaging lobe of a measurement: a uniform box mean over the pixels
// whose centers fall within r + 0.5 of (x, y) along both axes. After clipping
// to the patch the weights are 1/count, so the lobe always has unit l1 mass.
struct MeasurementCell {
    double x = 0.0; // center, patch coordinates (pixel (i,j) spans [i,i+1)x[j,j+1))
    double y = 0.0;
    double r = 0.0; // half-width of the square support, pixels
};

// Signed difference of two averaging lobes: one descriptor entry reads
// mean(pos) - mean(neg).
struct MeasurementPair {
    MeasurementCell pos;
    MeasurementCell neg;
};

enum class PatternKind { Brief, Freak, RaFreak, ExFreak, Custom };

const char* to_string(PatternKind kind);
PatternKind pattern_kind_from_string(const std::string& s);

// Full measurement layout of a descriptor of length M = pairs.size().
// Coordinates are kept quantized to 6 decimals so that the JSON form
// (see pattern_json.hpp) reloads bit-exactly and `id` is stable.
struct Pattern {
    PatternKind kind = PatternKind::Custom;
    int patch_side = 0;
    std::uint64_t seed = 0;
    std::vector<MeasurementPair> pairs;
    std::uint64_t id = 0; // FNV-1a hash of the canonical JSON form

    int m() const { return static_cast<int>(pairs.size()); }
};

// Inclusive pixel index ranges of a cell support after clipping to the patch.
struct CellBounds {
    int x0 = 0, y0 = 0, x1 = -1, y1 = -1;
    bool empty() const { return x1 < x0 || y1 < y0; }
    int count() const { return (x1 - x0 + 1) * (y1 - y0 + 1); }
};

CellBounds cell_bounds(const MeasurementCell& cell, int side);

// Rounds all cell coordinates to 6 decimals, checks the pattern invariants
// (pairs non-empty, supports non-empty after clipping, pos != neg) and
// recomputes `id`. Builders and the JSON loader call this; calling it again
// is only needed after editing a Custom pattern by hand.
void finalize_pattern(Pattern& pattern);

// Grayscale patch, pixels in [0, 1].
struct Patch {
    int side = 0;
    std::vector<double> values;

    Patch() = default;
    explicit Patch(int side_, double fill = 0.0)
        : side(side_), values(static_cast<std::size_t>(side_) * static_cast<std::size_t>(side_), fill) {}

    double at(int x, int y) const { return values[static_cast<std::size_t>(y) * side + x]; }
    double& at(int x, int y) { return values[static_cast<std::size_t>(y) * side + x]; }
    Field as_field() const {
        Field f(side);
        f.values = values;
        return f;
    }
};

// Checks the [0,1] range (with 1e-9 slack for accumulated rounding) and
// clamps exactly into it.
Patch patch_from_field(const Field& f);

// Descriptor payload: real measurements or their signs, never both.
struct Descriptor {
    std::uint64_t pattern_id = 0;
    bool binary = false;
    std::vector<double> values;     // length M when !binary
    std::vector<std::int8_t> signs; // entries +-1, length M when binary

    int size() const { return static_cast<int>(binary ? signs.size() : values.size()); }
};

// Uniformly placed 3x3 box pairs. Centers sit on pixel centers with a one
// pixel margin so no support is clipped.
Pattern build_brief(int patch_side, int m, std::uint64_t seed);

// Retinal layout: 1 center point + 6 rings of 7 points, averaging radius
// growing with eccentricity. `variant` selects how the m pairs are picked
// from the 43*42/2 = 903 candidates:
//   Freak   - deterministic coarse-to-fine spread over inter-center distances,
//   RaFreak - m distinct pairs drawn uniformly (seeded),
//   ExFreak - all 903 pairs in canonical order (m is ignored).
Pattern build_freak(int patch_side, int m, PatternKind variant, std::uint64_t seed);

// L p: entry i = mean over pairs[i].pos - mean over pairs[i].neg, computed
// with an integral image.
std::vector<double> forward(const Pattern& pattern, const Patch& patch);
std::vector<double> forward(const Pattern& pattern, const Field& field);

// L^T c: the weighted sum of the rasterized measurement rows. Not clipped.
Field adjoint(const Pattern& pattern, std::span<const double> coeffs);

// Entrywise sign, zero maps to -1.
std::vector<std::int8_t> binarize(std::span<const double> v);

Descriptor describe(const Pattern& pattern, const Patch& patch, bool binary);

// Power-method estimate of ||L|| (largest singular value), times a 1.01
// safety factor so that estimate^2 + 1 stays an upper bound for the solver's
// block operator norm squared.
double operator_norm(const Pattern& pattern, int iterations, std::uint64_t seed);

} // namespace lbd
