#include "lbd/sensing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "lbd/errors.hpp"
#include "lbd/integral_image.hpp"
#include "lbd/pattern_json.hpp"
#include "lbd/rng.hpp"

namespace lbd {

IntegralImage::IntegralImage(std::span<const double> values, int side) {
    stride_ = side + 1;
    sums_.assign(static_cast<std::size_t>(stride_) * stride_, 0.0);
    for (int y = 0; y < side; ++y) {
        double row = 0.0;
        for (int x = 0; x < side; ++x) {
            row += values[static_cast<std::size_t>(y) * side + x];
            sums_[(y + 1) * stride_ + (x + 1)] = sums_[y * stride_ + (x + 1)] + row;
        }
    }
}

const char* to_string(PatternKind kind) {
    switch (kind) {
        case PatternKind::Brief: return "brief";
        case PatternKind::Freak: return "freak";
        case PatternKind::RaFreak: return "ra-freak";
        case PatternKind::ExFreak: return "ex-freak";
        case PatternKind::Custom: return "custom";
    }
    return "custom";
}

PatternKind pattern_kind_from_string(const std::string& s) {
    if (s == "brief") return PatternKind::Brief;
    if (s == "freak") return PatternKind::Freak;
    if (s == "ra-freak") return PatternKind::RaFreak;
    if (s == "ex-freak") return PatternKind::ExFreak;
    if (s == "custom") return PatternKind::Custom;
    throw ParameterError("unknown pattern kind: " + s);
}

CellBounds cell_bounds(const MeasurementCell& cell, int side) {
    // Pixel i has its center at i + 0.5; it belongs to the support when the
    // center is within cell.r + 0.5 of the cell position (closed interval).
    CellBounds b;
    b.x0 = std::max(0, static_cast<int>(std::ceil(cell.x - cell.r - 1.0)));
    b.x1 = std::min(side - 1, static_cast<int>(std::floor(cell.x + cell.r)));
    b.y0 = std::max(0, static_cast<int>(std::ceil(cell.y - cell.r - 1.0)));
    b.y1 = std::min(side - 1, static_cast<int>(std::floor(cell.y + cell.r)));
    return b;
}

namespace {

double quantize6(double v) { return std::round(v * 1e6) / 1e6; }

bool same_cell(const MeasurementCell& a, const MeasurementCell& b) {
    return a.x == b.x && a.y == b.y && a.r == b.r;
}

void check_pattern(const Pattern& p) {
    if (p.patch_side < 1) throw ParameterError("pattern patch_side must be positive");
    if (p.pairs.empty()) throw ParameterError("pattern needs at least one measurement pair");
    for (const auto& pair : p.pairs) {
        if (cell_bounds(pair.pos, p.patch_side).empty() || cell_bounds(pair.neg, p.patch_side).empty())
            throw ParameterError("measurement cell support is empty after clipping");
        if (same_cell(pair.pos, pair.neg))
            throw ParameterError("measurement pair has identical lobes");
    }
}

double cell_mean(const IntegralImage& ii, const CellBounds& b) {
    return ii.box_sum(b.x0, b.y0, b.x1, b.y1) / b.count();
}

void splat(Field& f, const CellBounds& b, double value) {
    const double w = value / b.count();
    for (int y = b.y0; y <= b.y1; ++y) {
        double* row = f.values.data() + static_cast<std::size_t>(y) * f.side;
        for (int x = b.x0; x <= b.x1; ++x) row[x] += w;
    }
}

std::vector<double> apply_forward(const Pattern& pattern, std::span<const double> values, int side) {
    if (side != pattern.patch_side) throw ShapeError("patch side does not match pattern");
    IntegralImage ii(values, side);
    std::vector<double> out(pattern.pairs.size());
    for (std::size_t i = 0; i < pattern.pairs.size(); ++i) {
        const auto& pair = pattern.pairs[i];
        out[i] = cell_mean(ii, cell_bounds(pair.pos, side)) - cell_mean(ii, cell_bounds(pair.neg, side));
    }
    return out;
}

// 43 retinal sampling points: patch center plus 6 rings of 7, odd rings
// rotated by pi/7. Ring radii are these fractions of the patch half-side;
// cell radius max(1, round(0.4 * ring_radius)), 1 at the center.
std::vector<MeasurementCell> freak_points(int side) {
    constexpr double kRingFraction[6] = {0.12, 0.2, 0.3, 0.42, 0.58, 0.78};
    const double c = side / 2.0;
    std::vector<MeasurementCell> pts;
    pts.reserve(43);
    pts.push_back({c, c, 1.0});
    for (int k = 1; k <= 6; ++k) {
        const double ring_r = c * kRingFraction[k - 1];
        const double cell_r = std::max(1.0, std::round(0.4 * ring_r));
        const double phase = (k % 2) * std::numbers::pi / 7.0;
        for (int j = 0; j < 7; ++j) {
            const double ang = 2.0 * std::numbers::pi * j / 7.0 + phase;
            pts.push_back({c + ring_r * std::cos(ang), c + ring_r * std::sin(ang), cell_r});
        }
    }
    return pts;
}

} // namespace

void finalize_pattern(Pattern& pattern) {
    for (auto& pair : pattern.pairs) {
        for (MeasurementCell* cell : {&pair.pos, &pair.neg}) {
            cell->x = quantize6(cell->x);
            cell->y = quantize6(cell->y);
            cell->r = quantize6(cell->r);
        }
    }
    check_pattern(pattern);
    pattern.id = fnv1a64(pattern_to_json(pattern));
}

Patch patch_from_field(const Field& f) {
    Patch p(f.side);
    for (std::size_t i = 0; i < f.values.size(); ++i) {
        const double v = f.values[i];
        if (v < -1e-9 || v > 1.0 + 1e-9) throw ParameterError("patch value outside [0, 1]");
        p.values[i] = std::clamp(v, 0.0, 1.0);
    }
    return p;
}

Pattern build_brief(int patch_side, int m, std::uint64_t seed) {
    if (patch_side < 4) throw ParameterError("brief needs patch_side >= 4");
    if (m < 1) throw ParameterError("descriptor length must be >= 1");
    Pattern pat;
    pat.kind = PatternKind::Brief;
    pat.patch_side = patch_side;
    pat.seed = seed;
    pat.pairs.reserve(m);
    SplitMix64 rng(seed);
    const int span = patch_side - 2; // centers on pixels 1 .. side-2
    auto draw = [&] {
        const int ix = 1 + static_cast<int>(rng.uniform_int(span));
        const int iy = 1 + static_cast<int>(rng.uniform_int(span));
        return MeasurementCell{ix + 0.5, iy + 0.5, 1.0};
    };
    for (int i = 0; i < m; ++i) {
        MeasurementPair pair;
        pair.pos = draw();
        do {
            pair.neg = draw();
        } while (same_cell(pair.pos, pair.neg));
        pat.pairs.push_back(pair);
    }
    finalize_pattern(pat);
    return pat;
}

Pattern build_freak(int patch_side, int m, PatternKind variant, std::uint64_t seed) {
    if (variant != PatternKind::Freak && variant != PatternKind::RaFreak && variant != PatternKind::ExFreak)
        throw ParameterError("freak variant must be freak, ra-freak or ex-freak");
    if (patch_side < 8) throw ParameterError("freak needs patch_side >= 8");

    const auto pts = freak_points(patch_side);
    const int n_pts = static_cast<int>(pts.size());
    std::vector<std::pair<int, int>> all; // canonical order: (i,j), i<j, lexicographic
    all.reserve(n_pts * (n_pts - 1) / 2);
    for (int i = 0; i < n_pts; ++i)
        for (int j = i + 1; j < n_pts; ++j) all.emplace_back(i, j);
    const int total = static_cast<int>(all.size());

    if (variant == PatternKind::ExFreak) {
        m = total;
    } else if (m < 1 || m > total) {
        throw ParameterError("freak descriptor length must be in [1, " + std::to_string(total) + "]");
    }

    std::vector<int> picked;
    picked.reserve(m);
    if (variant == PatternKind::ExFreak) {
        for (int i = 0; i < total; ++i) picked.push_back(i);
    } else if (variant == PatternKind::RaFreak) {
        SplitMix64 rng(seed);
        std::vector<char> used(total, 0);
        while (static_cast<int>(picked.size()) < m) {
            const int idx = static_cast<int>(rng.uniform_int(total));
            if (!used[idx]) {
                used[idx] = 1;
                picked.push_back(idx);
            }
        }
    } else {
        // Coarse-to-fine spread: order candidates by decreasing inter-center
        // distance, take every ceil(total/m)-th, then fill from the finest
        // (shortest) end.
        std::vector<int> order(total);
        for (int i = 0; i < total; ++i) order[i] = i;
        std::vector<double> dist2(total);
        for (int i = 0; i < total; ++i) {
            const auto& a = pts[all[i].first];
            const auto& b = pts[all[i].second];
            dist2[i] = (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y);
        }
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (dist2[a] != dist2[b]) return dist2[a] > dist2[b];
            return a < b;
        });
        std::vector<char> used(total, 0);
        const int step = (total + m - 1) / m;
        for (int pos = 0; pos < total && static_cast<int>(picked.size()) < m; pos += step) {
            picked.push_back(order[pos]);
            used[pos] = 1;
        }
        for (int pos = total - 1; pos >= 0 && static_cast<int>(picked.size()) < m; --pos) {
            if (!used[pos]) picked.push_back(order[pos]);
        }
    }

    Pattern pat;
    pat.kind = variant;
    pat.patch_side = patch_side;
    pat.seed = seed;
    pat.pairs.reserve(m);
    for (int idx : picked) pat.pairs.push_back({pts[all[idx].first], pts[all[idx].second]});
    finalize_pattern(pat);
    return pat;
}

std::vector<double> forward(const Pattern& pattern, const Patch& patch) {
    return apply_forward(pattern, patch.values, patch.side);
}

std::vector<double> forward(const Pattern& pattern, const Field& field) {
    return apply_forward(pattern, field.values, field.side);
}

Field adjoint(const Pattern& pattern, std::span<const double> coeffs) {
    if (coeffs.size() != pattern.pairs.size()) throw ShapeError("coefficient count does not match pattern");
    Field out(pattern.patch_side);
    for (std::size_t i = 0; i < pattern.pairs.size(); ++i) {
        if (coeffs[i] == 0.0) continue;
        const auto& pair = pattern.pairs[i];
        splat(out, cell_bounds(pair.pos, out.side), coeffs[i]);
        splat(out, cell_bounds(pair.neg, out.side), -coeffs[i]);
    }
    return out;
}

std::vector<std::int8_t> binarize(std::span<const double> v) {
    std::vector<std::int8_t> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] > 0.0 ? 1 : -1;
    return out;
}

Descriptor describe(const Pattern& pattern, const Patch& patch, bool binary) {
    Descriptor d;
    d.pattern_id = pattern.id;
    d.binary = binary;
    auto measurements = forward(pattern, patch);
    if (binary) {
        d.signs = binarize(measurements);
    } else {
        d.values = std::move(measurements);
    }
    return d;
}

double operator_norm(const Pattern& pattern, int iterations, std::uint64_t seed) {
    if (iterations < 1) throw ParameterError("operator_norm needs iterations >= 1");
    const int side = pattern.patch_side;
    SplitMix64 rng(seed);
    Field x(side);
    for (auto& v : x.values) v = rng.uniform() - 0.5;
    double nx = 0.0;
    for (double v : x.values) nx += v * v;
    nx = std::sqrt(nx);
    if (nx == 0.0) return 0.0;
    for (auto& v : x.values) v /= nx;

    double estimate = 0.0;
    for (int k = 0; k < iterations; ++k) {
        const auto lx = forward(pattern, x);
        Field w = adjoint(pattern, lx);
        double rayleigh = 0.0, nw = 0.0;
        for (std::size_t i = 0; i < w.values.size(); ++i) {
            rayleigh += x.values[i] * w.values[i];
            nw += w.values[i] * w.values[i];
        }
        estimate = std::sqrt(std::max(0.0, rayleigh));
        nw = std::sqrt(nw);
        if (nw == 0.0) break; // x fell into the null space
        for (std::size_t i = 0; i < w.values.size(); ++i) x.values[i] = w.values[i] / nw;
    }
    return 1.01 * estimate;
}

} // namespace lbd
