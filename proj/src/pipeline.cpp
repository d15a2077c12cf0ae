#include "lbd/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <mutex>
#include <thread>

#include "lbd/errors.hpp"

namespace lbd {

std::vector<PlacedPatch> extract_grid(const GrayImage& image, int patch_side, int offset) {
    if (offset < 1 || patch_side < offset || patch_side > image.width || patch_side > image.height)
        throw ParameterError("need 1 <= offset <= patch_side <= image dimensions");
    std::vector<PlacedPatch> out;
    for (int y = 0; y + patch_side <= image.height; y += offset)
        for (int x = 0; x + patch_side <= image.width; x += offset) {
            PlacedPatch pp;
            pp.x = x;
            pp.y = y;
            pp.patch = Patch(patch_side);
            for (int py = 0; py < patch_side; ++py)
                for (int px = 0; px < patch_side; ++px)
                    pp.patch.at(px, py) = image.at(x + px, y + py);
            out.push_back(std::move(pp));
        }
    return out;
}

std::vector<PlacedPatch> extract_keypoints(const GrayImage& image, int patch_side,
                                           const std::vector<Keypoint>& keypoints) {
    if (patch_side > image.width || patch_side > image.height)
        throw ParameterError("patch does not fit in image");
    std::vector<PlacedPatch> out;
    out.reserve(keypoints.size());
    for (const auto& kp : keypoints) {
        int x = std::clamp(kp.x - patch_side / 2, 0, image.width - patch_side);
        int y = std::clamp(kp.y - patch_side / 2, 0, image.height - patch_side);
        PlacedPatch pp;
        pp.x = x;
        pp.y = y;
        pp.patch = Patch(patch_side);
        for (int py = 0; py < patch_side; ++py)
            for (int px = 0; px < patch_side; ++px)
                pp.patch.at(px, py) = image.at(x + px, y + py);
        out.push_back(std::move(pp));
    }
    return out;
}

void Accumulator::add(const PlacedPatch& p) {
    if (p.x < 0 || p.y < 0 || p.x + p.patch.side > width || p.y + p.patch.side > height)
        throw ParameterError("patch outside canvas");
    for (int py = 0; py < p.patch.side; ++py)
        for (int px = 0; px < p.patch.side; ++px) {
            const std::size_t i = static_cast<std::size_t>(p.y + py) * width + (p.x + px);
            sum[i] += p.patch.at(px, py);
            count[i] += 1;
        }
}

GrayImage Accumulator::average() const {
    GrayImage out(width, height);
    for (std::size_t i = 0; i < sum.size(); ++i)
        if (count[i]) out.values[i] = sum[i] / count[i];
    return out;
}

GrayImage assemble(const std::vector<PlacedPatch>& patches, int width, int height) {
    Accumulator acc(width, height);
    for (const auto& p : patches) acc.add(p);
    return acc.average();
}

namespace {

int resolve_threads(int threads) {
    if (threads > 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

Patch solve_one(const Descriptor& d, const Pattern& pattern, const InvertConfig& config,
                double* consistency) {
    if (config.solver == SolverKind::Pd) {
        return reconstruct_real(d, pattern, config.pd).patch;
    }
    auto res = reconstruct_binary(d, pattern, config.biht);
    if (consistency) *consistency = res.consistency;
    return std::move(res.patch);
}

} // namespace

GrayImage reconstruct_from_descriptors(const std::vector<PlacedDescriptor>& records,
                                       const Pattern& pattern, const InvertConfig& config,
                                       InvertStats* stats, int width, int height) {
    const int side = pattern.patch_side;
    if (width == 0 && height == 0) {
        for (const auto& r : records) {
            width = std::max(width, static_cast<int>(r.x) + side);
            height = std::max(height, static_cast<int>(r.y) + side);
        }
    }
    if (records.empty()) {
        if (stats) *stats = {};
        return GrayImage(std::max(width, 0), std::max(height, 0));
    }

    std::vector<Patch> solved(records.size());
    std::vector<double> consistency(records.size(), 0.0);
    const int workers = std::min<int>(resolve_threads(config.threads), records.size());

    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= records.size()) return;
            try {
                solved[i] = solve_one(records[i].descriptor, pattern, config, &consistency[i]);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    // Deterministic assembly: record order, regardless of which worker
    // finished first.
    Accumulator acc(width, height);
    for (std::size_t i = 0; i < records.size(); ++i) {
        PlacedPatch pp;
        pp.x = static_cast<int>(records[i].x);
        pp.y = static_cast<int>(records[i].y);
        pp.patch = std::move(solved[i]);
        acc.add(pp);
    }
    if (stats) {
        stats->patches = static_cast<int>(records.size());
        double total = 0.0;
        if (config.solver == SolverKind::Biht) {
            for (double c : consistency) total += c;
            total /= static_cast<double>(records.size());
        }
        stats->mean_consistency = total;
    }
    return acc.average();
}

GrayImage reconstruct_image(const GrayImage& image, const Pattern& pattern, bool binary,
                            const InvertConfig& config, int offset, InvertStats* stats) {
    auto patches = extract_grid(image, pattern.patch_side, offset);
    std::vector<PlacedDescriptor> records;
    records.reserve(patches.size());
    for (const auto& pp : patches) {
        PlacedDescriptor rec;
        rec.x = static_cast<std::uint32_t>(pp.x);
        rec.y = static_cast<std::uint32_t>(pp.y);
        rec.descriptor = describe(pattern, pp.patch, binary);
        records.push_back(std::move(rec));
    }
    return reconstruct_from_descriptors(records, pattern, config, stats, image.width, image.height);
}

double psnr(const GrayImage& a, const GrayImage& b, const std::vector<std::uint8_t>& mask) {
    if (a.width != b.width || a.height != b.height || mask.size() != a.values.size())
        throw ShapeError("psnr inputs differ in shape");
    double mse = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (!mask[i]) continue;
        const double d = a.values[i] - b.values[i];
        mse += d * d;
        ++n;
    }
    if (n == 0) throw ParameterError("psnr mask is empty");
    mse /= static_cast<double>(n);
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(1.0 / mse);
}

std::vector<std::uint8_t> nonzero_mask(const GrayImage& image) {
    std::vector<std::uint8_t> mask(image.values.size(), 0);
    for (std::size_t i = 0; i < mask.size(); ++i) mask[i] = image.values[i] != 0.0;
    return mask;
}

namespace {

std::vector<double> abs_laplacian(const GrayImage& im) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(std::max(0, im.width - 2)) * std::max(0, im.height - 2));
    for (int y = 1; y + 1 < im.height; ++y)
        for (int x = 1; x + 1 < im.width; ++x)
            out.push_back(std::fabs(im.at(x - 1, y) + im.at(x + 1, y) + im.at(x, y - 1) +
                                    im.at(x, y + 1) - 4.0 * im.at(x, y)));
    return out;
}

} // namespace

double edge_correlation(const GrayImage& a, const GrayImage& b) {
    if (a.width != b.width || a.height != b.height) throw ShapeError("edge_correlation size mismatch");
    const auto la = abs_laplacian(a);
    const auto lb = abs_laplacian(b);
    if (la.empty()) throw ParameterError("image too small for an edge map");
    const double n = static_cast<double>(la.size());
    double ma = 0.0, mb = 0.0;
    for (std::size_t i = 0; i < la.size(); ++i) {
        ma += la[i];
        mb += lb[i];
    }
    ma /= n;
    mb /= n;
    double cov = 0.0, va = 0.0, vb = 0.0;
    for (std::size_t i = 0; i < la.size(); ++i) {
        cov += (la[i] - ma) * (lb[i] - mb);
        va += (la[i] - ma) * (la[i] - ma);
        vb += (lb[i] - mb) * (lb[i] - mb);
    }
    if (va == 0.0 && vb == 0.0) return la == lb ? 1.0 : 0.0;
    if (va == 0.0 || vb == 0.0) return 0.0;
    return cov / std::sqrt(va * vb);
}

} // namespace lbd
