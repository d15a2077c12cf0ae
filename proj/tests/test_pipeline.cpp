#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lbd/errors.hpp"
#include "lbd/pipeline.hpp"
#include "lbd/rng.hpp"
#include "oracles.hpp"

using namespace lbd;

namespace {

GrayImage random_image(int w, int h, std::uint64_t seed) {
    SplitMix64 rng(seed);
    GrayImage im(w, h);
    for (auto& v : im.values) v = rng.uniform();
    return im;
}

} // namespace

TEST_CASE("grid extraction counts and order") {
    const auto im = random_image(64, 64, 1);
    auto g = extract_grid(im, 32, 32);
    CHECK(g.size() == 4);
    CHECK(g[0].x == 0);
    CHECK(g[0].y == 0);
    CHECK(g[1].x == 32);
    CHECK(g[1].y == 0); // row-major
    CHECK(g[3].x == 32);
    CHECK(g[3].y == 32);

    CHECK(extract_grid(im, 32, 16).size() == 9);
    const auto im34 = random_image(34, 34, 2);
    CHECK(extract_grid(im34, 32, 1).size() == 9);

    // patch content is a straight copy
    for (int y = 0; y < 32; ++y)
        for (int x = 0; x < 32; ++x)
            CHECK(g[3].patch.at(x, y) == im.at(32 + x, 32 + y));

    CHECK_THROWS_AS(extract_grid(im, 32, 0), ParameterError);
    CHECK_THROWS_AS(extract_grid(im, 16, 32), ParameterError);
    CHECK_THROWS_AS(extract_grid(im, 128, 1), ParameterError);

    // formula holds across a sweep
    for (int side : {8, 16, 32})
        for (int off = 1; off <= side; off += 5) {
            const int per_axis = (64 - side) / off + 1;
            CHECK(static_cast<int>(extract_grid(im, side, off).size()) == per_axis * per_axis);
        }
}

TEST_CASE("assemble averages overlaps and leaves gaps black") {
    Patch p(4);
    for (auto& v : p.values) v = 0.2;
    Patch q(4);
    for (auto& v : q.values) v = 0.6;

    std::vector<PlacedPatch> placed;
    placed.push_back({0, 0, p});
    placed.push_back({2, 0, q}); // overlaps columns 2..3
    const auto out = assemble(placed, 8, 8);
    CHECK(out.at(0, 0) == doctest::Approx(0.2));
    CHECK(out.at(2, 1) == doctest::Approx(0.4));
    CHECK(out.at(4, 2) == doctest::Approx(0.6));
    CHECK(out.at(7, 7) == 0.0);
    CHECK(out.at(0, 5) == 0.0);

    std::vector<PlacedPatch> twice;
    twice.push_back({1, 1, p});
    twice.push_back({1, 1, p});
    const auto same = assemble(twice, 8, 8);
    CHECK(same.at(2, 2) == doctest::Approx(0.2));

    std::vector<PlacedPatch> oob;
    oob.push_back({6, 6, p});
    CHECK_THROWS_AS(assemble(oob, 8, 8), ParameterError);
}

TEST_CASE("keypoint extraction centers and clamps") {
    const auto im = random_image(64, 64, 3);
    std::vector<Keypoint> kps = {{32, 32}, {1, 1}, {63, 62}};
    const auto placed = extract_keypoints(im, 16, kps);
    REQUIRE(placed.size() == 3);
    CHECK(placed[0].x == 24);
    CHECK(placed[0].y == 24);
    CHECK(placed[1].x == 0); // clamped
    CHECK(placed[1].y == 0);
    CHECK(placed[2].x == 48);
    CHECK(placed[2].y == 48);
    for (int y = 0; y < 16; ++y)
        for (int x = 0; x < 16; ++x)
            CHECK(placed[0].patch.at(x, y) == im.at(24 + x, 24 + y));
}

TEST_CASE("fast detector basics") {
    GrayImage flat(64, 64);
    for (auto& v : flat.values) v = 0.4;
    CHECK(detect_fast(flat, 0.08).empty());

    GrayImage dot(64, 64);
    for (auto& v : dot.values) v = 0.1;
    dot.at(30, 27) = 0.9;
    const auto kps = detect_fast(dot, 0.08);
    REQUIRE(kps.size() == 1);
    CHECK(kps[0].x == 30);
    CHECK(kps[0].y == 27);

    // brute-force cross-check: every detection passes the raw segment test
    const auto im = random_image(48, 48, 4);
    const auto detections = detect_fast(im, 0.12);
    for (const auto& kp : detections) CHECK(oracle::fast_corner_brute(im, kp.x, kp.y, 0.12, 9));

    // shift invariance under a global offset
    GrayImage shifted = im;
    for (auto& v : shifted.values) v = v * 0.5 + 0.3;
    GrayImage base = im;
    for (auto& v : base.values) v = v * 0.5 + 0.1;
    const auto da = detect_fast(base, 0.05);
    const auto db = detect_fast(shifted, 0.05);
    REQUIRE(da.size() == db.size());
    for (std::size_t i = 0; i < da.size(); ++i) {
        CHECK(da[i].x == db[i].x);
        CHECK(da[i].y == db[i].y);
    }

    // border margin drops detections near the edge
    const auto margined = detect_fast(dot, 0.08, 9, 16);
    CHECK(margined.size() == 1); // (30, 27) is >= 16 pixels from every edge
    GrayImage corner_dot(64, 64);
    for (auto& v : corner_dot.values) v = 0.1;
    corner_dot.at(8, 8) = 0.9;
    CHECK(detect_fast(corner_dot, 0.08, 9, 16).empty());

    CHECK_THROWS_AS(detect_fast(flat, 0.0), ParameterError);
    CHECK_THROWS_AS(detect_fast(flat, 1.0), ParameterError);
}

TEST_CASE("reconstruction is identical for any worker count") {
    const auto pat = build_brief(16, 64, 5);
    const auto im = random_image(48, 48, 6);
    const auto patches = extract_grid(im, 16, 16);
    std::vector<PlacedDescriptor> records;
    for (const auto& pp : patches)
        records.push_back({static_cast<std::uint32_t>(pp.x), static_cast<std::uint32_t>(pp.y),
                           describe(pat, pp.patch, true)});

    InvertConfig cfg;
    cfg.solver = SolverKind::Biht;
    cfg.biht.iterations = 15;
    cfg.threads = 1;
    InvertStats s1;
    const auto a = reconstruct_from_descriptors(records, pat, cfg, &s1);
    cfg.threads = 4;
    InvertStats s4;
    const auto b = reconstruct_from_descriptors(records, pat, cfg, &s4);
    CHECK(a.values == b.values);
    CHECK(s1.patches == 9);
    CHECK(s4.patches == 9);
    CHECK(s1.mean_consistency == s4.mean_consistency);

    // second run bit-identical
    cfg.threads = 0;
    const auto c = reconstruct_from_descriptors(records, pat, cfg);
    CHECK(a.values == c.values);
}

TEST_CASE("constant image round trip stays constant where covered") {
    const auto pat = build_brief(16, 64, 7);
    GrayImage im(32, 32);
    for (auto& v : im.values) v = 0.5;
    InvertConfig cfg;
    cfg.solver = SolverKind::Biht;
    cfg.biht.iterations = 5;
    const auto out = reconstruct_image(im, pat, true, cfg, 16);
    for (double v : out.values) CHECK(std::fabs(v - 0.5) < 1e-9);

    // offset = side gives count exactly 1 everywhere
    const auto patches = extract_grid(im, 16, 16);
    Accumulator acc(32, 32);
    for (const auto& pp : patches) acc.add(pp);
    for (auto c : acc.count) CHECK(c == 1);
}

TEST_CASE("psnr pinned values") {
    GrayImage a(8, 8), b(8, 8);
    std::vector<std::uint8_t> all(64, 1);
    CHECK(std::isinf(psnr(a, a, all)));
    for (auto& v : b.values) v = 1.0;
    CHECK(psnr(a, b, all) == doctest::Approx(0.0));
    GrayImage h(8, 8);
    for (auto& v : h.values) v = 0.5;
    CHECK(psnr(a, h, all) == doctest::Approx(6.0206).epsilon(1e-4));
    CHECK_THROWS_AS(psnr(a, b, std::vector<std::uint8_t>(64, 0)), ParameterError);
    CHECK_THROWS_AS(psnr(a, random_image(4, 4, 1), std::vector<std::uint8_t>(16, 1)), ShapeError);
}

TEST_CASE("edge correlation is 1 on self and symmetric") {
    const auto im = oracle::shapes_image(48);
    CHECK(edge_correlation(im, im) == doctest::Approx(1.0));
    const auto other = random_image(48, 48, 9);
    const double ab = edge_correlation(im, other);
    const double ba = edge_correlation(other, im);
    CHECK(ab == doctest::Approx(ba));
    CHECK(std::fabs(ab) <= 1.0 + 1e-12);
}
