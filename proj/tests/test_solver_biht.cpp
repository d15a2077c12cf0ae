#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lbd/errors.hpp"
#include "lbd/rng.hpp"
#include "lbd/solver_biht.hpp"
#include "lbd/wavelet.hpp"
#include "oracles.hpp"

using namespace lbd;

namespace {

Patch random_patch(int side, std::uint64_t seed) {
    SplitMix64 rng(seed);
    Patch p(side);
    for (auto& v : p.values) v = rng.uniform();
    return p;
}

} // namespace

TEST_CASE("data fidelity equals the Hamming distance") {
    const auto pat = build_brief(8, 32, 1);
    SplitMix64 rng(2);
    for (int t = 0; t < 100; ++t) {
        const auto patch = random_patch(8, rng.next());
        auto d = describe(pat, patch, true);
        // flip a few remembered bits
        int flips = 0;
        for (std::size_t i = 0; i < d.signs.size(); ++i)
            if (rng.uniform() < 0.25) {
                d.signs[i] = static_cast<std::int8_t>(-d.signs[i]);
                ++flips;
            }
        const auto x = patch.as_field();
        const auto lx = forward(pat, x);
        const auto blx = binarize(lx);
        int hamming = 0;
        for (std::size_t i = 0; i < blx.size(); ++i) hamming += blx[i] != d.signs[i];
        CHECK(hamming == flips);
        CHECK(data_fidelity(x, d, pat) == hamming);
    }
}

TEST_CASE("consistent field is a fixed point of the subgradient step") {
    const auto pat = build_brief(8, 32, 3);
    const auto patch = random_patch(8, 4);
    const auto d = describe(pat, patch, true);
    const auto x = patch.as_field();
    const auto a = subgradient_step(x, d, pat, 1.0 / 32);
    for (std::size_t i = 0; i < x.values.size(); ++i) CHECK(a.values[i] == x.values[i]);
}

TEST_CASE("subgradient step matches the dense-matrix computation") {
    const auto pat = build_freak(8, 16, PatternKind::RaFreak, 5);
    const auto L = oracle::dense_sensing(pat);
    SplitMix64 rng(6);
    for (int t = 0; t < 20; ++t) {
        const auto truth = random_patch(8, rng.next());
        const auto d = describe(pat, truth, true);
        Field x(8);
        for (auto& v : x.values) v = rng.uniform();

        const double tau = 1.0 / 16;
        const auto got = subgradient_step(x, d, pat, tau);

        Eigen::VectorXd xv(64);
        for (int i = 0; i < 64; ++i) xv(i) = x.values[i];
        Eigen::VectorXd lx = L * xv;
        if (lx.cwiseAbs().minCoeff() < 1e-12) continue; // sign would be rounding luck
        Eigen::VectorXd err(16);
        for (int i = 0; i < 16; ++i) {
            const double sign = lx(i) > 0.0 ? 1.0 : -1.0;
            err(i) = d.signs[i] - sign;
        }
        const Eigen::VectorXd want = xv + (tau / 2.0) * (L.transpose() * err);
        for (int i = 0; i < 64; ++i) CHECK(std::fabs(got.values[i] - want(i)) < 1e-12);
    }
}

TEST_CASE("single flipped measurement back-projects one rasterized row") {
    const auto pat = build_brief(8, 16, 8);
    const auto patch = random_patch(8, 9);
    auto d = describe(pat, patch, true);
    d.signs[5] = static_cast<std::int8_t>(-d.signs[5]);
    const auto x = patch.as_field();
    const double tau = 0.25;
    const auto a = subgradient_step(x, d, pat, tau);
    // difference must equal tau * sign * L_5 as a dense row
    const auto L = oracle::dense_sensing(pat);
    for (int i = 0; i < 64; ++i) {
        const double want = tau * d.signs[5] * L(5, i);
        CHECK(std::fabs((a.values[i] - x.values[i]) - want) < 1e-12);
    }
}

TEST_CASE("all-minus descriptor of a constant patch reconstructs exact 0.5") {
    const auto pat = build_freak(32, 512, PatternKind::Freak, 0);
    Patch flat(32);
    for (auto& v : flat.values) v = 0.5;
    const auto d = describe(pat, flat, true);
    for (auto s : d.signs) CHECK(s == -1);

    BihtConfig cfg;
    cfg.iterations = 10;
    const auto res = reconstruct_binary(d, pat, cfg);
    CHECK(res.inconsistent == 0);
    CHECK(res.consistency == doctest::Approx(1.0));
    for (double v : res.patch.values) CHECK(std::fabs(v - 0.5) < 1e-9);

    // and it is a fixed point: running longer changes nothing
    cfg.iterations = 25;
    const auto longer = reconstruct_binary(d, pat, cfg);
    CHECK(longer.patch.values == res.patch.values);
}

TEST_CASE("iterates stay in the box and pre-projection vectors stay sparse") {
    const auto pat = build_brief(16, 128, 10);
    const auto d = describe(pat, random_patch(16, 11), true);
    BihtConfig cfg;
    cfg.k = 40;
    cfg.iterations = 30;
    cfg.observer = [&](int, const Field& x, int inconsistent, int b_nnz) {
        CHECK(b_nnz <= 40);
        CHECK(inconsistent >= 0);
        for (double v : x.values) {
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    };
    reconstruct_binary(d, pat, cfg);
}

TEST_CASE("step magnitude stays within the rasterized row scale") {
    const auto pat = build_brief(16, 128, 12);
    const auto d = describe(pat, random_patch(16, 13), true);
    Field x(16); // all zeros, maximally inconsistent state
    const double tau = 1.0 / 128;
    const auto a = subgradient_step(x, d, pat, tau);
    double max_step = 0.0;
    for (std::size_t i = 0; i < x.values.size(); ++i)
        max_step = std::max(max_step, std::fabs(a.values[i] - x.values[i]));
    // each row has sup-norm 1/9 (3x3 cells); M rows at weight tau = 1/M
    CHECK(max_step <= 1.0 / 9.0 + 1e-12);
}

TEST_CASE("consistency improves on most random patches") {
    const auto pat = build_brief(16, 128, 14);
    SplitMix64 rng(15);
    int improved = 0;
    const int total = 20;
    for (int t = 0; t < total; ++t) {
        const auto d = describe(pat, random_patch(16, rng.next()), true);
        Field zero(16);
        const int before = data_fidelity(project_validity(zero, {}), d, pat);
        BihtConfig cfg;
        cfg.iterations = 50;
        const auto res = reconstruct_binary(d, pat, cfg);
        if (res.inconsistent <= before) ++improved;
    }
    CHECK(improved >= (total * 9) / 10);
}

TEST_CASE("determinism and guards") {
    const auto pat = build_brief(16, 64, 16);
    const auto other = build_brief(16, 64, 17);
    const auto patch = random_patch(16, 18);
    const auto bin_d = describe(pat, patch, true);
    const auto real_d = describe(pat, patch, false);

    BihtConfig cfg;
    cfg.iterations = 20;
    const auto a = reconstruct_binary(bin_d, pat, cfg);
    const auto b = reconstruct_binary(bin_d, pat, cfg);
    CHECK(a.patch.values == b.patch.values);
    CHECK(a.inconsistent == b.inconsistent);

    CHECK_THROWS_AS(reconstruct_binary(real_d, pat, cfg), TypeError);
    CHECK_THROWS_AS(reconstruct_binary(bin_d, other, cfg), MismatchError);
    BihtConfig bad;
    bad.k = 5000;
    CHECK_THROWS_AS(reconstruct_binary(bin_d, pat, bad), ParameterError);
    CHECK_THROWS_AS(data_fidelity(Field(16), real_d, pat), TypeError);
}
