#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lbd/errors.hpp"
#include "lbd/rng.hpp"
#include "lbd/wavelet.hpp"
#include "oracles.hpp"

using namespace lbd;

namespace {

Field random_field(int side, SplitMix64& rng) {
    Field f(side);
    for (auto& v : f.values) v = rng.uniform() * 2.0 - 1.0;
    return f;
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

} // namespace

TEST_CASE("constant field concentrates on the approximation slot") {
    Field f(16);
    for (auto& v : f.values) v = 0.3;
    const auto c = analyze(f);
    CHECK(std::fabs(c.values[0] - 0.3 * 16.0) < 1e-12);
    for (std::size_t i = 1; i < c.values.size(); ++i) CHECK(c.values[i] == 0.0);
}

TEST_CASE("transform equals the materialized matrix on 8x8") {
    const auto W = oracle::haar_matrix(8);
    // the reference matrix is itself orthonormal
    const Eigen::MatrixXd gram = W * W.transpose();
    CHECK((gram - Eigen::MatrixXd::Identity(64, 64)).cwiseAbs().maxCoeff() < 1e-12);

    SplitMix64 rng(5);
    const auto f = random_field(8, rng);
    const auto c = analyze(f);
    Eigen::VectorXd x(64);
    for (int i = 0; i < 64; ++i) x(i) = f.values[i];
    const Eigen::VectorXd want = W * x;
    for (int i = 0; i < 64; ++i) CHECK(std::fabs(c.values[i] - want(i)) < 1e-12);

    // synthesis against the transpose
    const Eigen::VectorXd back = W.transpose() * want;
    const auto g = synthesize(c);
    for (int i = 0; i < 64; ++i) CHECK(std::fabs(g.values[i] - back(i)) < 1e-12);
}

TEST_CASE("parseval and perfect reconstruction over 1000 random fields") {
    SplitMix64 rng(77);
    double worst_energy = 0.0, worst_rt = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const auto f = random_field(32, rng);
        const auto c = analyze(f);
        const double nf = norm2(f.values), nc = norm2(c.values);
        worst_energy = std::max(worst_energy, std::fabs(nf - nc) / nf);
        const auto g = synthesize(c);
        for (std::size_t i = 0; i < g.values.size(); ++i)
            worst_rt = std::max(worst_rt, std::fabs(g.values[i] - f.values[i]));
    }
    CHECK(worst_energy < 1e-10);
    CHECK(worst_rt < 1e-10);
}

TEST_CASE("analyze then synthesize round trip in the coefficient domain") {
    SplitMix64 rng(78);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        WaveletCoeffs c(8);
        for (auto& v : c.values) v = rng.uniform() * 2.0 - 1.0;
        const auto c2 = analyze(synthesize(c));
        for (std::size_t i = 0; i < c.values.size(); ++i)
            worst = std::max(worst, std::fabs(c.values[i] - c2.values[i]));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("unit coefficient yields a unit-norm basis image") {
    WaveletCoeffs c(8);
    c.values[19] = 1.0;
    const auto img = synthesize(c);
    CHECK(std::fabs(norm2(img.values) - 1.0) < 1e-12);
    WaveletCoeffs z(8);
    const auto zero = synthesize(z);
    for (double v : zero.values) CHECK(v == 0.0);
}

TEST_CASE("hard threshold keeps the k largest with index tie-break") {
    WaveletCoeffs c(2);
    c.values = {3.0, -5.0, 1.0, 0.0};
    auto r = hard_threshold(c, 1);
    CHECK(r.values == std::vector<double>{0.0, -5.0, 0.0, 0.0});

    c.values = {2.0, -2.0, 2.0, 0.0};
    r = hard_threshold(c, 2);
    CHECK(r.values == std::vector<double>{2.0, -2.0, 0.0, 0.0});

    c.values = {0.5, 0.25, -0.125, 1.0};
    r = hard_threshold(c, 4);
    CHECK(r.values == c.values);
    r = hard_threshold(c, 0);
    CHECK(r.values == std::vector<double>{0.0, 0.0, 0.0, 0.0});
}

TEST_CASE("hard threshold is the l2-best k-sparse approximation") {
    SplitMix64 rng(404);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> v(8);
        for (auto& x : v) x = rng.uniform() * 4.0 - 2.0;
        for (int k = 0; k <= 8; ++k) {
            auto kept = v;
            keep_largest(kept, k);
            int nnz = 0;
            double err = 0.0;
            for (int i = 0; i < 8; ++i) {
                nnz += kept[i] != 0.0;
                err += (v[i] - kept[i]) * (v[i] - kept[i]);
            }
            CHECK(nnz <= k);

            // exhaustive minimum over all supports of size k
            double best = std::numeric_limits<double>::infinity();
            for (int mask = 0; mask < 256; ++mask) {
                if (__builtin_popcount(mask) != k) continue;
                double e = 0.0;
                for (int i = 0; i < 8; ++i)
                    if (!(mask & (1 << i))) e += v[i] * v[i];
                best = std::min(best, e);
            }
            CHECK(std::fabs(err - best) < 1e-12);

            // idempotent at fixed k
            auto again = kept;
            keep_largest(again, k);
            CHECK(again == kept);
        }
    }
}

TEST_CASE("invalid sizes are rejected") {
    Field f(1);
    CHECK_THROWS_AS(analyze(f), ShapeError);
    Field g(12);
    CHECK_THROWS_AS(analyze(g), ShapeError);
    std::vector<double> v(4);
    CHECK_THROWS_AS(keep_largest(v, 5), ParameterError);
    CHECK_THROWS_AS(keep_largest(v, -1), ParameterError);
}
