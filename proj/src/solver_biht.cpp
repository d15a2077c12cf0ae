#include "lbd/solver_biht.hpp"

#include <cmath>

#include "lbd/errors.hpp"
#include "lbd/wavelet.hpp"

namespace lbd {

namespace {

void check_binary(const Descriptor& d, const Pattern& p) {
    if (d.pattern_id != p.id) throw MismatchError("descriptor was not produced by this pattern");
    if (!d.binary) throw TypeError("real descriptor; use the primal-dual solver");
    if (static_cast<int>(d.signs.size()) != p.m())
        throw ShapeError("descriptor length does not match pattern");
}

} // namespace

int data_fidelity(const Field& x, const Descriptor& descriptor, const Pattern& pattern) {
    check_binary(descriptor, pattern);
    const auto signs = binarize(forward(pattern, x));
    int bad = 0;
    for (std::size_t i = 0; i < signs.size(); ++i)
        if (signs[i] != descriptor.signs[i]) ++bad;
    return bad;
}

Field subgradient_step(const Field& x, const Descriptor& descriptor, const Pattern& pattern,
                       double tau) {
    check_binary(descriptor, pattern);
    if (tau <= 0.0) throw ParameterError("tau must be positive");
    const auto signs = binarize(forward(pattern, x));
    std::vector<double> err(signs.size());
    for (std::size_t i = 0; i < signs.size(); ++i)
        err[i] = static_cast<double>(descriptor.signs[i] - signs[i]);
    Field step = adjoint(pattern, err);
    Field out = x;
    const double half_tau = 0.5 * tau;
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] += half_tau * step.values[i];
    return out;
}

BihtResult reconstruct_binary(const Descriptor& descriptor, const Pattern& pattern,
                              const BihtConfig& config) {
    check_binary(descriptor, pattern);
    const int side = pattern.patch_side;
    const int n = side * side;
    const int m = pattern.m();
    const int k = config.k > 0 ? config.k : static_cast<int>(std::lround(0.4 * n));
    if (k < 1 || k > n) throw ParameterError("sparsity budget out of range");
    if (config.iterations < 1) throw ParameterError("iterations must be >= 1");
    const double tau = 1.0 / m;

    Field x(side);
    for (int it = 0; it < config.iterations; ++it) {
        Field a = subgradient_step(x, descriptor, pattern, tau);
        WaveletCoeffs b = analyze(a);
        keep_largest(b.values, k);
        x = project_validity(synthesize(b), config.domain);
        if (config.observer) {
            int nnz = 0;
            for (double v : b.values) nnz += v != 0.0;
            config.observer(it + 1, x, data_fidelity(x, descriptor, pattern), nnz);
        }
    }

    BihtResult res;
    res.inconsistent = data_fidelity(x, descriptor, pattern);
    res.consistency = 1.0 - static_cast<double>(res.inconsistent) / m;
    res.k = k;
    res.patch = patch_from_field(x);
    return res;
}

} // namespace lbd
