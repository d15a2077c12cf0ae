#include "lbd/solver_pd.hpp"

#include <cmath>

#include "lbd/errors.hpp"
#include "lbd/wavelet.hpp"

namespace lbd {

namespace {

std::vector<double> measurement_vector(const Descriptor& d) {
    if (!d.binary) return d.values;
    std::vector<double> out(d.signs.size());
    for (std::size_t i = 0; i < d.signs.size(); ++i) out[i] = d.signs[i];
    return out;
}

} // namespace

double objective_real(const Field& x, const Descriptor& descriptor, const Pattern& pattern,
                      double lambda) {
    const auto pbar = measurement_vector(descriptor);
    const auto lx = forward(pattern, x);
    double data = 0.0;
    for (std::size_t i = 0; i < lx.size(); ++i) data += std::fabs(lx[i] - pbar[i]);
    const auto w = analyze(x);
    double reg = 0.0;
    for (double v : w.values) reg += std::fabs(v);
    return lambda * data + reg;
}

PdResult reconstruct_real(const Descriptor& descriptor, const Pattern& pattern,
                          const PdConfig& config) {
    if (descriptor.pattern_id != pattern.id)
        throw MismatchError("descriptor was not produced by this pattern");
    if (descriptor.binary && !config.force_real)
        throw TypeError("binary descriptor; use the sign-consistency solver or force_real");
    if (config.lambda <= 0.0) throw ParameterError("lambda must be positive");
    if (config.iterations < 1) throw ParameterError("iterations must be >= 1");
    if (config.theta < 0.0 || config.theta > 1.0) throw ParameterError("theta must lie in [0, 1]");

    const int side = pattern.patch_side;
    const int n = side * side;
    const int m = pattern.m();
    const auto pbar = measurement_vector(descriptor);
    if (static_cast<int>(pbar.size()) != m) throw ShapeError("descriptor length does not match pattern");

    double gamma = config.gamma;
    if (gamma == 0.0) {
        const double ln = operator_norm(pattern, 64, 0x5eedu);
        gamma = std::sqrt(ln * ln + 1.0); // |K|^2 <= |L|^2 + |W|^2 and |W| = 1
    }
    const double sigma = config.sigma > 0.0 ? config.sigma : 1.0 / gamma;
    const double tau = config.tau > 0.0 ? config.tau : 1.0 / gamma;
    if (gamma * gamma * sigma * tau > 1.0 + 1e-12)
        throw ParameterError("step sizes violate gamma^2 * sigma * tau <= 1");

    PdState st;
    st.x = Field(side);
    st.x_relaxed = Field(side);
    st.r.assign(m, 0.0);
    st.s.assign(n, 0.0);

    WaveletCoeffs sc(side);
    for (int it = 0; it < config.iterations; ++it) {
        const auto lxt = forward(pattern, st.x_relaxed);
        for (int i = 0; i < m; ++i) st.r[i] += sigma * lxt[i];
        st.r = prox_f1_star(st.r, sigma, config.lambda, pbar);

        const auto wxt = analyze(st.x_relaxed);
        for (int i = 0; i < n; ++i) st.s[i] += sigma * wxt.values[i];
        st.s = prox_f2_star(st.s);

        Field ay = adjoint(pattern, st.r);
        sc.values = st.s;
        Field az = synthesize(sc);
        for (int i = 0; i < n; ++i) {
            ay.values[i] = st.x.values[i] - tau * ay.values[i];
            az.values[i] = st.x.values[i] - tau * az.values[i];
        }
        Field next = prox_g(ay, az, config.domain);

        for (int i = 0; i < n; ++i)
            st.x_relaxed.values[i] = next.values[i] + config.theta * (next.values[i] - st.x.values[i]);
        st.x = std::move(next);

        if (config.observer) config.observer(it + 1, st);
    }

    PdResult res;
    res.objective = objective_real(st.x, descriptor, pattern, config.lambda);
    res.gamma = gamma;
    res.patch = patch_from_field(st.x);
    return res;
}

} // namespace lbd
