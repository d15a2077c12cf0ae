#include "lbd/proxops.hpp"

#include <algorithm>
#include <cmath>

#include "lbd/errors.hpp"

namespace lbd {

std::vector<double> prox_f1_star(std::span<const double> r, double sigma, double lambda,
                                 std::span<const double> pbar) {
    if (sigma <= 0.0 || lambda <= 0.0) throw ParameterError("prox_f1_star needs sigma > 0 and lambda > 0");
    if (r.size() != pbar.size()) throw ShapeError("prox_f1_star length mismatch");
    std::vector<double> out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i)
        out[i] = std::clamp(r[i] - sigma * pbar[i], -lambda, lambda);
    return out;
}

std::vector<double> prox_f2_star(std::span<const double> s) {
    std::vector<double> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) out[i] = std::clamp(s[i], -1.0, 1.0);
    return out;
}

Field project_box(const Field& x, double h_pix) {
    if (h_pix <= 0.0) throw ParameterError("box height must be positive");
    Field out = x;
    for (auto& v : out.values) v = std::clamp(v, 0.0, h_pix);
    return out;
}

Field project_mean(const Field& x, double target_mean) {
    Field out = x;
    double mean = 0.0;
    for (double v : out.values) mean += v;
    mean /= static_cast<double>(out.values.size());
    const double shift = target_mean - mean;
    for (auto& v : out.values) v += shift;
    return out;
}

Field project_validity(const Field& x, const ValidityDomain& domain) {
    return project_box(project_mean(x, domain.target_mean), domain.h_pix);
}

Field prox_g(const Field& y, const Field& z, const ValidityDomain& domain) {
    if (y.side != z.side) throw ShapeError("prox_g operands differ in shape");
    Field avg(y.side);
    for (std::size_t i = 0; i < avg.values.size(); ++i)
        avg.values[i] = 0.5 * (y.values[i] + z.values[i]);
    return project_validity(avg, domain);
}

} // namespace lbd
