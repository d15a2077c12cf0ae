#pragma once

#include <span>
#include <utility>
#include <vector>

#include "lbd/field.hpp"

namespace lbd {

// Constraint set the solvers project onto: pixel values in [0, h_pix] and
// mean equal to target_mean.
struct ValidityDomain {
    double h_pix = 1.0;
    double target_mean = 0.5;
};

// Entry-wise: clamp(r_i - sigma * pbar_i, -lambda, lambda). Resolvent of the
// conjugate of the shifted weighted l1 data term.
std::vector<double> prox_f1_star(std::span<const double> r, double sigma, double lambda,
                                 std::span<const double> pbar);

// Entry-wise clamp to [-1, 1]; step size drops out.
std::vector<double> prox_f2_star(std::span<const double> s);

Field project_box(const Field& x, double h_pix);
Field project_mean(const Field& x, double target_mean);

// Mean shift first, then clamp. The composition is the approximation both
// solvers use; after clamping the mean can drift off target.
Field project_validity(const Field& x, const ValidityDomain& domain);

// Joint prox of the coupling term: both outputs equal
// project_validity((y + z) / 2). Returned as one field since the components
// coincide.
Field prox_g(const Field& y, const Field& z, const ValidityDomain& domain);

} // namespace lbd
