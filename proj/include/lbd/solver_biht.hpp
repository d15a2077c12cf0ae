#pragma once

#include <functional>

#include "lbd/proxops.hpp"
#include "lbd/sensing.hpp"

namespace lbd {

// Binary iterative hard thresholding for 1-bit descriptors: a subgradient
// step on the sign-consistency penalty, a K-sparse projection in the wavelet
// domain, then the validity projection. Step size is 1/M, not configurable.
struct BihtConfig {
    int k = 0;            // retained wavelet coefficients; 0 picks round(0.4 * N)
    int iterations = 200;
    ValidityDomain domain;
    // Called after every iteration with the fresh iterate, its count of
    // sign-inconsistent measurements, and the nonzero count of the sparse
    // wavelet vector before the validity projection.
    std::function<void(int iteration, const Field& x, int inconsistent, int b_nnz)> observer;
};

struct BihtResult {
    Patch patch;
    int inconsistent = 0;      // measurements whose sign the output misses
    double consistency = 0.0;  // 1 - inconsistent / M
    int k = 0;                 // sparsity budget actually used
};

// Number of measurements whose sign under the pattern disagrees with the
// descriptor.
int data_fidelity(const Field& x, const Descriptor& descriptor, const Pattern& pattern);

// x + (tau / 2) * L^T (pbar - B(Lx)).
Field subgradient_step(const Field& x, const Descriptor& descriptor, const Pattern& pattern,
                       double tau);

BihtResult reconstruct_binary(const Descriptor& descriptor, const Pattern& pattern,
                              const BihtConfig& config = {});

} // namespace lbd
