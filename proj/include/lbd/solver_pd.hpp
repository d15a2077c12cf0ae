#pragma once

#include <functional>
#include <span>
#include <vector>

#include "lbd/proxops.hpp"
#include "lbd/sensing.hpp"

namespace lbd {

// First-order primal-dual solver for
//   min_x  lambda * |Lx - pbar|_1 + |Wx|_1  subject to x in S,
// run in the product space with K = diag(L, W). The two primal blocks are
// forced equal by the coupling prox every iteration, so state keeps one copy.
struct PdConfig {
    double lambda = 0.1;
    int iterations = 1000;
    double theta = 1.0;
    double sigma = 0.0; // 0 picks 1/gamma
    double tau = 0.0;   // 0 picks 1/gamma
    double gamma = 0.0; // 0 estimates a bound on |K| from the pattern
    // Reinterprets a binary payload's signs as real measurements. Off by
    // default: the solver is built for real descriptors and tends to be
    // unstable on signs.
    bool force_real = false;
    ValidityDomain domain;
    // Called after every iteration with the fresh state.
    std::function<void(int iteration, const struct PdState& state)> observer;
};

struct PdState {
    Field x;         // primal (both blocks, equal by construction)
    Field x_relaxed; // extrapolated point driving the dual updates
    std::vector<double> r; // dual for the data term, in B_inf(lambda)
    std::vector<double> s; // dual for the analysis term, in B_inf(1)
};

struct PdResult {
    Patch patch;
    double objective = 0.0; // final lambda * |Lx - pbar|_1 + |Wx|_1
    double gamma = 0.0;     // operator bound actually used
};

// lambda * |Lx - pbar|_1 + |Wx|_1 with pbar taken from the descriptor
// payload (signs read as +-1 when binary).
double objective_real(const Field& x, const Descriptor& descriptor, const Pattern& pattern,
                      double lambda);

PdResult reconstruct_real(const Descriptor& descriptor, const Pattern& pattern,
                          const PdConfig& config = {});

} // namespace lbd
