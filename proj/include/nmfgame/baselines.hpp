#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nmfgame/mat.hpp"

namespace nmfgame {

// One recorded snapshot of the H factor at a given iteration.
struct HSnapshot {
    std::size_t iter;
    Mat h;
};

// Per-iteration record of a fit. `loss[t]` is the Frobenius reconstruction
// error after iteration t+1 completed.
struct FitTrace {
    std::vector<double> loss;
    std::vector<double> wall_ms;
    std::vector<HSnapshot> snapshots;  // populated only when a cadence was requested
};

struct Factorization {
    NonNegMat w;  // I x K
    NonNegMat h;  // K x J
    FitTrace trace;
};

inline constexpr double kMuEps = 1e-12;          // denominator floor for MU
inline constexpr double kNalsRidgeDefault = 1e-10;
inline constexpr double kDivergenceFactor = 1e6; // loss > factor * initial -> diverged

// One Multiplicative Updates iteration: H from W^t, then W from H^{t+1}.
// Denominators are floored at eps, so strictly positive factors stay positive.
std::pair<NonNegMat, NonNegMat> mu_step(const NonNegMat& x, const NonNegMat& w,
                                        const NonNegMat& h, double eps = kMuEps);

Factorization mu_fit(const NonNegMat& x, std::size_t k, std::size_t t_max, Rng& rng,
                     double eps = kMuEps, std::size_t snapshot_every = 0);

// Alternating full-matrix projected gradient on 0.5 * ||X - WH||_F^2.
Factorization pg_fit(const NonNegMat& x, std::size_t k, std::size_t t_max, double eta, Rng& rng,
                     std::size_t snapshot_every = 0);

// Alternating non-negative least squares: ridge-regularized normal equations
// solved by Cholesky, then clamped to the non-negative orthant. Loss is not
// guaranteed monotone (the clamp breaks the exact-solve property); the trace
// records it without asserting anything.
Factorization nals_fit(const NonNegMat& x, std::size_t k, std::size_t t_max, double ridge,
                       Rng& rng, std::size_t snapshot_every = 0);

// Unclamped least-squares half-step for H: (W^T W + ridge I)^-1 W^T X.
// Throws SingularSystemError when the normal matrix is not positive definite.
Mat nals_solve_h(const NonNegMat& x, const NonNegMat& w, double ridge);

// Gradients of 0.5 * ||X - WH||_F^2: (-(X - WH) H^T, -W^T (X - WH)).
Mat pg_grad_w(const Mat& x, const Mat& w, const Mat& h);
Mat pg_grad_h(const Mat& x, const Mat& w, const Mat& h);

// Shared initialization: W then H, i.i.d. Uniform(0.01, 1.01), strictly positive.
std::pair<NonNegMat, NonNegMat> init_factors(Rng& rng, std::size_t i, std::size_t j,
                                             std::size_t k);

}  // namespace nmfgame
