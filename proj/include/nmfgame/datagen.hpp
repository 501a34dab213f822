#pragma once

#include <array>

#include "nmfgame/mat.hpp"

namespace nmfgame {

// Ground-truth factors and their exact product. x_syn is computed by the same
// matmul path used everywhere else, so x_syn == w_syn * h_syn bit-exactly.
struct SyntheticDataset {
    NonNegMat w_syn;  // I x K mixing weights
    NonNegMat h_syn;  // K x J smoothed basis rows
    NonNegMat x_syn;  // I x J product
    std::uint64_t seed = 0;
};

// 3-tap Gaussian (sigma=1, normalized): [e^-1/2, 1, e^-1/2] / (1 + 2 e^-1/2).
std::array<double, 3> gaussian_kernel3();

// Convolve each row with a non-negative sum-1 3-tap kernel. Boundaries use
// edge replication, so row length and non-negativity are preserved.
Mat smooth_rows(const Mat& m, const std::array<double, 3>& kernel);

SyntheticDataset make_synthetic(Rng& rng, std::size_t i, std::size_t j, std::size_t k);
SyntheticDataset make_synthetic(Rng& rng, std::size_t i, std::size_t j, std::size_t k,
                                const std::array<double, 3>& kernel);

// Seed-recording convenience used by the CLI and harness.
SyntheticDataset make_synthetic(std::uint64_t seed, std::size_t i, std::size_t j, std::size_t k);

}  // namespace nmfgame
