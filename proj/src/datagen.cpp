#include "nmfgame/datagen.hpp"

#include <cmath>

namespace nmfgame {

std::array<double, 3> gaussian_kernel3() {
    double w = std::exp(-0.5);
    double z = 1.0 + 2.0 * w;
    return {w / z, 1.0 / z, w / z};
}

Mat smooth_rows(const Mat& m, const std::array<double, 3>& kernel) {
    if (m.cols() < 1) throw ShapeError("smooth_rows needs at least one column");
    for (double k : kernel)
        if (k < 0.0) throw ArgumentError("kernel weights must be non-negative");
    double sum = kernel[0] + kernel[1] + kernel[2];
    if (std::fabs(sum - 1.0) > 1e-12) throw ArgumentError("kernel weights must sum to 1");

    Mat out(m.rows(), m.cols());
    const std::size_t last = m.cols() - 1;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            double left = m(i, j == 0 ? 0 : j - 1);
            double right = m(i, j == last ? last : j + 1);
            out(i, j) = kernel[0] * left + kernel[1] * m(i, j) + kernel[2] * right;
        }
    }
    return out;
}

SyntheticDataset make_synthetic(Rng& rng, std::size_t i, std::size_t j, std::size_t k) {
    return make_synthetic(rng, i, j, k, gaussian_kernel3());
}

SyntheticDataset make_synthetic(Rng& rng, std::size_t i, std::size_t j, std::size_t k,
                                const std::array<double, 3>& kernel) {
    if (i < 1 || j < 1 || k < 1) throw ArgumentError("make_synthetic dimensions must be >= 1");
    NonNegMat w = NonNegMat::checked(rand_uniform(rng, i, k, 0.0, 1.0));
    NonNegMat h = NonNegMat::checked(smooth_rows(rand_uniform(rng, k, j, 0.0, 1.0), kernel));
    NonNegMat x = NonNegMat::checked(matmul(w, h));
    return SyntheticDataset{std::move(w), std::move(h), std::move(x), 0};
}

SyntheticDataset make_synthetic(std::uint64_t seed, std::size_t i, std::size_t j, std::size_t k) {
    Rng rng(seed);
    SyntheticDataset ds = make_synthetic(rng, i, j, k);
    ds.seed = seed;
    return ds;
}

}  // namespace nmfgame
