#pragma once

#include <functional>
#include <vector>

#include "nmfgame/mat.hpp"

namespace nmfgame {

// k unit vectors on S^{d-1} with ownership order: player i's parents are the
// players j < i.
struct EigenState {
    std::vector<std::vector<double>> vectors;  // k vectors of dimension d
    std::vector<double> utilities;             // final per-player utility (diagnostic)
};

struct PcaResult {
    Mat components;                              // k x d, rows orthonormal
    std::vector<double> explained_variance;      // eigenvalues, non-increasing
    std::vector<double> explained_variance_ratio;
    std::vector<double> mean;                    // column means used for centering
};

// Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations with a
// deterministic sweep order. Returns (eigenvalues, eigenvectors) sorted by
// descending eigenvalue; eigenvectors are the rows of the returned matrix.
std::pair<std::vector<double>, Mat> jacobi_eigen(const Mat& sym);

// Utility of player i given parents, against an SPD matrix:
// v^T S v - sum_j <v, S v_j>^2 / <v_j, S v_j>.
double eigen_utility(const std::vector<double>& v_i,
                     const std::vector<std::vector<double>>& parents, const Mat& sigma);

// Gradient of the minibatch utility w.r.t. v_i (parents held fixed):
// 2 X^T [ X v_i - sum_j (<X v_i, X v_j> / <X v_j, X v_j>) X v_j ].
std::vector<double> eigen_gradient(const Mat& xt, const std::vector<double>& v_i,
                                   const std::vector<std::vector<double>>& parents);

// Tangent-space projection: g - <g, v> v.
std::vector<double> riemannian_project(const std::vector<double>& grad,
                                       const std::vector<double>& v);

// Called after each committed iteration with (iter, all player vectors).
using EigenObserver = std::function<void(std::size_t, const std::vector<std::vector<double>>&)>;

// Simultaneous-play EigenGame on the full batch: every player steps against
// the iteration-start snapshot, renormalizes, then broadcasts.
EigenState eigengame_fit(const Mat& x, std::size_t k, std::size_t t_max, double alpha, Rng& rng,
                         const EigenObserver& observer = nullptr);

// Exact PCA oracle: mean-center, form (1/n) X^T X, full Jacobi eigensolve,
// keep the top k.
PcaResult exact_pca(const Mat& x, std::size_t k);

// Map each row of m to its k PCA coordinates (centered by the PCA mean).
Mat project_rows(const Mat& m, const PcaResult& pca);

}  // namespace nmfgame
