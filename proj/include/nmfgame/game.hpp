#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "nmfgame/baselines.hpp"
#include "nmfgame/mat.hpp"

namespace nmfgame {

enum class Schedule {
    Jacobi,      // all players step against the iteration-start snapshot, then commit
    GaussSeidel  // literal in-place per-(i,j) commits in row-major order
};

enum class SelfGame { None, Jmin, Jmax };

struct GameConfig {
    double eta = 0.001;
    std::size_t t_max = 2000;
    Schedule schedule = Schedule::Jacobi;
    SelfGame self_game = SelfGame::None;
    double shrink = 0.99;
    std::size_t snapshot_every = 0;  // 0 = no H snapshots
    std::size_t workers = 1;         // Jacobi compute phase only

    void validate() const;
};

// Utility of the (i,j) row/column player interaction: -0.5 (x_ij - w_i . h_j)^2.
double pair_utility(double x_ij, const std::vector<double>& w_i, const std::vector<double>& h_j);

// Descent gradients of the pair loss w.r.t. (w_i, h_j): (-r h_j, -r w_i)
// with r = x_ij - w_i . h_j.
std::pair<std::vector<double>, std::vector<double>> pair_gradients(
    double x_ij, const std::vector<double>& w_i, const std::vector<double>& h_j);

// One committed step of row-player i: accumulate pair gradients against all J
// column partners (fixed j order) from the iteration-start snapshot of H,
// then project. x_row and w_i have lengths J and K; h_snapshot is K x J.
std::vector<double> row_player_update(const double* x_row, const double* w_i, std::size_t k,
                                      const Mat& h_snapshot, double eta);

// Symmetric step for column-player j. x_col has length I; w_snapshot is I x K.
std::vector<double> col_player_update(const double* x_col, const double* h_j, std::size_t k,
                                      const Mat& w_snapshot, double eta);

// Self-games on a column of H. Jmin shrinks the minimum element (lowest index
// on ties); Jmax shrinks everything except the maximum (lowest index kept).
std::vector<double> self_game_jmin(std::vector<double> h_j, double shrink);
std::vector<double> self_game_jmax(std::vector<double> h_j, double shrink);

Factorization game_fit(const NonNegMat& x, std::size_t k, const GameConfig& config, Rng& rng);

// Pairwise cosine similarity between rows of H, averaged over row pairs.
// Diagnostic for the self-game "non-overlapping rows" effect; not asserted.
double row_overlap(const Mat& h);

}  // namespace nmfgame
