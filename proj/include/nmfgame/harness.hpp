#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "nmfgame/baselines.hpp"
#include "nmfgame/game.hpp"

namespace nmfgame {

// Algorithm names accepted by the benchmark and CLI.
// mu | pg | nals | game | game-jmin | game-jmax
const std::vector<std::string>& known_algorithms();
bool is_known_algorithm(const std::string& name);

struct BenchRun {
    std::size_t dataset;
    std::string algo;
    std::size_t seed_index;
    double final_error;  // relative: ||X - WH||_F / ||X||_F
    double wall_ms;
};

struct BenchSummary {
    std::size_t dataset;
    std::string algo;
    double mean;
    double sd;  // over exactly seeds_per_dataset runs; 0 for a single run
};

struct BenchConfig {
    std::size_t datasets = 10;
    std::size_t seeds_per_dataset = 4;
    std::vector<std::string> algos = {"mu", "game", "game-jmin", "game-jmax"};
    std::size_t i = 100, j = 20, k = 3;
    std::size_t iters = 2000;
    double eta = 0.001;
    std::uint64_t master_seed = 1;
};

struct BenchReport {
    std::vector<BenchRun> runs;          // sorted by (dataset, algo, seed)
    std::vector<BenchSummary> summary;
    BenchConfig config;
};

// Runs one solver by name on x with the given init seed. eta applies to the
// gradient-based algorithms; snapshot_every enables H-row trajectory capture.
Factorization run_algorithm(const std::string& algo, const NonNegMat& x, std::size_t k,
                            std::size_t iters, double eta, std::uint64_t init_seed,
                            std::size_t snapshot_every = 0);

// The 10-dataset x 4-init protocol. Dataset d uses seed mix(master, d); run
// (d, algo a, init r) uses seed mix(master, d, a, r), so the whole study is
// reproducible from one integer.
BenchReport run_benchmark(const BenchConfig& config);

void write_bench_csv(const std::string& path, const BenchReport& report);
void write_bench_summary_csv(const std::string& path, const BenchReport& report);

struct TrajectoryPoint {
    std::string algo;
    std::size_t iter;
    std::size_t row_index;  // which row of H
    std::vector<double> coords;
};

struct TrajectoryResult {
    std::vector<TrajectoryPoint> raw;        // coords = the K H-row values... dimension J
    std::vector<TrajectoryPoint> projected;  // coords = (pc1, pc2, pc3)
    std::vector<double> explained_variance_ratio;
    // Mean per-step squared displacement variance per algo (smoothness diagnostic).
    std::map<std::string, double> step_variance;
};

struct TrajConfig {
    std::size_t i = 100, j = 20, k = 3;
    std::size_t iters = 2000;
    std::size_t snapshot_every = 50;
    double eta = 0.001;
    std::vector<std::string> algos = {"mu", "game", "game-jmin", "game-jmax"};
    std::uint64_t master_seed = 1;
};

// Runs every algorithm from the same initialization on the same dataset,
// snapshots H rows, stacks all snapshots, fits exact_pca(k=3) and projects.
TrajectoryResult run_trajectories(const TrajConfig& config);

void write_traj_csv(const std::string& path, const std::vector<TrajectoryPoint>& points,
                    const std::string& coord_prefix);

struct CostTerm {
    std::string name;
    double flops;
};

struct CostEstimate {
    std::string algorithm;
    std::vector<CostTerm> terms;
    double total = 0.0;
};

// Per-iteration FLOP terms: MU {IJK, IK^2, JK^2, KJ, KI} and the game's
// IJ pair interactions at K^2 + K each.
std::vector<CostEstimate> cost_model(std::size_t i, std::size_t j, std::size_t k);

}  // namespace nmfgame
