#include "nmfgame/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>

#include "nmfgame/datagen.hpp"
#include "nmfgame/eigengame.hpp"

namespace nmfgame {
namespace {

GameConfig game_config_for(const std::string& algo, std::size_t iters, double eta,
                           std::size_t snapshot_every) {
    GameConfig cfg;
    cfg.eta = eta;
    cfg.t_max = iters;
    cfg.snapshot_every = snapshot_every;
    if (algo == "game-jmin") cfg.self_game = SelfGame::Jmin;
    if (algo == "game-jmax") cfg.self_game = SelfGame::Jmax;
    return cfg;
}

std::size_t algo_index(const std::string& algo) {
    const auto& names = known_algorithms();
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == algo) return i;
    std::string valid;
    for (const auto& n : names) valid += (valid.empty() ? "" : ", ") + n;
    throw ArgumentError("unknown algorithm '" + algo + "' (valid: " + valid + ")");
}

}  // namespace

const std::vector<std::string>& known_algorithms() {
    static const std::vector<std::string> names = {"mu",   "pg",        "nals",
                                                   "game", "game-jmin", "game-jmax"};
    return names;
}

bool is_known_algorithm(const std::string& name) {
    for (const auto& n : known_algorithms())
        if (n == name) return true;
    return false;
}

Factorization run_algorithm(const std::string& algo, const NonNegMat& x, std::size_t k,
                            std::size_t iters, double eta, std::uint64_t init_seed,
                            std::size_t snapshot_every) {
    algo_index(algo);  // validates the name
    Rng rng(init_seed);
    if (algo == "mu") return mu_fit(x, k, iters, rng, kMuEps, snapshot_every);
    if (algo == "pg") return pg_fit(x, k, iters, eta, rng, snapshot_every);
    if (algo == "nals") return nals_fit(x, k, iters, kNalsRidgeDefault, rng, snapshot_every);
    return game_fit(x, k, game_config_for(algo, iters, eta, snapshot_every), rng);
}

BenchReport run_benchmark(const BenchConfig& config) {
    if (config.datasets < 1 || config.seeds_per_dataset < 1 || config.iters < 1)
        throw ArgumentError("benchmark counts must be >= 1");
    for (const auto& a : config.algos) algo_index(a);

    BenchReport report;
    report.config = config;
    for (std::size_t d = 0; d < config.datasets; ++d) {
        SyntheticDataset ds =
            make_synthetic(mix_seed(config.master_seed, d), config.i, config.j, config.k);
        double x_norm = frobenius_norm(ds.x_syn);
        for (const auto& algo : config.algos) {
            std::size_t a = algo_index(algo);
            for (std::size_t r = 0; r < config.seeds_per_dataset; ++r) {
                auto t0 = std::chrono::steady_clock::now();
                Factorization fit =
                    run_algorithm(algo, ds.x_syn, config.k, config.iters, config.eta,
                                  mix_seed(config.master_seed, d, a, r));
                double ms = std::chrono::duration<double, std::milli>(
                                std::chrono::steady_clock::now() - t0)
                                .count();
                double err = reconstruction_error(ds.x_syn, fit.w, fit.h) / x_norm;
                report.runs.push_back({d, algo, r, err, ms});
            }
            // Aggregate over exactly seeds_per_dataset runs.
            double mean = 0.0;
            std::size_t base = report.runs.size() - config.seeds_per_dataset;
            for (std::size_t r = 0; r < config.seeds_per_dataset; ++r)
                mean += report.runs[base + r].final_error;
            mean /= static_cast<double>(config.seeds_per_dataset);
            double var = 0.0;
            for (std::size_t r = 0; r < config.seeds_per_dataset; ++r) {
                double dlt = report.runs[base + r].final_error - mean;
                var += dlt * dlt;
            }
            var /= static_cast<double>(config.seeds_per_dataset);
            report.summary.push_back({d, algo, mean, std::sqrt(var)});
        }
    }
    return report;
}

void write_bench_csv(const std::string& path, const BenchReport& report) {
    std::ofstream f(path);
    if (!f) throw ArgumentError("cannot open for write: " + path);
    f << std::setprecision(17);
    f << "dataset,algo,seed,final_error,wall_ms\n";
    for (const auto& r : report.runs)
        f << r.dataset << ',' << r.algo << ',' << r.seed_index << ',' << r.final_error << ','
          << r.wall_ms << '\n';
}

void write_bench_summary_csv(const std::string& path, const BenchReport& report) {
    std::ofstream f(path);
    if (!f) throw ArgumentError("cannot open for write: " + path);
    f << std::setprecision(17);
    f << "dataset,algo,mean,sd\n";
    for (const auto& s : report.summary)
        f << s.dataset << ',' << s.algo << ',' << s.mean << ',' << s.sd << '\n';
}

TrajectoryResult run_trajectories(const TrajConfig& config) {
    if (config.snapshot_every < 1) throw ArgumentError("snapshot_every must be >= 1");
    for (const auto& a : config.algos) algo_index(a);

    SyntheticDataset ds =
        make_synthetic(mix_seed(config.master_seed, 0), config.i, config.j, config.k);
    std::uint64_t init_seed = mix_seed(config.master_seed, 0xf17);  // shared across algos

    TrajectoryResult result;
    for (const auto& algo : config.algos) {
        Factorization fit = run_algorithm(algo, ds.x_syn, config.k, config.iters, config.eta,
                                          init_seed, config.snapshot_every);
        for (const auto& snap : fit.trace.snapshots) {
            for (std::size_t r = 0; r < snap.h.rows(); ++r) {
                std::vector<double> row(snap.h.row(r), snap.h.row(r) + snap.h.cols());
                result.raw.push_back({algo, snap.iter, r, row});
            }
        }
    }

    // Stack every snapshot row from every algorithm and PCA the lot.
    Mat stacked(result.raw.size(), config.j);
    for (std::size_t i = 0; i < result.raw.size(); ++i)
        for (std::size_t c = 0; c < config.j; ++c) stacked(i, c) = result.raw[i].coords[c];
    PcaResult pca = exact_pca(stacked, 3);
    Mat proj = project_rows(stacked, pca);

    result.explained_variance_ratio = pca.explained_variance_ratio;
    result.projected.reserve(result.raw.size());
    for (std::size_t i = 0; i < result.raw.size(); ++i) {
        result.projected.push_back({result.raw[i].algo, result.raw[i].iter,
                                    result.raw[i].row_index,
                                    {proj(i, 0), proj(i, 1), proj(i, 2)}});
    }

    // Smoothness diagnostic: variance of squared step displacements in the
    // projected space, averaged over each algorithm's K trajectories.
    for (const auto& algo : config.algos) {
        double total_var = 0.0;
        std::size_t trajectories = 0;
        for (std::size_t r = 0; r < config.k; ++r) {
            std::vector<double> steps;
            const TrajectoryPoint* prev = nullptr;
            for (const auto& p : result.projected) {
                if (p.algo != algo || p.row_index != r) continue;
                if (prev) {
                    double d2 = 0.0;
                    for (std::size_t c = 0; c < 3; ++c) {
                        double d = p.coords[c] - prev->coords[c];
                        d2 += d * d;
                    }
                    steps.push_back(d2);
                }
                prev = &p;
            }
            if (steps.size() < 2) continue;
            double mean = 0.0;
            for (double s : steps) mean += s;
            mean /= static_cast<double>(steps.size());
            double var = 0.0;
            for (double s : steps) var += (s - mean) * (s - mean);
            total_var += var / static_cast<double>(steps.size());
            ++trajectories;
        }
        result.step_variance[algo] = trajectories ? total_var / trajectories : 0.0;
    }
    return result;
}

void write_traj_csv(const std::string& path, const std::vector<TrajectoryPoint>& points,
                    const std::string& coord_prefix) {
    std::ofstream f(path);
    if (!f) throw ArgumentError("cannot open for write: " + path);
    f << std::setprecision(17);
    f << "algo,iter,row_index";
    std::size_t width = points.empty() ? 0 : points.front().coords.size();
    for (std::size_t c = 0; c < width; ++c) f << ',' << coord_prefix << c + 1;
    f << '\n';
    for (const auto& p : points) {
        f << p.algo << ',' << p.iter << ',' << p.row_index;
        for (double v : p.coords) f << ',' << v;
        f << '\n';
    }
}

std::vector<CostEstimate> cost_model(std::size_t i, std::size_t j, std::size_t k) {
    if (i < 1 || j < 1 || k < 1) throw ArgumentError("cost_model dimensions must be >= 1");
    const double I = static_cast<double>(i), J = static_cast<double>(j),
                 K = static_cast<double>(k);

    CostEstimate mu;
    mu.algorithm = "mu";
    // H update: W^T X, then (W^T W) H, then elementwise ratio and product;
    // the W update mirrors it.
    mu.terms = {{"IJK (W^T X)", I * J * K},
                {"IK^2 (W^T W)", I * K * K},
                {"JK^2 ((W^T W) H)", J * K * K},
                {"KJ (elementwise /)", K * J},
                {"KJ (elementwise *)", K * J},
                {"IJK (X H^T)", I * J * K},
                {"JK^2 (H H^T)", J * K * K},
                {"IK^2 (W (H H^T))", I * K * K},
                {"KI (elementwise /)", K * I},
                {"KI (elementwise *)", K * I}};

    CostEstimate game;
    game.algorithm = "game";
    // I*J pair interactions, each K^2 for the two gradients and K per step.
    game.terms = {{"IJ*K^2 (pair gradients)", I * J * K * K},
                  {"IJ*K (gradient steps)", I * J * K}};

    for (auto* est : {&mu, &game})
        for (const auto& t : est->terms) est->total += t.flops;
    return {mu, game};
}

}  // namespace nmfgame
