// Command-line front end: gen, fit, bench, traj, pca, cost.

#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nmfgame/datagen.hpp"
#include "nmfgame/eigengame.hpp"
#include "nmfgame/harness.hpp"
#include "nmfgame/kernels.hpp"

namespace {

using nlohmann::json;
using namespace nmfgame;

constexpr const char* kVersion = "0.1.0";

void write_json(const std::string& path, const json& j) {
    std::ofstream f(path);
    if (!f) throw ArgumentError("cannot open for write: " + path);
    f << j.dump(2) << '\n';
}

void write_trace_csv(const std::string& path, const FitTrace& trace) {
    std::ofstream f(path);
    if (!f) throw ArgumentError("cannot open for write: " + path);
    f << std::setprecision(17);
    f << "iter,error,wall_ms\n";
    for (std::size_t t = 0; t < trace.loss.size(); ++t)
        f << t + 1 << ',' << trace.loss[t] << ',' << trace.wall_ms[t] << '\n';
}

void write_snapshot_csv(const std::string& path, const FitTrace& trace) {
    std::ofstream f(path);
    if (!f) throw ArgumentError("cannot open for write: " + path);
    f << std::setprecision(17);
    std::size_t width = trace.snapshots.empty() ? 0 : trace.snapshots.front().h.cols();
    f << "iter,row_index";
    for (std::size_t c = 0; c < width; ++c) f << ",v" << c + 1;
    f << '\n';
    for (const auto& snap : trace.snapshots) {
        for (std::size_t r = 0; r < snap.h.rows(); ++r) {
            f << snap.iter << ',' << r;
            for (std::size_t c = 0; c < snap.h.cols(); ++c) f << ',' << snap.h(r, c);
            f << '\n';
        }
    }
}

json base_meta() {
    return json{{"version", kVersion}, {"kernel_backend", kernels::active_ops().name}};
}

int run(int argc, char** argv) {
    CLI::App app{"Game-theoretic NNMF, classical baselines, EigenGame PCA, and a benchmark harness"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Config file (key=value, sections per subcommand)");

    // --- gen ---
    auto* gen = app.add_subcommand("gen", "Generate a synthetic dataset");
    std::uint64_t gen_seed = 1;
    std::size_t gen_i = 100, gen_j = 20, gen_k = 3;
    std::string gen_prefix = "synthetic";
    gen->add_option("--seed", gen_seed, "Generator seed");
    gen->add_option("--i", gen_i, "Rows of X");
    gen->add_option("--j", gen_j, "Columns of X");
    gen->add_option("--k", gen_k, "Latent factors");
    gen->add_option("--out-prefix", gen_prefix, "Output file prefix");

    // --- fit ---
    auto* fit = app.add_subcommand("fit", "Factorize a matrix with one solver");
    std::string fit_algo = "mu", fit_in, fit_prefix = "fit", fit_schedule = "jacobi",
                fit_selfgame = "none";
    std::size_t fit_k = 3, fit_iters = 2000, fit_workers = 1, fit_snap = 0;
    std::uint64_t fit_seed = 1;
    double fit_eta = 0.001, fit_shrink = 0.99, fit_ridge = kNalsRidgeDefault;
    fit->add_option("--algo", fit_algo, "mu|pg|nals|game|game-jmin|game-jmax");
    fit->add_option("--in", fit_in, "Input matrix file")->required();
    fit->add_option("--out-prefix", fit_prefix, "Output file prefix");
    fit->add_option("--k", fit_k, "Factorization rank");
    fit->add_option("--iters", fit_iters, "Iteration budget");
    fit->add_option("--seed", fit_seed, "Initialization seed");
    fit->add_option("--eta", fit_eta, "Step size (pg and game)");
    fit->add_option("--ridge", fit_ridge, "Ridge for nals");
    fit->add_option("--schedule", fit_schedule, "jacobi|gauss-seidel (game)");
    fit->add_option("--self-game", fit_selfgame, "none|jmin|jmax (game)");
    fit->add_option("--shrink", fit_shrink, "Self-game shrink factor");
    fit->add_option("--workers", fit_workers, "Worker threads (game, jacobi)");
    fit->add_option("--snapshot-every", fit_snap, "H snapshot cadence (0 = off)");

    // --- bench ---
    auto* bench = app.add_subcommand("bench", "Multi-dataset benchmark");
    BenchConfig bcfg;
    std::string bench_out = ".";
    bench->add_option("--datasets", bcfg.datasets, "Dataset count");
    bench->add_option("--seeds", bcfg.seeds_per_dataset, "Random inits per dataset");
    bench->add_option("--algos", bcfg.algos, "Algorithms to run");
    bench->add_option("--i", bcfg.i, "Rows of X");
    bench->add_option("--j", bcfg.j, "Columns of X");
    bench->add_option("--k", bcfg.k, "Latent factors");
    bench->add_option("--iters", bcfg.iters, "Iteration budget");
    bench->add_option("--eta", bcfg.eta, "Step size");
    bench->add_option("--master-seed", bcfg.master_seed, "Master seed");
    bench->add_option("--out-dir", bench_out, "Output directory");

    // --- traj ---
    auto* traj = app.add_subcommand("traj", "H-row trajectory export with PCA projection");
    TrajConfig tcfg;
    std::string traj_out = ".";
    traj->add_option("--i", tcfg.i, "Rows of X");
    traj->add_option("--j", tcfg.j, "Columns of X");
    traj->add_option("--k", tcfg.k, "Latent factors");
    traj->add_option("--iters", tcfg.iters, "Iteration budget");
    traj->add_option("--snapshot-every", tcfg.snapshot_every, "Snapshot cadence");
    traj->add_option("--eta", tcfg.eta, "Step size");
    traj->add_option("--algos", tcfg.algos, "Algorithms to run");
    traj->add_option("--master-seed", tcfg.master_seed, "Master seed");
    traj->add_option("--out-dir", traj_out, "Output directory");

    // --- pca ---
    auto* pca = app.add_subcommand("pca", "Top-k PCA of a matrix");
    std::string pca_in, pca_method = "exact", pca_prefix = "pca";
    std::size_t pca_k = 3, pca_iters = 2000;
    double pca_alpha = 0.01;
    std::uint64_t pca_seed = 1;
    pca->add_option("--in", pca_in, "Input matrix file")->required();
    pca->add_option("--k", pca_k, "Component count");
    pca->add_option("--method", pca_method, "exact|eigengame");
    pca->add_option("--iters", pca_iters, "Iterations (eigengame)");
    pca->add_option("--alpha", pca_alpha, "Step size (eigengame)");
    pca->add_option("--seed", pca_seed, "Initialization seed (eigengame)");
    pca->add_option("--out-prefix", pca_prefix, "Output file prefix");

    // --- cost ---
    auto* cost = app.add_subcommand("cost", "Per-iteration FLOP model");
    std::size_t cost_i = 100, cost_j = 20, cost_k = 3;
    cost->add_option("--i", cost_i, "Rows of X");
    cost->add_option("--j", cost_j, "Columns of X");
    cost->add_option("--k", cost_k, "Latent factors");

    CLI11_PARSE(app, argc, argv);

    if (gen->parsed()) {
        SyntheticDataset ds = make_synthetic(gen_seed, gen_i, gen_j, gen_k);
        save_mat(gen_prefix + ".X.mat", ds.x_syn);
        save_mat(gen_prefix + ".W.mat", ds.w_syn);
        save_mat(gen_prefix + ".H.mat", ds.h_syn);
        json meta = base_meta();
        meta["seed"] = gen_seed;
        meta["I"] = gen_i;
        meta["J"] = gen_j;
        meta["K"] = gen_k;
        meta["kernel"] = gaussian_kernel3();
        write_json(gen_prefix + ".meta.json", meta);
        std::cout << "wrote " << gen_prefix << ".{X,W,H}.mat and meta.json\n";
    } else if (fit->parsed()) {
        NonNegMat x = NonNegMat::checked(load_mat(fit_in));
        Factorization result;
        if (fit_algo == "game" || fit_algo == "game-jmin" || fit_algo == "game-jmax") {
            GameConfig cfg;
            cfg.eta = fit_eta;
            cfg.t_max = fit_iters;
            cfg.shrink = fit_shrink;
            cfg.workers = fit_workers;
            cfg.snapshot_every = fit_snap;
            if (fit_schedule == "jacobi")
                cfg.schedule = Schedule::Jacobi;
            else if (fit_schedule == "gauss-seidel")
                cfg.schedule = Schedule::GaussSeidel;
            else
                throw ArgumentError("unknown schedule '" + fit_schedule + "'");
            std::string sg = fit_algo == "game-jmin"   ? "jmin"
                             : fit_algo == "game-jmax" ? "jmax"
                                                       : fit_selfgame;
            if (sg == "none")
                cfg.self_game = SelfGame::None;
            else if (sg == "jmin")
                cfg.self_game = SelfGame::Jmin;
            else if (sg == "jmax")
                cfg.self_game = SelfGame::Jmax;
            else
                throw ArgumentError("unknown self-game '" + sg + "'");
            Rng rng(fit_seed);
            result = game_fit(x, fit_k, cfg, rng);
        } else if (fit_algo == "nals") {
            Rng rng(fit_seed);
            result = nals_fit(x, fit_k, fit_iters, fit_ridge, rng, fit_snap);
        } else {
            result = run_algorithm(fit_algo, x, fit_k, fit_iters, fit_eta, fit_seed, fit_snap);
        }
        save_mat(fit_prefix + ".W.mat", result.w);
        save_mat(fit_prefix + ".H.mat", result.h);
        write_trace_csv(fit_prefix + ".trace.csv", result.trace);
        if (fit_snap > 0) write_snapshot_csv(fit_prefix + ".traj.csv", result.trace);
        std::cout << "final error " << result.trace.loss.back() << " after "
                  << result.trace.loss.size() << " iterations\n";
    } else if (bench->parsed()) {
        BenchReport report = run_benchmark(bcfg);
        write_bench_csv(bench_out + "/bench.csv", report);
        write_bench_summary_csv(bench_out + "/bench_summary.csv", report);
        json meta = base_meta();
        meta["master_seed"] = bcfg.master_seed;
        meta["datasets"] = bcfg.datasets;
        meta["seeds_per_dataset"] = bcfg.seeds_per_dataset;
        meta["algos"] = bcfg.algos;
        meta["I"] = bcfg.i;
        meta["J"] = bcfg.j;
        meta["K"] = bcfg.k;
        meta["iters"] = bcfg.iters;
        meta["eta"] = bcfg.eta;
        write_json(bench_out + "/meta.json", meta);
        std::cout << "wrote bench.csv, bench_summary.csv, meta.json (" << report.runs.size()
                  << " runs)\n";
    } else if (traj->parsed()) {
        TrajectoryResult result = run_trajectories(tcfg);
        write_traj_csv(traj_out + "/traj.csv", result.raw, "v");
        write_traj_csv(traj_out + "/traj_projected.csv", result.projected, "pc");
        json meta = base_meta();
        meta["master_seed"] = tcfg.master_seed;
        meta["algos"] = tcfg.algos;
        meta["I"] = tcfg.i;
        meta["J"] = tcfg.j;
        meta["K"] = tcfg.k;
        meta["iters"] = tcfg.iters;
        meta["snapshot_every"] = tcfg.snapshot_every;
        meta["eta"] = tcfg.eta;
        meta["explained_variance_ratio"] = result.explained_variance_ratio;
        meta["step_variance"] = result.step_variance;
        write_json(traj_out + "/meta.json", meta);
        std::cout << "wrote traj.csv, traj_projected.csv, meta.json ("
                  << result.projected.size() << " points)\n";
    } else if (pca->parsed()) {
        Mat m = load_mat(pca_in);
        PcaResult res;
        if (pca_method == "exact") {
            res = exact_pca(m, pca_k);
        } else if (pca_method == "eigengame") {
            // Centered input so both methods estimate the same directions.
            res = exact_pca(m, pca_k);  // for mean / variance bookkeeping
            Mat centered(m.rows(), m.cols());
            for (std::size_t i = 0; i < m.rows(); ++i)
                for (std::size_t j = 0; j < m.cols(); ++j)
                    centered(i, j) = m(i, j) - res.mean[j];
            Rng rng(pca_seed);
            EigenState state = eigengame_fit(centered, pca_k, pca_iters, pca_alpha, rng);
            for (std::size_t r = 0; r < pca_k; ++r)
                for (std::size_t j = 0; j < m.cols(); ++j)
                    res.components(r, j) = state.vectors[r][j];
        } else {
            throw ArgumentError("unknown pca method '" + pca_method + "'");
        }
        save_mat(pca_prefix + ".components.mat", res.components);
        std::ofstream f(pca_prefix + ".ratios.csv");
        if (!f) throw ArgumentError("cannot open for write: " + pca_prefix + ".ratios.csv");
        f << std::setprecision(17) << "component,explained_variance,ratio\n";
        for (std::size_t r = 0; r < res.explained_variance.size(); ++r)
            f << r + 1 << ',' << res.explained_variance[r] << ','
              << res.explained_variance_ratio[r] << '\n';
        std::cout << "wrote " << pca_prefix << ".components.mat and ratios.csv\n";
    } else if (cost->parsed()) {
        for (const auto& est : cost_model(cost_i, cost_j, cost_k)) {
            std::cout << est.algorithm << " per-iteration FLOPs:\n";
            for (const auto& t : est.terms)
                std::cout << "  " << t.name << " = " << t.flops << '\n';
            std::cout << "  total = " << est.total << '\n';
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
