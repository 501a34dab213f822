// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Thresholds are fixed here, not tunable.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "nmfgame/datagen.hpp"
#include "nmfgame/eigengame.hpp"
#include "nmfgame/harness.hpp"

using namespace nmfgame;

namespace {

using Vec = std::vector<double>;

int g_failures = 0;

void report(int criterion, const std::string& label, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", criterion,
                label.c_str(), detail.c_str());
    if (!pass) ++g_failures;
}

double vdot(const Vec& a, const Vec& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// ---- 1. MU monotonicity ----------------------------------------------------
void criterion_mu_monotonicity() {
    Rng seeds(1);
    bool ok = true;
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
        std::size_t k = 2 + trial % 3;
        Rng gen(seeds.next_u64());
        NonNegMat x = NonNegMat::checked(
            matmul(rand_uniform(gen, 30, k, 0, 1), rand_uniform(gen, k, 10, 0, 1)));
        auto [w, h] = init_factors(gen, 30, 10, k);
        double prev = reconstruction_error(x, w, h);
        for (int t = 0; t < 50; ++t) {
            std::tie(w, h) = mu_step(x, w, h);
            double cur = reconstruction_error(x, w, h);
            worst = std::max(worst, cur - prev);
            if (cur > prev + 1e-10) ok = false;
            prev = cur;
        }
    }
    char d[96];
    std::snprintf(d, sizeof d, "20 instances x 50 iters, max increase %.3e", worst);
    report(1, "MU monotonicity", ok, d);
}

// ---- 2. Gradient oracles ---------------------------------------------------
double half_sq_loss(const Mat& x, const Mat& w, const Mat& h) {
    Mat wh = matmul(w, h);
    double s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double df = x.data()[i] - wh.data()[i];
        s += df * df;
    }
    return 0.5 * s;
}

void criterion_gradient_oracles() {
    const double step = 1e-6, tol = 1e-5;
    Rng rng(2);
    double worst = 0.0;
    int points = 0;

    // pair_gradients vs FD of pair_utility (descent gradient = -d utility).
    for (int trial = 0; trial < 40; ++trial) {
        Vec w(3), h(3);
        for (auto* v : {&w, &h})
            for (double& c : *v) c = rng.uniform(0.1, 1.0);
        double x = rng.uniform(0, 2);
        auto [gw, gh] = pair_gradients(x, w, h);
        for (std::size_t c = 0; c < 3; ++c) {
            Vec wp = w, wm = w;
            wp[c] += step;
            wm[c] -= step;
            double fd = -(pair_utility(x, wp, h) - pair_utility(x, wm, h)) / (2 * step);
            worst = std::max(worst, std::fabs(gw[c] - fd) / std::max(1.0, std::fabs(fd)));
            ++points;
        }
        (void)gh;
    }

    // PG full-matrix gradient vs FD of the half-squared loss.
    for (int trial = 0; trial < 25; ++trial) {
        Mat x = rand_uniform(rng, 4, 5, 0, 1);
        Mat w = rand_uniform(rng, 4, 2, 0, 1);
        Mat h = rand_uniform(rng, 2, 5, 0, 1);
        Mat gw = pg_grad_w(x, w, h);
        for (int probe = 0; probe < 4; ++probe) {
            std::size_t idx = rng.next_u64() % w.size();
            double save = w.data()[idx];
            w.data()[idx] = save + step;
            double up = half_sq_loss(x, w, h);
            w.data()[idx] = save - step;
            double dn = half_sq_loss(x, w, h);
            w.data()[idx] = save;
            double fd = (up - dn) / (2 * step);
            worst = std::max(worst, std::fabs(gw.data()[idx] - fd) / std::max(1.0, std::fabs(fd)));
            ++points;
        }
    }

    // eigen_gradient vs FD of eigen_utility with sigma = X^T X.
    Mat xd = rand_uniform(rng, 8, 4, -1, 1);
    Mat sigma = matmul(xd.transposed(), xd);
    for (int trial = 0; trial < 30; ++trial) {
        Vec v(4), p(4);
        for (double& c : v) c = rng.uniform(-1, 1);
        for (double& c : p) c = rng.uniform(-1, 1);
        std::vector<Vec> parents{p};
        Vec g = eigen_gradient(xd, v, parents);
        for (std::size_t c = 0; c < 4; ++c) {
            Vec vp = v, vm = v;
            vp[c] += step;
            vm[c] -= step;
            double fd = (eigen_utility(vp, parents, sigma) - eigen_utility(vm, parents, sigma)) /
                        (2 * step);
            worst = std::max(worst, std::fabs(g[c] - fd) / std::max(1.0, std::fabs(fd)));
            ++points;
        }
    }

    char d[96];
    std::snprintf(d, sizeof d, "%d points, worst relative error %.3e", points, worst);
    report(2, "gradient oracles vs finite differences", worst <= tol, d);
}

// ---- 3. Fig. 3 style convergence at the pinned budget ----------------------
void criterion_convergence() {
    SyntheticDataset ds = make_synthetic(2, 100, 20, 3);
    double xn = frobenius_norm(ds.x_syn);
    bool ok = true;
    std::string detail;
    for (const char* algo : {"mu", "game", "game-jmin", "game-jmax"}) {
        Factorization f = run_algorithm(algo, ds.x_syn, 3, 2000, 0.001, 2);
        double rel = reconstruction_error(ds.x_syn, f.w, f.h) / xn;
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s=%.4f ", algo, rel);
        detail += buf;
        if (rel > 0.05) ok = false;
    }
    report(3, "relative error <= 0.05 at eta=0.001, 2000 iters", ok, detail);
}

// ---- 4. Fig. 5 style benchmark comparison ----------------------------------
void criterion_benchmark() {
    BenchConfig c;  // defaults: 10 datasets x 4 seeds, (100,20,3), 2000 iters, eta 0.001
    BenchReport r = run_benchmark(c);
    int datasets_ok[3] = {0, 0, 0};
    const char* variants[3] = {"game", "game-jmin", "game-jmax"};
    for (std::size_t d = 0; d < c.datasets; ++d) {
        double mu_mean = 0;
        for (const auto& s : r.summary)
            if (s.dataset == d && s.algo == "mu") mu_mean = s.mean;
        for (int v = 0; v < 3; ++v) {
            for (const auto& s : r.summary) {
                if (s.dataset == d && s.algo == variants[v]) {
                    if (s.mean >= 0.5 * mu_mean && s.mean <= 2.0 * mu_mean) ++datasets_ok[v];
                }
            }
        }
    }
    bool ok = true;
    std::string detail;
    for (int v = 0; v < 3; ++v) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%s in-band %d/10 ", variants[v], datasets_ok[v]);
        detail += buf;
        if (datasets_ok[v] < 8) ok = false;
    }
    report(4, "game variants within [0.5x,2x] of MU mean on >=8/10 datasets", ok, detail);
}

// ---- 5. Shard locality ------------------------------------------------------
void criterion_shard_locality() {
    Rng rng(5);
    Mat x = rand_uniform(rng, 6, 5, 0, 1);
    Mat w = rand_uniform(rng, 6, 3, 0.1, 1.1);
    Mat h = rand_uniform(rng, 3, 5, 0.1, 1.1);
    Mat xt = x.transposed();
    bool ok = true;

    for (std::size_t i = 0; i < 6 && ok; ++i) {
        Vec base = row_player_update(x.row(i), w.row(i), 3, h, 0.01);
        for (std::size_t other = 0; other < 6; ++other) {
            if (other == i) continue;
            Mat xp = x;
            for (std::size_t j = 0; j < 5; ++j) xp(other, j) = rng.uniform(2, 3);
            if (row_player_update(xp.row(i), w.row(i), 3, h, 0.01) != base) ok = false;
        }
    }
    for (std::size_t j = 0; j < 5 && ok; ++j) {
        Vec hj(3);
        for (std::size_t c = 0; c < 3; ++c) hj[c] = h(c, j);
        Vec base = col_player_update(xt.row(j), hj.data(), 3, w, 0.01);
        for (std::size_t other = 0; other < 5; ++other) {
            if (other == j) continue;
            Mat xp = xt;
            for (std::size_t i = 0; i < 6; ++i) xp(other, i) = rng.uniform(2, 3);
            if (col_player_update(xp.row(j), hj.data(), 3, w, 0.01) != base) ok = false;
        }
    }
    report(5, "shard locality of player updates", ok, "exhaustive over a 6x5 instance");
}

// ---- 6. Parallel determinism -------------------------------------------------
void criterion_parallel_determinism() {
    SyntheticDataset ds = make_synthetic(6, 40, 12, 3);
    GameConfig c1;
    c1.t_max = 100;
    GameConfig cn = c1;
    cn.workers = 7;
    Rng a(1), b(1);
    Factorization f1 = game_fit(ds.x_syn, 3, c1, a);
    Factorization fn = game_fit(ds.x_syn, 3, cn, b);
    bool ok = static_cast<const Mat&>(f1.w) == static_cast<const Mat&>(fn.w) &&
              static_cast<const Mat&>(f1.h) == static_cast<const Mat&>(fn.h) &&
              f1.trace.loss == fn.trace.loss;
    report(6, "jacobi bit-identical for 1 vs 7 workers", ok, "W, H and trace compared bitwise");
}

// ---- 7. Self-game contracts ---------------------------------------------------
void criterion_self_games() {
    Rng rng(7);
    bool ok = true;
    for (int trial = 0; trial < 10000; ++trial) {
        std::size_t k = 1 + rng.next_u64() % 6;
        Vec v(k);
        for (double& c : v) c = rng.uniform(0.01, 1.0);  // strictly positive

        Vec vmax = self_game_jmax(v, 0.99);
        std::size_t ai = 0, ao = 0;
        for (std::size_t c = 1; c < k; ++c) {
            if (v[c] > v[ai]) ai = c;
            if (vmax[c] > vmax[ao]) ao = c;
        }
        if (ai != ao) ok = false;
        for (std::size_t c = 0; c < k; ++c)
            if (c != ai && vmax[c] != v[c] * 0.99) ok = false;
        if (vmax[ai] != v[ai]) ok = false;

        Vec vmin = self_game_jmin(v, 0.99);
        std::size_t changed = 0;
        for (std::size_t c = 0; c < k; ++c) {
            if (vmin[c] != v[c]) {
                ++changed;
                if (vmin[c] != v[c] * 0.99) ok = false;
            }
        }
        if (changed != 1) ok = false;
    }
    report(7, "self-game contracts", ok, "10^4 random positive vectors");
}

// ---- 8. EigenGame correctness ---------------------------------------------------
void criterion_eigengame() {
    Rng data_rng(42);
    // Zero-mean orthonormal column scores scaled to an exact spectrum with
    // gaps >= 0.1 (d=6).
    const Vec lambda{3, 2, 1, 0.5, 0.3, 0.1};
    const std::size_t n = 10, d = 6;
    Mat c = rand_uniform(data_rng, n, d, -1, 1);
    for (std::size_t j = 0; j < d; ++j) {
        double m = 0;
        for (std::size_t i = 0; i < n; ++i) m += c(i, j);
        m /= n;
        for (std::size_t i = 0; i < n; ++i) c(i, j) -= m;
    }
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t p = 0; p < j; ++p) {
            double dp = 0;
            for (std::size_t i = 0; i < n; ++i) dp += c(i, j) * c(i, p);
            for (std::size_t i = 0; i < n; ++i) c(i, j) -= dp * c(i, p);
        }
        double nm = 0;
        for (std::size_t i = 0; i < n; ++i) nm += c(i, j) * c(i, j);
        nm = std::sqrt(nm);
        for (std::size_t i = 0; i < n; ++i) c(i, j) /= nm;
    }
    Mat x(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) x(i, j) = c(i, j) * std::sqrt(lambda[j] * n);

    PcaResult oracle = exact_pca(x, 3);
    bool norms_ok = true, riemann_ok = true;
    Rng rng(7);
    EigenState state = eigengame_fit(
        x, 3, 2000, 0.01, rng, [&](std::size_t, const std::vector<Vec>& vecs) {
            for (std::size_t i = 0; i < vecs.size(); ++i) {
                if (std::fabs(std::sqrt(vdot(vecs[i], vecs[i])) - 1.0) > 1e-12) norms_ok = false;
                std::vector<Vec> parents(vecs.begin(), vecs.begin() + i);
                Vec g = eigen_gradient(x, vecs[i], parents);
                Vec gr = riemannian_project(g, vecs[i]);
                double gn = std::sqrt(vdot(g, g));
                if (std::fabs(vdot(gr, vecs[i])) > 1e-12 * std::max(1.0, gn)) riemann_ok = false;
            }
        });

    double min_cos = 1.0;
    for (std::size_t i = 0; i < 3; ++i) {
        Vec comp(d);
        for (std::size_t j = 0; j < d; ++j) comp[j] = oracle.components(i, j);
        min_cos = std::min(min_cos, std::fabs(vdot(state.vectors[i], comp)));
    }
    char detail[96];
    std::snprintf(detail, sizeof detail, "min |cos|=%.6f, norms %s, tangency %s", min_cos,
                  norms_ok ? "ok" : "violated", riemann_ok ? "ok" : "violated");
    report(8, "eigengame matches the exact PCA oracle", min_cos >= 0.99 && norms_ok && riemann_ok,
           detail);
}

// ---- 9. Trajectory pipeline ---------------------------------------------------
void criterion_trajectories() {
    TrajConfig c;
    c.iters = 300;
    c.snapshot_every = 50;
    TrajectoryResult r = run_trajectories(c);
    bool ok = true;
    for (const auto& algo : c.algos) {
        std::size_t rows_seen = 0;
        for (std::size_t row = 0; row < c.k; ++row) {
            std::vector<std::size_t> iters;
            for (const auto& p : r.projected)
                if (p.algo == algo && p.row_index == row) iters.push_back(p.iter);
            if (iters.empty() || iters.front() != 0 || iters.back() != c.iters) ok = false;
            ++rows_seen;
        }
        if (rows_seen != c.k) ok = false;
        for (const auto& p : r.projected)
            if (p.algo == algo && p.row_index >= c.k) ok = false;
    }
    double sum = 0;
    for (std::size_t i = 0; i < r.explained_variance_ratio.size(); ++i) {
        if (i && r.explained_variance_ratio[i] > r.explained_variance_ratio[i - 1]) ok = false;
        sum += r.explained_variance_ratio[i];
    }
    if (sum > 1.0 + 1e-10) ok = false;
    char detail[96];
    std::snprintf(detail, sizeof detail, "ratios %.3f/%.3f/%.3f",
                  r.explained_variance_ratio[0], r.explained_variance_ratio[1],
                  r.explained_variance_ratio[2]);
    report(9, "K=3 trajectories per algorithm, valid variance ratios", ok, detail);
}

// ---- 10. Cost model ----------------------------------------------------------
void criterion_cost_model() {
    auto ests = cost_model(100, 20, 3);
    bool ok = ests.size() == 2 && ests[0].terms[0].flops == 100.0 * 20.0 * 3.0 &&
              ests[0].terms[0].flops == 6000.0 &&
              ests[1].terms[0].flops == 100.0 * 20.0 * 3.0 * 3.0 &&
              ests[1].terms[0].flops == 18000.0;
    report(10, "dominant FLOP terms IJK=6000 and IJ*K^2=18000", ok,
           "verified against independent products");
}

}  // namespace

int main() {
    auto t0 = std::chrono::steady_clock::now();
    criterion_mu_monotonicity();
    criterion_gradient_oracles();
    criterion_convergence();
    criterion_benchmark();
    criterion_shard_locality();
    criterion_parallel_determinism();
    criterion_self_games();
    criterion_eigengame();
    criterion_trajectories();
    criterion_cost_model();
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%d of 10 criteria passed (%.1f s)\n", 10 - g_failures, secs);
    return g_failures == 0 ? 0 : 1;
}
