#include "nmfgame/game.hpp"

#include <chrono>
#include <cmath>
#include <string>
#include <thread>

namespace nmfgame {
namespace {

using Clock = std::chrono::steady_clock;

double dot(const double* a, const double* b, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

// Strided dot for a column of a row-major matrix.
double dot_col(const double* a, const double* col0, std::size_t stride, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * col0[i * stride];
    return s;
}

void step_clamp_vec(std::vector<double>& v, const std::vector<double>& g, double eta) {
    for (std::size_t c = 0; c < v.size(); ++c) {
        double nv = v[c] - eta * g[c];
        v[c] = nv > 0.0 ? nv : 0.0;
    }
}

// Runs fn(p) for p in [0, count) across `workers` threads with a fixed block
// partition. Outputs are per-player, so the result does not depend on the
// partition; threads join before commit (the barrier).
template <typename Fn>
void parallel_players(std::size_t count, std::size_t workers, Fn fn) {
    if (workers <= 1 || count <= 1) {
        for (std::size_t p = 0; p < count; ++p) fn(p);
        return;
    }
    std::size_t n_threads = workers < count ? workers : count;
    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    std::size_t chunk = (count + n_threads - 1) / n_threads;
    for (std::size_t t = 0; t < n_threads; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = lo + chunk < count ? lo + chunk : count;
        threads.emplace_back([lo, hi, &fn] {
            for (std::size_t p = lo; p < hi; ++p) fn(p);
        });
    }
    for (auto& th : threads) th.join();
}

double fit_loss(const Mat& x, const Mat& w, const Mat& h) {
    Mat wh = matmul(w, h);
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        double d = x.data()[i] - wh.data()[i];
        s += d * d;
    }
    return std::sqrt(s);
}

void apply_self_games(Mat& h, SelfGame kind, double shrink) {
    if (kind == SelfGame::None) return;
    const std::size_t k = h.rows(), j_count = h.cols();
    std::vector<double> col(k);
    for (std::size_t j = 0; j < j_count; ++j) {
        for (std::size_t c = 0; c < k; ++c) col[c] = h(c, j);
        col = kind == SelfGame::Jmin ? self_game_jmin(std::move(col), shrink)
                                     : self_game_jmax(std::move(col), shrink);
        for (std::size_t c = 0; c < k; ++c) h(c, j) = col[c];
    }
}

}  // namespace

void GameConfig::validate() const {
    if (!(eta > 0.0)) throw ArgumentError("game eta must be > 0");
    if (t_max < 1) throw ArgumentError("game t_max must be >= 1");
    if (!(shrink > 0.0 && shrink < 1.0)) throw ArgumentError("shrink must be in (0, 1)");
    if (workers < 1) throw ArgumentError("workers must be >= 1");
}

double pair_utility(double x_ij, const std::vector<double>& w_i, const std::vector<double>& h_j) {
    if (w_i.size() != h_j.size()) throw ShapeError("pair_utility vector lengths differ");
    double r = x_ij - dot(w_i.data(), h_j.data(), w_i.size());
    return -0.5 * r * r;
}

std::pair<std::vector<double>, std::vector<double>> pair_gradients(
    double x_ij, const std::vector<double>& w_i, const std::vector<double>& h_j) {
    if (w_i.size() != h_j.size()) throw ShapeError("pair_gradients vector lengths differ");
    const std::size_t k = w_i.size();
    double r = x_ij - dot(w_i.data(), h_j.data(), k);
    std::vector<double> gw(k), gh(k);
    for (std::size_t c = 0; c < k; ++c) {
        gw[c] = -r * h_j[c];
        gh[c] = -r * w_i[c];
    }
    return {std::move(gw), std::move(gh)};
}

std::vector<double> row_player_update(const double* x_row, const double* w_i, std::size_t k,
                                      const Mat& h_snapshot, double eta) {
    const std::size_t j_count = h_snapshot.cols();
    std::vector<double> grad(k, 0.0);
    for (std::size_t j = 0; j < j_count; ++j) {
        const double* h_col = h_snapshot.data() + j;
        double r = x_row[j] - dot_col(w_i, h_col, j_count, k);
        for (std::size_t c = 0; c < k; ++c) grad[c] += -r * h_col[c * j_count];
    }
    std::vector<double> out(w_i, w_i + k);
    step_clamp_vec(out, grad, eta);
    return out;
}

std::vector<double> col_player_update(const double* x_col, const double* h_j, std::size_t k,
                                      const Mat& w_snapshot, double eta) {
    const std::size_t i_count = w_snapshot.rows();
    std::vector<double> grad(k, 0.0);
    for (std::size_t i = 0; i < i_count; ++i) {
        const double* w_row = w_snapshot.row(i);
        double r = x_col[i] - dot(w_row, h_j, k);
        for (std::size_t c = 0; c < k; ++c) grad[c] += -r * w_row[c];
    }
    std::vector<double> out(h_j, h_j + k);
    step_clamp_vec(out, grad, eta);
    return out;
}

std::vector<double> self_game_jmin(std::vector<double> h_j, double shrink) {
    std::size_t arg = 0;
    for (std::size_t c = 1; c < h_j.size(); ++c)
        if (h_j[c] < h_j[arg]) arg = c;
    h_j[arg] *= shrink;
    return h_j;
}

std::vector<double> self_game_jmax(std::vector<double> h_j, double shrink) {
    std::size_t arg = 0;
    for (std::size_t c = 1; c < h_j.size(); ++c)
        if (h_j[c] > h_j[arg]) arg = c;
    for (std::size_t c = 0; c < h_j.size(); ++c)
        if (c != arg) h_j[c] *= shrink;
    return h_j;
}

Factorization game_fit(const NonNegMat& x, std::size_t k, const GameConfig& config, Rng& rng) {
    config.validate();
    if (k < 1) throw ArgumentError("game_fit requires k >= 1");
    const std::size_t i_count = x.rows(), j_count = x.cols();

    auto [w0, h0] = init_factors(rng, i_count, j_count, k);
    Mat w = std::move(w0);
    Mat h = std::move(h0);
    Mat xt = x.transposed();  // column players read contiguous x columns

    double initial = fit_loss(x, w, h);
    FitTrace trace;
    if (config.snapshot_every > 0) trace.snapshots.push_back({0, h});

    for (std::size_t t = 1; t <= config.t_max; ++t) {
        auto t0 = Clock::now();
        if (config.schedule == Schedule::Jacobi) {
            Mat w_next(i_count, k);
            Mat h_next(k, j_count);
            // Players 0..I-1 are row players, I..I+J-1 column players; all read
            // the iteration-start (w, h) and write only their own vector.
            parallel_players(i_count + j_count, config.workers, [&](std::size_t p) {
                if (p < i_count) {
                    auto wi = row_player_update(x.row(p), w.row(p), k, h, config.eta);
                    for (std::size_t c = 0; c < k; ++c) w_next(p, c) = wi[c];
                } else {
                    std::size_t j = p - i_count;
                    std::vector<double> hj(k);
                    for (std::size_t c = 0; c < k; ++c) hj[c] = h(c, j);
                    auto hn = col_player_update(xt.row(j), hj.data(), k, w, config.eta);
                    for (std::size_t c = 0; c < k; ++c) h_next(c, j) = hn[c];
                }
            });
            w = std::move(w_next);
            h = std::move(h_next);
        } else {
            // Literal sweep: per (i,j), both gradients from the current state,
            // then immediate commits.
            std::vector<double> wi(k), hj(k);
            for (std::size_t i = 0; i < i_count; ++i) {
                for (std::size_t j = 0; j < j_count; ++j) {
                    for (std::size_t c = 0; c < k; ++c) {
                        wi[c] = w(i, c);
                        hj[c] = h(c, j);
                    }
                    auto [gw, gh] = pair_gradients(x(i, j), wi, hj);
                    for (std::size_t c = 0; c < k; ++c) {
                        double nw = wi[c] - config.eta * gw[c];
                        double nh = hj[c] - config.eta * gh[c];
                        w(i, c) = nw > 0.0 ? nw : 0.0;
                        h(c, j) = nh > 0.0 ? nh : 0.0;
                    }
                }
            }
        }

        apply_self_games(h, config.self_game, config.shrink);

        trace.wall_ms.push_back(
            std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
        double loss = fit_loss(x, w, h);
        trace.loss.push_back(loss);
        if (!(loss <= kDivergenceFactor * initial) || !std::isfinite(loss))
            throw DivergedError("game loss exceeded guard; eta=" + std::to_string(config.eta));
        if (config.snapshot_every > 0 &&
            (t == config.t_max || t % config.snapshot_every == 0))
            trace.snapshots.push_back({t, h});
    }

    return {wrap_nonneg_unchecked(std::move(w)), wrap_nonneg_unchecked(std::move(h)),
            std::move(trace)};
}

double row_overlap(const Mat& h) {
    const std::size_t k = h.rows();
    if (k < 2) return 0.0;
    double total = 0.0;
    std::size_t pairs = 0;
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            double na = dot(h.row(a), h.row(a), h.cols());
            double nb = dot(h.row(b), h.row(b), h.cols());
            double ab = dot(h.row(a), h.row(b), h.cols());
            total += (na > 0.0 && nb > 0.0) ? ab / std::sqrt(na * nb) : 0.0;
            ++pairs;
        }
    }
    return total / static_cast<double>(pairs);
}

}  // namespace nmfgame
