#include "nmfgame/baselines.hpp"

#include <chrono>
#include <cmath>
#include <string>
#include <tuple>

#include "nmfgame/kernels.hpp"

namespace nmfgame {
namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void check_divergence(double loss, double initial, double eta, const char* algo) {
    if (!(loss <= kDivergenceFactor * initial) || !std::isfinite(loss))
        throw DivergedError(std::string(algo) + " loss exceeded guard; eta=" +
                            std::to_string(eta));
}

void maybe_snapshot(FitTrace& trace, std::size_t cadence, std::size_t iter, const Mat& h,
                    std::size_t t_max) {
    if (cadence == 0) return;
    if (iter == 0 || iter == t_max || iter % cadence == 0)
        trace.snapshots.push_back({iter, h});
}

// Cholesky factorization of a symmetric positive-definite K x K matrix,
// in place, lower triangle. No pivoting: the elimination order is fixed.
void cholesky(Mat& a) {
    const std::size_t n = a.rows();
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j);
        for (std::size_t p = 0; p < j; ++p) d -= a(j, p) * a(j, p);
        if (!(d > 0.0))
            throw SingularSystemError(
                "normal matrix not positive definite; retry with ridge > 0");
        a(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < n; ++i) {
            double s = a(i, j);
            for (std::size_t p = 0; p < j; ++p) s -= a(i, p) * a(j, p);
            a(i, j) = s / a(j, j);
        }
    }
}

// Solves (L L^T) X = B for X, where L is the lower Cholesky factor. B is
// n x m, overwritten column by column.
void cholesky_solve(const Mat& l, Mat& b) {
    const std::size_t n = l.rows();
    for (std::size_t c = 0; c < b.cols(); ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            double s = b(i, c);
            for (std::size_t p = 0; p < i; ++p) s -= l(i, p) * b(p, c);
            b(i, c) = s / l(i, i);
        }
        for (std::size_t i = n; i-- > 0;) {
            double s = b(i, c);
            for (std::size_t p = i + 1; p < n; ++p) s -= l(p, i) * b(p, c);
            b(i, c) = s / l(i, i);
        }
    }
}

}  // namespace

std::pair<NonNegMat, NonNegMat> init_factors(Rng& rng, std::size_t i, std::size_t j,
                                             std::size_t k) {
    NonNegMat w = NonNegMat::checked(rand_uniform(rng, i, k, 0.01, 1.01));
    NonNegMat h = NonNegMat::checked(rand_uniform(rng, k, j, 0.01, 1.01));
    return {std::move(w), std::move(h)};
}

std::pair<NonNegMat, NonNegMat> mu_step(const NonNegMat& x, const NonNegMat& w,
                                        const NonNegMat& h, double eps) {
    if (w.rows() != x.rows() || h.cols() != x.cols() || w.cols() != h.rows())
        throw ShapeError("mu_step shapes do not conform");
    const auto& ops = kernels::active_ops();

    // H' = H .* (W^T X) ./ (W^T W H)
    Mat wt = w.transposed();
    Mat num_h = matmul(wt, x);
    Mat den_h = matmul(matmul(wt, w), h);
    Mat hn(h.rows(), h.cols());
    ops.mul_ratio(h.data(), num_h.data(), den_h.data(), hn.data(), hn.size(), eps);
    NonNegMat h_new = wrap_nonneg_unchecked(std::move(hn));

    // W' = W .* (X H'^T) ./ (W H' H'^T)
    Mat ht = h_new.transposed();
    Mat num_w = matmul(x, ht);
    Mat den_w = matmul(matmul(w, h_new), ht);
    Mat wn(w.rows(), w.cols());
    ops.mul_ratio(w.data(), num_w.data(), den_w.data(), wn.data(), wn.size(), eps);
    NonNegMat w_new = wrap_nonneg_unchecked(std::move(wn));

    return {std::move(w_new), std::move(h_new)};
}

Factorization mu_fit(const NonNegMat& x, std::size_t k, std::size_t t_max, Rng& rng, double eps,
                     std::size_t snapshot_every) {
    if (k < 1 || t_max < 1) throw ArgumentError("mu_fit requires k >= 1 and t_max >= 1");
    auto [w, h] = init_factors(rng, x.rows(), x.cols(), k);
    FitTrace trace;
    maybe_snapshot(trace, snapshot_every, 0, h, t_max);
    for (std::size_t t = 1; t <= t_max; ++t) {
        auto t0 = Clock::now();
        std::tie(w, h) = mu_step(x, w, h, eps);
        trace.wall_ms.push_back(ms_since(t0));
        trace.loss.push_back(reconstruction_error(x, w, h));
        maybe_snapshot(trace, snapshot_every, t, h, t_max);
    }
    return {std::move(w), std::move(h), std::move(trace)};
}

Mat pg_grad_w(const Mat& x, const Mat& w, const Mat& h) {
    // -(X - WH) H^T
    Mat r = matmul(w, h);
    for (std::size_t i = 0; i < r.size(); ++i) r.data()[i] -= x.data()[i];
    return matmul(r, h.transposed());
}

Mat pg_grad_h(const Mat& x, const Mat& w, const Mat& h) {
    // -W^T (X - WH)
    Mat r = matmul(w, h);
    for (std::size_t i = 0; i < r.size(); ++i) r.data()[i] -= x.data()[i];
    return matmul(w.transposed(), r);
}

Factorization pg_fit(const NonNegMat& x, std::size_t k, std::size_t t_max, double eta, Rng& rng,
                     std::size_t snapshot_every) {
    if (k < 1 || t_max < 1) throw ArgumentError("pg_fit requires k >= 1 and t_max >= 1");
    if (!(eta > 0.0)) throw ArgumentError("pg_fit requires eta > 0");
    const auto& ops = kernels::active_ops();
    auto [w, h] = init_factors(rng, x.rows(), x.cols(), k);
    double initial = reconstruction_error(x, w, h);
    FitTrace trace;
    maybe_snapshot(trace, snapshot_every, 0, h, t_max);
    for (std::size_t t = 1; t <= t_max; ++t) {
        auto t0 = Clock::now();
        Mat gh = pg_grad_h(x, w, h);
        Mat hn(h.rows(), h.cols());
        ops.step_clamp(h.data(), gh.data(), hn.data(), hn.size(), eta);
        h = wrap_nonneg_unchecked(std::move(hn));

        Mat gw = pg_grad_w(x, w, h);
        Mat wn(w.rows(), w.cols());
        ops.step_clamp(w.data(), gw.data(), wn.data(), wn.size(), eta);
        w = wrap_nonneg_unchecked(std::move(wn));

        trace.wall_ms.push_back(ms_since(t0));
        double loss = reconstruction_error(x, w, h);
        trace.loss.push_back(loss);
        check_divergence(loss, initial, eta, "pg");
        maybe_snapshot(trace, snapshot_every, t, h, t_max);
    }
    return {std::move(w), std::move(h), std::move(trace)};
}

Mat nals_solve_h(const NonNegMat& x, const NonNegMat& w, double ridge) {
    Mat wt = w.transposed();
    Mat gram = matmul(wt, w);
    for (std::size_t d = 0; d < gram.rows(); ++d) gram(d, d) += ridge;
    cholesky(gram);
    Mat rhs = matmul(wt, x);
    cholesky_solve(gram, rhs);
    return rhs;
}

Factorization nals_fit(const NonNegMat& x, std::size_t k, std::size_t t_max, double ridge,
                       Rng& rng, std::size_t snapshot_every) {
    if (k < 1 || t_max < 1) throw ArgumentError("nals_fit requires k >= 1 and t_max >= 1");
    if (ridge < 0.0) throw ArgumentError("nals_fit requires ridge >= 0");
    auto [w, h] = init_factors(rng, x.rows(), x.cols(), k);
    FitTrace trace;
    maybe_snapshot(trace, snapshot_every, 0, h, t_max);
    // W half-step via the H solver on the transposed problem: X^T ~ H^T W^T.
    NonNegMat xt = wrap_nonneg_unchecked(x.transposed());
    for (std::size_t t = 1; t <= t_max; ++t) {
        auto t0 = Clock::now();
        h = clamp_nonneg(nals_solve_h(x, w, ridge));
        NonNegMat ht = wrap_nonneg_unchecked(h.transposed());
        w = clamp_nonneg(nals_solve_h(xt, ht, ridge).transposed());
        trace.wall_ms.push_back(ms_since(t0));
        trace.loss.push_back(reconstruction_error(x, w, h));
        maybe_snapshot(trace, snapshot_every, t, h, t_max);
    }
    return {std::move(w), std::move(h), std::move(trace)};
}

}  // namespace nmfgame
