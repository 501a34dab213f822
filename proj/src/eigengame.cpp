#include "nmfgame/eigengame.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nmfgame {
namespace {

double vdot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<double> mat_vec(const Mat& m, const std::vector<double>& v) {
    std::vector<double> out(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) s += m(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

std::vector<double> mat_t_vec(const Mat& m, const std::vector<double>& v) {
    std::vector<double> out(m.cols(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += m(i, j) * v[i];
    return out;
}

void normalize(std::vector<double>& v) {
    double n = std::sqrt(vdot(v, v));
    if (n == 0.0) throw DegenerateError("cannot normalize a zero vector");
    for (double& x : v) x /= n;
}

}  // namespace

std::pair<std::vector<double>, Mat> jacobi_eigen(const Mat& sym) {
    if (sym.rows() != sym.cols()) throw ShapeError("jacobi_eigen needs a square matrix");
    const std::size_t n = sym.rows();
    Mat a = sym;
    Mat v(n, n);
    for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
        return std::sqrt(2.0 * s);
    };

    const double tol = 1e-14 * std::max(1.0, frobenius_norm(sym));
    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps && off_norm() > tol; ++sweep) {
        // Cyclic order: (0,1), (0,2), ..., (n-2,n-1).
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a(p, q);
                if (apq == 0.0) continue;
                double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = (theta >= 0.0 ? 1.0 : -1.0) /
                           (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    double aip = a(i, p), aiq = a(i, q);
                    a(i, p) = c * aip - s * aiq;
                    a(i, q) = s * aip + c * aiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    double apj = a(p, j), aqj = a(q, j);
                    a(p, j) = c * apj - s * aqj;
                    a(q, j) = s * apj + c * aqj;
                    double vpj = v(p, j), vqj = v(q, j);
                    v(p, j) = c * vpj - s * vqj;
                    v(q, j) = s * vpj + c * vqj;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    std::vector<double> values(n);
    Mat vectors(n, n);
    for (std::size_t r = 0; r < n; ++r) {
        values[r] = a(order[r], order[r]);
        // Sign convention: largest-magnitude component positive (lowest index on ties).
        std::size_t arg = 0;
        for (std::size_t j = 1; j < n; ++j)
            if (std::fabs(v(order[r], j)) > std::fabs(v(order[r], arg))) arg = j;
        double sign = v(order[r], arg) < 0.0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) vectors(r, j) = sign * v(order[r], j);
    }
    return {std::move(values), std::move(vectors)};
}

double eigen_utility(const std::vector<double>& v_i,
                     const std::vector<std::vector<double>>& parents, const Mat& sigma) {
    auto sv = mat_vec(sigma, v_i);
    double u = vdot(v_i, sv);
    for (const auto& vj : parents) {
        auto svj = mat_vec(sigma, vj);
        double den = vdot(vj, svj);
        if (!(den > 0.0)) throw DegenerateError("parent has zero variance under sigma");
        double num = vdot(v_i, svj);
        u -= num * num / den;
    }
    return u;
}

std::vector<double> eigen_gradient(const Mat& xt, const std::vector<double>& v_i,
                                   const std::vector<std::vector<double>>& parents) {
    if (v_i.size() != xt.cols()) throw ShapeError("eigen_gradient dimension mismatch");
    auto xv = mat_vec(xt, v_i);
    std::vector<double> inner = xv;
    for (const auto& vj : parents) {
        auto xvj = mat_vec(xt, vj);
        double den = vdot(xvj, xvj);
        if (!(den > 0.0)) throw DegenerateError("parent direction has zero norm under X");
        double coef = vdot(xv, xvj) / den;
        for (std::size_t i = 0; i < inner.size(); ++i) inner[i] -= coef * xvj[i];
    }
    auto g = mat_t_vec(xt, inner);
    for (double& x : g) x *= 2.0;
    return g;
}

std::vector<double> riemannian_project(const std::vector<double>& grad,
                                       const std::vector<double>& v) {
    double c = vdot(grad, v);
    std::vector<double> out(grad.size());
    for (std::size_t i = 0; i < grad.size(); ++i) out[i] = grad[i] - c * v[i];
    return out;
}

EigenState eigengame_fit(const Mat& x, std::size_t k, std::size_t t_max, double alpha, Rng& rng,
                         const EigenObserver& observer) {
    if (k > x.cols()) throw ArgumentError("eigengame_fit requires k <= d");
    if (!(alpha > 0.0)) throw ArgumentError("eigengame_fit requires alpha > 0");
    const std::size_t d = x.cols();

    std::vector<std::vector<double>> vecs(k, std::vector<double>(d));
    for (auto& v : vecs) {
        for (double& c : v) c = rng.uniform(-1.0, 1.0);
        normalize(v);
    }

    for (std::size_t t = 1; t <= t_max; ++t) {
        std::vector<std::vector<double>> snapshot = vecs;
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<std::vector<double>> parents(snapshot.begin(), snapshot.begin() + i);
            auto g = eigen_gradient(x, snapshot[i], parents);
            auto gr = riemannian_project(g, snapshot[i]);
            std::vector<double> v = snapshot[i];
            for (std::size_t c = 0; c < d; ++c) v[c] += alpha * gr[c];
            normalize(v);
            vecs[i] = std::move(v);  // broadcast after the barrier
        }
        if (!std::isfinite(vdot(vecs[0], vecs[0])))
            throw DivergedError("eigengame iterate became non-finite; alpha=" +
                                std::to_string(alpha));
        if (observer) observer(t, vecs);
    }

    EigenState state;
    state.vectors = vecs;
    Mat cov(d, d);
    {
        Mat xtx = matmul(x.transposed(), x);
        for (std::size_t i = 0; i < cov.size(); ++i)
            cov.data()[i] = xtx.data()[i] / static_cast<double>(x.rows());
    }
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<std::vector<double>> parents(state.vectors.begin(),
                                                 state.vectors.begin() + i);
        state.utilities.push_back(eigen_utility(state.vectors[i], parents, cov));
    }
    return state;
}

PcaResult exact_pca(const Mat& x, std::size_t k) {
    if (x.rows() < 2) throw DegenerateError("exact_pca needs at least 2 rows");
    if (k > x.cols()) throw ArgumentError("exact_pca requires k <= d");
    const std::size_t n = x.rows(), d = x.cols();

    std::vector<double> mean(d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) mean[j] += x(i, j);
    for (double& m : mean) m /= static_cast<double>(n);

    Mat centered(n, d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j) centered(i, j) = x(i, j) - mean[j];

    Mat cov = matmul(centered.transposed(), centered);
    for (std::size_t i = 0; i < cov.size(); ++i) cov.data()[i] /= static_cast<double>(n);

    auto [values, vectors] = jacobi_eigen(cov);
    double total = 0.0;
    for (double v : values) total += v > 0.0 ? v : 0.0;

    PcaResult res;
    res.components = Mat(k, d);
    for (std::size_t r = 0; r < k; ++r) {
        double ev = values[r] > 0.0 ? values[r] : 0.0;
        res.explained_variance.push_back(ev);
        res.explained_variance_ratio.push_back(total > 0.0 ? ev / total : 0.0);
        for (std::size_t j = 0; j < d; ++j) res.components(r, j) = vectors(r, j);
    }
    res.mean = std::move(mean);
    return res;
}

Mat project_rows(const Mat& m, const PcaResult& pca) {
    if (m.cols() != pca.components.cols()) throw ShapeError("project_rows dimension mismatch");
    const std::size_t k = pca.components.rows();
    Mat out(m.rows(), k);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t r = 0; r < k; ++r) {
            double s = 0.0;
            for (std::size_t j = 0; j < m.cols(); ++j)
                s += (m(i, j) - pca.mean[j]) * pca.components(r, j);
            out(i, r) = s;
        }
    }
    return out;
}

}  // namespace nmfgame
