#include "nmfgame/kernels.hpp"

namespace nmfgame::kernels {
namespace {

void matmul_scalar(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
                   std::size_t n) {
    for (std::size_t i = 0; i < m; ++i) {
        const double* arow = a + i * k;
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t p = 0; p < k; ++p) acc += arow[p] * b[p * n + j];
            c[i * n + j] = acc;
        }
    }
}

void clamp_scalar(const double* in, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) out[i] = in[i] > 0.0 ? in[i] : 0.0;
}

void mul_ratio_scalar(const double* base, const double* num, const double* den, double* out,
                      std::size_t n, double eps) {
    for (std::size_t i = 0; i < n; ++i) {
        double d = den[i] > eps ? den[i] : eps;
        out[i] = base[i] * num[i] / d;
    }
}

void step_clamp_scalar(const double* x, const double* g, double* out, std::size_t n, double eta) {
    for (std::size_t i = 0; i < n; ++i) {
        double v = x[i] - eta * g[i];
        out[i] = v > 0.0 ? v : 0.0;
    }
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops{matmul_scalar, clamp_scalar, mul_ratio_scalar, step_clamp_scalar,
                         "scalar"};
    return ops;
}

}  // namespace nmfgame::kernels
