#if defined(__x86_64__)

#include <immintrin.h>

#include "nmfgame/kernels.hpp"

// Built with -mavx2 but no -mfma: accumulation must stay mul-then-add so every
// element rounds exactly like the scalar reference.

namespace nmfgame::kernels {
namespace {

void matmul_avx2(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
                 std::size_t n) {
    for (std::size_t i = 0; i < m; ++i) {
        const double* arow = a + i * k;
        std::size_t j = 0;
        // 4 output columns per lane group; the inner-index order per element
        // is identical to the scalar loop.
        for (; j + 4 <= n; j += 4) {
            __m256d acc = _mm256_setzero_pd();
            for (std::size_t p = 0; p < k; ++p) {
                __m256d va = _mm256_set1_pd(arow[p]);
                __m256d vb = _mm256_loadu_pd(b + p * n + j);
                acc = _mm256_add_pd(acc, _mm256_mul_pd(va, vb));
            }
            _mm256_storeu_pd(c + i * n + j, acc);
        }
        for (; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t p = 0; p < k; ++p) acc += arow[p] * b[p * n + j];
            c[i * n + j] = acc;
        }
    }
}

void clamp_avx2(const double* in, double* out, std::size_t n) {
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_max_pd(_mm256_loadu_pd(in + i), zero));
    for (; i < n; ++i) out[i] = in[i] > 0.0 ? in[i] : 0.0;
}

void mul_ratio_avx2(const double* base, const double* num, const double* den, double* out,
                    std::size_t n, double eps) {
    const __m256d veps = _mm256_set1_pd(eps);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_max_pd(_mm256_loadu_pd(den + i), veps);
        __m256d v = _mm256_div_pd(_mm256_mul_pd(_mm256_loadu_pd(base + i), _mm256_loadu_pd(num + i)), d);
        _mm256_storeu_pd(out + i, v);
    }
    for (; i < n; ++i) {
        double d = den[i] > eps ? den[i] : eps;
        out[i] = base[i] * num[i] / d;
    }
}

void step_clamp_avx2(const double* x, const double* g, double* out, std::size_t n, double eta) {
    const __m256d veta = _mm256_set1_pd(eta);
    const __m256d zero = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_sub_pd(_mm256_loadu_pd(x + i),
                                  _mm256_mul_pd(veta, _mm256_loadu_pd(g + i)));
        _mm256_storeu_pd(out + i, _mm256_max_pd(v, zero));
    }
    for (; i < n; ++i) {
        double v = x[i] - eta * g[i];
        out[i] = v > 0.0 ? v : 0.0;
    }
}

}  // namespace

const Ops& avx2_ops() {
    static const Ops ops{matmul_avx2, clamp_avx2, mul_ratio_avx2, step_clamp_avx2, "avx2"};
    return ops;
}

bool avx2_available() { return __builtin_cpu_supports("avx2"); }

}  // namespace nmfgame::kernels

#endif  // __x86_64__
