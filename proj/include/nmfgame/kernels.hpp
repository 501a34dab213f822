#pragma once

#include <cstddef>
#include <string>

namespace nmfgame::kernels {

// Hot inner loops, raw-pointer form. Every backend must produce output
// bit-identical to the scalar reference: the SIMD matmul vectorizes across
// output columns so each element keeps the same left-to-right summation over
// the inner index, and the elementwise kernels are lane-independent.
struct Ops {
    // c[m x n] = a[m x k] * b[k x n], row-major.
    void (*matmul)(const double* a, const double* b, double* c, std::size_t m, std::size_t k,
                   std::size_t n);
    // out[i] = max(0, in[i])
    void (*clamp_nonneg)(const double* in, double* out, std::size_t n);
    // out[i] = base[i] * num[i] / max(den[i], eps)   (multiplicative-update ratio)
    void (*mul_ratio)(const double* base, const double* num, const double* den, double* out,
                      std::size_t n, double eps);
    // out[i] = max(0, x[i] - eta * g[i])             (projected gradient step)
    void (*step_clamp)(const double* x, const double* g, double* out, std::size_t n, double eta);
    const char* name;
};

const Ops& scalar_ops();
#if defined(__x86_64__)
const Ops& avx2_ops();
bool avx2_available();
#endif

// Backend picked at startup: AVX2 when the CPU has it, scalar otherwise.
// NMFGAME_KERNELS=scalar|avx2 in the environment overrides the choice.
const Ops& active_ops();

// Test hook; returns the previously active backend name.
std::string set_active_backend(const std::string& name);

}  // namespace nmfgame::kernels
