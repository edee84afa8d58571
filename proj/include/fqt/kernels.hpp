#pragma once

#include <cstddef>

// Inner arithmetic kernels with scalar reference implementations and an AVX2
// variant selected once at startup (cpuid probe, overridable with
// FQT_SIMD=scalar|avx2). Both variants are equivalence-tested; results may
// differ by reassociation/FMA at the few-ulp level, never structurally.

namespace fqt::kernels {

struct Ops {
    const char* name;
    // (wr,wi) <- (wr,wi) * (zr,zi) elementwise; also accumulates the sum of
    // the updated products into (*sum_re, *sum_im).
    void (*cmul_inplace_sum)(double* wr, double* wi, const double* zr, const double* zi,
                             std::size_t n, double* sum_re, double* sum_im);
    // plain complex sum of (wr,wi)
    void (*csum)(const double* wr, const double* wi, std::size_t n, double* sum_re,
                 double* sum_im);
    // row-major 4x4 double product: out = x * y (out must not alias inputs)
    void (*mat4_mul)(const double* x, const double* y, double* out);
};

const Ops& scalar_ops();
const Ops& avx2_ops();  // falls back to scalar_ops() when not compiled in
const Ops& ops();       // runtime-selected
bool avx2_available();  // cpu + build support

}  // namespace fqt::kernels
