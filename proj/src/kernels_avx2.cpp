// AVX2/FMA variants of the inner kernels. Compiled with -mavx2 -mfma in its
// own translation unit; only dispatched when the CPU reports support.

#include "fqt/kernels.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

namespace fqt::kernels {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

void cmul_inplace_sum_avx2(double* wr, double* wi, const double* zr, const double* zi,
                           std::size_t n, double* sum_re, double* sum_im) {
    __m256d accr = _mm256_setzero_pd();
    __m256d acci = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        __m256d ar = _mm256_loadu_pd(wr + k);
        __m256d ai = _mm256_loadu_pd(wi + k);
        __m256d br = _mm256_loadu_pd(zr + k);
        __m256d bi = _mm256_loadu_pd(zi + k);
        __m256d nr = _mm256_fmsub_pd(ar, br, _mm256_mul_pd(ai, bi));
        __m256d ni = _mm256_fmadd_pd(ar, bi, _mm256_mul_pd(ai, br));
        _mm256_storeu_pd(wr + k, nr);
        _mm256_storeu_pd(wi + k, ni);
        accr = _mm256_add_pd(accr, nr);
        acci = _mm256_add_pd(acci, ni);
    }
    double sr = hsum(accr), si = hsum(acci);
    for (; k < n; ++k) {
        double nr = wr[k] * zr[k] - wi[k] * zi[k];
        double ni = wr[k] * zi[k] + wi[k] * zr[k];
        wr[k] = nr;
        wi[k] = ni;
        sr += nr;
        si += ni;
    }
    *sum_re = sr;
    *sum_im = si;
}

void csum_avx2(const double* wr, const double* wi, std::size_t n, double* sum_re,
               double* sum_im) {
    __m256d accr = _mm256_setzero_pd();
    __m256d acci = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k + 4 <= n; k += 4) {
        accr = _mm256_add_pd(accr, _mm256_loadu_pd(wr + k));
        acci = _mm256_add_pd(acci, _mm256_loadu_pd(wi + k));
    }
    double sr = hsum(accr), si = hsum(acci);
    for (; k < n; ++k) {
        sr += wr[k];
        si += wi[k];
    }
    *sum_re = sr;
    *sum_im = si;
}

void mat4_mul_avx2(const double* x, const double* y, double* out) {
    __m256d y0 = _mm256_loadu_pd(y + 0);
    __m256d y1 = _mm256_loadu_pd(y + 4);
    __m256d y2 = _mm256_loadu_pd(y + 8);
    __m256d y3 = _mm256_loadu_pd(y + 12);
    for (int i = 0; i < 4; ++i) {
        __m256d r = _mm256_mul_pd(_mm256_set1_pd(x[4 * i + 0]), y0);
        r = _mm256_fmadd_pd(_mm256_set1_pd(x[4 * i + 1]), y1, r);
        r = _mm256_fmadd_pd(_mm256_set1_pd(x[4 * i + 2]), y2, r);
        r = _mm256_fmadd_pd(_mm256_set1_pd(x[4 * i + 3]), y3, r);
        _mm256_storeu_pd(out + 4 * i, r);
    }
}

const Ops kAvx2{"avx2", cmul_inplace_sum_avx2, csum_avx2, mat4_mul_avx2};

}  // namespace

const Ops& avx2_ops() { return kAvx2; }

}  // namespace fqt::kernels

#endif  // x86
