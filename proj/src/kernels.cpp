#include "fqt/kernels.hpp"

#include <cstdlib>
#include <cstring>

#include "fqt/mat4.hpp"

namespace fqt::kernels {

namespace {

void cmul_inplace_sum_scalar(double* wr, double* wi, const double* zr, const double* zi,
                             std::size_t n, double* sum_re, double* sum_im) {
    double sr = 0.0, si = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
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

void csum_scalar(const double* wr, const double* wi, std::size_t n, double* sum_re,
                 double* sum_im) {
    double sr = 0.0, si = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sr += wr[k];
        si += wi[k];
    }
    *sum_re = sr;
    *sum_im = si;
}

void mat4_mul_scalar(const double* x, const double* y, double* out) {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double s = x[4 * i + 0] * y[0 + j];
            s += x[4 * i + 1] * y[4 + j];
            s += x[4 * i + 2] * y[8 + j];
            s += x[4 * i + 3] * y[12 + j];
            out[4 * i + j] = s;
        }
}

const Ops kScalar{"scalar", cmul_inplace_sum_scalar, csum_scalar, mat4_mul_scalar};

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const Ops& select() {
    const char* env = std::getenv("FQT_SIMD");
    if (env != nullptr) {
        if (std::strcmp(env, "scalar") == 0) return scalar_ops();
        if (std::strcmp(env, "avx2") == 0 && avx2_available()) return avx2_ops();
        return scalar_ops();
    }
    return avx2_available() ? avx2_ops() : scalar_ops();
}

}  // namespace

const Ops& scalar_ops() { return kScalar; }

#if !FQT_HAVE_AVX2_TU
const Ops& avx2_ops() { return kScalar; }
#endif

bool avx2_available() {
#if FQT_HAVE_AVX2_TU
    return cpu_has_avx2();
#else
    return false;
#endif
}

const Ops& ops() {
    static const Ops& chosen = select();
    return chosen;
}

}  // namespace fqt::kernels

namespace fqt {

// route the double 4x4 product through the selected kernel
template <>
Mat4<double> operator*(const Mat4<double>& x, const Mat4<double>& y) {
    Mat4<double> r;
    kernels::ops().mat4_mul(x.a.data(), y.a.data(), r.a.data());
    return r;
}

}  // namespace fqt
