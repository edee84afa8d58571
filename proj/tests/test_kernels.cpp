#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "fqt/kernels.hpp"
#include "fqt/mat4.hpp"
#include "fqt/rng.hpp"

using namespace fqt;

namespace {
std::vector<double> random_vec(SplitMix64& rng, size_t n) {
    std::vector<double> v(n);
    for (auto& x : v) x = rng.uniform(-1.0, 1.0);
    return v;
}
}  // namespace

TEST_CASE("scalar complex multiply-accumulate reference") {
    std::vector<double> wr{1.0, 0.0}, wi{0.0, 1.0};
    std::vector<double> zr{0.0, 0.0}, zi{1.0, 1.0};
    double sr = 0.0, si = 0.0;
    kernels::scalar_ops().cmul_inplace_sum(wr.data(), wi.data(), zr.data(), zi.data(), 2, &sr,
                                           &si);
    // (1)(i) = i ; (i)(i) = -1
    CHECK(wr[0] == doctest::Approx(0.0));
    CHECK(wi[0] == doctest::Approx(1.0));
    CHECK(wr[1] == doctest::Approx(-1.0));
    CHECK(wi[1] == doctest::Approx(0.0));
    CHECK(sr == doctest::Approx(-1.0));
    CHECK(si == doctest::Approx(1.0));
}

TEST_CASE("avx2 variant matches the scalar reference") {
    if (!kernels::avx2_available()) {
        MESSAGE("avx2 not available; dispatch falls back to scalar");
        CHECK(kernels::ops().name == std::string("scalar"));
        return;
    }
    SplitMix64 rng(99);
    for (size_t n : {size_t{1}, size_t{4}, size_t{7}, size_t{64}, size_t{1001}}) {
        auto wr = random_vec(rng, n), wi = random_vec(rng, n);
        auto zr = random_vec(rng, n), zi = random_vec(rng, n);
        auto wr2 = wr, wi2 = wi;
        double sr1, si1, sr2, si2;
        kernels::scalar_ops().cmul_inplace_sum(wr.data(), wi.data(), zr.data(), zi.data(), n,
                                               &sr1, &si1);
        kernels::avx2_ops().cmul_inplace_sum(wr2.data(), wi2.data(), zr.data(), zi.data(), n,
                                             &sr2, &si2);
        for (size_t k = 0; k < n; ++k) {
            CHECK(wr[k] == doctest::Approx(wr2[k]).epsilon(1e-13));
            CHECK(wi[k] == doctest::Approx(wi2[k]).epsilon(1e-13));
        }
        CHECK(sr1 == doctest::Approx(sr2).epsilon(1e-12));
        CHECK(si1 == doctest::Approx(si2).epsilon(1e-12));

        kernels::scalar_ops().csum(wr.data(), wi.data(), n, &sr1, &si1);
        kernels::avx2_ops().csum(wr.data(), wi.data(), n, &sr2, &si2);
        CHECK(sr1 == doctest::Approx(sr2).epsilon(1e-12));
        CHECK(si1 == doctest::Approx(si2).epsilon(1e-12));
    }
}

TEST_CASE("4x4 product kernels agree") {
    SplitMix64 rng(7);
    Mat4d x, y;
    for (auto& v : x.a) v = rng.uniform(-2.0, 2.0);
    for (auto& v : y.a) v = rng.uniform(-2.0, 2.0);
    Mat4d scalar_out, fast_out;
    kernels::scalar_ops().mat4_mul(x.a.data(), y.a.data(), scalar_out.a.data());
    kernels::ops().mat4_mul(x.a.data(), y.a.data(), fast_out.a.data());
    const Mat4d generic = detail::mul_generic(x, y);
    for (int i = 0; i < 16; ++i) {
        CHECK(scalar_out.a[i] == doctest::Approx(generic.a[i]).epsilon(1e-14));
        CHECK(fast_out.a[i] == doctest::Approx(generic.a[i]).epsilon(1e-13));
    }
}

TEST_CASE("dispatch reports a known kernel set") {
    const std::string name = kernels::ops().name;
    CHECK((name == "scalar" || name == "avx2"));
}
