#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fqt/spectrum.hpp"

using namespace fqt;

TEST_CASE("unmodulated spectrum") {
    const auto s = weights_unmodulated();
    CHECK(s.p(0) == doctest::Approx(1.0));
    CHECK(s.p(1) == 0.0);
    CHECK(s.p(-1) == 0.0);
    CHECK(s.sum() == doctest::Approx(1.0));
    CHECK(s.deficit == doctest::Approx(0.0));
    CHECK(s.symmetric());
}

TEST_CASE("sinusoidal spectrum") {
    const auto s = weights_sinusoidal(0.8, 0.2);
    CHECK(s.p(0) == doctest::Approx(0.68).epsilon(1e-14));
    CHECK(s.p(1) == doctest::Approx(0.16).epsilon(1e-14));
    CHECK(s.p(-1) == doctest::Approx(0.16).epsilon(1e-14));
    CHECK(s.nu == doctest::Approx(0.2));
    CHECK(s.symmetric());

    const auto s0 = weights_sinusoidal(0.0, 0.2);
    CHECK(s0.p(0) == doctest::Approx(1.0));
    CHECK(s0.max_abs_q() == 0);

    for (double lam : {0.1, 0.3, 0.5, 0.7, 0.9, 1.0})
        CHECK(weights_sinusoidal(lam, 0.1).sum() == doctest::Approx(1.0).epsilon(1e-15));

    CHECK_THROWS_AS(weights_sinusoidal(1.1, 0.2), std::domain_error);
    CHECK_THROWS_AS(weights_sinusoidal(-0.2, 0.2), std::domain_error);
}

TEST_CASE("pi-flip spectrum keeps its truncation deficit") {
    const auto s = weights_pi_flip(0.3);
    CHECK(s.p(1) == doctest::Approx(0.405284734569).epsilon(1e-10));
    CHECK(s.p(-1) == doctest::Approx(0.405284734569).epsilon(1e-10));
    CHECK(s.p(0) == 0.0);
    CHECK(s.deficit == doctest::Approx(1.0 - 8.0 / (M_PI * M_PI)).epsilon(1e-14));
    CHECK(s.deficit == doctest::Approx(0.189430530861).epsilon(1e-9));
    CHECK(s.symmetric());
}

TEST_CASE("spectrum constructor guards") {
    CHECK_THROWS_AS(make_spectrum({{0, 0.5}, {0, 0.5}}, 0.1), std::domain_error);
    CHECK_THROWS_AS(make_spectrum({{0, -0.1}}, 0.1), std::domain_error);
    CHECK_THROWS_AS(make_spectrum({{0, 0.9}, {1, 0.2}}, 0.1), std::domain_error);
    const auto s = make_spectrum({{2, 0.1}, {-2, 0.2}, {0, 0.5}}, 0.1);
    CHECK(s.deficit == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(s.max_abs_q() == 2);
    CHECK_FALSE(s.symmetric());
    CHECK(s.weights.front().q == -2);  // sorted
}
