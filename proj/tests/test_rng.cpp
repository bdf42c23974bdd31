#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eqsim/errors.hpp"
#include "eqsim/rng.hpp"

#include <cmath>

using namespace eqsim;

TEST_CASE("identical (seed, stream) reproduces the sequence") {
    RngStream a(42, 7), b(42, 7);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());

    RngStream c(42, 7), d(42, 7);
    for (int i = 0; i < 100; ++i) {
        const Cplx x = gaussian_complex(c, 2.5);
        const Cplx y = gaussian_complex(d, 2.5);
        CHECK(x == y);
    }
}

TEST_CASE("distinct stream ids decorrelate") {
    RngStream a(42, 0), b(42, 1);
    // crude but sufficient: sequences differ and sample correlation is small
    std::size_t equal = 0;
    double corr = 0.0;
    const int n = 10000;
    for (int i = 0; i < n; ++i) {
        const double x = a.next_unit() - 0.5;
        const double y = b.next_unit() - 0.5;
        if (x == y) ++equal;
        corr += x * y;
    }
    CHECK(equal == 0);
    CHECK(std::abs(corr / n) < 3.0 / (12.0 * std::sqrt(double(n)))); // 3 sigma of uniform product
}

TEST_CASE("zero variance yields exactly zero") {
    RngStream rng(1, 0);
    for (int i = 0; i < 10; ++i) {
        const Cplx v = gaussian_complex(rng, 0.0);
        CHECK(v.real() == 0.0);
        CHECK(v.imag() == 0.0);
    }
}

TEST_CASE("negative variance is rejected") {
    RngStream rng(1, 0);
    CHECK_THROWS_AS(gaussian_complex(rng, -1e-9), config_error);
}

TEST_CASE("unit-variance moments over a million draws") {
    RngStream rng(2026, 3);
    const int n = 1000000;
    double p2 = 0.0, cross = 0.0, re_mean = 0.0, im_mean = 0.0;
    for (int i = 0; i < n; ++i) {
        const Cplx v = gaussian_complex(rng, 1.0);
        p2 += std::norm(v);
        cross += v.real() * v.imag();
        re_mean += v.real();
        im_mean += v.imag();
    }
    p2 /= n;
    cross /= n;
    CHECK(p2 > 0.995);
    CHECK(p2 < 1.005);
    // off-diagonal covariance of the components: estimator sigma = 0.5/sqrt(n)
    CHECK(std::abs(cross) < 3.0 * 0.5 / std::sqrt(double(n)));
    CHECK(std::abs(re_mean / n) < 3.0 / std::sqrt(2.0 * n));
    CHECK(std::abs(im_mean / n) < 3.0 / std::sqrt(2.0 * n));
}

TEST_CASE("index draws cover the range") {
    RngStream rng(5, 5);
    bool seen[4] = {false, false, false, false};
    for (int i = 0; i < 1000; ++i) {
        const std::size_t k = rng.next_index(4);
        REQUIRE(k < 4);
        seen[k] = true;
    }
    for (bool s : seen) CHECK(s);
    CHECK_THROWS_AS(rng.next_index(0), config_error);
}
