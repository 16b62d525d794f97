#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "halfline/potential.hpp"
#include "halfline/specfun.hpp"

using namespace hls;
using Catch::Approx;

namespace {

double brute_force_g(double a, double Y = 50.0, int n = 1'000'000) {
    double best = 1.0; // y -> infinity limit
    for (int i = 0; i <= n; ++i) {
        const double y = Y * i / n;
        const double e = std::exp(-y);
        const double v = 1.0 + e * e - 2.0 * e * std::cos(a * y);
        best = std::max(best, v);
    }
    return std::sqrt(best);
}

} // namespace

TEST_CASE("g at the origin and evenness") {
    CHECK(g(0.0).value == Approx(1.0).margin(1e-9));
    for (double a : {0.3, 1.0, 3.0, 7.5, 19.0}) {
        CHECK(g(-a).value == g(a).value); // exact: maximized modulus is even in a
    }
}

TEST_CASE("g bounds") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> U(-50.0, 50.0);
    for (int i = 0; i < 100; ++i) {
        const double a = U(rng);
        const double v = g(a).value;
        CHECK(v >= 1.0 - 1e-12);
        CHECK(v <= 2.0 + 1e-12);
    }
}

TEST_CASE("g matches dense-grid brute force") {
    for (double a : {0.5, 1.0, 2.0, 5.0}) {
        CHECK(g(a).value == Approx(brute_force_g(a)).margin(1e-6));
    }
}

TEST_CASE("optimizer never falls below the brute-force grid") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> U(-50.0, 50.0);
    for (int i = 0; i < 100; ++i) {
        const double a = U(rng);
        const double coarse = brute_force_g(a, 60.0, 200'000);
        CHECK(g(a).value >= coarse - 1e-9);
    }
}

TEST_CASE("g_sigma limits") {
    const cplx mu{0.3, 1.2};
    for (double a : {0.0, 1.0, -2.5}) {
        CHECK(g_sigma(a, infinity, mu).value == Approx(g(a).value).margin(1e-12));
    }
    // sigma = 0: w = -1, sup attained at y = 0 with value 2
    CHECK(g_sigma(0.7, 0.0, mu).value == Approx(2.0).margin(1e-9));
    // sigma = Im mu with Re mu = 0: w = 0, so sup_y |e^{iay}| = 1
    CHECK(g_sigma(0.0, 1.0, cplx{0.0, 1.0}).value == Approx(1.0).margin(1e-12));
}

TEST_CASE("g_sigma stays within [1, 2]") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> U(0.0, 5.0);
    std::uniform_real_distribution<double> A(-20.0, 20.0);
    for (int i = 0; i < 50; ++i) {
        const cplx mu{U(rng) - 2.5, U(rng) + 1e-3};
        const double v = g_sigma(A(rng), U(rng), mu).value;
        CHECK(v >= 1.0 - 1e-12);
        CHECK(v <= 2.0 + 1e-12);
    }
    CHECK_THROWS_AS(g_sigma(1.0, 1.0, cplx{1.0, -0.5}), BranchError);
}
