#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "halfline/enclosure.hpp"

using namespace hls;
using Catch::Approx;

TEST_CASE("alpha exponent") {
    CHECK(alpha_exponent(4.0, 4.0).alpha == Approx(2.0));
    CHECK(alpha_exponent(3.0, 6.0).alpha == Approx(2.0));
    CHECK(alpha_exponent(infinity, infinity).alpha == Approx(1.0));
    CHECK(alpha_exponent(2.0, 2.0).extremal);
    CHECK(alpha_exponent(2.0, infinity).alpha == Approx(2.0));
    CHECK(alpha_exponent(1.0, infinity).extremal);
    CHECK_THROWS_AS(alpha_exponent(1.5, 2.0), InadmissibleExponents);
    CHECK_THROWS_AS(alpha_exponent(-1.0, 2.0), InadmissibleExponents);
}

TEST_CASE("interpolation exponents satisfy the index identity") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> A(1.0, 10.0);
    std::uniform_real_distribution<double> T(0.01, 0.99);
    for (int i = 0; i < 100; ++i) {
        const double alpha = A(rng), t = T(rng);
        const auto [beta, gamma] = interpolation_exponents(alpha, t);
        CHECK(1.0 / alpha + 1.0 / beta == Approx(1.0 / gamma + 1.0).epsilon(1e-14));
        CHECK(beta >= 1.0);
        CHECK(gamma >= 1.0);
    }
    CHECK_THROWS_AS(interpolation_exponents(2.0, 0.0), ExponentError);
    CHECK_THROWS_AS(interpolation_exponents(0.5, 0.5), ExponentError);
}

TEST_CASE("conjugate exponents") {
    CHECK(conjugate_exponent(2.0) == Approx(2.0));
    CHECK(conjugate_exponent(4.0) == Approx(4.0 / 3.0));
    CHECK(conjugate_exponent(infinity) == 1.0);
    CHECK_THROWS_AS(conjugate_exponent(1.0), ExponentError);
}

TEST_CASE("symmetric-exponent radius coincides with the general one") {
    // r = s: the (r, s) bound and its r = s specialization must agree exactly
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> R(2.1, 12.0);
    std::uniform_real_distribution<double> N(0.1, 5.0);
    std::uniform_real_distribution<double> T(0.05, 2.0 * M_PI - 0.05);
    for (int i = 0; i < 200; ++i) {
        const double r = R(rng), na = N(rng), nb = N(rng), theta = T(rng);
        const ExponentConfig cfg{2.0, r, r};
        const double general = bound_thm1(na, nb, cfg, theta);
        const double special = bound_cor1(na, nb, r, theta);
        CHECK(special == Approx(general).epsilon(1e-12));
    }
}

TEST_CASE("gamma parametrization matches the symmetric radius under sqrt splitting") {
    // a = b = sqrt(|q|) phases aside, r = 2 gamma + 1:
    // ||a||_r^r ||b||_r^r = (int |q|^{gamma+1/2})^2
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> G(0.55, 4.0);
    std::uniform_real_distribution<double> Q(0.1, 8.0);
    std::uniform_real_distribution<double> T(0.05, 2.0 * M_PI - 0.05);
    for (int i = 0; i < 200; ++i) {
        const double gamma = G(rng), I = Q(rng), theta = T(rng);
        const double r = 2.0 * gamma + 1.0;
        const double norm_r = std::pow(I, 1.0 / r); // ||a||_r = ||b||_r = I^{1/r}
        const double via_gamma = bound_cor2(I, gamma, theta);
        const double via_r = bound_cor1(norm_r, norm_r, r, theta);
        CHECK(via_gamma == Approx(via_r).epsilon(1e-12));
    }
}

TEST_CASE("self-adjoint specialization is the theta = pi slice") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> G(0.55, 4.0);
    std::uniform_real_distribution<double> Q(0.1, 8.0);
    for (int i = 0; i < 100; ++i) {
        const double gamma = G(rng), I = Q(rng);
        CHECK(bound_rem1(I, gamma) == Approx(bound_cor2(I, gamma, M_PI)).epsilon(1e-14));
    }
}

TEST_CASE("sup-bound radius at theta = pi") {
    // g(0) = 1, so the radius is (||a|| ||b|| / 2)^2
    CHECK(bound_thm2(3.0, 2.0, M_PI) == Approx(9.0).epsilon(1e-9));
    // negative-eigenvalue alpha form
    const ExponentConfig cfg{2.0, 4.0, 4.0}; // alpha = 2
    const double v = bound_thm3_negative(1.5, 2.0, cfg);
    const double rhs = std::pow(2.0, -2.0) * std::pow(1.5 * 2.0, 4.0);
    CHECK(v == Approx(std::pow(rhs, 1.0 / 3.0)).epsilon(1e-14));
    // thm1 at theta = pi dominates thm3's negative-axis radius by the sin factor
    CHECK(bound_thm1(1.5, 2.0, cfg, M_PI) == Approx(v).epsilon(1e-14));
}

TEST_CASE("weighted radii reproduce their defining arithmetic") {
    const double r = 3.0, tau = 1.0, theta = 0.8, W = 2.5;
    const double sh = std::sin(0.5 * theta);
    const double c3 = std::pow(r / (r - 2.0) * sh, 2.0 - r) / (tau * r - 1.0) * W;
    CHECK(bound_cor3(W, r, tau, theta) == Approx(std::pow(c3, 1.0 / (r - 1.0))).epsilon(1e-14));
    const double c4 = std::pow(r / (r - 2.0) * sh, 2.0 - r) / (tau * r) * W;
    CHECK(bound_cor4(W, r, tau, theta) == Approx(std::pow(c4, 1.0 / (r - 1.0))).epsilon(1e-14));
    CHECK_THROWS_AS(bound_cor3(W, 3.0, 0.2, theta), InadmissibleExponents); // tau r <= 1
    CHECK_THROWS_AS(bound_cor4(W, 3.0, -0.1, theta), InadmissibleExponents);
}

TEST_CASE("Robin radius fixed point") {
    // sigma = infinity falls back to the Dirichlet sup bound
    CHECK(bound_thm4(1.7, infinity, 2.0) == Approx(bound_thm2(1.7, 1.0, 2.0)).epsilon(1e-14));
    // sigma = 0: the reflection factor is -1 and the sup equals 2 identically,
    // so the fixed point is (norm product)^2
    for (double np : {0.5, 1.0, 3.0}) {
        CHECK(bound_thm4(np, 0.0, M_PI) == Approx(np * np).epsilon(1e-10));
        CHECK(bound_thm4(np, 0.0, 1.3) == Approx(np * np).epsilon(1e-10));
    }
    CHECK(bound_thm4(0.0, 1.0, M_PI) == 0.0);
    // generic sigma: the result is a genuine fixed point of the ray-wise map
    for (double sigma : {0.3, 1.0, 5.0}) {
        for (double theta : {1.0, M_PI, 5.0}) {
            const double np = 2.0;
            const double R = bound_thm4(np, sigma, theta);
            const cplx mu = std::sqrt(R) * std::polar(1.0, 0.5 * theta);
            const double cot_half = std::cos(0.5 * theta) / std::sin(0.5 * theta);
            const double image = std::pow(0.5 * g_sigma(cot_half, sigma, mu).value * np, 2.0);
            CHECK(R == Approx(image).epsilon(1e-8));
        }
    }
}

TEST_CASE("weak-norm radius scales correctly in the constant") {
    const ExponentConfig cfg{2.0, 4.0, 4.0}; // alpha = 2
    const double base = bound_thm5_weak(1.2, 0.9, cfg, 2.5, 1.0);
    const double scaled = bound_thm5_weak(1.2, 0.9, cfg, 2.5, 8.0);
    CHECK(scaled == Approx(base * std::pow(8.0, 1.0 / 3.0)).epsilon(1e-14));
    CHECK(base == Approx(bound_thm1(1.2, 0.9, cfg, 2.5)).epsilon(1e-14));
    CHECK_THROWS_AS(bound_thm5_weak(1.0, 1.0, cfg, 2.5, -1.0), std::invalid_argument);

    CHECK(bound_cor5(2.0, 1.0, 3.0) == Approx(6.0).epsilon(1e-14));
    CHECK(bound_cor5(4.0, 2.0, 1.0) == Approx(2.0).epsilon(1e-14));
}

TEST_CASE("polynomially weighted sup-norm radius") {
    const double p = 2.0, tau = 1.0, theta = M_PI, W = 3.0;
    // g(0) = 1 and p' = 2: radius = (W / (2 sqrt(p' tau - 1)))^2
    CHECK(bound_rem3(W, p, tau, theta) == Approx(std::pow(0.5 * W, 2.0)).epsilon(1e-9));
    CHECK_THROWS_AS(bound_rem3(W, 2.0, 0.3, theta), InadmissibleExponents);
}

TEST_CASE("inadmissible parameter guards") {
    CHECK_THROWS_AS(bound_cor1(1.0, 1.0, 1.5, 1.0), InadmissibleExponents);
    CHECK_THROWS_AS(bound_cor1(1.0, 1.0, 2.5, 1.0, 3.0), InadmissibleExponents); // p > r
    CHECK_THROWS_AS(bound_cor2(1.0, 0.4, 1.0), InadmissibleExponents);
    CHECK_THROWS_AS(bound_cor2(1.0, 0.8, 1.0, 3.0), InadmissibleExponents); // 2g < p-1
    const ExponentConfig extremal{2.0, 2.0, 2.0};
    CHECK_THROWS_AS(bound_thm1(1.0, 1.0, extremal, 1.0), InadmissibleExponents);
    const ExponentConfig bad_p{6.0, 4.0, 4.0}; // p > s
    CHECK_THROWS_AS(bound_thm1(1.0, 1.0, bad_p, 1.0), InadmissibleExponents);
    CHECK_THROWS_AS(bound_thm2(1.0, 1.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(bound_thm2(1.0, 1.0, 2.0 * M_PI), std::domain_error);
}

TEST_CASE("sampled regions and membership") {
    // radius linear in theta: interpolation is exact at and between samples
    auto region = enclosure_region([](double t) { return 1.0 + t; }, Provenance::Thm2);
    CHECK(region.thetas.size() == 720);
    CHECK(region.thetas.front() == Approx(1e-3));
    CHECK(region.thetas.back() == Approx(2.0 * M_PI - 1e-3));
    CHECK(region_radius_at(region, 2.0) == Approx(3.0).epsilon(1e-12));
    CHECK(region_radius_at(region, 0.0) == Approx(1.0 + 1e-3)); // clamped to the first sample

    CHECK(contains(region, std::polar(2.0, 3.0)));
    CHECK_FALSE(contains(region, std::polar(8.0, 3.0)));
    CHECK_THROWS_AS(contains(region, cplx{1.0, 0.0}), EssentialSpectrumError);

    // infinite radii mark inadmissible sectors
    auto partial = enclosure_region(
        [](double t) { return t < 1.0 ? infinity : 2.0; }, Provenance::Cor1);
    CHECK(std::isinf(region_radius_at(partial, 0.5)));
    CHECK(contains(partial, std::polar(100.0, 0.5)));
    CHECK(provenance_name(partial.provenance) == std::string("cor1"));
}
