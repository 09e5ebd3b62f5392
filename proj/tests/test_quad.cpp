#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "seccalc/quad.hpp"

using namespace seccalc;

TEST_CASE("polynomial exactness and basic panels") {
    auto q = integrate_gk<double>([](double x) { return x * x; }, 0.0, 1.0,
                                  0.0, 1e-12, 1e-12, 64, {});
    CHECK(q.value == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    CHECK_FALSE(q.divergent);

    auto q22 = integrate_gk<double>(
        [](double x) { return std::pow(x, 22); }, -1.0, 1.0, 0.0, 1e-12,
        1e-12, 256, {});
    CHECK(q22.value == doctest::Approx(2.0 / 23.0).epsilon(1e-12));
}

TEST_CASE("oscillatory and peaked integrands") {
    // integral of sin(10x) over [0, pi/2] = (1 - cos(5 pi)) / 10 = 0.2
    auto q = integrate_gk<double>([](double x) { return std::sin(10.0 * x); },
                                  0.0, 0.5 * 3.141592653589793, 0.0, 1e-12,
                                  1e-12, 512, {});
    CHECK(q.value == doctest::Approx(0.2).epsilon(1e-10));

    // Lorentzian peak of width 1e-3 away from panel seeds
    auto p = integrate_gk<double>(
        [](double x) {
            double d = x - 0.123;
            return 1e-3 / (d * d + 1e-6);
        },
        -1.0, 1.0, 0.0, 1e-10, 1e-10, 4096, {});
    double exact = std::atan((1.0 - 0.123) / 1e-3) + std::atan((1.0 + 0.123) / 1e-3);
    CHECK(p.value == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("integrable endpoint singularities are not flagged") {
    Quad1DOptions chain;
    chain.chain_left = true;
    auto q = integrate_gk<double>(
        [](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 0.0, 1e-9,
        1e-9, 4096, chain);
    CHECK(q.value == doctest::Approx(2.0).epsilon(1e-7));
    CHECK_FALSE(q.divergent);

    auto lg = integrate_gk<double>(
        [](double x) { return x > 0 ? -std::log(x) : 0.0; }, 0.0, 1.0, 0.0,
        1e-10, 1e-10, 4096, chain);
    CHECK(lg.value == doctest::Approx(1.0).epsilon(1e-9));
    CHECK_FALSE(lg.divergent);
}

TEST_CASE("non-integrable endpoint growth is flagged divergent") {
    Quad1DOptions chain;
    chain.chain_left = true;
    auto q = integrate_gk<double>(
        [](double x) { return x > 0 ? 1.0 / x : 0.0; }, 0.0, 1.0, 0.0, 1e-9,
        1e-9, 4096, chain);
    CHECK(q.divergent);
}

TEST_CASE("halfline driver with breakpoints") {
    QuadConfig cfg;
    cfg.abs_tol = 1e-11;
    cfg.rel_tol = 1e-11;
    auto e = integrate_halfline<double>(
        [](double t) { return std::exp(-t); }, 0.0, cfg, {1.0});
    CHECK(e.value == doctest::Approx(1.0).epsilon(1e-10));

    auto lor = integrate_halfline<double>(
        [](double t) { return 1.0 / (1.0 + t * t); }, 0.0, cfg, {});
    CHECK(lor.value == doctest::Approx(std::acos(0.0)).epsilon(1e-10));
}

TEST_CASE("complex-valued integrand") {
    QuadConfig cfg;
    auto q = integrate_halfline<cplx>(
        [](double t) { return std::exp(-t) * cplx{std::cos(t), std::sin(t)}; },
        0.0, cfg, {});
    // integral of e^{-t} e^{it} dt = 1/(1-i) = (1+i)/2
    CHECK(q.value.real() == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(q.value.imag() == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("tightening tolerance does not reduce accuracy") {
    auto coarse = integrate_gk<double>(
        [](double x) { return std::exp(-x * x); }, -6.0, 6.0, 0.0, 1e-5, 1e-5,
        4096, {});
    auto fine = integrate_gk<double>(
        [](double x) { return std::exp(-x * x); }, -6.0, 6.0, 0.0, 1e-12,
        1e-12, 4096, {});
    const double exact = std::sqrt(4.0 * std::acos(0.0) * 0.5) *
                         std::erf(6.0);  // sqrt(pi) erf(6)
    CHECK(std::abs(fine.value - exact) <= std::abs(coarse.value - exact) + 1e-14);
    CHECK(fine.nodes >= coarse.nodes);
}

TEST_CASE("polar driver reproduces a separable area integral") {
    // integral over the right half-plane of cos(phi)^1 * rho e^{-rho} in
    // (rho, phi): angular part 2, radial part Gamma(2) = 1
    QuadConfig cfg;
    cfg.abs_tol = 1e-10;
    cfg.rel_tol = 1e-10;
    const double hp = std::acos(0.0);
    auto q = integrate_polar<double>(
        [](double rho, seccalc::cplx) { return rho * std::exp(-rho); }, 1.0,
        -hp, hp, 0.0, cfg, {});
    CHECK(q.value == doctest::Approx(2.0).epsilon(1e-8));
    CHECK_FALSE(q.divergent);
}

TEST_CASE("deterministic results across repeated runs") {
    auto run = [] {
        QuadConfig cfg;
        const double hp = std::acos(0.0);
        return integrate_polar<double>(
                   [](double rho, seccalc::cplx dir) {
                       return rho / (1.0 + rho * rho * rho + dir.real());
                   },
                   0.5, -hp, hp, 0.0, cfg, {})
            .value;
    };
    double a = run(), b = run();
    CHECK(a == b);
}
