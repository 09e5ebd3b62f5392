#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "seccalc/reprkernel.hpp"

using namespace seccalc;

TEST_CASE("log-edge kernel mass identity") {
    for (double psi : {PI / 4, PI / 2, 3 * PI / 4}) {
        KernelIdentityReport r = arccot_kernel_identity(psi, 1e-10);
        CHECK(r.ok);
        CHECK(std::abs(r.lhs - psi / 2.0) < 1e-10);
        CHECK(r.nu == doctest::Approx(PI / (2.0 * psi)));
    }
}

TEST_CASE("kernel helpers behave at extreme arguments") {
    // large exponent, tiny t: arccot(t^nu) -> pi/2, log kernel -> 2 t^nu
    CHECK(std::abs(arccot_pow({1e-8, 0.0}, 40.0).real() - PI / 2) < 1e-12);
    CHECK(std::abs(arccot_pow({1e8, 0.0}, 40.0)) < 1e-300);
    CHECK(log_edge_kernel(1e-8, 40.0) == doctest::Approx(0.0).epsilon(1e-280));
    // near t=1 the kernel has its logarithmic spike but stays finite nearby
    CHECK(std::isfinite(log_edge_kernel(1.0 + 1e-9, 3.0)));
    CHECK(log_edge_kernel(0.5, 1.0) ==
          doctest::Approx(std::log(1.5 / 0.5)).epsilon(1e-12));
}

TEST_CASE("area reproducing formula on sample points") {
    SectorFn r1 = catalog_lookup("resolvent:1");
    std::vector<cplx> pts = {{1.0, 0.0}, {0.3, 0.2}, {5.0, -2.0}};
    QuadConfig cfg;
    cfg.abs_tol = 1e-10;
    cfg.rel_tol = 1e-10;
    ReproReport rep = reproduce_ds(r1, 0.0, pts, cfg);
    CHECK(rep.ok);
    CHECK(rep.max_abs_err < 1e-8);

    // weight s=1 must reproduce the same function values
    ReproReport rep1 = reproduce_ds(r1, 1.0, pts, cfg);
    CHECK(rep1.max_abs_err < 1e-8);
}

TEST_CASE("half-plane lift reproducing formula") {
    SectorFn r1 = catalog_lookup("resolvent:1");
    double psi = 2.0 * PI / 5.0;
    std::vector<cplx> pts = {{1.0, 0.0}, std::polar(2.0, 0.9 * psi),
                             std::polar(0.4, -0.9 * psi)};
    QuadConfig cfg;
    cfg.abs_tol = 1e-10;
    ReproReport rep = reproduce_hpsi(r1, psi, pts, cfg);
    CHECK(rep.ok);
    CHECK(rep.max_abs_err < 1e-7);
}

TEST_CASE("edge-average reproducing formula") {
    SectorFn r1 = catalog_lookup("resolvent:1");
    for (double psi : {PI / 3, 3 * PI / 4}) {
        std::vector<cplx> pts = {{1.0, 0.0}, std::polar(3.0, 0.5 * psi)};
        QuadConfig cfg;
        cfg.abs_tol = 1e-9;
        ReproReport rep = reproduce_arccot(r1, psi, pts, cfg);
        CHECK(rep.ok);
        CHECK(rep.max_abs_err < 1e-6);
    }
}

TEST_CASE("decay probe classifies power behavior of the derivative") {
    SectorFn r1 = catalog_lookup("resolvent:1");
    DecayProbe p = decay_probe(r1);
    CHECK(p.p_inf == doctest::Approx(-2.0).epsilon(1e-3));
    CHECK(std::abs(p.p_zero) < 1e-3);

    SectorFn ze = catalog_lookup("exppoly:1");
    DecayProbe pz = decay_probe(ze);
    // f' = (1 - z) e^{-z}: slope 0 at the origin; at the far probe points the
    // exponential has already saturated the underflow floor, so the reported
    // slope is only guaranteed non-positive
    CHECK(std::abs(pz.p_zero) < 1e-3);
    CHECK(pz.p_inf <= 0.0);
}

TEST_CASE("split integrator handles the t=1 spike") {
    // with nu = 1 the half-angle is pi/2, so the kernel mass identity gives
    // integral of log|(1+t)/(1-t)| / t dt = 2 pi * (pi/4) = pi^2 / 2
    QuadConfig cfg;
    cfg.abs_tol = 1e-11;
    auto q = integrate_split_at_one<double>(
        [](double t) { return log_edge_kernel(t, 1.0) / t; }, 0.0, cfg, {});
    CHECK(q.value == doctest::Approx(PI * PI / 2.0).epsilon(1e-9));
}
