#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "seccalc/matops.hpp"

using namespace seccalc;

namespace {

CMatrix mat2(cplx a, cplx b, cplx c, cplx d) {
    CMatrix m(2, 2);
    m << a, b, c, d;
    return m;
}

double mnorm(const CMatrix& m) { return m.norm(); }

} // namespace

TEST_CASE("spectral norm basics") {
    CHECK(spectral_norm(mat2(3, 0, 0, 4)) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(spectral_norm(mat2(0, 1, 0, 0)) == doctest::Approx(1.0).epsilon(1e-12));
    // cross-check against a singular value decomposition
    CMatrix m = mat2({1, 2}, {0, -1}, {3, 0.5}, {2, 2});
    Eigen::JacobiSVD<CMatrix> svd(m);
    CHECK(spectral_norm(m) ==
          doctest::Approx(svd.singularValues()(0)).epsilon(1e-10));
}

TEST_CASE("linear solver") {
    CMatrix a = mat2(2, 1, 1, 3);
    CMatrix x = lu_solve(a, CMatrix::Identity(2, 2));
    CHECK(mnorm(a * x - CMatrix::Identity(2, 2)) < 1e-12);
    CHECK_THROWS(lu_solve(mat2(1, 1, 1, 1), CMatrix::Identity(2, 2)));
}

TEST_CASE("matrix exponential") {
    CMatrix d = expm(mat2(1, 0, 0, 2));
    CHECK(std::abs(d(0, 0) - std::exp(1.0)) < 1e-13);
    CHECK(std::abs(d(1, 1) - std::exp(2.0)) < 1e-12);

    CMatrix n = expm(mat2(0, 1, 0, 0));
    CHECK(std::abs(n(0, 1) - 1.0) < 1e-14);

    // scaling branch: large-norm normal matrix against the eigen oracle
    CMatrix big = 40.0 * mat2(0, -1, 1, 0);
    CMatrix e = expm(big);
    // exp(40 J) = [[cos 40, -sin 40], [sin 40, cos 40]]
    CHECK(std::abs(e(0, 0) - std::cos(40.0)) < 1e-10);
    CHECK(std::abs(e(1, 0) - std::sin(40.0)) < 1e-10);
}

TEST_CASE("operator classification") {
    auto suite = test_matrix_suite();
    CHECK(suite.size() == 9);
    for (const auto& nm : suite) {
        SectorialOp op(nm.A, nm.name);
        if (nm.name == "jordan2") {
            CHECK(op.jordan2());
            CHECK(op.single_eigenvalue());
            CHECK_FALSE(op.diagonalizable());
            CHECK(op.theta() == doctest::Approx(0.0));
        }
        if (nm.name == "upwind8") {
            CHECK(op.single_eigenvalue());
            CHECK_FALSE(op.diagonalizable());
            CHECK(op.theta() == doctest::Approx(0.0));
            CHECK(op.spectral_radius() == doctest::Approx(8.0));
        }
        if (nm.name == "diag12") {
            CHECK(op.diagonalizable());
            CHECK(op.theta() == doctest::Approx(0.0));
        }
        if (nm.name == "rot_pi3")
            CHECK(op.theta() == doctest::Approx(PI / 3).epsilon(1e-10));
    }
}

TEST_CASE("sector constants") {
    SectorialOp one(CMatrix::Identity(1, 1), "one");
    CHECK(one.sector_constant(PI / 2) == doctest::Approx(1.0).epsilon(1e-9));

    auto rot = SectorialOp(2.0 * mat2(std::cos(PI / 6), -std::sin(PI / 6),
                                      std::sin(PI / 6), std::cos(PI / 6)),
                           "rot_pi6");
    double m_low = rot.sector_constant(rot.theta() + 0.2);
    double m_half = rot.sector_constant(PI / 2);
    CHECK(m_low >= m_half - 1e-12);  // wider sup region, larger constant
    CHECK(m_half >= 1.0);
    CHECK_THROWS_AS(rot.sector_constant(PI / 6 - 0.1), std::domain_error);

    // positive scaling leaves the constant unchanged
    SectorialOp scaled(CMatrix(5.0 * rot.mat()), "rot_scaled");
    CHECK(scaled.sector_constant(PI / 2) ==
          doctest::Approx(m_half).epsilon(1e-9));
}

TEST_CASE("fractional powers agree across routes") {
    // diagonalizable route vs the direct integral representation
    SectorialOp d(mat2(1, 0, 0, 2), "diag12");
    CMatrix s_eig = d.frac_power(0.5);
    CMatrix s_int = d.frac_power_integral(0.5);
    CHECK(mnorm(s_eig - s_int) < 1e-7);
    CHECK(std::abs(s_eig(1, 1) - std::sqrt(2.0)) < 1e-12);

    // nilpotent series route: sqrt of the Jordan block is I + N/2
    SectorialOp j(mat2(1, 1, 0, 1), "jordan2");
    CMatrix js = j.frac_power(0.5);
    CHECK(std::abs(js(0, 0) - 1.0) < 1e-12);
    CHECK(std::abs(js(0, 1) - 0.5) < 1e-12);

    // defective 8x8: the square of the half power returns the matrix
    auto suite = test_matrix_suite();
    for (const auto& nm : suite)
        if (nm.name == "upwind8") {
            SectorialOp u(nm.A, nm.name);
            CMatrix h = u.frac_power(0.5);
            CHECK(mnorm(h * h - nm.A) < 1e-7 * mnorm(nm.A));
        }
}

TEST_CASE("fractional resolvent powers agree across routes") {
    SectorialOp d(mat2(1, 0, 0, 2), "diag12");
    cplx z{1.0, 1.0};
    CMatrix via_eig = d.resolvent_power_any(z, 1.5);
    CMatrix direct(2, 2);
    direct.setZero();
    direct(0, 0) = cpow(1.0 + z, -1.5);
    direct(1, 1) = cpow(2.0 + z, -1.5);
    CHECK(mnorm(via_eig - direct) < 1e-12);

    // integral route cross-validation on the fractional part
    CMatrix via_int = d.resolvent_frac_integral(2.0, 0.5);
    CMatrix direct_half(2, 2);
    direct_half.setZero();
    direct_half(0, 0) = cpow(cplx{3.0, 0.0}, -0.5);
    direct_half(1, 1) = cpow(cplx{4.0, 0.0}, -0.5);
    CHECK(mnorm(via_int - direct_half) < 1e-7);

    // nilpotent closed form on the Jordan block:
    // (J + z)^{-p} = (1+z)^{-p} (I - p N / (1+z))
    SectorialOp j(mat2(1, 1, 0, 1), "jordan2");
    double p = 1.5;
    CMatrix jr = j.resolvent_power_any(z, p);
    cplx w = 1.0 + z;
    CHECK(std::abs(jr(0, 0) - cpow(w, -p)) < 1e-12);
    CHECK(std::abs(jr(0, 1) - (-p) * cpow(w, -p - 1.0)) < 1e-12);

    // integer powers match plain resolvent powers
    CMatrix r2a = j.resolvent_power_any(z, 2.0);
    CMatrix r2b = j.resolvent_pow(z, 2);
    CHECK(mnorm(r2a - r2b) < 1e-12);
}

TEST_CASE("eigen oracle on the Jordan block") {
    SectorialOp j(mat2(1, 1, 0, 1), "jordan2");
    auto f = [](cplx z) { return std::exp(-z); };
    auto fp = [](cplx z) { return -std::exp(-z); };
    auto r = j.eig_calc(f, fp);
    REQUIRE(r.has_value());
    CHECK(std::abs((*r)(0, 0) - std::exp(-1.0)) < 1e-14);
    CHECK(std::abs((*r)(0, 1) - (-std::exp(-1.0))) < 1e-14);
    CHECK(std::abs((*r)(1, 0)) < 1e-14);
}

TEST_CASE("matrix file round trips") {
    namespace fs = std::filesystem;
    fs::path tmp = fs::temp_directory_path() / "seccalc_test_mat.json";
    CMatrix m = mat2({1, 2}, {3, -4}, {0, 0.5}, {2, 0});
    save_matrix_json(tmp.string(), m);
    CMatrix back = load_matrix_json(tmp.string());
    CHECK(mnorm(m - back) == 0.0);
    fs::remove(tmp);

    fs::path mm = fs::temp_directory_path() / "seccalc_test_mat.mtx";
    {
        std::ofstream f(mm);
        f << "%%MatrixMarket matrix array complex general\n2 2\n";
        f << "1 0\n0 0\n0 0\n2 0\n";
    }
    CMatrix d = load_matrix_market(mm.string());
    CHECK(std::abs(d(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(d(1, 1) - 2.0) < 1e-15);
    CHECK(std::abs(d(0, 1)) == 0.0);
    fs::remove(mm);
}
