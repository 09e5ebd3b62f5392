#pragma once

#include <Eigen/Dense>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "seccalc/quad.hpp"

namespace seccalc {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

template <>
struct QuadOps<CMatrix> {
    static double norm(const CMatrix& m) { return m.norm(); }  // Frobenius
};

// operator 2-norm by power iteration on M^* M, fixed seed, deterministic
double spectral_norm(const CMatrix& M, double tol = 1e-13, int max_iter = 500);

// A X = B by partial-pivot LU with one step of iterative refinement; throws
// if the refined residual exceeds 1e-10 * ||A||_F * n
CMatrix lu_solve(const CMatrix& A, const CMatrix& B);

// matrix exponential, Pade-13 with scaling and squaring
CMatrix expm(const CMatrix& M);

// A sectorial matrix together with its spectral data, measured sectoriality
// constants, and a resolvent-power cache shared by the calculi.
class SectorialOp {
public:
    explicit SectorialOp(CMatrix A, std::string name = "op");

    const CMatrix& mat() const { return A_; }
    int dim() const { return (int)A_.rows(); }
    const std::string& name() const { return name_; }

    const CVector& eigenvalues() const { return eigvals_; }
    double eig_condition() const { return eig_cond_; }
    bool diagonalizable() const { return diagonalizable_; }
    // all eigenvalues coincide (within tolerance); A = lambda I + nilpotent
    bool single_eigenvalue() const { return single_eig_; }
    // exact 2x2 upper-triangular Jordan block [[lambda, c], [0, lambda]]
    bool jordan2() const { return jordan2_; }
    double theta() const { return theta_; }  // max |arg lambda_i|
    double spectral_radius() const { return rho_; }

    // M_psi(A): sup of ||z (z + A)^{-1}|| over the closed complement sector,
    // measured on the boundary rays by log-grid scan + golden refinement
    double sector_constant(double psi) const;
    double half_plane_constant() const { return sector_constant(PI / 2); }

    // (A + w)^{-k}, LU-based, cached per (w, k)
    CMatrix resolvent_pow(cplx w, int k) const;

    // (A + w)^{-p} for real p > 0: integer powers via LU; fractional powers
    // via eigendecomposition, the nilpotent binomial series for
    // single-eigenvalue matrices, or the Stieltjes integral as a fallback
    CMatrix resolvent_power_any(cplx w, double p) const;

    // f(A) by diagonalization, or the 2x2 Jordan closed form; empty when the
    // matrix is defective beyond those cases
    std::optional<CMatrix> eig_calc(const std::function<cplx(cplx)>& f,
                                    const std::function<cplx(cplx)>& fprime) const;

    // principal fractional power A^gamma (diagonalization / Jordan series /
    // Balakrishnan integral)
    CMatrix frac_power(double gamma) const;

    // Stieltjes-integral route for (A + z)^{-gamma}, gamma in (0, 1); the
    // slow reference implementation kept as the independent second route
    CMatrix resolvent_frac_integral(cplx z, double gamma,
                                    const QuadConfig& cfg = {}) const;

    // Balakrishnan-integral route for A^gamma, gamma in (0, 1)
    CMatrix frac_power_integral(double gamma, const QuadConfig& cfg = {}) const;

private:
    CMatrix nilpotent_series(const std::function<cplx(int, cplx)>& dk) const;

    CMatrix A_;
    std::string name_;
    CVector eigvals_;
    CMatrix V_, Vinv_;
    double eig_cond_ = 0.0;
    bool diagonalizable_ = false;
    bool single_eig_ = false;
    bool jordan2_ = false;
    double theta_ = 0.0;
    double rho_ = 0.0;
    mutable std::mutex mu_;
    mutable std::map<std::tuple<double, double, int>, CMatrix> res_cache_;
    mutable std::map<long long, double> sector_cache_;
};

struct NamedMatrix {
    std::string name;
    CMatrix A;
};

// the fixed matrix inventory shared by the verification suites: diagonal
// families, the 2x2 Jordan block, scaled rotations at three angles, and an
// 8x8 defective upwind-difference matrix
std::vector<NamedMatrix> test_matrix_suite();

// I/O: {"n": rows, "m": cols, "entries": [[re, im], ...]} row-major
CMatrix load_matrix_json(const std::string& path);
void save_matrix_json(const std::string& path, const CMatrix& A);
// MatrixMarket "array complex general" format
CMatrix load_matrix_market(const std::string& path);

} // namespace seccalc
