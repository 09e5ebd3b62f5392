#include "seccalc/matops.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace seccalc {

namespace {

using nlohmann::json;

CMatrix ident(int n) { return CMatrix::Identity(n, n); }

// golden-section maximization on [a, b]
template <class F>
double golden_max(F&& f, double a, double b, int iters = 48) {
    const double gr = 0.6180339887498949;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int k = 0; k < iters; ++k) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = f(x1);
        }
    }
    return std::max(f1, f2);
}

} // namespace

double spectral_norm(const CMatrix& M, double tol, int max_iter) {
    const int n = (int)M.cols();
    if (n == 0) return 0.0;
    if (M.rows() == 1 && n == 1) return std::abs(M(0, 0));
    CMatrix H = M.adjoint() * M;
    if (H.norm() == 0.0) return 0.0;
    std::mt19937_64 rng(0x9E3779B97F4A7C15ULL);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    CVector v(n);
    for (int i = 0; i < n; ++i) v(i) = cplx{uni(rng), uni(rng)};
    v.normalize();
    double lam = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        CVector w = H * v;
        double nw = w.norm();
        if (nw == 0.0) return 0.0;
        v = w / nw;
        double lam_new = std::real(v.dot(H * v));
        if (std::abs(lam_new - lam) <= tol * std::abs(lam_new) && it > 2) {
            lam = lam_new;
            break;
        }
        lam = lam_new;
    }
    return std::sqrt(std::max(lam, 0.0));
}

CMatrix lu_solve(const CMatrix& A, const CMatrix& B) {
    Eigen::PartialPivLU<CMatrix> lu(A);
    CMatrix X = lu.solve(B);
    CMatrix R = B - A * X;
    X += lu.solve(R);  // one step of iterative refinement
    R = B - A * X;
    const double n = (double)A.rows();
    // backward-error test: scale by both operands so well-conditioned systems
    // pass at any magnitude; singular systems surface as nan/inf residuals
    if (!(R.norm() <= 1e-10 * n * (A.norm() * X.norm() + B.norm())))
        throw std::runtime_error("lu_solve: residual too large (singular system?)");
    return X;
}

CMatrix expm(const CMatrix& M) {
    static const double b[] = {64764752532480000.0, 32382376266240000.0,
                               7771770303897600.0,  1187353796428800.0,
                               129060195264000.0,   10559470521600.0,
                               670442572800.0,      33522128640.0,
                               1323241920.0,        40840800.0,
                               960960.0,            16380.0,
                               182.0,               1.0};
    const double theta13 = 5.371920351148152;
    const int n = (int)M.rows();
    double norm1 = M.cwiseAbs().colwise().sum().maxCoeff();
    int s = 0;
    if (norm1 > theta13)
        s = (int)std::ceil(std::log2(norm1 / theta13));
    CMatrix A = M / std::pow(2.0, s);
    CMatrix I = ident(n);
    CMatrix A2 = A * A, A4 = A2 * A2, A6 = A2 * A4;
    CMatrix U = A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 +
                     b[5] * A4 + b[3] * A2 + b[1] * I);
    CMatrix V = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 +
                b[4] * A4 + b[2] * A2 + b[0] * I;
    CMatrix F = Eigen::PartialPivLU<CMatrix>(V - U).solve(V + U);
    for (int k = 0; k < s; ++k) F = F * F;
    return F;
}

SectorialOp::SectorialOp(CMatrix A, std::string name)
    : A_(std::move(A)), name_(std::move(name)) {
    const int n = dim();
    const double scale = std::max(A_.norm(), 1e-300);

    // exact 2x2 Jordan block?
    if (n == 2 && std::abs(A_(1, 0)) <= 1e-14 * scale &&
        std::abs(A_(0, 0) - A_(1, 1)) <= 1e-12 * scale &&
        std::abs(A_(0, 1)) > 1e-12 * scale) {
        jordan2_ = true;
    }

    // single eigenvalue with nilpotent remainder? trace/n is then exact
    cplx lam_bar = A_.trace() / double(n);
    CMatrix N = A_ - lam_bar * ident(n);
    CMatrix P = ident(n);
    for (int k = 0; k < n; ++k) P = P * N;
    double npow = std::pow(std::max(N.norm(), 1e-30), n);
    if (P.norm() <= 1e-10 * std::max(npow, 1.0)) {
        single_eig_ = true;
        eigvals_ = CVector::Constant(n, lam_bar);
        theta_ = std::abs(std::arg(lam_bar));
        rho_ = std::abs(lam_bar);
    }

    Eigen::ComplexEigenSolver<CMatrix> es(A_, true);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigendecomposition failed for " + name_);
    if (!single_eig_) {
        eigvals_ = es.eigenvalues();
        theta_ = 0.0;
        rho_ = 0.0;
        for (int i = 0; i < n; ++i) {
            theta_ = std::max(theta_, std::abs(std::arg(eigvals_(i))));
            rho_ = std::max(rho_, std::abs(eigvals_(i)));
        }
    }
    V_ = es.eigenvectors();
    Eigen::JacobiSVD<CMatrix> svd(V_);
    double smin = svd.singularValues().minCoeff();
    double smax = svd.singularValues().maxCoeff();
    eig_cond_ = smin > 0.0 ? smax / smin : std::numeric_limits<double>::infinity();
    if (!jordan2_ && eig_cond_ < 1e8) {
        Vinv_ = lu_solve(V_, ident(n));
        CMatrix recon = V_ * es.eigenvalues().asDiagonal() * Vinv_;
        if ((recon - A_).norm() <= 1e-8 * scale) {
            diagonalizable_ = true;
            if (single_eig_) eigvals_ = es.eigenvalues();
        }
    }
    if (diagonalizable_ && single_eig_) {
        // a genuinely diagonalizable matrix with one eigenvalue is lam * I;
        // keep the exact value in that case
        eigvals_ = CVector::Constant(n, lam_bar);
    }
}

double SectorialOp::sector_constant(double psi) const {
    if (!(psi > 0.0 && psi <= PI))
        throw std::invalid_argument("sector_constant requires psi in (0, pi]");
    if (!(theta_ < psi))
        throw std::domain_error("sector_constant: spectrum angle " +
                                std::to_string(theta_) +
                                " not inside sector of angle " + std::to_string(psi));
    long long key = std::llround(psi * 1e12);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = sector_cache_.find(key);
        if (it != sector_cache_.end()) return it->second;
    }
    const int n = dim();
    const double chi = PI - psi;  // argument of the boundary ray
    const double r0 = rho_ > 0.0 ? rho_ : 1.0;
    const double ulo = std::log(1e-6 * r0), uhi = std::log(1e6 * r0);
    double best = 1.0;  // the limit of ||z (z+A)^{-1}|| at infinity
    auto norm_at = [&](double u, cplx dir) {
        cplx z = std::exp(u) * dir;
        CMatrix R = lu_solve(A_ + z * ident(n), ident(n));
        return std::abs(z) * spectral_norm(R);
    };
    for (double sgn : {1.0, -1.0}) {
        if (chi == 0.0 && sgn < 0.0) break;  // psi = pi: single positive ray
        cplx dir = std::polar(1.0, sgn * chi);
        const int grid = 121;
        double gb = -1.0;
        int gj = 0;
        for (int j = 0; j < grid; ++j) {
            double u = ulo + (uhi - ulo) * j / (grid - 1);
            double v = norm_at(u, dir);
            if (v > gb) {
                gb = v;
                gj = j;
            }
        }
        double h = (uhi - ulo) / (grid - 1);
        double a = ulo + h * std::max(0, gj - 1);
        double b = ulo + h * std::min(grid - 1, gj + 1);
        double refined = golden_max([&](double u) { return norm_at(u, dir); }, a, b);
        best = std::max(best, std::max(gb, refined));
    }
    std::lock_guard<std::mutex> lock(mu_);
    sector_cache_[key] = best;
    return best;
}

CMatrix SectorialOp::resolvent_pow(cplx w, int k) const {
    if (k < 1) throw std::invalid_argument("resolvent_pow requires k >= 1");
    auto key = std::make_tuple(w.real(), w.imag(), k);
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = res_cache_.find(key);
        if (it != res_cache_.end()) return it->second;
    }
    CMatrix R1;
    {
        auto key1 = std::make_tuple(w.real(), w.imag(), 1);
        std::lock_guard<std::mutex> lock(mu_);
        auto it = res_cache_.find(key1);
        if (it != res_cache_.end()) R1 = it->second;
    }
    if (R1.size() == 0) {
        R1 = lu_solve(A_ + w * ident(dim()), ident(dim()));
        std::lock_guard<std::mutex> lock(mu_);
        res_cache_[std::make_tuple(w.real(), w.imag(), 1)] = R1;
    }
    CMatrix R = R1;
    for (int j = 1; j < k; ++j) R = R * R1;
    std::lock_guard<std::mutex> lock(mu_);
    res_cache_[key] = R;
    return R;
}

CMatrix SectorialOp::nilpotent_series(
    const std::function<cplx(int, cplx)>& ak) const {
    // sum of ak(k, lambda) * N^k for the single-eigenvalue case, where
    // ak(k, lambda) must equal g^{(k)}(lambda) / k!
    const int n = dim();
    const cplx lam = eigvals_(0);
    CMatrix N = A_ - lam * ident(n);
    CMatrix term = ident(n);
    CMatrix acc = CMatrix::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        acc += ak(k, lam) * term;
        term = term * N;
    }
    return acc;
}

CMatrix SectorialOp::resolvent_power_any(cplx w, double p) const {
    if (!(p > 0.0)) throw std::invalid_argument("resolvent power requires p > 0");
    double pr = std::round(p);
    if (std::abs(p - pr) < 1e-13 && pr >= 1.0)
        return resolvent_pow(w, (int)pr);
    const int n = dim();
    if (diagonalizable_) {
        CVector d(n);
        for (int i = 0; i < n; ++i) d(i) = cpow(eigvals_(i) + w, -p);
        return V_ * d.asDiagonal() * Vinv_;
    }
    if (single_eig_) {
        // (z + w)^{-p} expanded around the single eigenvalue:
        // a_0 = (lam+w)^{-p}, a_k = a_{k-1} * (-(p+k-1)/k) / (lam+w)
        std::vector<cplx> a((size_t)n);
        return nilpotent_series([&a, p, w](int k, cplx lam) {
            if (k == 0) return a[0] = cpow(lam + w, -p);
            return a[(size_t)k] =
                       a[(size_t)k - 1] * (-(p + k - 1) / double(k)) / (lam + w);
        });
    }
    // generic defective fallback: integer part by LU, remainder by Stieltjes
    int m = (int)std::floor(p);
    double frac = p - m;
    CMatrix F = resolvent_frac_integral(w, frac);
    return m >= 1 ? CMatrix(resolvent_pow(w, m) * F) : F;
}

std::optional<CMatrix> SectorialOp::eig_calc(
    const std::function<cplx(cplx)>& f,
    const std::function<cplx(cplx)>& fprime) const {
    const int n = dim();
    if (jordan2_) {
        cplx lam = A_(0, 0), c = A_(0, 1);
        CMatrix R(2, 2);
        R << f(lam), c * fprime(lam), cplx{0, 0}, f(lam);
        return R;
    }
    if (diagonalizable_) {
        CVector d(n);
        for (int i = 0; i < n; ++i) d(i) = f(eigvals_(i));
        return CMatrix(V_ * d.asDiagonal() * Vinv_);
    }
    return std::nullopt;
}

CMatrix SectorialOp::frac_power(double gamma) const {
    if (!(gamma > 0.0)) throw std::invalid_argument("frac_power requires gamma > 0");
    const int n = dim();
    if (diagonalizable_) {
        CVector d(n);
        for (int i = 0; i < n; ++i) d(i) = cpow(eigvals_(i), gamma);
        return V_ * d.asDiagonal() * Vinv_;
    }
    if (single_eig_) {
        // z^gamma expanded around lambda: a_k = a_{k-1} (gamma-k+1)/(k lambda)
        std::vector<cplx> a((size_t)n);
        return nilpotent_series([&a, gamma](int k, cplx lam) {
            if (k == 0) return a[0] = cpow(lam, gamma);
            return a[(size_t)k] = a[(size_t)k - 1] * ((gamma - k + 1) / double(k)) / lam;
        });
    }
    int m = (int)std::floor(gamma);
    double frac = gamma - m;
    CMatrix F = frac > 0.0 ? frac_power_integral(frac) : ident(n);
    CMatrix P = ident(n);
    for (int j = 0; j < m; ++j) P = P * A_;
    return P * F;
}

CMatrix SectorialOp::frac_power_integral(double gamma, const QuadConfig& cfg) const {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("frac_power_integral requires gamma in (0,1)");
    const int n = dim();
    const CMatrix I = ident(n);
    Quad1DOptions opt;
    if (rho_ > 0.0) opt.breakpoints.push_back(std::log(rho_));
    auto q = integrate_gk<CMatrix>(
        [&](double u) -> CMatrix {
            double t = std::exp(u);
            // t^{gamma-1} A (t+A)^{-1} * t  (log-coordinate jacobian)
            CMatrix R = lu_solve(A_ + t * I, I);
            return CMatrix(std::pow(t, gamma) * (I - t * R));
        },
        -cfg.log_radius_cut, cfg.log_radius_cut, CMatrix::Zero(n, n),
        cfg.abs_tol, cfg.rel_tol, cfg.max_panels, opt);
    return (std::sin(PI * gamma) / PI) * q.value;
}

CMatrix SectorialOp::resolvent_frac_integral(cplx z, double gamma,
                                             const QuadConfig& cfg) const {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("resolvent_frac_integral: gamma in (0,1)");
    const int n = dim();
    for (int i = 0; i < n; ++i) {
        cplx sh = eigvals_(i) + z;
        if (sh.real() <= 0.0 && std::abs(sh.imag()) <= 1e-14 * std::abs(sh))
            throw std::domain_error("resolvent_frac_integral: ray hits spectrum");
    }
    const CMatrix I = ident(n);
    Quad1DOptions opt;
    if (rho_ > 0.0) opt.breakpoints.push_back(std::log(rho_ + std::abs(z)));
    auto q = integrate_gk<CMatrix>(
        [&](double u) -> CMatrix {
            double t = std::exp(u);
            // t^{-gamma} (A + z + t)^{-1} * t
            return CMatrix(std::pow(t, 1.0 - gamma) *
                           lu_solve(A_ + (z + t) * I, I));
        },
        -cfg.log_radius_cut, cfg.log_radius_cut, CMatrix::Zero(n, n),
        cfg.abs_tol, cfg.rel_tol, cfg.max_panels, opt);
    return (std::sin(PI * gamma) / PI) * q.value;
}

std::vector<NamedMatrix> test_matrix_suite() {
    std::vector<NamedMatrix> out;
    auto diag = [](std::initializer_list<double> d) {
        CMatrix A = CMatrix::Zero((long)d.size(), (long)d.size());
        int i = 0;
        for (double x : d) A(i, i) = x, ++i;
        return A;
    };
    out.push_back({"diag1", diag({1.0})});
    out.push_back({"diag12", diag({1.0, 2.0})});
    out.push_back({"diag1_10", diag({1.0, 10.0})});
    out.push_back({"diag1_100", diag({1.0, 100.0})});
    CMatrix J(2, 2);
    J << 1, 1, 0, 1;
    out.push_back({"jordan2", J});
    auto rot = [](double r, double th) {
        CMatrix A(2, 2);
        A << r * std::cos(th), -r * std::sin(th), r * std::sin(th),
            r * std::cos(th);
        return A;
    };
    out.push_back({"rot_pi6", rot(2.0, PI / 6)});
    out.push_back({"rot_pi3", rot(2.0, PI / 3)});
    out.push_back({"rot_2pi3", rot(2.0, 2 * PI / 3)});
    CMatrix W = CMatrix::Zero(8, 8);
    for (int i = 0; i < 8; ++i) {
        W(i, i) = 8.0;
        if (i > 0) W(i, i - 1) = -8.0;
    }
    out.push_back({"upwind8", W});
    return out;
}

CMatrix load_matrix_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);
    json j = json::parse(in);
    int n = j.at("n").get<int>();
    int m = j.contains("m") ? j.at("m").get<int>() : n;
    const auto& e = j.at("entries");
    if ((int)e.size() != n * m)
        throw std::runtime_error("matrix entry count mismatch in " + path);
    CMatrix A(n, m);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < m; ++k) {
            const auto& p = e[(size_t)(i * m + k)];
            A(i, k) = cplx{p[0].get<double>(), p[1].get<double>()};
        }
    return A;
}

void save_matrix_json(const std::string& path, const CMatrix& A) {
    json j;
    j["n"] = (int)A.rows();
    j["m"] = (int)A.cols();
    json entries = json::array();
    for (int i = 0; i < A.rows(); ++i)
        for (int k = 0; k < A.cols(); ++k)
            entries.push_back({A(i, k).real(), A(i, k).imag()});
    j["entries"] = std::move(entries);
    std::ofstream out(path);
    out << j.dump(1) << "\n";
}

CMatrix load_matrix_market(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);
    std::string line;
    if (!std::getline(in, line) ||
        line.find("%%MatrixMarket") == std::string::npos ||
        line.find("array") == std::string::npos ||
        line.find("complex") == std::string::npos)
        throw std::runtime_error("unsupported MatrixMarket header in " + path);
    do {
        if (!std::getline(in, line))
            throw std::runtime_error("truncated MatrixMarket file: " + path);
    } while (!line.empty() && line[0] == '%');
    std::istringstream hdr(line);
    int n = 0, m = 0;
    hdr >> n >> m;
    CMatrix A(n, m);
    for (int k = 0; k < m; ++k)  // array format is column-major
        for (int i = 0; i < n; ++i) {
            double re, im;
            if (!(in >> re >> im))
                throw std::runtime_error("truncated MatrixMarket data: " + path);
            A(i, k) = cplx{re, im};
        }
    return A;
}

} // namespace seccalc
