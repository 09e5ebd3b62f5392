#include "seccalc/fcalc.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "seccalc/reprkernel.hpp"

namespace seccalc {

namespace {

const double INF = std::numeric_limits<double>::infinity();

// distinct eigenvalue magnitudes in log coordinates, used as radial breakpoints
std::vector<double> spectral_breaks(const SectorialOp& op) {
    std::vector<double> out;
    for (int i = 0; i < op.dim(); ++i) {
        double a = std::abs(op.eigenvalues()(i));
        if (a <= 0.0) continue;
        double u = std::log(a);
        bool dup = false;
        for (double b : out)
            if (std::abs(b - u) < 1e-9) dup = true;
        if (!dup) out.push_back(u);
    }
    return out;
}

// core area integral of alpha^s fprime(alpha+i beta) (A+alpha-i beta)^{-(s+1)}
Quad2D<CMatrix> d_core(const CFun& fprime, const SectorialOp& op, double s,
                       const QuadConfig& cfg) {
    const int n = op.dim();
    return integrate_polar<CMatrix>(
        [&](double rho, cplx dir) -> CMatrix {
            // evaluate the scalar factor first: if it has underflowed to zero
            // there is nothing to add and the resolvent solve can be skipped
            // (it may itself underflow, and 0 * inf would poison the sum)
            cplx c = std::pow(rho, s + 1.0) * fprime(rho * dir);
            if (c == cplx{0.0, 0.0}) return CMatrix::Zero(n, n);
            cplx w = rho * std::conj(dir);
            return CMatrix(c * op.resolvent_power_any(w, s + 1.0));
        },
        s, -PI / 2, PI / 2, CMatrix::Zero(n, n), cfg, spectral_breaks(op));
}

void finish_report(CalcReport& rep, const SectorialOp& op) {
    rep.result_norm = spectral_norm(rep.result);
    rep.matrix_name = op.name();
    rep.bound_ok =
        rep.result_norm - rep.est_abs_err <= rep.bound_rhs * (1.0 + 1e-9) + 1e-12;
}

} // namespace

const char* calc_method_name(CalcMethod m) {
    switch (m) {
        case CalcMethod::Dcalc: return "dcalc";
        case CalcMethod::HcalcLift: return "hcalc_lift";
        case CalcMethod::HcalcArccot: return "hcalc_arccot";
        case CalcMethod::HP: return "hp";
        case CalcMethod::ArccotInt: return "arccot_int";
        case CalcMethod::Oracle: return "oracle";
    }
    return "?";
}

double fn_vs_norm_cached(const SectorFn& f, double s, const QuadConfig& cfg) {
    static std::map<std::pair<std::string, long long>, double> cache;
    static std::mutex mu;
    auto key = std::make_pair(f.key, std::llround(s * 1e9));
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    NormResult r = vs_norm(f.deriv, s, cfg);
    if (r.divergent || !std::isfinite(r.value))
        throw std::domain_error("norm integral diverges for " + f.key +
                                " at weight " + std::to_string(s));
    std::lock_guard<std::mutex> lock(mu);
    cache[key] = r.value;
    return r.value;
}

double fn_h1_norm_cached(const SectorFn& f, double psi, const QuadConfig& cfg) {
    static std::map<std::pair<std::string, long long>, double> cache;
    static std::mutex mu;
    auto key = std::make_pair(f.key, std::llround(psi * 1e9));
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    NormResult r = h1_sector_norm(f.deriv, psi, cfg);
    if (r.divergent || !std::isfinite(r.value))
        throw std::domain_error("boundary integral of |f'| diverges for " +
                                f.key + " at angle " + std::to_string(psi));
    std::lock_guard<std::mutex> lock(mu);
    cache[key] = r.value;
    return r.value;
}

CalcReport d_calc(const SectorFn& f, const SectorialOp& op, double s,
                  const QuadConfig& cfg) {
    if (!(s > -1.0)) throw std::invalid_argument("d_calc requires s > -1");
    if (!(op.theta() < PI / 2))
        throw std::domain_error("d_calc requires spectral angle < pi/2 for " +
                                op.name());
    if (!f.has_limit_at_inf)
        throw std::invalid_argument("d_calc requires a finite limit at infinity");
    double vs = fn_vs_norm_cached(f, s, cfg);

    CalcReport rep;
    rep.method = CalcMethod::Dcalc;
    rep.fn_key = f.key;
    rep.s_or_psi = s;
    auto core = d_core(f.deriv, op, s, cfg);
    const double pref = std::pow(2.0, s) / PI;
    rep.result = f.limit_at_inf * CMatrix::Identity(op.dim(), op.dim()) -
                 pref * core.value;
    rep.quad_nodes = core.nodes;
    rep.est_abs_err = pref * core.est_err;
    rep.truncated = core.truncated;
    rep.divergent = core.divergent;
    rep.stalled = core.stalled;
    double M = 1.05 * op.sector_constant(PI / 2);
    rep.bound_rhs = std::abs(f.limit_at_inf) +
                    pref * std::pow(M, std::ceil(s + 1.0)) * vs;
    finish_report(rep, op);
    return rep;
}

CalcReport h_calc_lift(const SectorFn& f, const SectorialOp& op, double psi,
                       const QuadConfig& cfg) {
    if (!(op.theta() < psi))
        throw std::domain_error("h_calc_lift requires spectral angle < psi");
    if (!(psi <= f.holo_angle + 1e-15))
        throw std::domain_error("h_calc_lift: psi exceeds holomorphy angle of " +
                                f.key);
    if (!f.has_limit_at_inf)
        throw std::invalid_argument(
            "h_calc_lift requires a finite limit at infinity");
    const double gamma = PI / (2.0 * psi);
    double h1 = fn_h1_norm_cached(f, psi, cfg);

    CalcReport rep;
    rep.method = CalcMethod::HcalcLift;
    rep.fn_key = f.key;
    rep.s_or_psi = psi;
    SectorialOp B(op.frac_power(gamma), op.name() + "^pow");
    CFun gprime = [gamma, &f](cplx w) -> cplx {
        return (1.0 / gamma) * cpow(w, 1.0 / gamma - 1.0) *
               f.deriv(cpow(w, 1.0 / gamma));
    };
    auto core = d_core(gprime, B, 0.0, cfg);
    rep.result = f.limit_at_inf * CMatrix::Identity(op.dim(), op.dim()) -
                 (1.0 / PI) * core.value;
    rep.quad_nodes = core.nodes;
    rep.est_abs_err = core.est_err / PI;
    rep.truncated = core.truncated;
    rep.divergent = core.divergent;
    rep.stalled = core.stalled;
    double MB = 1.05 * B.sector_constant(PI / 2);
    rep.bound_rhs = std::abs(f.limit_at_inf) + MB * h1;
    finish_report(rep, op);
    return rep;
}

CMatrix arccot_int(const SectorialOp& op, double psi, double t_scale,
                   const QuadConfig& cfg, double* est_err, long* nodes) {
    if (!(op.theta() < psi && psi < PI))
        throw std::domain_error("arccot_int requires spectral angle < psi < pi");
    if (!(t_scale > 0.0))
        throw std::invalid_argument("arccot_int requires t_scale > 0");
    const int n = op.dim();
    const CMatrix I = CMatrix::Identity(n, n);
    const CMatrix S = op.mat() / t_scale;
    const double gamma = PI / (2.0 * psi);
    const cplx ep = std::polar(1.0, psi), em = std::polar(1.0, -psi);

    std::vector<double> breaks;
    for (int i = 0; i < n; ++i) {
        double a = std::abs(op.eigenvalues()(i)) / t_scale;
        if (a > 0.0) breaks.push_back(a);
    }
    auto ray = integrate_split_at_one<CMatrix>(
        [&](double t) -> CMatrix {
            CMatrix Rp = lu_solve(t * I - ep * S, I);
            CMatrix Rm = lu_solve(t * I - em * S, I);
            return log_edge_kernel(t, gamma) * (Rp + Rm);
        },
        CMatrix::Zero(n, n), cfg, breaks);

    Quad1DOptions aopt;
    aopt.min_seed_panels = 8;
    auto arc = integrate_gk<CMatrix>(
        [&](double th) -> CMatrix {
            cplx lam = std::polar(1.0, th);
            return CMatrix(lam * lu_solve(lam * I - S, I));
        },
        psi, 2.0 * PI - psi, CMatrix::Zero(n, n), cfg.abs_tol, cfg.rel_tol,
        cfg.max_panels, aopt);

    CMatrix K = (1.0 / (4.0 * PI)) * ray.value + 0.25 * arc.value;
    double ray_tail = ray.tail_left + ray.tail_right;
    double err = (ray.err + (std::isfinite(ray_tail) ? ray_tail : 0.0)) /
                     (4.0 * PI) +
                 0.25 * arc.err;
    if (est_err) *est_err = err;
    if (nodes) *nodes = ray.nodes + arc.nodes;

    // the kernel norm can never exceed (pi/2) times the sectoriality constant
    // (which is invariant under positive scaling of the operator)
    double rhs = 1.05 * op.sector_constant(psi) * (PI / 2.0);
    double knorm = spectral_norm(K);
    if (!(knorm - err <= rhs * (1.0 + 1e-9) + 1e-12))
        throw std::runtime_error("arccot_int: kernel bound violated for " +
                                 op.name());
    return K;
}

CalcReport h_calc_arccot(const SectorFn& f, const SectorialOp& op, double psi,
                         const QuadConfig& cfg) {
    if (!(op.theta() < psi))
        throw std::domain_error("h_calc_arccot requires spectral angle < psi");
    if (!(psi <= f.holo_angle + 1e-15))
        throw std::domain_error(
            "h_calc_arccot: psi exceeds holomorphy angle of " + f.key);
    if (!f.has_limit_at_inf)
        throw std::invalid_argument(
            "h_calc_arccot requires a finite limit at infinity");
    double h1 = fn_h1_norm_cached(f, psi, cfg);

    CalcReport rep;
    rep.method = CalcMethod::HcalcArccot;
    rep.fn_key = f.key;
    rep.s_or_psi = psi;
    const int n = op.dim();
    const cplx ep = std::polar(1.0, psi), em = std::polar(1.0, -psi);
    QuadConfig inner = cfg;
    inner.abs_tol = std::max(cfg.abs_tol * 0.1, 1e-12);

    long inner_nodes = 0;
    const WithErr<CMatrix> wzero{CMatrix::Zero(n, n), 0.0};
    std::vector<double> breaks;
    for (int i = 0; i < n; ++i) {
        double a = std::abs(op.eigenvalues()(i));
        if (a > 0.0) breaks.push_back(a);
    }
    auto q = integrate_halfline<WithErr<CMatrix>>(
        [&](double t) -> WithErr<CMatrix> {
            double ke = 0.0;
            long kn = 0;
            CMatrix K = arccot_int(op, psi, t, inner, &ke, &kn);
            inner_nodes += kn;
            cplx c = 0.5 * (ep * f.deriv(t * ep) + em * f.deriv(t * em));
            return {CMatrix(c * K), std::abs(c) * ke};
        },
        wzero, cfg, breaks);

    rep.result = f.limit_at_inf * CMatrix::Identity(n, n) -
                 (2.0 / PI) * q.value.val;
    double tail = q.tail_left + q.tail_right;
    rep.est_abs_err = (2.0 / PI) * (q.err + q.value.err +
                                    (std::isfinite(tail) ? tail : 0.0));
    rep.quad_nodes = q.nodes + inner_nodes;
    rep.divergent = q.divergent;
    rep.stalled = q.stalled || q.exhausted;
    rep.truncated = !std::isfinite(tail);
    double M = 1.05 * op.sector_constant(psi);
    rep.bound_rhs = std::abs(f.limit_at_inf) + 0.5 * M * h1;
    finish_report(rep, op);
    return rep;
}

CalcReport hp_calc(const SectorFn& f, const SectorialOp& op,
                   const QuadConfig& cfg) {
    if (!f.laplace)
        throw std::invalid_argument("hp_calc: no Laplace representation for " +
                                    f.key);
    if (!(op.theta() < PI / 2))
        throw std::domain_error("hp_calc requires spectral angle < pi/2");
    const int n = op.dim();
    const auto& L = *f.laplace;

    CalcReport rep;
    rep.method = CalcMethod::HP;
    rep.fn_key = f.key;
    rep.s_or_psi = 0.0;
    CMatrix acc = L.const_term * CMatrix::Identity(n, n);
    for (const auto& [t, m] : L.atoms)
        acc += m * expm(CMatrix(-t * op.mat()));
    if (L.density) {
        auto q = integrate_halfline<CMatrix>(
            [&](double t) -> CMatrix {
                return CMatrix(L.density(t) * expm(CMatrix(-t * op.mat())));
            },
            CMatrix::Zero(n, n), cfg);
        acc += q.value;
        double tail = q.tail_left + q.tail_right;
        rep.est_abs_err = q.err + (std::isfinite(tail) ? tail : 0.0);
        rep.quad_nodes = q.nodes;
        rep.divergent = q.divergent;
        rep.stalled = q.stalled || q.exhausted;
        rep.truncated = !std::isfinite(tail);
    }
    rep.result = acc;

    // semigroup growth sampled on a log grid; 1.05 covers the sampling gap
    double K = 1.0;
    double rho = std::max(op.spectral_radius(), 1e-6);
    for (int j = 0; j <= 40; ++j) {
        double t = std::exp(-10.0 + 20.0 * j / 40.0) / rho;
        K = std::max(K, spectral_norm(expm(CMatrix(-t * op.mat()))));
    }
    NormResult hp = hp_norm(f, cfg);
    rep.bound_rhs = 1.05 * K * hp.value;
    finish_report(rep, op);
    return rep;
}

CalcReport shifted_calc(const SectorFn& f, const SectorialOp& op, double s,
                        double eps, const QuadConfig& cfg) {
    if (!(eps > 0.0)) throw std::invalid_argument("shifted_calc requires eps > 0");
    SectorialOp shifted(
        CMatrix(op.mat() + eps * CMatrix::Identity(op.dim(), op.dim())),
        op.name() + "+eps");
    CalcReport rep = d_calc(f, shifted, s, cfg);
    rep.matrix_name = op.name();
    return rep;
}

std::optional<CalcReport> oracle_calc(const SectorFn& f, const SectorialOp& op) {
    auto R = op.eig_calc(f.eval, f.deriv);
    if (!R) return std::nullopt;
    CalcReport rep;
    rep.method = CalcMethod::Oracle;
    rep.fn_key = f.key;
    rep.result = *R;
    rep.bound_rhs = INF;
    finish_report(rep, op);
    return rep;
}

} // namespace seccalc
