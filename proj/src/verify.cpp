#include "seccalc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <stdexcept>

#include "seccalc/fcalc.hpp"
#include "seccalc/matops.hpp"
#include "seccalc/normcalc.hpp"
#include "seccalc/threadpool.hpp"

namespace seccalc {

namespace {

constexpr double M_SAFETY = 1.05;  // sampled sup -> documented safety factor

std::string fmt(double x) {
    char b[40];
    std::snprintf(b, sizeof b, "%.6g", x);
    return b;
}

std::string fmtc(cplx z) {
    char b[80];
    std::snprintf(b, sizeof b, "%.6g%+.6gi", z.real(), z.imag());
    return b;
}

double inflated_M(const SectorialOp& op, double psi) {
    return M_SAFETY * op.sector_constant(psi);
}

struct OpSet {
    std::vector<std::shared_ptr<SectorialOp>> all;
    std::vector<std::shared_ptr<SectorialOp>> half;  // spectral angle < pi/2
};

OpSet build_ops() {
    OpSet s;
    for (const auto& nm : test_matrix_suite()) {
        auto op = std::make_shared<SectorialOp>(nm.A, nm.name);
        s.all.push_back(op);
        if (op->theta() < PI / 2) s.half.push_back(op);
    }
    return s;
}

using CheckJob = std::function<std::vector<BoundCheck>()>;

void run_check_jobs(SuiteReport& rep, const std::vector<CheckJob>& jobs,
                    int threads) {
    std::vector<std::vector<BoundCheck>> out(jobs.size());
    parallel_for(
        (long)jobs.size(), [&](long i) { out[(size_t)i] = jobs[(size_t)i](); },
        threads);
    for (auto& v : out)
        for (auto& c : v) rep.checks.push_back(std::move(c));
}

void finalize(SuiteReport& rep,
              std::chrono::steady_clock::time_point start) {
    rep.all_passed = true;
    for (const auto& c : rep.checks) rep.all_passed = rep.all_passed && c.passed;
    rep.seconds = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
}

CMatrix matrix_power(const CMatrix& A, int n) {
    CMatrix P = CMatrix::Identity(A.rows(), A.cols());
    for (int i = 0; i < n; ++i) P = P * A;
    return P;
}

// --- cayley ---------------------------------------------------------------

SuiteReport suite_cayley(int threads, const QuadConfig& cfg) {
    (void)cfg;
    auto start = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = "cayley";
    OpSet ops = build_ops();
    const std::vector<int> ns = {1, 2, 5, 10, 20, 50};
    std::vector<CheckJob> jobs;
    for (const auto& opp : ops.half) {
        jobs.push_back([opp, &ns]() {
            const SectorialOp& op = *opp;
            const int n_dim = op.dim();
            CMatrix I = CMatrix::Identity(n_dim, n_dim);
            CMatrix V = (op.mat() - I) * lu_solve(op.mat() + I, I);
            double M = inflated_M(op, PI / 2);
            double rhs = 1.0 + 32.0 * (1.0 + 1.0 / (std::sqrt(2.0) * PI)) * M * M;
            std::vector<BoundCheck> out;
            CMatrix P = I;
            for (int n = 1; n <= ns.back(); ++n) {
                P = P * V;
                if (std::find(ns.begin(), ns.end(), n) == ns.end()) continue;
                out.push_back(make_check(
                    "cayley_power", spectral_norm(P), rhs,
                    "matrix=" + op.name() + " n=" + std::to_string(n) +
                        " M*=" + fmt(M)));
            }
            return out;
        });
    }
    run_check_jobs(rep, jobs, threads);
    finalize(rep, start);
    return rep;
}

// --- semigroup --------------------------------------------------------------

SuiteReport suite_semigroup(int threads, const QuadConfig& cfg) {
    (void)cfg;
    auto start = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = "semigroup";
    OpSet ops = build_ops();
    const std::vector<double> ts = {0.1, 1.0, 10.0};
    const std::vector<double> nus = {0.5, 1.0, 2.0};
    std::vector<CheckJob> jobs;
    for (const auto& opp : ops.half) {
        jobs.push_back([opp, &ts, &nus]() {
            const SectorialOp& op = *opp;
            const int n = op.dim();
            CMatrix I = CMatrix::Identity(n, n);
            double M = inflated_M(op, PI / 2);
            std::vector<BoundCheck> out;
            for (double t : {1e-3, 0.1, 1.0, 10.0})
                out.push_back(make_check(
                    "semigroup_uniform",
                    spectral_norm(expm(CMatrix(-t * op.mat()))), 2.0 * M * M,
                    "matrix=" + op.name() + " t=" + fmt(t) + " M*=" + fmt(M)));
            for (double nu : nus) {
                CMatrix Anu = op.frac_power(nu);
                for (double t : ts) {
                    double lhs = spectral_norm(
                        CMatrix(Anu * expm(CMatrix(-t * op.mat()))));
                    double rhs = std::pow(2.0, nu + 2.0) * std::pow(t, -nu) *
                                 std::tgamma(nu + 1.0) *
                                 std::pow(M, std::ceil(nu) + 2.0);
                    out.push_back(make_check(
                        "semigroup_power_decay", lhs, rhs,
                        "matrix=" + op.name() + " nu=" + fmt(nu) +
                            " t=" + fmt(t) + " M*=" + fmt(M)));
                }
            }
            CMatrix Ainv = lu_solve(op.mat(), I);
            for (double t : ts)
                out.push_back(make_check(
                    "semigroup_inverse_generator",
                    spectral_norm(expm(CMatrix(-t * Ainv))), 1.0 + 2.0 * M * M,
                    "matrix=" + op.name() + " t=" + fmt(t) + " M*=" + fmt(M)));
            return out;
        });
    }
    run_check_jobs(rep, jobs, threads);
    finalize(rep, start);
    return rep;
}

// --- analf ------------------------------------------------------------------

SuiteReport suite_analf(int threads, const QuadConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = "analf";
    OpSet ops = build_ops();
    const SectorFn r1 = catalog_lookup("resolvent:1");
    const double d1 = fn_vs_norm_cached(r1, 1.0, cfg);  // ||r_1'|| at weight 1
    std::vector<CheckJob> jobs;
    for (const auto& opp : ops.half) {
        jobs.push_back([opp, d1]() {
            const SectorialOp& op = *opp;
            const int nd = op.dim();
            CMatrix I = CMatrix::Identity(nd, nd);
            double M = inflated_M(op, PI / 2);
            std::vector<BoundCheck> out;
            for (int n : {1, 2, 3})
                for (double t : {0.5, 1.0, 2.0}) {
                    CMatrix tA = t * op.mat();
                    double lhs = spectral_norm(
                        CMatrix(matrix_power(tA, n) * expm(CMatrix(-tA))));
                    double rhs = 2.0 * std::tgamma(n + 2.0) *
                                 std::pow(M + 1.0, n) * M * M;
                    out.push_back(make_check(
                        "analf_exp", lhs, rhs,
                        "matrix=" + op.name() + " n=" + std::to_string(n) +
                            " t=" + fmt(t) + " M*=" + fmt(M)));
                }
            // first derivative of the basic resolvent: |t A (I + tA)^{-2}|
            for (double t : {0.5, 1.0, 2.0}) {
                CMatrix B = I + t * op.mat();
                double lhs =
                    t * spectral_norm(CMatrix(op.mat() * lu_solve(B * B, I)));
                double rhs = (2.0 * std::tgamma(3.0) / (PI * std::tgamma(2.0))) *
                             (M + 1.0) * M * M * d1;
                out.push_back(make_check(
                    "analf_resolvent", lhs, rhs,
                    "matrix=" + op.name() + " n=1 t=" + fmt(t) +
                        " M*=" + fmt(M) + " fnorm=" + fmt(d1)));
            }
            return out;
        });
    }
    run_check_jobs(rep, jobs, threads);
    finalize(rep, start);
    return rep;
}

// --- bernstein ----------------------------------------------------------------

CMatrix bernstein_apply(const SectorialOp& op, const std::string& key) {
    const int n = op.dim();
    CMatrix I = CMatrix::Identity(n, n);
    if (key == "sqrt") return op.frac_power(0.5);
    if (key == "linear") return op.mat();
    if (key == "oneminusexp") return I - expm(CMatrix(-op.mat()));
    if (key == "zover1pz") return I - lu_solve(I + op.mat(), I);
    throw std::invalid_argument("unknown Bernstein key: " + key);
}

SuiteReport suite_bernstein(int threads, const QuadConfig& cfg) {
    (void)cfg;
    auto start = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = "bernstein";
    OpSet ops = build_ops();
    const std::vector<std::string> gs = {"sqrt", "linear", "oneminusexp",
                                         "zover1pz"};
    std::vector<CheckJob> jobs;
    for (const auto& opp : ops.half) {
        for (const auto& g : gs) {
            jobs.push_back([opp, g]() {
                const SectorialOp& op = *opp;
                const int n = op.dim();
                CMatrix I = CMatrix::Identity(n, n);
                double psi = op.theta() + 0.5 * (PI / 2 - op.theta());
                double Mpsi = inflated_M(op, psi);
                CMatrix GA = bernstein_apply(op, g);
                std::vector<BoundCheck> out;
                for (double phi :
                     {0.5 * (psi + PI), psi + 0.25 * (PI - psi)}) {
                    double rhs =
                        2.0 * Mpsi *
                        (1.0 / std::sin(std::min(phi, PI / 2)) +
                         2.0 / (std::cos(psi) *
                                sqr(std::sin((phi - psi) / 2.0))));
                    for (double r : {0.1, 1.0, 10.0})
                        for (double sgn : {1.0, -1.0}) {
                            cplx lam = std::polar(r, sgn * (PI - phi));
                            double lhs =
                                r * spectral_norm(lu_solve(lam * I + GA, I));
                            out.push_back(make_check(
                                "bernstein_resolvent", lhs, rhs,
                                "matrix=" + op.name() + " g=" + g +
                                    " psi=" + fmt(psi) + " phi=" + fmt(phi) +
                                    " lambda=" + fmtc(lam) +
                                    " M*=" + fmt(Mpsi)));
                        }
                }
                return out;
            });
        }
    }
    run_check_jobs(rep, jobs, threads);
    finalize(rep, start);
    return rep;
}

// --- frac ---------------------------------------------------------------------

SuiteReport suite_frac(int threads, const QuadConfig& cfg,
                       std::uint64_t seed) {
    auto start = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = "frac";
    OpSet ops = build_ops();
    std::vector<CheckJob> jobs;

    // holomorphic semigroup decay of fractional powers
    for (const auto& opp : ops.all) {
        for (double gamma : {0.5, 1.5}) {
            double psi = opp->theta() + 0.25 * (PI - opp->theta());
            if (!(gamma * psi < 0.95 * PI / 2)) continue;
            jobs.push_back([opp, gamma, psi]() {
                const SectorialOp& op = *opp;
                SectorialOp B(op.frac_power(gamma), op.name() + "^g");
                double chi = gamma * psi;
                double MB = inflated_M(B, chi);
                std::vector<BoundCheck> out;
                for (double r : {0.3, 3.0})
                    for (double phi : {0.0, 0.7 * (PI / 2 - chi),
                                       -0.7 * (PI / 2 - chi)}) {
                        cplx lam = std::polar(r, phi);
                        double lhs =
                            spectral_norm(expm(CMatrix(-lam * B.mat())));
                        double rhs = 0.5 *
                                     (1.0 / std::cos(chi + phi) +
                                      1.0 / std::cos(chi - phi)) *
                                     MB;
                        out.push_back(make_check(
                            "frac_semigroup", lhs, rhs,
                            "matrix=" + op.name() + " gamma=" + fmt(gamma) +
                                " psi=" + fmt(psi) + " lambda=" + fmtc(lam) +
                                " M*=" + fmt(MB)));
                    }
                return out;
            });
        }
    }

    // fractional resolvent powers against the half-plane constant
    std::vector<cplx> zs;
    {
        std::mt19937_64 rng(seed ? seed : 0xD15EA5EULL);
        std::uniform_real_distribution<double> ur(0.0, 1.0);
        for (int i = 0; i < 20; ++i) {
            double r = std::pow(10.0, -1.0 + 2.0 * ur(rng));
            double phi = (2.0 * ur(rng) - 1.0) * 0.95 * (PI / 2);
            zs.push_back(std::polar(r, phi));
        }
    }
    for (const auto& opp : ops.half) {
        jobs.push_back([opp, zs]() {
            const SectorialOp& op = *opp;
            double M = inflated_M(op, PI / 2);
            std::vector<BoundCheck> out;
            for (double gamma : {0.5, 1.5})
                for (cplx z : zs) {
                    double lhs =
                        spectral_norm(op.resolvent_power_any(z, gamma));
                    double rhs = std::pow(M, std::ceil(gamma)) /
                                 std::pow(std::abs(z), gamma);
                    out.push_back(make_check(
                        "frac_resolvent_power", lhs, rhs,
                        "matrix=" + op.name() + " gamma=" + fmt(gamma) +
                            " z=" + fmtc(z) + " M*=" + fmt(M)));
                }
            return out;
        });
    }

    // audits of the a-priori bounds recorded by the calculus routines
    {
        auto find_op = [&](const std::string& nm) {
            for (const auto& o : ops.all)
                if (o->name() == nm) return o;
            throw std::logic_error("missing test matrix " + nm);
        };
        for (const auto& nm : {"diag12", "jordan2", "upwind8"})
            for (const auto* fk : {"resolvent:1", "arccot"})
                for (double s : {0.5, 1.5}) {
                    auto opp = find_op(nm);
                    std::string fkey = fk;
                    jobs.push_back([opp, fkey, s, cfg]() {
                        SectorFn f = catalog_lookup(fkey);
                        CalcReport r = d_calc(f, *opp, s, cfg);
                        return std::vector<BoundCheck>{make_check(
                            "apriori_weighted_calc", r.result_norm, r.bound_rhs,
                            "matrix=" + opp->name() + " fn=" + fkey +
                                " s=" + fmt(s))};
                    });
                }
        for (const auto& item :
             {std::pair<std::string, double>{"diag12", 1.2},
              std::pair<std::string, double>{"rot_pi3", 1.9}}) {
            auto opp = find_op(item.first);
            double psi = item.second;
            jobs.push_back([opp, psi, cfg]() {
                SectorFn f = catalog_lookup("resolvent:1");
                CalcReport r = h_calc_arccot(f, *opp, psi, cfg);
                return std::vector<BoundCheck>{make_check(
                    "apriori_edge_calc", r.result_norm, r.bound_rhs,
                    "matrix=" + opp->name() + " fn=resolvent:1 psi=" +
                        fmt(psi))};
            });
        }
        for (const auto& nm : {"diag12", "rot_pi3", "upwind8"})
            for (double psi : {1.2, 2.0}) {
                auto opp = find_op(nm);
                if (!(opp->theta() < psi)) continue;
                jobs.push_back([opp, psi, cfg]() {
                    double err = 0.0;
                    CMatrix K = arccot_int(*opp, psi, 1.0, cfg, &err);
                    double rhs =
                        inflated_M(*opp, psi) * (PI / 2.0);
                    return std::vector<BoundCheck>{make_check(
                        "kernel_mass_bound", spectral_norm(K), rhs,
                        "matrix=" + opp->name() + " psi=" + fmt(psi) +
                            " quad_err=" + fmt(err))};
                });
            }
    }

    run_check_jobs(rep, jobs, threads);
    finalize(rep, start);
    return rep;
}

// --- fn-asymptotics -------------------------------------------------------------

double lsq_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double xm = 0.0, ym = 0.0;
    for (size_t i = 0; i < x.size(); ++i) xm += x[i], ym += y[i];
    xm /= (double)x.size();
    ym /= (double)x.size();
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - xm) * (y[i] - ym);
        den += (x[i] - xm) * (x[i] - xm);
    }
    return num / den;
}

SuiteReport suite_fn_asymptotics(int threads, const QuadConfig& cfg0) {
    auto start = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = "fn-asymptotics";
    QuadConfig cfg = cfg0;
    cfg.abs_tol = std::max(cfg0.abs_tol, 1e-7);
    cfg.rel_tol = std::max(cfg0.rel_tol, 1e-6);

    std::vector<int> ladder0 = {1,  2,   4,   8,   10,  16, 32,
                                64, 100, 128, 256, 512, 1024};
    std::vector<int> ladder1;
    for (int n = 1; n <= 64; ++n) ladder1.push_back(n);
    std::vector<int> ladder_b = {4, 8, 16, 32, 64, 128, 256, 512, 1024};
    std::vector<int> ladder_hp = {1, 2, 4, 8};

    struct Item {
        int kind;  // 0: weight-0 norm, 1: weight-1 norm, 2: strip norm, 3: hp
        int n;
        double value = 0.0;
    };
    std::vector<Item> items;
    for (int n : ladder0) items.push_back({0, n});
    for (int n : ladder1) items.push_back({1, n});
    for (int n : ladder_b) items.push_back({2, n});
    for (int n : ladder_hp) items.push_back({3, n});

    parallel_for(
        (long)items.size(),
        [&](long i) {
            Item& it = items[(size_t)i];
            SectorFn f = make_cayley_power(it.n);
            switch (it.kind) {
                case 0: it.value = ds_norm(f, 0.0, cfg).value; break;
                case 1: it.value = ds_norm(f, 1.0, cfg).value; break;
                case 2: it.value = b_norm(f, cfg).value; break;
                case 3: it.value = hp_norm(f, cfg).value; break;
            }
        },
        threads);

    std::map<int, double> ds0, ds1, bn, hp;
    for (const auto& it : items) {
        if (it.kind == 0) ds0[it.n] = it.value;
        if (it.kind == 1) ds1[it.n] = it.value;
        if (it.kind == 2) bn[it.n] = it.value;
        if (it.kind == 3) hp[it.n] = it.value;
    }

    for (int n : {1, 10, 100}) {
        rep.checks.push_back(make_check(
            "log_sandwich_lower", 1.0 + 2.0 * std::log(n + 1.0), ds0[n],
            "n=" + std::to_string(n)));
        rep.checks.push_back(make_check("log_sandwich_upper", ds0[n],
                                        8.0 * (4.0 + std::log(n + 1.0)),
                                        "n=" + std::to_string(n)));
    }
    const double uniform_rhs = 1.0 + 16.0 * (PI + std::pow(2.0, -0.5));
    for (int n : ladder1)
        rep.checks.push_back(make_check("uniform_weight1", ds1[n], uniform_rhs,
                                        "n=" + std::to_string(n)));

    std::vector<double> xs, ys, xb, yb;
    for (int n : ladder_b) {
        xs.push_back(std::log(std::log((double)n)));
        ys.push_back(std::log(ds0[n]));
        xb.push_back(std::log((double)n));
        yb.push_back(bn[n]);
    }
    double slope0 = lsq_slope(xs, ys);
    double slope_b = lsq_slope(xb, yb);
    rep.checks.push_back(
        make_check("growth_slope_low", 0.75, slope0, "loglog regression"));
    rep.checks.push_back(
        make_check("growth_slope_high", slope0, 1.25, "loglog regression"));
    rep.checks.push_back(make_check("strip_norm_growth_positive", 0.0, slope_b,
                                    "slope vs log n"));

    std::set<int> all_n;
    for (const auto& [n, v] : ds0) all_n.insert(n);
    for (const auto& [n, v] : ds1) all_n.insert(n);
    for (int n : all_n) {
        TableRow row;
        row.label = "n=" + std::to_string(n);
        auto put = [&](const char* k, const std::map<int, double>& m) {
            auto it = m.find(n);
            if (it != m.end()) row.values.push_back({k, it->second});
        };
        put("ds0", ds0);
        put("ds1", ds1);
        put("strip", bn);
        put("hp", hp);
        rep.rows.push_back(std::move(row));
    }
    rep.notes.push_back(
        "hp column computed from convolution densities up to n=8 only; "
        "larger n reported via the weight-0 and strip columns");
    finalize(rep, start);
    return rep;
}

// --- shift -------------------------------------------------------------------

double shift_constant(double psi, double s) {
    double a = std::tan(psi);
    double psi_a = std::atan(a + std::sqrt(1.0 + a * a));
    return (s + 1.0) * std::pow(2.0, s) * beta_fn((s + 1.0) / 2.0, 0.5) /
               (PI * std::cos(psi) * std::pow(std::cos(psi_a), s + 2.0)) +
           std::pow(2.0, s + 1.0);
}

SuiteReport suite_shift(int threads, const QuadConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = "shift";
    struct Fn {
        std::string key;
        double s;
    };
    const std::vector<Fn> fns = {{"resolvent:1", 1.0}, {"arccot", 0.0}};
    const std::vector<double> psis = {PI / 6, PI / 4, PI / 3};

    struct Job {
        std::string key;
        double s, psi;
        cplx tau;
        double lhs = 0.0, base = 0.0;
    };
    std::vector<Job> grid;
    for (const auto& fn : fns)
        for (double psi : psis)
            for (double r : {0.5, 1.0, 2.0})
                for (double sg : {1.0, -1.0}) {
                    if (r == 1.0 && sg < 0) continue;  // tau = 1 only once
                    cplx tau = (r == 1.0) ? cplx{1.0, 0.0}
                                          : std::polar(r, sg * 0.9 * psi);
                    grid.push_back({fn.key, fn.s, psi, tau});
                }

    std::map<std::pair<std::string, long long>, double> base;
    for (const auto& fn : fns) {
        SectorFn f = catalog_lookup(fn.key);
        base[{fn.key, std::llround(fn.s * 1e9)}] = ds_norm(f, fn.s, cfg).value;
    }
    parallel_for(
        (long)grid.size(),
        [&](long i) {
            Job& j = grid[(size_t)i];
            SectorFn f = catalog_lookup(j.key);
            j.base = base.at({j.key, std::llround(j.s * 1e9)});
            j.lhs = ds_norm(shift(f, j.tau), j.s, cfg).value;
        },
        threads);
    for (const auto& j : grid)
        rep.checks.push_back(make_check(
            "shift_bound", j.lhs, shift_constant(j.psi, j.s) * j.base,
            "fn=" + j.key + " s=" + fmt(j.s) + " psi=" + fmt(j.psi) +
                " tau=" + fmtc(j.tau) + " base=" + fmt(j.base)));
    for (const auto& fn : fns) {
        double b = base.at({fn.key, std::llround(fn.s * 1e9)});
        rep.checks.push_back(make_check(
            "shift_trivial", b, shift_constant(psis[0], fn.s) * b,
            "fn=" + fn.key + " s=" + fmt(fn.s) + " tau=0"));
    }

    {
        SectorFn f = catalog_lookup("resolvent:1");
        double psih = PI / 4;
        cplx tau = std::polar(0.5, 0.2);
        double num = hpsi_norm(shift(f, tau), psih, cfg).value;
        double den = hpsi_norm(f, psih, cfg).value;
        rep.notes.push_back(
            "observational: boundary-space shift ratio " + fmt(num / den) +
            " for tau=" + fmtc(tau) + " at angle " + fmt(psih) +
            "; the literature brackets the analogous uniform constant by 2K "
            "with 2 < K < 3.7; not a pass/fail gate");
    }
    rep.notes.push_back(
        "shift constant uses the Beta factor B((s+1)/2, 1/2) from the "
        "statement form; an alternative inner derivation suggests "
        "B((s+1)/2, 2); the statement constant is the one checked here");
    finalize(rep, start);
    return rep;
}

// --- rational ------------------------------------------------------------------

SuiteReport suite_rational(int threads, const QuadConfig& cfg) {
    auto start = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite = "rational";

    std::vector<cplx> base_grid;
    for (int j = 0; j < 16; ++j)
        base_grid.push_back(std::pow(10.0, -2.0 + 4.0 * j / 15.0));
    auto subgrid = [&](int degree) {
        std::vector<cplx> g;
        int stride = 16 / degree;
        for (int j = 0; j < 16; j += stride) g.push_back(base_grid[(size_t)j]);
        return g;
    };
    const std::vector<int> degrees = {2, 4, 8, 16};

    {
        SectorFn f = catalog_lookup("resolvent:1");
        RationalFit fit = rational_fit(f, 1.0, {cplx{1.0, 0.0}}, cfg);
        rep.checks.push_back(make_check("exact_representation",
                                        fit.residual_norm, 1e-10,
                                        "fn=resolvent:1 degree=1 pole=1"));
    }

    struct Curve {
        std::string key;
        double s;
        std::vector<double> residuals;
    };
    std::vector<Curve> curves = {{"arccot", 0.0, {}}, {"exp", 1.0, {}}};
    for (auto& c : curves) {
        SectorFn f = catalog_lookup(c.key);
        std::vector<double> res(degrees.size());
        parallel_for(
            (long)degrees.size(),
            [&](long i) {
                res[(size_t)i] =
                    rational_fit(f, c.s, subgrid(degrees[(size_t)i]), cfg)
                        .residual_norm;
            },
            threads);
        c.residuals = res;
        for (size_t i = 0; i < degrees.size(); ++i) {
            TableRow row;
            row.label = c.key + " degree=" + std::to_string(degrees[i]);
            row.values.push_back({"residual", res[i]});
            rep.rows.push_back(std::move(row));
        }
    }
    for (size_t i = 0; i + 1 < degrees.size(); ++i) {
        rep.checks.push_back(make_check(
            "arccot_residual_strictly_decreasing", curves[0].residuals[i + 1],
            curves[0].residuals[i] * (1.0 - 1e-6),
            "degrees " + std::to_string(degrees[i]) + "->" +
                std::to_string(degrees[i + 1])));
        rep.checks.push_back(make_check(
            "exp_residual_nonincreasing", curves[1].residuals[i + 1],
            curves[1].residuals[i],
            "degrees " + std::to_string(degrees[i]) + "->" +
                std::to_string(degrees[i + 1])));
    }
    finalize(rep, start);
    return rep;
}

} // namespace

BoundCheck make_check(std::string name, double lhs, double rhs,
                      std::string inputs) {
    BoundCheck c;
    c.name = std::move(name);
    c.lhs = lhs;
    c.rhs = rhs;
    c.margin = rhs - lhs;
    c.passed = lhs <= rhs * (1.0 + 1e-9);
    c.inputs = std::move(inputs);
    return c;
}

RationalFit rational_fit(const SectorFn& f, double s,
                         const std::vector<cplx>& pole_grid,
                         const QuadConfig& cfg) {
    if (!f.has_limit_at_inf)
        throw std::invalid_argument(
            "rational_fit requires a finite limit at infinity");
    std::vector<cplx> zs;
    for (double phi : {0.0, PI / 4, -PI / 4})
        for (int i = 0; i < 48; ++i) {
            double t = std::pow(10.0, -3.0 + 6.0 * i / 47.0);
            zs.push_back(std::polar(t, phi));
        }
    const int m = (int)zs.size();
    const int d = (int)pole_grid.size();
    // value rows plus derivative rows: the derivative mismatch is what the
    // weighted norm integrates, so fitting both keeps the reported residual
    // aligned with the least-squares objective
    Eigen::MatrixXcd G(2 * m, d + 1);
    Eigen::VectorXcd y(2 * m);
    for (int i = 0; i < m; ++i) {
        const cplx z = zs[(size_t)i];
        G(i, 0) = 1.0;
        y(i) = f.eval(z);
        G(m + i, 0) = 0.0;
        y(m + i) = std::abs(z) * f.deriv(z);
        for (int k = 0; k < d; ++k) {
            cplx w = pole_grid[(size_t)k] + z;
            G(i, k + 1) = 1.0 / w;
            G(m + i, k + 1) = -std::abs(z) / (w * w);
        }
    }
    Eigen::MatrixXcd H = G.adjoint() * G +
                         1e-12 * Eigen::MatrixXcd::Identity(d + 1, d + 1);
    Eigen::VectorXcd a = H.ldlt().solve(G.adjoint() * y);

    RationalFit fit;
    fit.degree = d;
    fit.poles = pole_grid;
    fit.coeffs.assign((size_t)d + 1, cplx{});
    for (int k = 0; k <= d; ++k) fit.coeffs[(size_t)k] = a(k);

    std::vector<cplx> poles = pole_grid;
    std::vector<cplx> coef(fit.coeffs.begin() + 1, fit.coeffs.end());
    CFun fd = f.deriv;
    CFun hprime = [fd, poles, coef](cplx z) -> cplx {
        cplx v = fd(z);
        for (size_t k = 0; k < poles.size(); ++k) {
            cplx w = poles[k] + z;
            v += coef[k] / (w * w);
        }
        return v;
    };
    QuadConfig c = cfg;
    c.abs_tol = std::max(cfg.abs_tol, 1e-9);
    NormResult r = vs_norm(hprime, s, c);
    fit.residual_norm = std::abs(f.limit_at_inf - a(0)) + r.value;
    return fit;
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "cayley", "semigroup", "analf",          "bernstein",
        "frac",   "shift",     "fn-asymptotics", "rational"};
    return names;
}

SuiteReport run_suite(const std::string& name, int threads,
                      const QuadConfig& cfg, std::uint64_t seed) {
    if (name == "cayley") return suite_cayley(threads, cfg);
    if (name == "semigroup") return suite_semigroup(threads, cfg);
    if (name == "analf") return suite_analf(threads, cfg);
    if (name == "bernstein") return suite_bernstein(threads, cfg);
    if (name == "frac") return suite_frac(threads, cfg, seed);
    if (name == "fn-asymptotics") return suite_fn_asymptotics(threads, cfg);
    if (name == "shift") return suite_shift(threads, cfg);
    if (name == "rational") return suite_rational(threads, cfg);
    throw std::invalid_argument("unknown suite: " + name);
}

} // namespace seccalc
