#pragma once

#include <limits>
#include <vector>

#include "seccalc/funcat.hpp"
#include "seccalc/normcalc.hpp"
#include "seccalc/quad.hpp"

namespace seccalc {

// arccot(z^nu) with overflow-safe limits: the kernel tends to 0 as
// |z^nu| -> infinity inside the right half-plane and to pi/2 at 0
inline cplx arccot_pow(cplx z, double nu) {
    double L = nu * std::log(std::abs(z));
    if (L > 700.0) return cplx{0.0, 0.0};
    if (L < -700.0) return cplx{PI / 2, 0.0};
    return arccot(cpow(z, nu));
}

// log|(1+t^nu)/(1-t^nu)| with overflow-safe asymptotics
inline double log_edge_kernel(double t, double nu) {
    double L = nu * std::log(t);
    if (L > 36.0) return 2.0 * std::exp(-L);
    if (L < -36.0) return 2.0 * std::exp(L);
    double tn = std::exp(L);
    return std::log(std::abs((1.0 + tn) / (1.0 - tn)));
}

// (Q_s g)(z) = -(2^s/pi) * area integral of alpha^s g(alpha+i beta)
//              / (z + alpha - i beta)^{s+1};  the reproducing kernel operator
cplx q_apply(const CFun& g, double s, cplx z, const QuadConfig& cfg = {},
             double* est_err = nullptr, long* nodes = nullptr);

struct ReproReport {
    std::string fn_key;
    std::string formula;   // "qs", "repa1", or "arccot"
    double s = 0.0;
    double psi = 0.0;
    std::vector<cplx> points;
    std::vector<cplx> expected;   // direct evaluation f(z)
    std::vector<cplx> computed;   // reconstruction through the formula
    double max_abs_err = 0.0;
    double est_quad_err = 0.0;    // worst per-point quadrature error estimate
    long nodes = 0;
    double tol = 0.0;
    bool ok = false;
};

// f(z) = f(inf) + (Q_s f')(z) at each test point
ReproReport reproduce_ds(const SectorFn& f, double s, const std::vector<cplx>& pts,
                         const QuadConfig& cfg = {});

// half-plane lift: with gamma = pi/(2 psi) and g(z) = f(z^{1/gamma}),
// f(z) = f(inf) + (Q_0 g')(z^gamma) at each test point in the open sector
ReproReport reproduce_hpsi(const SectorFn& f, double psi,
                           const std::vector<cplx>& pts,
                           const QuadConfig& cfg = {});

// sector edge average form: with f_psi(t) = (f(t e^{i psi}) + f(t e^{-i psi}))/2,
// f(z) = f(inf) - (2/pi) * integral of f_psi'(t) arccot((z/t)^gamma) dt
ReproReport reproduce_arccot(const SectorFn& f, double psi,
                             const std::vector<cplx>& pts,
                             const QuadConfig& cfg = {});

struct KernelIdentityReport {
    double psi = 0.0;
    double nu = 0.0;       // pi / (2 psi)
    double lhs = 0.0;      // (1/2pi) integral of log|(1+t^nu)/(1-t^nu)| dt/t
    double rhs = 0.0;      // psi / 2
    double abs_err = 0.0;
    double est_quad_err = 0.0;
    long nodes = 0;
    bool ok = false;
};

// scalar identity behind the edge-average kernel: the logarithmic kernel has
// total mass psi/2 regardless of psi
KernelIdentityReport arccot_kernel_identity(double psi, double tol = 1e-10,
                                            const QuadConfig& cfg = {});

struct DecayProbe {
    double p_zero = 0.0;  // log-log slope of |f'| on the positive axis near 0
    double p_inf = 0.0;   // same near infinity (negative for decay)
    double ray_angle = 0.0;
};

// samples |f'| along a ray to report algebraic growth/decay exponents; used as
// a cheap membership pre-check before running full norms
DecayProbe decay_probe(const SectorFn& f, double phi = 0.0);

// integral of F over (0, inf) with the integrable log-type singularity at
// t = 1 resolved by the substitutions t = 1 - e^{-v} and t = 1 + e^{-v}
template <class T, class F>
Quad1D<T> integrate_split_at_one(F&& f, T zero, const QuadConfig& cfg,
                                 const std::vector<double>& extra_breaks = {}) {
    const double U = cfg.log_radius_cut;
    const double tol = cfg.abs_tol / 4;
    Quad1D<T> out{zero};
    auto fold = [&](const Quad1D<T>& r) {
        out.value = out.value + r.value;
        out.err += r.err;
        out.nodes += r.nodes;
        out.divergent = out.divergent || r.divergent;
        out.exhausted = out.exhausted || r.exhausted;
        out.stalled = out.stalled || r.stalled;
        out.tail_left += r.tail_left;
        out.tail_right += r.tail_right;
    };
    // t in (0, 1/2]: plain log coordinates
    Quad1DOptions o0;
    o0.tail_left = true;
    for (double b : extra_breaks)
        if (b > 0.0 && b < 0.5) o0.breakpoints.push_back(std::log(b));
    fold(integrate_gk<T>(
        [&](double u) -> T {
            double t = std::exp(u);
            return T(t * f(t));
        },
        -U, std::log(0.5), zero, tol, cfg.rel_tol, cfg.max_panels, o0));
    // Substituted pieces hugging t = 1 stop where 1 -+ e^{-v} would collapse
    // onto 1.0 exactly (a log-type kernel is not evaluable there); the cut
    // loses only O(Usub e^{-Usub}) mass, far below the panel tolerances, and
    // the geometric tail estimate accounts for it.
    const double Usub = std::min(
        U, -std::log(16.0 * std::numeric_limits<double>::epsilon()));
    Quad1DOptions o12;
    o12.tail_right = true;
    // t in [1/2, 1): t = 1 - e^{-v}, v in [log 2, Usub]
    fold(integrate_gk<T>(
        [&](double v) -> T {
            double e = std::exp(-v);
            return T(e * f(1.0 - e));
        },
        std::log(2.0), Usub, zero, tol, cfg.rel_tol, cfg.max_panels, o12));
    // t in (1, 2]: t = 1 + e^{-v}, v in [0, Usub]
    fold(integrate_gk<T>(
        [&](double v) -> T {
            double e = std::exp(-v);
            return T(e * f(1.0 + e));
        },
        0.0, Usub, zero, tol, cfg.rel_tol, cfg.max_panels, o12));
    // t in [2, inf): plain log coordinates
    Quad1DOptions o3;
    o3.tail_right = true;
    for (double b : extra_breaks)
        if (b > 2.0) o3.breakpoints.push_back(std::log(b));
    fold(integrate_gk<T>(
        [&](double u) -> T {
            double t = std::exp(u);
            return T(t * f(t));
        },
        std::log(2.0), U, zero, tol, cfg.rel_tol, cfg.max_panels, o3));
    return out;
}

} // namespace seccalc
