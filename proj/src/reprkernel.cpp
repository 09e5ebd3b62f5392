#include "seccalc/reprkernel.hpp"

#include <stdexcept>

namespace seccalc {

namespace {

const double INF = std::numeric_limits<double>::infinity();

void start_report(ReproReport& rep, const SectorFn& f, const char* formula,
                  const std::vector<cplx>& pts) {
    rep.fn_key = f.key;
    rep.formula = formula;
    rep.points = pts;
    rep.tol = 1e-6;
}

void finish_point(ReproReport& rep, cplx expected, cplx computed, double ee,
                  long nd) {
    rep.expected.push_back(expected);
    rep.computed.push_back(computed);
    rep.max_abs_err = std::max(rep.max_abs_err, std::abs(expected - computed));
    rep.est_quad_err = std::max(rep.est_quad_err, ee);
    rep.nodes += nd;
}

} // namespace

cplx q_apply(const CFun& g, double s, cplx z, const QuadConfig& cfg,
             double* est_err, long* nodes) {
    if (!(s > -1.0)) throw std::invalid_argument("q_apply requires s > -1");
    if (!(z.real() > 0.0))
        throw std::domain_error("q_apply requires Re z > 0");
    std::vector<double> breaks;
    breaks.push_back(std::log(std::abs(z)));
    auto quad = integrate_polar<cplx>(
        [&](double rho, cplx dir) -> cplx {
            cplx c = std::pow(rho, s + 1.0) * g(rho * dir);
            if (c == cplx{0.0, 0.0}) return c;
            return c * cpow(z + rho * std::conj(dir), -(s + 1.0));
        },
        s, -PI / 2, PI / 2, cplx{0.0, 0.0}, cfg, breaks);
    if (est_err) *est_err = quad.divergent ? INF : quad.est_err;
    if (nodes) *nodes = quad.nodes;
    return -(std::pow(2.0, s) / PI) * quad.value;
}

ReproReport reproduce_ds(const SectorFn& f, double s, const std::vector<cplx>& pts,
                         const QuadConfig& cfg) {
    if (!f.has_limit_at_inf)
        throw std::invalid_argument(
            "reproduce_ds requires a finite limit at infinity");
    ReproReport rep;
    start_report(rep, f, "qs", pts);
    rep.s = s;
    for (cplx z : pts) {
        double ee = 0.0;
        long nd = 0;
        cplx rec = f.limit_at_inf + q_apply(f.deriv, s, z, cfg, &ee, &nd);
        finish_point(rep, f.eval(z), rec, ee, nd);
    }
    rep.ok = rep.max_abs_err < rep.tol;
    return rep;
}

ReproReport reproduce_hpsi(const SectorFn& f, double psi,
                           const std::vector<cplx>& pts, const QuadConfig& cfg) {
    if (!(psi > 0.0 && psi <= f.holo_angle))
        throw std::domain_error("reproduce_hpsi: psi outside holomorphy sector");
    if (!f.has_limit_at_inf)
        throw std::invalid_argument(
            "reproduce_hpsi requires a finite limit at infinity");
    const double gamma = PI / (2.0 * psi);
    ReproReport rep;
    start_report(rep, f, "repa1", pts);
    rep.psi = psi;
    CFun gprime = [gamma, &f](cplx w) -> cplx {
        // derivative of the half-plane lift g(w) = f(w^{1/gamma})
        return (1.0 / gamma) * cpow(w, 1.0 / gamma - 1.0) *
               f.deriv(cpow(w, 1.0 / gamma));
    };
    for (cplx z : pts) {
        if (!(std::abs(std::arg(z)) < psi))
            throw std::domain_error("reproduce_hpsi: point outside the sector");
        double ee = 0.0;
        long nd = 0;
        cplx rec = f.limit_at_inf + q_apply(gprime, 0.0, cpow(z, gamma), cfg, &ee, &nd);
        finish_point(rep, f.eval(z), rec, ee, nd);
    }
    rep.ok = rep.max_abs_err < rep.tol;
    return rep;
}

ReproReport reproduce_arccot(const SectorFn& f, double psi,
                             const std::vector<cplx>& pts,
                             const QuadConfig& cfg) {
    if (!(psi > 0.0 && psi < PI && psi <= f.holo_angle))
        throw std::domain_error("reproduce_arccot: psi outside holomorphy sector");
    if (!f.has_limit_at_inf)
        throw std::invalid_argument(
            "reproduce_arccot requires a finite limit at infinity");
    const double nu = PI / (2.0 * psi);
    ReproReport rep;
    start_report(rep, f, "arccot", pts);
    rep.psi = psi;
    const cplx ep = std::polar(1.0, psi), em = std::polar(1.0, -psi);
    auto fpsi_prime = [&](double t) -> cplx {
        return 0.5 * (ep * f.deriv(t * ep) + em * f.deriv(t * em));
    };
    for (cplx z : pts) {
        if (!(std::abs(std::arg(z)) < psi))
            throw std::domain_error("reproduce_arccot: point outside the sector");
        auto q = integrate_halfline<cplx>(
            [&](double t) -> cplx {
                return fpsi_prime(t) * arccot_pow(z / t, nu);
            },
            cplx{0.0, 0.0}, cfg, {std::abs(z)});
        double tail = q.tail_left + q.tail_right;
        double ee = q.divergent ? INF
                                : q.err + (std::isfinite(tail) ? tail : 0.0);
        cplx rec = f.limit_at_inf - (2.0 / PI) * q.value;
        finish_point(rep, f.eval(z), rec, ee, q.nodes);
    }
    rep.ok = rep.max_abs_err < rep.tol;
    return rep;
}

KernelIdentityReport arccot_kernel_identity(double psi, double tol,
                                            const QuadConfig& cfg) {
    if (!(psi > 0.0 && psi < PI))
        throw std::invalid_argument("arccot_kernel_identity: psi in (0, pi)");
    KernelIdentityReport rep;
    rep.psi = psi;
    rep.nu = PI / (2.0 * psi);
    QuadConfig c = cfg;
    c.abs_tol = std::min(cfg.abs_tol, 0.05 * tol);
    auto q = integrate_split_at_one<double>(
        [&](double t) { return log_edge_kernel(t, rep.nu) / (2.0 * PI * t); },
        0.0, c);
    rep.lhs = q.value;
    rep.rhs = psi / 2.0;
    rep.abs_err = std::abs(rep.lhs - rep.rhs);
    rep.est_quad_err = q.err + q.tail_left + q.tail_right;
    rep.nodes = q.nodes;
    rep.ok = rep.abs_err < tol && !q.divergent;
    return rep;
}

DecayProbe decay_probe(const SectorFn& f, double phi) {
    DecayProbe p;
    p.ray_angle = phi;
    cplx dir = std::polar(1.0, phi);
    auto lv = [&](double t) {
        return std::log(std::max(std::abs(f.deriv(t * dir)), 1e-300));
    };
    p.p_zero = (lv(1e-6) - lv(1e-8)) / (std::log(1e-6) - std::log(1e-8));
    p.p_inf = (lv(1e8) - lv(1e6)) / (std::log(1e8) - std::log(1e6));
    return p;
}

} // namespace seccalc
