#include "seccalc/normcalc.hpp"

#include <limits>
#include <stdexcept>

namespace seccalc {

namespace {

constexpr double INF = std::numeric_limits<double>::infinity();

NormResult from_polar(const Quad2D<double>& q, SpaceTag tag) {
    NormResult r;
    r.space_tag = tag;
    r.est_abs_err = q.est_err;
    r.nodes_used = q.nodes;
    r.truncation_flag = q.truncated;
    r.divergent = q.divergent;
    r.value = q.divergent ? INF : q.value;
    return r;
}

NormResult from_ray(const Quad1D<double>& q, SpaceTag tag, const QuadConfig& cfg) {
    NormResult r;
    r.space_tag = tag;
    r.est_abs_err = q.err;
    r.nodes_used = q.nodes;
    // endpoint-growth chains are the divergence signal; a stalled or
    // budget-exhausted run stays finite and reports its error estimate
    r.divergent = q.divergent;
    double tail = q.tail_left + q.tail_right;
    double tol = std::max(cfg.abs_tol, cfg.rel_tol * q.value);
    r.truncation_flag = !(tail <= 0.1 * tol);
    r.value = r.divergent ? INF : q.value;
    return r;
}

// golden-section maximization of a continuous function on [a, b]
template <class F>
double golden_max(F&& f, double a, double b, int iters = 40) {
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

// sup of |f| over the closed sector edge rays, grid + golden refinement
double ray_sup(const CFun& f, double phi, double ulo, double uhi, int grid_n) {
    double best = 0.0;
    int best_j = 0;
    auto val = [&](double u) {
        return std::abs(f(std::exp(u) * std::polar(1.0, phi)));
    };
    for (int j = 0; j < grid_n; ++j) {
        double u = ulo + (uhi - ulo) * j / (grid_n - 1);
        double v = val(u);
        if (v > best) {
            best = v;
            best_j = j;
        }
    }
    double h = (uhi - ulo) / (grid_n - 1);
    double a = ulo + h * std::max(0, best_j - 1);
    double b = ulo + h * std::min(grid_n - 1, best_j + 1);
    return std::max(best, golden_max(val, a, b));
}

} // namespace

const char* space_tag_name(SpaceTag t) {
    switch (t) {
        case SpaceTag::Vs: return "Vs";
        case SpaceTag::Ds: return "Ds";
        case SpaceTag::DsInf: return "DsInf";
        case SpaceTag::B: return "B";
        case SpaceTag::H1Sector: return "H1Sector";
        case SpaceTag::H1Star: return "H1Star";
        case SpaceTag::Hpsi: return "Hpsi";
        case SpaceTag::Epsi: return "Epsi";
        case SpaceTag::HP: return "HP";
    }
    return "?";
}

NormResult vs_norm(const CFun& g, double s, const QuadConfig& cfg) {
    if (s <= -1.0) throw std::invalid_argument("vs_norm requires s > -1");
    auto q = integrate_polar<double>(
        [&](double rho, cplx dir) { return std::abs(g(rho * dir)); }, s,
        -PI / 2, PI / 2, 0.0, cfg);
    return from_polar(q, SpaceTag::Vs);
}

NormResult ds_norm(const SectorFn& f, double s, const QuadConfig& cfg) {
    NormResult r = vs_norm(f.deriv, s, cfg);
    r.space_tag = SpaceTag::Ds;
    if (!f.has_limit_at_inf)
        throw std::invalid_argument("ds_norm needs a sectorial limit at infinity");
    r.value += std::abs(f.limit_at_inf);
    return r;
}

NormResult ds_inf_norm(const SectorFn& f, double s, const QuadConfig& cfg) {
    NormResult r = vs_norm(f.deriv, s, cfg);
    r.space_tag = SpaceTag::DsInf;
    const double U = std::min(cfg.log_radius_cut, 30.0);
    double sup = std::abs(f.limit_at_inf);
    sup = std::max(sup, std::abs(f.limit_at_zero));
    // boundary rays of the half-plane carry the sup by the maximum principle
    for (double phi : {-PI / 2 * (1 - 1e-9), PI / 2 * (1 - 1e-9)})
        sup = std::max(sup, ray_sup(f.eval, phi, -U, U, 129));
    r.value += sup;
    return r;
}

NormResult h1_sector_norm(const CFun& g, double psi, const QuadConfig& cfg) {
    if (!(psi > 0.0 && psi <= PI))
        throw std::invalid_argument("h1_sector_norm requires psi in (0, pi]");
    auto up = abs_ray_integral(g, psi, cfg);
    auto dn = abs_ray_integral(g, -psi, cfg);
    Quad1D<double> both;
    both.value = up.value + dn.value;
    both.err = up.err + dn.err;
    both.nodes = up.nodes + dn.nodes;
    both.divergent = up.divergent || dn.divergent;
    both.stalled = up.stalled || dn.stalled;
    both.exhausted = up.exhausted || dn.exhausted;
    both.tail_left = up.tail_left + dn.tail_left;
    both.tail_right = up.tail_right + dn.tail_right;
    return from_ray(both, SpaceTag::H1Sector, cfg);
}

NormResult h1_star_norm(const CFun& g, double psi, const QuadConfig& cfg) {
    if (!(psi > 0.0 && psi <= PI))
        throw std::invalid_argument("h1_star_norm requires psi in (0, pi]");
    NormResult out;
    out.space_tag = SpaceTag::H1Star;
    const int grid_n = 41;
    double best = -1.0;
    int best_j = 0;
    std::vector<Quad1D<double>> vals(grid_n);
    for (int j = 0; j < grid_n; ++j) {
        double phi = -psi + 2.0 * psi * j / (grid_n - 1);
        vals[j] = abs_ray_integral(g, phi, cfg);
        out.nodes_used += vals[j].nodes;
        if (vals[j].divergent || vals[j].stalled || vals[j].exhausted)
            out.divergent = true;
        if (vals[j].value > best) {
            best = vals[j].value;
            best_j = j;
        }
    }
    double h = 2.0 * psi / (grid_n - 1);
    double a = -psi + h * std::max(0, best_j - 1);
    double b = -psi + h * std::min(grid_n - 1, best_j + 1);
    double refined = golden_max(
        [&](double phi) {
            auto r = abs_ray_integral(g, phi, cfg);
            out.nodes_used += r.nodes;
            return r.value;
        },
        a, b, 32);
    const Quad1D<double>& bb = vals[best_j];
    out.est_abs_err = bb.err;
    double tol = std::max(cfg.abs_tol, cfg.rel_tol * best);
    out.truncation_flag = !((bb.tail_left + bb.tail_right) <= 0.1 * tol);
    out.value = out.divergent ? INF : std::max(best, refined);
    return out;
}

NormResult hpsi_norm(const SectorFn& f, double psi, const QuadConfig& cfg,
                     bool prime) {
    if (!(psi > 0.0 && psi < PI) || psi > f.holo_angle)
        throw std::invalid_argument("hpsi_norm requires 0 < psi <= holo angle");
    NormResult r = h1_sector_norm(f.deriv, psi, cfg);
    r.space_tag = SpaceTag::Hpsi;
    if (prime) {
        r.value += std::abs(f.limit_at_inf);
        return r;
    }
    const double U = std::min(cfg.log_radius_cut, 30.0);
    double sup = std::max(std::abs(f.limit_at_inf), std::abs(f.limit_at_zero));
    for (double phi : {-psi, psi})
        sup = std::max(sup, ray_sup(f.eval, phi, -U, U, 129));
    r.value += sup;
    return r;
}

NormResult epsi_norm(const SectorFn& f, double psi, const QuadConfig& cfg) {
    if (!(psi > 0.0 && psi < PI) || psi > f.holo_angle)
        throw std::invalid_argument("epsi_norm requires 0 < psi <= holo angle");
    auto e = f.eval;
    NormResult r = h1_sector_norm([e](cplx z) { return e(z) / z; }, psi, cfg);
    r.space_tag = SpaceTag::Epsi;
    return r;
}

NormResult b_norm(const SectorFn& f, const QuadConfig& cfg) {
    NormResult out;
    out.space_tag = SpaceTag::B;
    const double U = cfg.log_radius_cut;
    auto fd = f.deriv;

    // sup over beta of |f'(alpha + i beta)|: 129-point grid clustered in
    // magnitude around |beta| ~ alpha, then golden refinement in the best slot
    auto beta_sup = [&](double alpha) {
        std::vector<double> betas;
        betas.reserve(129);
        betas.push_back(0.0);
        for (int j = 0; j < 64; ++j) {
            double mag = alpha * std::exp(-7.0 + 14.0 * j / 63.0);
            betas.push_back(mag);
            betas.push_back(-mag);
        }
        std::sort(betas.begin(), betas.end());
        int best_j = 0;
        double best = -1.0;
        for (int j = 0; j < (int)betas.size(); ++j) {
            double v = std::abs(fd(cplx{alpha, betas[j]}));
            if (v > best) {
                best = v;
                best_j = j;
            }
        }
        double lo = betas[std::max(0, best_j - 1)];
        double hi = betas[std::min((int)betas.size() - 1, best_j + 1)];
        if (hi > lo)
            best = std::max(
                best, golden_max(
                          [&](double bb) { return std::abs(fd(cplx{alpha, bb})); },
                          lo, hi));
        return best;
    };

    Quad1DOptions opt;
    opt.tail_left = opt.tail_right = true;
    opt.chain_left = opt.chain_right = true;
    auto q = integrate_gk<double>(
        [&](double u) {
            double alpha = std::exp(u);
            return alpha * beta_sup(alpha);
        },
        -U, U, 0.0, cfg.abs_tol, cfg.rel_tol, cfg.max_panels, opt);
    NormResult r = from_ray(q, SpaceTag::B, cfg);

    const double Us = std::min(U, 30.0);
    double sup = std::max(std::abs(f.limit_at_inf), std::abs(f.limit_at_zero));
    for (double phi : {-PI / 2 * (1 - 1e-9), PI / 2 * (1 - 1e-9)})
        sup = std::max(sup, ray_sup(f.eval, phi, -Us, Us, 129));
    r.value += sup;
    return r;
}

NormResult hp_norm(const SectorFn& f, const QuadConfig& cfg) {
    if (!f.laplace)
        throw std::invalid_argument(
            "hp_norm requires a Laplace measure representation: " + f.key);
    NormResult out;
    out.space_tag = SpaceTag::HP;
    double acc = std::abs(f.laplace->const_term);
    for (auto& [t, m] : f.laplace->atoms) {
        (void)t;
        acc += std::abs(m);
    }
    if (f.laplace->density) {
        auto d = f.laplace->density;
        auto q = integrate_halfline<double>(
            [d](double t) { return std::abs(d(t)); }, 0.0, cfg);
        out.est_abs_err = q.err;
        out.nodes_used = q.nodes;
        out.divergent = q.divergent || q.stalled || q.exhausted;
        double tol = std::max(cfg.abs_tol, cfg.rel_tol * q.value);
        out.truncation_flag = !((q.tail_left + q.tail_right) <= 0.1 * tol);
        acc += q.value;
    }
    out.value = out.divergent ? INF : acc;
    return out;
}

Quad1D<double> abs_ray_integral(const CFun& g, double phi, const QuadConfig& cfg) {
    cplx dir = std::polar(1.0, phi);
    return integrate_halfline<double>(
        [&](double t) { return std::abs(g(t * dir)); }, 0.0, cfg, {}, true);
}

} // namespace seccalc
