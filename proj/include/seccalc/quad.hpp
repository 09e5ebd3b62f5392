#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <vector>

#include "seccalc/complexmath.hpp"

namespace seccalc {

struct QuadConfig {
    double abs_tol = 1e-9;
    double rel_tol = 1e-9;
    double log_radius_cut = 40.0; // radial integrals run over rho in [e^-U, e^U]
    int max_panels = 4096;        // panel budget per one-dimensional pass
    int angular_rule = 15;        // Gauss-Kronrod pair size; only the 7/15 pair is implemented
};

// --- value-type plumbing ----------------------------------------------------
//
// The panel engine is generic over the integrand value type: double, complex,
// or a matrix type. QuadOps<T>::norm drives refinement decisions; matrix
// overloads live next to the matrix type.

template <class T>
struct QuadOps {
    static double norm(const T& v) { return std::abs(v); }
};

// Value bundled with an accumulated error contribution. Used for nested
// integrals: the inner pass reports (value, error); integrating WithErr values
// propagates inner errors through the outer quadrature weights.
template <class T>
struct WithErr {
    T val;
    double err = 0.0;
};
template <class T>
WithErr<T> operator+(const WithErr<T>& a, const WithErr<T>& b) {
    return {a.val + b.val, a.err + b.err};
}
template <class T>
WithErr<T> operator-(const WithErr<T>& a, const WithErr<T>& b) {
    return {a.val - b.val, a.err + b.err};
}
template <class T>
WithErr<T> operator*(double c, const WithErr<T>& a) {
    return {c * a.val, std::abs(c) * a.err};
}
template <class T>
struct QuadOps<WithErr<T>> {
    static double norm(const WithErr<T>& v) { return QuadOps<T>::norm(v.val); }
};

// --- Gauss-Kronrod 7/15 pair (QUADPACK nodes/weights) ------------------------

inline constexpr double GK_X[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
inline constexpr double GK_WK[8] = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502,
    0.1406532597155259,  0.1690047266392679,  0.1903505780647854,
    0.2044329400752989,  0.2094821410847278};
inline constexpr double GK_WG[4] = {
    0.1294849661688697, 0.2797053914892766, 0.3818300505051189,
    0.4179591836734694};

// --- one-dimensional adaptive pass -------------------------------------------

template <class T>
struct Quad1D {
    T value;
    double err = 0.0;        // sum of panel error estimates
    long nodes = 0;          // integrand evaluations
    bool divergent = false;  // endpoint dyadic-chain heuristic fired
    bool exhausted = false;  // panel budget hit before tolerance
    bool stalled = false;    // refinement stopped reducing the error estimate
    double tail_left = 0.0;  // decay-extrapolated mass beyond each endpoint,
    double tail_right = 0.0; // for intervals that truncate an infinite domain
};

namespace detail {

template <class T>
struct Panel {
    double a, b;
    T val;       // Kronrod estimate of the panel integral
    double err;  // |K15 - G7|
    std::uint32_t id;
};

template <class T, class F>
Panel<T> eval_panel(F&& f, double a, double b, const T& zero, std::uint32_t id) {
    const double xm = 0.5 * (a + b), hl = 0.5 * (b - a);
    T acc15 = zero, acc7 = zero;
    for (int j = 0; j < 7; ++j) {
        T f1 = f(xm - hl * GK_X[j]);
        T f2 = f(xm + hl * GK_X[j]);
        T pair = f1 + f2;
        acc15 = acc15 + GK_WK[j] * pair;
        if (j % 2 == 1) acc7 = acc7 + GK_WG[j / 2] * pair;
    }
    T fc = f(xm);
    acc15 = acc15 + GK_WK[7] * fc;
    acc7 = acc7 + GK_WG[3] * fc;
    T val = hl * acc15;
    double err = hl * QuadOps<T>::norm(acc15 - acc7);
    return {a, b, val, err, id};
}

// deterministic order-independent reduction: sort by position, pairwise tree
template <class T>
T pairwise_sum(std::vector<Panel<T>>& panels, size_t lo, size_t hi, const T& zero) {
    if (lo >= hi) return zero;
    if (hi - lo == 1) return panels[lo].val;
    size_t mid = lo + (hi - lo) / 2;
    return pairwise_sum(panels, lo, mid, zero) + pairwise_sum(panels, mid, hi, zero);
}

// Divergence heuristic: walk the chain of leaf panels adjacent to an endpoint.
// If the five innermost dyadic refinements each contribute at least 0.9x the
// contribution of the next-coarser panel, the integral is treated as divergent
// at that endpoint.
template <class T>
bool endpoint_chain_divergent(const std::vector<Panel<T>>& sorted, bool left,
                              double full_width) {
    const size_t n = sorted.size();
    if (n < 7) return false;
    const double wmin = left ? (sorted[0].b - sorted[0].a)
                             : (sorted[n - 1].b - sorted[n - 1].a);
    if (wmin > full_width * 0x1p-20) return false;  // never refined deeply here
    int ok = 0;
    for (size_t k = 0; k + 1 < n && k < 24; ++k) {
        const Panel<T>& inner = left ? sorted[k] : sorted[n - 1 - k];
        const Panel<T>& outer = left ? sorted[k + 1] : sorted[n - 2 - k];
        double wi = inner.b - inner.a, wo = outer.b - outer.a;
        if (wo < wi || wo > 3.0 * wi) break;  // left the dyadic chain
        double ci = QuadOps<T>::norm(inner.val), co = QuadOps<T>::norm(outer.val);
        if (co > 0.0 && ci >= 0.9 * co) {
            if (++ok >= 5) return true;
        } else {
            break;
        }
    }
    return false;
}

// Geometric tail extrapolation past an endpoint from the two outermost panels.
template <class T>
double tail_estimate(const std::vector<Panel<T>>& sorted, bool right) {
    const size_t n = sorted.size();
    if (n < 2) return 0.0;
    const Panel<T>& last = right ? sorted[n - 1] : sorted[0];
    const Panel<T>& prev = right ? sorted[n - 2] : sorted[1];
    double w1 = last.b - last.a, w0 = prev.b - prev.a;
    double d1 = QuadOps<T>::norm(last.val) / w1;  // mean density near the cut
    double d0 = QuadOps<T>::norm(prev.val) / w0;
    if (d1 <= 0.0) return 0.0;
    double dist = right ? (0.5 * (last.a + last.b) - 0.5 * (prev.a + prev.b))
                        : (0.5 * (prev.a + prev.b) - 0.5 * (last.a + last.b));
    if (dist <= 0.0) return std::numeric_limits<double>::infinity();
    if (d1 >= d0) return std::numeric_limits<double>::infinity();  // not decaying
    double lambda = std::log(d0 / d1) / dist;  // density ~ exp(-lambda * x)
    return d1 / lambda;
}

} // namespace detail

struct Quad1DOptions {
    std::vector<double> breakpoints;  // interior seed points, need not be sorted
    int min_seed_panels = 8;
    bool chain_left = false;   // run the divergence heuristic at each endpoint
    bool chain_right = false;
    bool tail_left = false;    // estimate truncated mass beyond each endpoint
    bool tail_right = false;
    int max_panels = 0;        // 0: take the value from QuadConfig
};

template <class T, class F>
Quad1D<T> integrate_gk(F&& f, double a, double b, T zero, double abs_tol,
                       double rel_tol, int max_panels,
                       const Quad1DOptions& opt = {}) {
    using detail::Panel;
    Quad1D<T> out{zero};
    if (!(b > a)) return out;
    if (opt.max_panels > 0) max_panels = opt.max_panels;

    // seed grid: endpoints, caller breakpoints, uniform fill up to the minimum
    std::vector<double> cuts{a, b};
    for (double x : opt.breakpoints)
        if (x > a && x < b) cuts.push_back(x);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    while ((int)cuts.size() - 1 < opt.min_seed_panels) {
        std::vector<double> finer;
        finer.reserve(cuts.size() * 2);
        for (size_t i = 0; i + 1 < cuts.size(); ++i) {
            finer.push_back(cuts[i]);
            finer.push_back(0.5 * (cuts[i] + cuts[i + 1]));
        }
        finer.push_back(cuts.back());
        cuts.swap(finer);
    }

    std::vector<Panel<T>> panels;
    panels.reserve(256);
    std::uint32_t next_id = 0;
    int evals = 0;
    auto push_panel = [&](double lo, double hi) {
        panels.push_back(detail::eval_panel(f, lo, hi, zero, next_id++));
        ++evals;
        out.nodes += 15;
    };
    for (size_t i = 0; i + 1 < cuts.size(); ++i) push_panel(cuts[i], cuts[i + 1]);

    // max-error heap over panel indices; ties broken by insertion id
    auto worse = [&](std::uint32_t x, std::uint32_t y) {
        if (panels[x].err != panels[y].err) return panels[x].err < panels[y].err;
        return panels[x].id > panels[y].id;
    };
    std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, decltype(worse)>
        heap(worse);
    std::vector<bool> live(panels.size(), true);
    double total_err = 0.0;
    for (std::uint32_t i = 0; i < panels.size(); ++i) {
        heap.push(i);
        total_err += panels[i].err;
    }
    T running = detail::pairwise_sum(panels, 0, panels.size(), zero);

    auto collect_leaves = [&]() {
        std::vector<Panel<T>> leaves;
        leaves.reserve(panels.size());
        for (std::uint32_t i = 0; i < panels.size(); ++i)
            if (live[i]) leaves.push_back(panels[i]);
        std::sort(leaves.begin(), leaves.end(),
                  [](const Panel<T>& p, const Panel<T>& q) { return p.a < q.a; });
        return leaves;
    };

    const double width_floor =
        16.0 * std::numeric_limits<double>::epsilon() *
        std::max({std::abs(a), std::abs(b), 1.0});
    double stall_mark = total_err;
    int splits = 0, dead_small = 0;

    while (!heap.empty()) {
        double goal = std::max(abs_tol, rel_tol * QuadOps<T>::norm(running));
        if (total_err <= goal) break;
        if (evals >= max_panels) {
            out.exhausted = true;
            break;
        }
        std::uint32_t top = heap.top();
        if (panels[top].err <= 0.0) break;  // nothing left worth refining
        heap.pop();
        const double pa = panels[top].a, pb = panels[top].b;
        if (pb - pa < width_floor) {
            ++dead_small;  // cannot bisect further; leave as a leaf
            if (heap.empty() || dead_small > 64) break;
            continue;
        }
        live[top] = false;
        total_err -= panels[top].err;
        running = running + (-1.0) * panels[top].val;
        double mid = 0.5 * (pa + pb);
        for (double lo : {pa, mid}) {
            double hi = (lo == pa) ? mid : pb;
            push_panel(lo, hi);
            live.push_back(true);
            heap.push((std::uint32_t)panels.size() - 1);
            total_err += panels.back().err;
            running = running + panels.back().val;
        }
        ++splits;
        if (splits % 64 == 0) {
            if (total_err > 0.995 * stall_mark) {
                out.stalled = true;
                break;
            }
            stall_mark = total_err;
        }
        if ((opt.chain_left || opt.chain_right) && splits % 16 == 0) {
            auto leaves = collect_leaves();
            if ((opt.chain_left &&
                 detail::endpoint_chain_divergent(leaves, true, b - a)) ||
                (opt.chain_right &&
                 detail::endpoint_chain_divergent(leaves, false, b - a))) {
                out.divergent = true;
                break;
            }
        }
    }

    auto leaves = collect_leaves();
    out.value = detail::pairwise_sum(leaves, 0, leaves.size(), zero);
    out.err = 0.0;
    for (const auto& p : leaves) out.err += p.err;
    if (!out.divergent) {
        if (opt.chain_left && detail::endpoint_chain_divergent(leaves, true, b - a))
            out.divergent = true;
        if (opt.chain_right && detail::endpoint_chain_divergent(leaves, false, b - a))
            out.divergent = true;
    }
    if (opt.tail_left) out.tail_left = detail::tail_estimate(leaves, false);
    if (opt.tail_right) out.tail_right = detail::tail_estimate(leaves, true);
    return out;
}

// --- polar two-dimensional driver --------------------------------------------
//
// Computes   integral over phi in [phi_lo, phi_hi] of
//            cos(phi)^s * integral over rho in (0, inf) of G(rho, phi) d rho
// with the radial pass in log coordinates u = log(rho) over [-U, U].
// The integrand receives the ray as (rho, dir) with dir = e^{i phi} on the
// unit circle, so a point is rho * dir and its reflection rho * conj(dir).
//
// Angular windows reaching +-pi/2 integrate the endpoint strips under the
// substitution phi = +-(pi/2 - v^2). This flattens integrable cos-power
// singularities (the weight itself for s < 0, ray integrals growing like
// 1/cos(phi) for s < 1). It also sidesteps a double-precision wall, which is
// why the driver hands out dir instead of phi: an angle double cannot resolve
// distances below ulp(pi/2) ~ 2e-16 from the endpoint, where cos(phi)
// plateaus at ~6e-17; in the strips Re dir = sin(v^2) is computed directly
// and stays exact down to denormal angular distances.

template <class T>
struct Quad2D {
    T value;
    double est_err = 0.0;
    long nodes = 0;
    bool truncated = false;
    bool divergent = false;
    bool stalled = false;
};

template <class T, class G>
Quad2D<T> integrate_polar(G&& g, double s, double phi_lo, double phi_hi, T zero,
                          const QuadConfig& cfg,
                          const std::vector<double>& radial_breaks_u = {}) {
    Quad2D<T> out{zero};
    const double U = cfg.log_radius_cut;
    const double in_abs = std::max(cfg.abs_tol * 0.02, 1e-300);
    const double in_rel = cfg.rel_tol * 0.3;

    auto inner = [&](cplx dir) -> WithErr<T> {
        Quad1DOptions iopt;
        iopt.breakpoints = radial_breaks_u;
        iopt.tail_left = iopt.tail_right = true;
        iopt.chain_left = iopt.chain_right = true;
        auto radial = [&](double u) -> T {
            double rho = std::exp(u);
            return T(rho * g(rho, dir));
        };
        auto r = integrate_gk<T>(radial, -U, U, zero, in_abs, in_rel,
                                 cfg.max_panels, iopt);
        // A chain hit or a non-decaying tail inside the default window may be
        // a real divergence or just a maximum lying beyond the radius cut:
        // rays nearly parallel to the boundary push the turnover point out to
        // rho ~ 1/cos(phi). Rerun once on a much wider window and trust that
        // verdict; growth that persists out there is genuine. The width is
        // capped so integrand factors like rho^(s+1) stay below the overflow
        // threshold exp(~709); what lies beyond is unrepresentable anyway.
        if (r.divergent || !std::isfinite(r.tail_left + r.tail_right)) {
            const double wide =
                std::max(U, std::min(600.0, 700.0 / (s + 1.0)));
            auto w = integrate_gk<T>(radial, -wide, wide, zero, in_abs, in_rel,
                                     cfg.max_panels, iopt);
            w.nodes += r.nodes;
            r = w;
        }
        // an infinite tail estimate means the integrand does not decay at the
        // cut even on the wide window, which only a divergent ray can do
        if (!std::isfinite(r.tail_left + r.tail_right)) r.divergent = true;
        out.nodes += r.nodes;
        if (r.divergent) out.divergent = true;
        if (r.stalled || r.exhausted) out.stalled = true;
        double tol = std::max(in_abs, in_rel * QuadOps<T>::norm(r.value));
        double tail = r.tail_left + r.tail_right;
        if (!(tail <= 0.1 * tol)) out.truncated = true;  // catches inf and NaN
        return {r.value, r.err + (std::isfinite(tail) ? tail : 0.0)};
    };

    auto weighted = [&](double phi) -> WithErr<T> {
        double w = std::pow(std::cos(phi), s);
        return w * inner(std::polar(1.0, phi));
    };

    const WithErr<T> wzero{zero, 0.0};
    const int outer_budget = std::min(cfg.max_panels, 1024);
    WithErr<T> acc = wzero;
    double quad_err = 0.0;
    bool sub_lo = phi_lo < -PI / 2 + 1e-12;
    bool sub_hi = phi_hi > PI / 2 - 1e-12;
    const double piece_abs =
        cfg.abs_tol / (1.0 + (sub_lo ? 1.0 : 0.0) + (sub_hi ? 1.0 : 0.0));

    auto run_plain = [&](double lo, double hi, bool chl, bool chr) {
        Quad1DOptions oopt;
        oopt.chain_left = chl;
        oopt.chain_right = chr;
        oopt.min_seed_panels = 8;
        auto r = integrate_gk<WithErr<T>>(weighted, lo, hi, wzero, piece_abs,
                                          cfg.rel_tol, outer_budget, oopt);
        acc = acc + r.value;
        quad_err += r.err;
        if (r.divergent) out.divergent = true;
        if (r.stalled || r.exhausted) out.stalled = true;
    };

    double lo = phi_lo, hi = phi_hi;
    const double edge = 0.45;  // width of each substituted edge strip
    if (sub_lo) lo = phi_lo + edge;
    if (sub_hi) hi = phi_hi - edge;
    run_plain(lo, hi, !sub_lo, !sub_hi);
    auto run_edge = [&](bool upper) {
        // phi = +-(pi/2 - v^2), d phi = -+ 2 v dv; both edges become v in
        // (0, sqrt(edge)) with the endpoint at v = 0. Both the weight and
        // the ray direction use cos(phi) = sin(v^2) directly, free of the
        // cancellation in phi.
        auto h = [&](double v) -> WithErr<T> {
            double c = std::sin(v * v);
            cplx dir{c, upper ? std::cos(v * v) : -std::cos(v * v)};
            return (2.0 * v) * (std::pow(c, s) * inner(dir));
        };
        Quad1DOptions oopt;
        oopt.chain_left = true;  // v = 0 is the former angular endpoint
        auto r = integrate_gk<WithErr<T>>(h, 0.0, std::sqrt(edge), wzero,
                                          piece_abs, cfg.rel_tol, outer_budget,
                                          oopt);
        acc = acc + r.value;
        quad_err += r.err;
        if (r.divergent) out.divergent = true;
        if (r.stalled || r.exhausted) out.stalled = true;
    };
    if (sub_hi) run_edge(true);
    if (sub_lo) run_edge(false);

    out.value = acc.val;
    out.est_err = quad_err + acc.err;
    return out;
}

// --- ray integrals ------------------------------------------------------------
//
// integral over t in (0, inf) of F(t) dt, in log coordinates, with tail
// estimates at both cuts. Used for Hardy-space ray norms and operator kernels.

template <class T, class F>
Quad1D<T> integrate_halfline(F&& f, T zero, const QuadConfig& cfg,
                             const std::vector<double>& breaks_t = {},
                             bool chain = false) {
    const double U = cfg.log_radius_cut;
    Quad1DOptions opt;
    for (double t : breaks_t)
        if (t > 0.0) opt.breakpoints.push_back(std::log(t));
    opt.tail_left = opt.tail_right = true;
    opt.chain_left = opt.chain_right = chain;
    auto in_log = [&](double u) -> T {
        double t = std::exp(u);
        return T(t * f(t));
    };
    auto r = integrate_gk<T>(in_log, -U, U, zero, cfg.abs_tol, cfg.rel_tol,
                             cfg.max_panels, opt);
    if (chain) {
        // distinguish a maximum beyond the radius cut from true endpoint
        // growth: rerun once on a much wider window and trust that verdict
        if (r.divergent || !std::isfinite(r.tail_left + r.tail_right)) {
            const double wide = std::max(U, 600.0);
            auto w = integrate_gk<T>(in_log, -wide, wide, zero, cfg.abs_tol,
                                     cfg.rel_tol, cfg.max_panels, opt);
            w.nodes += r.nodes;
            r = w;
        }
        if (!std::isfinite(r.tail_left + r.tail_right)) r.divergent = true;
    }
    return r;
}

} // namespace seccalc
