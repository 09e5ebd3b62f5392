#include "seccalc/funcat.hpp"

#include <cstdio>
#include <stdexcept>

#include "seccalc/quad.hpp"

namespace seccalc {

namespace {

cplx ipow(cplx w, int n) {
    if (n < 0) return 1.0 / ipow(w, -n);
    cplx r{1.0, 0.0};
    while (n) {
        if (n & 1) r *= w;
        w *= w;
        n >>= 1;
    }
    return r;
}

std::string fmt_num(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

double binom(int n, int k) {
    double r = 1.0;
    for (int j = 1; j <= k; ++j) r *= double(n - k + j) / double(j);
    return r;
}

} // namespace

SectorFn make_resolvent_power(cplx lambda, double gamma) {
    if (lambda.real() <= 0.0)
        throw std::invalid_argument("resolvent power requires Re lambda > 0");
    if (gamma <= 0.0)
        throw std::invalid_argument("resolvent power requires gamma > 0");
    SectorFn f;
    f.key = "resolvent:re=" + fmt_num(lambda.real()) +
            ",im=" + fmt_num(lambda.imag()) + ",gamma=" + fmt_num(gamma);
    f.holo_angle = PI - std::abs(std::arg(lambda));
    f.limit_at_inf = {0.0, 0.0};
    f.limit_at_zero = cpow(lambda, -gamma);
    f.eval = [lambda, gamma](cplx z) { return cpow(z + lambda, -gamma); };
    f.deriv = [lambda, gamma](cplx z) {
        return -gamma * cpow(z + lambda, -gamma - 1.0);
    };
    LaplaceRep rep;
    const double lg = std::lgamma(gamma);
    rep.density = [lambda, gamma, lg](double t) {
        return std::pow(t, gamma - 1.0) * std::exp(-lambda * t - lg);
    };
    f.laplace = std::move(rep);
    return f;
}

SectorFn make_exp_poly(double nu) {
    if (nu < 0.0) throw std::invalid_argument("exp_poly requires nu >= 0");
    SectorFn f;
    f.key = (nu == 0.0) ? "exp" : ("exppoly:nu=" + fmt_num(nu));
    f.holo_angle = PI / 2;  // sectorial decay at infinity holds only here
    f.limit_at_inf = {0.0, 0.0};
    f.limit_at_zero = (nu == 0.0) ? cplx{1.0, 0.0} : cplx{0.0, 0.0};
    f.eval = [nu](cplx z) {
        return (nu == 0.0 ? cplx{1.0, 0.0} : cpow(z, nu)) * std::exp(-z);
    };
    f.deriv = [nu](cplx z) {
        if (nu == 0.0) return -std::exp(-z);
        return (nu * cpow(z, nu - 1.0) - cpow(z, nu)) * std::exp(-z);
    };
    if (nu == 0.0) {
        LaplaceRep rep;
        rep.atoms.emplace_back(1.0, cplx{1.0, 0.0});
        f.laplace = std::move(rep);
    }
    return f;
}

SectorFn make_arccot() {
    SectorFn f;
    f.key = "arccot";
    f.holo_angle = PI / 2;  // branch points at +-i
    f.limit_at_inf = {0.0, 0.0};
    f.limit_at_zero = {PI / 2, 0.0};
    f.eval = [](cplx z) { return arccot(z); };
    f.deriv = [](cplx z) { return arccot_deriv(z); };
    return f;
}

SectorFn make_cayley_power(int n) {
    if (n < 1) throw std::invalid_argument("cayley power requires n >= 1");
    SectorFn f;
    f.key = "cayley:n=" + std::to_string(n);
    f.holo_angle = PI;  // only the pole at -1 is excluded
    f.limit_at_inf = {1.0, 0.0};
    f.limit_at_zero = {(n % 2 == 0) ? 1.0 : -1.0, 0.0};
    f.eval = [n](cplx z) { return ipow((z - 1.0) / (z + 1.0), n); };
    f.deriv = [n](cplx z) {
        return 2.0 * double(n) * ipow(z - 1.0, n - 1) / ipow(z + 1.0, n + 1);
    };
    if (n <= 32) {
        // ((z-1)/(z+1))^n = 1 + sum_k C(n,k) (-2)^k (z+1)^{-k}, and
        // (z+1)^{-k} is the transform of t^{k-1} e^{-t} / (k-1)!
        std::vector<double> coef(n + 1, 0.0);
        for (int k = 1; k <= n; ++k)
            coef[k] = binom(n, k) * std::pow(-2.0, k);
        LaplaceRep rep;
        rep.const_term = {1.0, 0.0};
        rep.density = [coef, n](double t) {
            double acc = 0.0, fact = 1.0, tp = 1.0;  // t^{k-1} / (k-1)!
            for (int k = 1; k <= n; ++k) {
                acc += coef[k] * tp / fact;
                tp *= t;
                fact *= k;
            }
            return cplx{acc * std::exp(-t), 0.0};
        };
        f.laplace = std::move(rep);
    }
    return f;
}

SectorFn make_canonical_regularizer() {
    SectorFn f;
    f.key = "regularizer";
    f.holo_angle = PI;
    f.limit_at_inf = {0.0, 0.0};
    f.limit_at_zero = {0.0, 0.0};
    f.eval = [](cplx z) { return z / ((1.0 + z) * (1.0 + z)); };
    f.deriv = [](cplx z) { return (1.0 - z) / ipow(1.0 + z, 3); };
    LaplaceRep rep;
    rep.density = [](double t) { return cplx{(1.0 - t) * std::exp(-t), 0.0}; };
    f.laplace = std::move(rep);
    return f;
}

SectorFn make_constant(cplx c) {
    SectorFn f;
    f.key = "constant:" + fmt_num(c.real()) +
            (c.imag() != 0.0 ? "+" + fmt_num(c.imag()) + "i" : "");
    f.holo_angle = PI;
    f.limit_at_inf = c;
    f.limit_at_zero = c;
    f.eval = [c](cplx) { return c; };
    f.deriv = [](cplx) { return cplx{0.0, 0.0}; };
    LaplaceRep rep;
    rep.const_term = c;
    f.laplace = std::move(rep);
    return f;
}

BernsteinFn make_bernstein(const std::string& key) {
    BernsteinFn g;
    g.key = key;
    if (key == "sqrt") {
        g.density = [](double s) {
            return 1.0 / (2.0 * std::sqrt(PI) * s * std::sqrt(s));
        };
        g.eval = [](cplx z) { return std::sqrt(z); };
        g.deriv = [](cplx z) { return 0.5 / std::sqrt(z); };
    } else if (key == "linear") {
        g.b = 1.0;
        g.eval = [](cplx z) { return z; };
        g.deriv = [](cplx) { return cplx{1.0, 0.0}; };
    } else if (key == "oneminusexp") {
        g.atoms.emplace_back(1.0, 1.0);
        g.eval = [](cplx z) { return 1.0 - std::exp(-z); };
        g.deriv = [](cplx z) { return std::exp(-z); };
        g.limit_at_inf = 1.0;
    } else if (key == "zover1pz") {
        g.density = [](double s) { return std::exp(-s); };
        g.eval = [](cplx z) { return z / (1.0 + z); };
        g.deriv = [](cplx z) { return 1.0 / ((1.0 + z) * (1.0 + z)); };
        g.limit_at_inf = 1.0;
    } else {
        throw std::invalid_argument("unknown Bernstein function: " + key);
    }
    return g;
}

SectorFn bernstein_resolvent(const BernsteinFn& g, cplx lambda) {
    if (lambda == cplx{0.0, 0.0})
        throw std::invalid_argument("bernstein_resolvent requires lambda != 0");
    SectorFn f;
    f.key = "bernstein-resolvent:g=" + g.key + ",re=" + fmt_num(lambda.real()) +
            ",im=" + fmt_num(lambda.imag());
    f.holo_angle = std::min(PI / 2, PI - std::abs(std::arg(lambda)));
    if (g.limit_at_inf)
        f.limit_at_inf = 1.0 / (lambda + *g.limit_at_inf);
    else
        f.limit_at_inf = {0.0, 0.0};
    f.limit_at_zero = 1.0 / lambda;  // catalog entries all have g(0) = 0
    auto ge = g.eval, gd = g.deriv;
    f.eval = [ge, lambda](cplx z) { return 1.0 / (lambda + ge(z)); };
    f.deriv = [ge, gd, lambda](cplx z) {
        cplx d = lambda + ge(z);
        return -gd(z) / (d * d);
    };
    return f;
}

// --- combinators ---------------------------------------------------------------

SectorFn product(const SectorFn& f, const SectorFn& g) {
    SectorFn h;
    h.key = "product(" + f.key + "," + g.key + ")";
    h.holo_angle = std::min(f.holo_angle, g.holo_angle);
    h.has_limit_at_inf = f.has_limit_at_inf && g.has_limit_at_inf;
    if (h.has_limit_at_inf) h.limit_at_inf = f.limit_at_inf * g.limit_at_inf;
    h.has_limit_at_zero = f.has_limit_at_zero && g.has_limit_at_zero;
    if (h.has_limit_at_zero) h.limit_at_zero = f.limit_at_zero * g.limit_at_zero;
    auto fe = f.eval, fd = f.deriv, ge = g.eval, gd = g.deriv;
    h.eval = [fe, ge](cplx z) { return fe(z) * ge(z); };
    h.deriv = [fe, fd, ge, gd](cplx z) { return fd(z) * ge(z) + fe(z) * gd(z); };
    if (f.laplace && g.laplace) {
        // transforms multiply when the measures convolve: constants scale the
        // other measure, atoms shift it, densities convolve numerically
        const LaplaceRep lf = *f.laplace, lg = *g.laplace;
        LaplaceRep rep;
        rep.const_term = lf.const_term * lg.const_term;
        for (auto& [tj, m] : lf.atoms)
            rep.atoms.emplace_back(tj, lg.const_term * m);
        for (auto& [sj, nmass] : lg.atoms)
            rep.atoms.emplace_back(sj, lf.const_term * nmass);
        for (auto& [tj, m] : lf.atoms)
            for (auto& [sj, nmass] : lg.atoms)
                rep.atoms.emplace_back(tj + sj, m * nmass);
        if (lf.density || lg.density) {
            rep.density = [lf, lg](double t) -> cplx {
                cplx acc{0.0, 0.0};
                if (lg.density) acc += lf.const_term * lg.density(t);
                if (lf.density) acc += lg.const_term * lf.density(t);
                if (lg.density)
                    for (auto& [tj, m] : lf.atoms)
                        if (t > tj) acc += m * lg.density(t - tj);
                if (lf.density)
                    for (auto& [sj, nmass] : lg.atoms)
                        if (t > sj) acc += nmass * lf.density(t - sj);
                if (lf.density && lg.density && t > 0.0) {
                    auto q = integrate_gk<cplx>(
                        [&](double u) { return lf.density(u) * lg.density(t - u); },
                        0.0, t, cplx{0.0, 0.0}, 1e-14, 1e-12, 2048, {});
                    acc += q.value;
                }
                return acc;
            };
        }
        h.laplace = std::move(rep);
    }
    return h;
}

SectorFn scale(const SectorFn& f, double t) {
    if (t <= 0.0) throw std::invalid_argument("scale requires t > 0");
    SectorFn h = f;
    h.key = "scale(t=" + fmt_num(t) + "," + f.key + ")";
    auto fe = f.eval, fd = f.deriv;
    h.eval = [fe, t](cplx z) { return fe(t * z); };
    h.deriv = [fd, t](cplx z) { return t * fd(t * z); };
    if (f.laplace) {
        LaplaceRep rep;
        rep.const_term = f.laplace->const_term;
        for (auto& [tj, m] : f.laplace->atoms) rep.atoms.emplace_back(t * tj, m);
        if (f.laplace->density) {
            auto d = f.laplace->density;
            rep.density = [d, t](double u) { return d(u / t) / t; };
        }
        h.laplace = std::move(rep);
    }
    return h;
}

SectorFn shift(const SectorFn& f, cplx tau) {
    const double cap = std::min(f.holo_angle, PI / 2);
    if (!(std::abs(std::arg(tau)) < cap))
        throw std::invalid_argument("shift requires tau inside the sector");
    SectorFn h;
    h.key = "shift(re=" + fmt_num(tau.real()) + ",im=" + fmt_num(tau.imag()) +
            "," + f.key + ")";
    h.holo_angle = cap;  // sectors up to pi/2 are closed under adding tau
    h.has_limit_at_inf = f.has_limit_at_inf;
    h.limit_at_inf = f.limit_at_inf;
    h.limit_at_zero = f.eval(tau);
    auto fe = f.eval, fd = f.deriv;
    h.eval = [fe, tau](cplx z) { return fe(z + tau); };
    h.deriv = [fd, tau](cplx z) { return fd(z + tau); };
    if (f.laplace) {
        LaplaceRep rep;
        rep.const_term = f.laplace->const_term;
        for (auto& [tj, m] : f.laplace->atoms)
            rep.atoms.emplace_back(tj, m * std::exp(-tau * tj));
        if (f.laplace->density) {
            auto d = f.laplace->density;
            rep.density = [d, tau](double u) { return d(u) * std::exp(-tau * u); };
        }
        h.laplace = std::move(rep);
    }
    return h;
}

SectorFn power_compose(const SectorFn& f, double nu) {
    if (nu <= 0.0) throw std::invalid_argument("power_compose requires nu > 0");
    SectorFn h;
    h.key = "powercompose(nu=" + fmt_num(nu) + "," + f.key + ")";
    h.holo_angle = std::min(PI, f.holo_angle / nu);
    h.has_limit_at_inf = f.has_limit_at_inf;
    h.limit_at_inf = f.limit_at_inf;
    h.has_limit_at_zero = f.has_limit_at_zero;
    h.limit_at_zero = f.limit_at_zero;
    auto fe = f.eval, fd = f.deriv;
    h.eval = [fe, nu](cplx z) { return fe(cpow(z, nu)); };
    h.deriv = [fd, nu](cplx z) { return nu * cpow(z, nu - 1.0) * fd(cpow(z, nu)); };
    return h;
}

SectorFn invert_var(const SectorFn& f) {
    SectorFn h;
    h.key = "invertvar(" + f.key + ")";
    h.holo_angle = f.holo_angle;
    h.has_limit_at_inf = f.has_limit_at_zero;
    h.limit_at_inf = f.limit_at_zero;
    h.has_limit_at_zero = f.has_limit_at_inf;
    h.limit_at_zero = f.limit_at_inf;
    auto fe = f.eval, fd = f.deriv;
    h.eval = [fe](cplx z) { return fe(1.0 / z); };
    h.deriv = [fd](cplx z) { return -fd(1.0 / z) / (z * z); };
    return h;
}

SectorFn reciprocal(const SectorFn& f, double lower_bound) {
    if (lower_bound <= 0.0)
        throw std::invalid_argument("reciprocal needs a positive modulus bound");
    SectorFn h;
    h.key = "reciprocal(" + f.key + ")";
    h.holo_angle = f.holo_angle;
    h.has_limit_at_inf = f.has_limit_at_inf && std::abs(f.limit_at_inf) >= lower_bound;
    if (h.has_limit_at_inf) h.limit_at_inf = 1.0 / f.limit_at_inf;
    h.has_limit_at_zero = f.has_limit_at_zero && std::abs(f.limit_at_zero) >= lower_bound;
    if (h.has_limit_at_zero) h.limit_at_zero = 1.0 / f.limit_at_zero;
    auto fe = f.eval, fd = f.deriv;
    h.eval = [fe](cplx z) { return 1.0 / fe(z); };
    h.deriv = [fe, fd](cplx z) {
        cplx v = fe(z);
        return -fd(z) / (v * v);
    };
    return h;
}

SectorFn lincomb(const std::vector<std::pair<cplx, SectorFn>>& terms) {
    if (terms.empty()) throw std::invalid_argument("lincomb of nothing");
    SectorFn h;
    h.key = "lincomb";
    h.holo_angle = PI;
    cplx linf{0, 0}, lzero{0, 0};
    bool all_laplace = true;
    for (auto& [c, f] : terms) {
        h.holo_angle = std::min(h.holo_angle, f.holo_angle);
        h.has_limit_at_inf = h.has_limit_at_inf && f.has_limit_at_inf;
        h.has_limit_at_zero = h.has_limit_at_zero && f.has_limit_at_zero;
        linf += c * f.limit_at_inf;
        lzero += c * f.limit_at_zero;
        all_laplace = all_laplace && f.laplace.has_value();
    }
    h.limit_at_inf = linf;
    h.limit_at_zero = lzero;
    auto copy = terms;
    h.eval = [copy](cplx z) {
        cplx acc{0, 0};
        for (auto& [c, f] : copy) acc += c * f.eval(z);
        return acc;
    };
    h.deriv = [copy](cplx z) {
        cplx acc{0, 0};
        for (auto& [c, f] : copy) acc += c * f.deriv(z);
        return acc;
    };
    if (all_laplace) {
        LaplaceRep rep;
        std::vector<std::pair<cplx, LaplaceRep>> parts;
        for (auto& [c, f] : terms) {
            rep.const_term += c * f.laplace->const_term;
            for (auto& [tj, m] : f.laplace->atoms)
                rep.atoms.emplace_back(tj, c * m);
            parts.emplace_back(c, *f.laplace);
        }
        rep.density = [parts](double t) {
            cplx acc{0, 0};
            for (auto& [c, lp] : parts)
                if (lp.density) acc += c * lp.density(t);
            return acc;
        };
        h.laplace = std::move(rep);
    }
    return h;
}

// --- key parsing ----------------------------------------------------------------

namespace {

// complex literals: "1", "-2.5", "1+2i", "0.5-i", "3i", "i"
cplx parse_complex(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    if (s == "i") return {0, 1};
    if (s == "-i") return {0, -1};
    size_t ipos = s.find('i');
    if (ipos == std::string::npos) return {std::stod(s), 0.0};
    if (ipos != s.size() - 1)
        throw std::invalid_argument("bad complex literal: " + s);
    // split real and imaginary at the last +/- that is not an exponent sign
    size_t split = std::string::npos;
    for (size_t k = s.size() - 1; k > 0; --k) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) {  // purely imaginary
        std::string im = s.substr(0, ipos);
        return {0.0, im.empty() ? 1.0 : std::stod(im)};
    }
    double re = std::stod(s.substr(0, split));
    std::string im = s.substr(split, ipos - split);
    if (im == "+") return {re, 1.0};
    if (im == "-") return {re, -1.0};
    return {re, std::stod(im)};
}

struct KeyArgs {
    std::vector<std::string> bare;
    std::vector<std::pair<std::string, std::string>> named;
    const std::string* find(const std::string& k) const {
        for (auto& [a, b] : named)
            if (a == k) return &b;
        return nullptr;
    }
};

KeyArgs split_args(const std::string& rest) {
    KeyArgs out;
    size_t pos = 0;
    while (pos <= rest.size() && !rest.empty()) {
        size_t comma = rest.find(',', pos);
        std::string tok = rest.substr(pos, comma == std::string::npos
                                               ? std::string::npos
                                               : comma - pos);
        if (!tok.empty()) {
            size_t eq = tok.find('=');
            if (eq == std::string::npos)
                out.bare.push_back(tok);
            else
                out.named.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

} // namespace

SectorFn catalog_lookup(const std::string& key) {
    size_t colon = key.find(':');
    std::string head = key.substr(0, colon);
    std::string rest = colon == std::string::npos ? "" : key.substr(colon + 1);
    KeyArgs args = split_args(rest);

    if (head == "resolvent") {
        cplx lambda{1.0, 0.0};
        double gamma = 1.0;
        if (auto* re = args.find("re")) {
            lambda = {std::stod(*re), 0.0};
            if (auto* im = args.find("im")) lambda.imag(std::stod(*im));
        } else if (!args.bare.empty()) {
            lambda = parse_complex(args.bare[0]);
        }
        if (auto* g = args.find("gamma")) gamma = std::stod(*g);
        return make_resolvent_power(lambda, gamma);
    }
    if (head == "exp") return make_exp_poly(0.0);
    if (head == "exppoly") {
        double nu = 0.0;
        if (auto* n = args.find("nu"))
            nu = std::stod(*n);
        else if (!args.bare.empty())
            nu = std::stod(args.bare[0]);
        return make_exp_poly(nu);
    }
    if (head == "arccot") return make_arccot();
    if (head == "cayley") {
        int n = 1;
        if (auto* ns = args.find("n"))
            n = std::stoi(*ns);
        else if (!args.bare.empty())
            n = std::stoi(args.bare[0]);
        return make_cayley_power(n);
    }
    if (head == "regularizer") return make_canonical_regularizer();
    if (head == "constant") {
        cplx c = args.bare.empty() ? cplx{1, 0} : parse_complex(args.bare[0]);
        return make_constant(c);
    }
    if (head == "bernstein-resolvent") {
        const std::string* g = args.find("g");
        if (!g) throw std::invalid_argument("bernstein-resolvent needs g=");
        cplx lambda{1.0, 0.0};
        if (auto* l = args.find("lambda")) {
            lambda = parse_complex(*l);
        } else if (auto* re = args.find("re")) {
            lambda = {std::stod(*re), 0.0};
            if (auto* im = args.find("im")) lambda.imag(std::stod(*im));
        }
        return bernstein_resolvent(make_bernstein(*g), lambda);
    }
    throw std::invalid_argument("unknown catalog key: " + key);
}

} // namespace seccalc
