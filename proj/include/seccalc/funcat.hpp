#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "seccalc/complexmath.hpp"

namespace seccalc {

// Laplace-transform representation f(z) = const_term + sum_j m_j e^{-z t_j}
//                                         + integral e^{-z t} density(t) dt.
// Present for catalog entries that are transforms of bounded measures; the
// total variation |const_term| + sum |m_j| + integral |density| is the
// Hille-Phillips norm.
struct LaplaceRep {
    cplx const_term{0.0, 0.0};                 // mass of the atom at t = 0
    std::vector<std::pair<double, cplx>> atoms; // (t_j, m_j), t_j > 0
    std::function<cplx(double)> density;        // may be empty
};

// A holomorphic function on a sector around the positive half-axis, with the
// data the calculi need: pointwise values, the exact derivative, the largest
// sector half-angle of holomorphy, and sectorial limits at 0 and infinity.
struct SectorFn {
    std::string key;
    double holo_angle = PI / 2;
    cplx limit_at_inf{0.0, 0.0};
    bool has_limit_at_inf = true;
    cplx limit_at_zero{0.0, 0.0};
    bool has_limit_at_zero = true;
    std::function<cplx(cplx)> eval;
    std::function<cplx(cplx)> deriv;
    std::optional<LaplaceRep> laplace;
};

// Bernstein function g(z) = a + b z + integral (1 - e^{-z s}) d mu(s) with mu
// a positive measure on (0, inf) integrating min(1, s). Catalog entries carry
// closed-form eval/deriv next to the representing (a, b, mu) triple.
struct BernsteinFn {
    std::string key;
    double a = 0.0;
    double b = 0.0;
    std::vector<std::pair<double, double>> atoms; // (s_j, mass_j)
    std::function<double(double)> density;        // may be empty
    std::function<cplx(cplx)> eval;
    std::function<cplx(cplx)> deriv;
    std::optional<double> limit_at_inf;           // empty: grows without bound
};

// --- catalog constructors ----------------------------------------------------

// (z + lambda)^(-gamma), Re lambda > 0
SectorFn make_resolvent_power(cplx lambda, double gamma);

// z^nu e^{-z}, nu >= 0
SectorFn make_exp_poly(double nu);

// arccot, decaying branch with arccot(1) = pi/4
SectorFn make_arccot();

// Cayley transform power ((z - 1) / (z + 1))^n, n >= 1
SectorFn make_cayley_power(int n);

// z (1 + z)^(-2); vanishes at 0 and infinity, the canonical regularizer
SectorFn make_canonical_regularizer();

// constant function
SectorFn make_constant(cplx c);

// Bernstein catalog: keys "sqrt", "linear", "oneminusexp", "zover1pz"
BernsteinFn make_bernstein(const std::string& key);

// (lambda + g(z))^(-1) for a Bernstein function g
SectorFn bernstein_resolvent(const BernsteinFn& g, cplx lambda);

// --- combinators ---------------------------------------------------------------

SectorFn product(const SectorFn& f, const SectorFn& g);
SectorFn scale(const SectorFn& f, double t);          // z -> f(t z), t > 0
SectorFn shift(const SectorFn& f, cplx tau);          // z -> f(z + tau), Re tau > 0
SectorFn power_compose(const SectorFn& f, double nu); // z -> f(z^nu), nu > 0
SectorFn invert_var(const SectorFn& f);               // z -> f(1/z)
SectorFn reciprocal(const SectorFn& f, double lower_bound); // z -> 1/f(z)
SectorFn lincomb(const std::vector<std::pair<cplx, SectorFn>>& terms);

// Parse a catalog key such as
//   "resolvent:1"  "resolvent:re=1,im=2,gamma=0.5"  "exppoly:1"  "exp"
//   "arccot"  "cayley:4"  "regularizer"  "bernstein-resolvent:g=sqrt,lambda=1"
// Throws std::invalid_argument for unknown keys.
SectorFn catalog_lookup(const std::string& key);

} // namespace seccalc
