#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace seccalc {

using cplx = std::complex<double>;

inline constexpr double PI = std::numbers::pi;

// principal power w^p on the cut plane C \ (-inf, 0]
inline cplx cpow(cplx w, double p) {
    if (w == cplx(0.0, 0.0)) {
        if (p > 0.0) return {0.0, 0.0};
        throw std::domain_error("cpow: zero base with non-positive exponent");
    }
    return std::exp(p * std::log(w));
}

inline cplx cpow(cplx w, cplx p) { return std::exp(p * std::log(w)); }

// Euler beta function, real positive arguments
inline double beta_fn(double x, double y) {
    return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

// arccot on the right half-plane: (1/2i) log((z+i)/(z-i)).
// Maps (0,inf) onto (0,pi/2) with arccot(1) = pi/4 and sectorial limit pi/2 at 0.
inline cplx arccot(cplx z) {
    const cplx i(0.0, 1.0);
    return std::log((z + i) / (z - i)) / (2.0 * i);
}

// derivative of arccot
inline cplx arccot_deriv(cplx z) { return -1.0 / (1.0 + z * z); }

inline double sqr(double x) { return x * x; }

} // namespace seccalc
