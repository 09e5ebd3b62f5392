#include "seccalc/quad.hpp"

namespace seccalc::detail {

// The quadrature engine is header-only (templated over the value type).
// This translation unit anchors it in the library and instantiates the
// scalar path once so header regressions fail at library build time.
double quad_anchor() {
    auto q = integrate_gk<double>([](double x) { return x * x; }, 0.0, 1.0, 0.0,
                                  1e-12, 1e-12, 64, Quad1DOptions{});
    return q.value;
}

} // namespace seccalc::detail
