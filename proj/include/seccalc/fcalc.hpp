#pragma once

#include <optional>
#include <string>

#include "seccalc/funcat.hpp"
#include "seccalc/matops.hpp"
#include "seccalc/normcalc.hpp"

namespace seccalc {

enum class CalcMethod { Dcalc, HcalcLift, HcalcArccot, HP, ArccotInt, Oracle };

const char* calc_method_name(CalcMethod m);

struct CalcReport {
    CMatrix result;
    CalcMethod method = CalcMethod::Dcalc;
    std::string fn_key;
    std::string matrix_name;
    double s_or_psi = 0.0;
    long quad_nodes = 0;
    double est_abs_err = 0.0;            // propagated quadrature error (Frobenius)
    std::optional<double> oracle_diff;   // set by callers holding an oracle value
    double result_norm = 0.0;            // spectral norm of the result
    double bound_rhs = 0.0;              // a-priori operator-norm bound
    bool bound_ok = false;               // result_norm within bound_rhs
    bool truncated = false;
    bool divergent = false;
    bool stalled = false;
};

// f(A) = f(inf) I - (2^s/pi) * area integral of alpha^s f'(alpha+i beta)
//        (A + alpha - i beta)^{-(s+1)};  requires spectral angle < pi/2 and
// finite ||f'|| in the weight-s space.  The a-priori bound
// |f(inf)| + (2^s/pi) (1.05 M_A)^{ceil(s+1)} ||f'|| is recorded in the report.
CalcReport d_calc(const SectorFn& f, const SectorialOp& op, double s,
                  const QuadConfig& cfg = {});

// half-plane lift: with gamma = pi/(2 psi), evaluates the s=0 form above for
// g(w) = f(w^{1/gamma}) on A^gamma.  Valid whenever the spectral angle is
// < psi <= holomorphy angle of f, so it extends past angle pi/2.
CalcReport h_calc_lift(const SectorFn& f, const SectorialOp& op, double psi,
                       const QuadConfig& cfg = {});

// sector edge-average route: f(inf) I - (2/pi) * integral over t of
// f_psi'(t) K(A, t) with the kernel K built by arccot_int below
CalcReport h_calc_arccot(const SectorFn& f, const SectorialOp& op, double psi,
                         const QuadConfig& cfg = {});

// K(A/t_scale) = ray integral of the log kernel against resolvents at
// t e^{+-i psi} plus the unit-circle arc integral of the resolvent
CMatrix arccot_int(const SectorialOp& op, double psi, double t_scale,
                   const QuadConfig& cfg = {}, double* est_err = nullptr,
                   long* nodes = nullptr);

// Laplace-representation route: c I + sum of mass_j expm(-t_j A) +
// integral of density(t) expm(-t A) dt
CalcReport hp_calc(const SectorFn& f, const SectorialOp& op,
                   const QuadConfig& cfg = {});

// d_calc evaluated on A + eps I (limit eps -> 0 recovers d_calc)
CalcReport shifted_calc(const SectorFn& f, const SectorialOp& op, double s,
                        double eps, const QuadConfig& cfg = {});

// eigendecomposition reference route; empty when op is defective and not the
// recognized 2x2 Jordan form
std::optional<CalcReport> oracle_calc(const SectorFn& f, const SectorialOp& op);

// cached ||f'|| in the weight-s space, keyed by (f.key, s); throws if the
// norm integral is flagged divergent
double fn_vs_norm_cached(const SectorFn& f, double s, const QuadConfig& cfg = {});

// cached two-ray boundary integral of |f'| over the sector of angle psi
double fn_h1_norm_cached(const SectorFn& f, double psi,
                         const QuadConfig& cfg = {});

} // namespace seccalc
