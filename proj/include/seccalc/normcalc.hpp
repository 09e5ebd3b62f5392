#pragma once

#include <functional>
#include <string>

#include "seccalc/funcat.hpp"
#include "seccalc/quad.hpp"

namespace seccalc {

enum class SpaceTag { Vs, Ds, DsInf, B, H1Sector, H1Star, Hpsi, Epsi, HP };

const char* space_tag_name(SpaceTag t);

struct NormResult {
    double value = 0.0;
    double est_abs_err = 0.0;
    long nodes_used = 0;
    bool truncation_flag = false;  // radial tail beyond the cut exceeds tol/10
    bool divergent = false;        // endpoint refinement chain fired; value = inf
    SpaceTag space_tag = SpaceTag::Vs;
};

using CFun = std::function<cplx(cplx)>;

// weighted area norm: integral over |phi| < pi/2 of cos(phi)^s times the ray
// integral of |g(rho e^{i phi})| d rho, s > -1
NormResult vs_norm(const CFun& g, double s, const QuadConfig& cfg = {});

// |f(inf)| + vs_norm(f', s)
NormResult ds_norm(const SectorFn& f, double s, const QuadConfig& cfg = {});

// sup |f| + vs_norm(f', s); the algebra norm on bounded functions
NormResult ds_inf_norm(const SectorFn& f, double s, const QuadConfig& cfg = {});

// sup norm + integral of sup_beta |f'(alpha + i beta)| d alpha.
// The beta-sup per alpha node uses a clustered grid plus golden-section
// refinement, so the value is a certified-from-below estimate.
NormResult b_norm(const SectorFn& f, const QuadConfig& cfg = {});

// two-ray boundary integral of |g| over the edges of the sector of half-angle
// psi; by the maximum property of ray integrals this equals the sup over
// interior opening angles
NormResult h1_sector_norm(const CFun& g, double psi, const QuadConfig& cfg = {});

// sup over single rays |phi| <= psi of the one-sided ray integral of |g|
// (grid scan plus golden-section refinement; lower-bound estimator)
NormResult h1_star_norm(const CFun& g, double psi, const QuadConfig& cfg = {});

// prime = false:  sup-norm over the sector  + two-ray integral of |f'|
// prime = true:   |f(inf)|                  + two-ray integral of |f'|
NormResult hpsi_norm(const SectorFn& f, double psi, const QuadConfig& cfg = {},
                     bool prime = false);

// two-ray integral of |f(z)| / |z| on the sector edge
NormResult epsi_norm(const SectorFn& f, double psi, const QuadConfig& cfg = {});

// total variation of the representing Laplace measure:
// |atom at 0| + sum |atom masses| + integral |density|
NormResult hp_norm(const SectorFn& f, const QuadConfig& cfg = {});

// helper shared with the kernels: one-sided ray integral of |g(t e^{i phi})| dt
Quad1D<double> abs_ray_integral(const CFun& g, double phi, const QuadConfig& cfg);

} // namespace seccalc
