#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "seccalc/funcat.hpp"
#include "seccalc/quad.hpp"

namespace seccalc {

// one quantitative inequality lhs <= rhs, with the inputs that produced it
struct BoundCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;   // rhs - lhs
    bool passed = false;   // lhs <= rhs * (1 + 1e-9)
    std::string inputs;    // metadata: matrix, parameters, constants used
};

BoundCheck make_check(std::string name, double lhs, double rhs,
                      std::string inputs);

// labeled numeric row for tables (asymptotics, residual decay curves)
struct TableRow {
    std::string label;
    std::vector<std::pair<std::string, double>> values;
};

struct SuiteReport {
    std::string suite;
    std::vector<BoundCheck> checks;
    std::vector<TableRow> rows;
    std::vector<std::string> notes;
    bool all_passed = true;
    double seconds = 0.0;
};

// suite names accepted by run_suite, in canonical order
const std::vector<std::string>& suite_names();

// runs one verification suite; threads <= 0 picks the environment default;
// seed drives any randomized probe points (0 selects a fixed built-in seed)
SuiteReport run_suite(const std::string& name, int threads = 0,
                      const QuadConfig& cfg = {}, std::uint64_t seed = 0);

// least-squares fit of a0 + sum a_k / (lambda_k + z) to f, with the residual
// measured in the weight-s function norm
struct RationalFit {
    int degree = 0;
    std::vector<cplx> poles;
    std::vector<cplx> coeffs;   // coeffs[0] = a0, then one per pole
    double residual_norm = 0.0;
};

RationalFit rational_fit(const SectorFn& f, double s,
                         const std::vector<cplx>& pole_grid,
                         const QuadConfig& cfg = {});

} // namespace seccalc
