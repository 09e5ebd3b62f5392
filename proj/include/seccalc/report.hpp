#pragma once

#include <string>

#include <json.hpp>

#include "seccalc/fcalc.hpp"
#include "seccalc/matops.hpp"
#include "seccalc/normcalc.hpp"
#include "seccalc/reprkernel.hpp"
#include "seccalc/verify.hpp"

namespace seccalc::report {

// insertion-ordered JSON: field order in the output is exactly the order the
// serializers below emit, which keeps reports byte-stable across runs
using json = nlohmann::ordered_json;

// numeric leaf; non-finite values become the strings "inf"/"-inf"/"nan"
// so the emitted document is always valid JSON
json jnum(double v);

json to_json(const NormResult& r);
json to_json(const ReproReport& r);
json to_json(const KernelIdentityReport& r);
json to_json(const CalcReport& r);
json to_json(const SuiteReport& r);   // omits wall-clock time by design
json matrix_json(const CMatrix& m);

// deterministic writer: fixed field order, floats printed with 17 significant
// digits, newline-terminated
std::string dump(const json& j, int indent = 2);

// flat CSV view of a suite report (checks, then table rows)
std::string suite_csv(const SuiteReport& r);

void write_file(const std::string& path, const std::string& content);

} // namespace seccalc::report
