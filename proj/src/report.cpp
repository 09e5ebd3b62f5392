#include "seccalc/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace seccalc::report {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void dump_rec(const json& j, std::string& out, int indent, int depth) {
    const std::string pad((size_t)(indent * (depth + 1)), ' ');
    const std::string pad_close((size_t)(indent * depth), ' ');
    switch (j.type()) {
        case json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += pad;
                out += json(it.key()).dump();
                out += ": ";
                dump_rec(it.value(), out, indent, depth + 1);
            }
            out += "\n" + pad_close + "}";
            return;
        }
        case json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            out += "[\n";
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += ",\n";
                first = false;
                out += pad;
                dump_rec(v, out, indent, depth + 1);
            }
            out += "\n" + pad_close + "]";
            return;
        }
        case json::value_t::number_float:
            out += fmt17(j.get<double>());
            return;
        default:
            out += j.dump();  // strings, ints, bools, null: canonical forms
            return;
    }
}

json jcplx(cplx z) { return json::array({jnum(z.real()), jnum(z.imag())}); }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += "\"\"";
        else q += c;
    }
    q += "\"";
    return q;
}

} // namespace

json jnum(double v) {
    if (std::isnan(v)) return json("nan");
    if (std::isinf(v)) return json(v > 0 ? "inf" : "-inf");
    return json(v);
}

json matrix_json(const CMatrix& m) {
    json out;
    out["n"] = (long)m.rows();
    out["m"] = (long)m.cols();
    json entries = json::array();
    for (long i = 0; i < m.rows(); ++i)
        for (long j = 0; j < m.cols(); ++j) entries.push_back(jcplx(m(i, j)));
    out["entries"] = std::move(entries);
    return out;
}

json to_json(const NormResult& r) {
    json out;
    out["space"] = space_tag_name(r.space_tag);
    out["value"] = jnum(r.value);
    out["est_abs_err"] = jnum(r.est_abs_err);
    out["nodes"] = r.nodes_used;
    out["truncated"] = r.truncation_flag;
    out["divergent"] = r.divergent;
    return out;
}

json to_json(const ReproReport& r) {
    json out;
    out["fn"] = r.fn_key;
    out["formula"] = r.formula;
    out["s"] = jnum(r.s);
    out["psi"] = jnum(r.psi);
    json pts = json::array();
    for (size_t i = 0; i < r.points.size(); ++i) {
        json p;
        p["z"] = jcplx(r.points[i]);
        p["expected"] = jcplx(r.expected[i]);
        p["computed"] = jcplx(r.computed[i]);
        p["abs_err"] = jnum(std::abs(r.expected[i] - r.computed[i]));
        pts.push_back(std::move(p));
    }
    out["points"] = std::move(pts);
    out["max_abs_err"] = jnum(r.max_abs_err);
    out["est_quad_err"] = jnum(r.est_quad_err);
    out["nodes"] = r.nodes;
    out["tol"] = jnum(r.tol);
    out["ok"] = r.ok;
    return out;
}

json to_json(const KernelIdentityReport& r) {
    json out;
    out["psi"] = jnum(r.psi);
    out["nu"] = jnum(r.nu);
    out["lhs"] = jnum(r.lhs);
    out["rhs"] = jnum(r.rhs);
    out["abs_err"] = jnum(r.abs_err);
    out["est_quad_err"] = jnum(r.est_quad_err);
    out["nodes"] = r.nodes;
    out["ok"] = r.ok;
    return out;
}

json to_json(const CalcReport& r) {
    json out;
    out["method"] = calc_method_name(r.method);
    out["fn"] = r.fn_key;
    out["matrix"] = r.matrix_name;
    out["param"] = jnum(r.s_or_psi);
    out["result"] = matrix_json(r.result);
    out["result_norm"] = jnum(r.result_norm);
    out["bound_rhs"] = jnum(r.bound_rhs);
    out["bound_ok"] = r.bound_ok;
    out["est_abs_err"] = jnum(r.est_abs_err);
    out["quad_nodes"] = r.quad_nodes;
    out["oracle_diff"] = r.oracle_diff ? jnum(*r.oracle_diff) : json(nullptr);
    out["truncated"] = r.truncated;
    out["divergent"] = r.divergent;
    out["stalled"] = r.stalled;
    return out;
}

json to_json(const SuiteReport& r) {
    json out;
    out["suite"] = r.suite;
    out["all_passed"] = r.all_passed;
    json checks = json::array();
    for (const auto& c : r.checks) {
        json jc;
        jc["name"] = c.name;
        jc["lhs"] = jnum(c.lhs);
        jc["rhs"] = jnum(c.rhs);
        jc["margin"] = jnum(c.margin);
        jc["passed"] = c.passed;
        jc["inputs"] = c.inputs;
        checks.push_back(std::move(jc));
    }
    out["checks"] = std::move(checks);
    json rows = json::array();
    for (const auto& row : r.rows) {
        json jr;
        jr["label"] = row.label;
        json vals;
        for (const auto& [k, v] : row.values) vals[k] = jnum(v);
        jr["values"] = std::move(vals);
        rows.push_back(std::move(jr));
    }
    out["rows"] = std::move(rows);
    json notes = json::array();
    for (const auto& n : r.notes) notes.push_back(n);
    out["notes"] = std::move(notes);
    return out;
}

std::string dump(const json& j, int indent) {
    std::string out;
    dump_rec(j, out, indent, 0);
    out += "\n";
    return out;
}

std::string suite_csv(const SuiteReport& r) {
    std::string out = "kind,suite,name,lhs,rhs,margin,passed,inputs\n";
    for (const auto& c : r.checks) {
        out += "check," + csv_field(r.suite) + "," + csv_field(c.name) + "," +
               fmt17(c.lhs) + "," + fmt17(c.rhs) + "," + fmt17(c.margin) +
               "," + (c.passed ? "true" : "false") + "," +
               csv_field(c.inputs) + "\n";
    }
    for (const auto& row : r.rows) {
        std::string vals;
        for (const auto& [k, v] : row.values) {
            if (!vals.empty()) vals += ";";
            vals += k + "=" + fmt17(v);
        }
        out += "row," + csv_field(r.suite) + "," + csv_field(row.label) +
               ",,,,," + csv_field(vals) + "\n";
    }
    return out;
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << content;
    if (!f) throw std::runtime_error("write failed: " + path);
}

} // namespace seccalc::report
