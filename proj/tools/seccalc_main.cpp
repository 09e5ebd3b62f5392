#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seccalc/fcalc.hpp"
#include "seccalc/matops.hpp"
#include "seccalc/normcalc.hpp"
#include "seccalc/report.hpp"
#include "seccalc/reprkernel.hpp"
#include "seccalc/verify.hpp"

namespace fs = std::filesystem;
using namespace seccalc;
using report::json;

namespace {

std::vector<cplx> probe_points(int count, std::uint64_t seed, double max_arg,
                               double rmin, double rmax) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> ur(0.0, 1.0);
    std::vector<cplx> zs;
    zs.reserve((size_t)count);
    const double lmin = std::log10(rmin), lmax = std::log10(rmax);
    for (int i = 0; i < count; ++i) {
        double r = std::pow(10.0, lmin + (lmax - lmin) * ur(rng));
        double phi = (2.0 * ur(rng) - 1.0) * max_arg;
        zs.push_back(std::polar(r, phi));
    }
    return zs;
}

CMatrix load_matrix_any(const std::string& path) {
    fs::path p(path);
    std::string ext = p.extension().string();
    if (ext == ".mtx" || ext == ".mm") return load_matrix_market(path);
    return load_matrix_json(path);
}

int cmd_norm(const std::string& space, const std::string& fn_key, double s,
             double psi, double tol, bool prime, const std::string& out) {
    QuadConfig cfg;
    cfg.abs_tol = tol;
    cfg.rel_tol = tol;
    SectorFn f = catalog_lookup(fn_key);
    NormResult r;
    if (space == "vs") r = vs_norm(f.deriv, s, cfg);
    else if (space == "ds") r = ds_norm(f, s, cfg);
    else if (space == "ds-inf") r = ds_inf_norm(f, s, cfg);
    else if (space == "b") r = b_norm(f, cfg);
    else if (space == "h1-sector") r = h1_sector_norm(f.deriv, psi, cfg);
    else if (space == "h1-star") r = h1_star_norm(f.deriv, psi, cfg);
    else if (space == "hpsi") r = hpsi_norm(f, psi, cfg, prime);
    else if (space == "epsi") r = epsi_norm(f, psi, cfg);
    else if (space == "hp") r = hp_norm(f, cfg);
    else throw CLI::ValidationError("--space", "unknown space: " + space);

    json doc = report::to_json(r);
    doc["fn"] = fn_key;
    doc["s"] = report::jnum(s);
    doc["psi"] = report::jnum(psi);
    std::string text = report::dump(doc);
    std::fputs(text.c_str(), stdout);
    if (!out.empty()) report::write_file(out, text);
    return 0;
}

int cmd_reproduce(const std::string& formula, const std::string& fn_key,
                  double s, double psi, int count, std::uint64_t seed,
                  double tol, const std::string& out) {
    QuadConfig cfg;
    cfg.abs_tol = tol * 1e-3;
    cfg.rel_tol = 1e-9;
    SectorFn f = catalog_lookup(fn_key);
    double max_arg = 0.999 * PI / 4;
    if (formula != "qs") max_arg = 0.999 * std::min(psi, f.holo_angle);
    std::vector<cplx> pts = probe_points(count, seed, max_arg, 0.1, 10.0);
    ReproReport r;
    if (formula == "qs") r = reproduce_ds(f, s, pts, cfg);
    else if (formula == "repa1") r = reproduce_hpsi(f, psi, pts, cfg);
    else if (formula == "arccot") r = reproduce_arccot(f, psi, pts, cfg);
    else throw CLI::ValidationError("--formula", "unknown formula: " + formula);
    std::string text = report::dump(report::to_json(r));
    std::fputs(text.c_str(), stdout);
    if (!out.empty()) report::write_file(out, text);
    return r.ok ? 0 : 1;
}

int cmd_calc(const std::string& method, const std::string& fn_key,
             const std::string& matrix_path, double s, double psi, double tol,
             const std::string& out) {
    if (!fs::exists(matrix_path)) {
        std::cerr << "error: missing matrix file: " << matrix_path << "\n";
        return 2;
    }
    QuadConfig cfg;
    cfg.abs_tol = tol;
    cfg.rel_tol = tol;
    SectorFn f = catalog_lookup(fn_key);
    SectorialOp op(load_matrix_any(matrix_path),
                   fs::path(matrix_path).stem().string());
    CalcReport r;
    if (method == "d") r = d_calc(f, op, s, cfg);
    else if (method == "h-lift") r = h_calc_lift(f, op, psi, cfg);
    else if (method == "h-arccot") r = h_calc_arccot(f, op, psi, cfg);
    else if (method == "hp") r = hp_calc(f, op, cfg);
    else throw CLI::ValidationError("--method", "unknown method: " + method);
    if (auto oracle = oracle_calc(f, op))
        r.oracle_diff = spectral_norm(CMatrix(r.result - oracle->result));
    std::string text = report::dump(report::to_json(r));
    std::fputs(text.c_str(), stdout);
    if (!out.empty()) report::write_file(out, text);
    return 0;
}

int cmd_verify(const std::string& suite, const std::string& out,
               const std::string& csv, int threads, std::uint64_t seed) {
    SuiteReport rep = run_suite(suite, threads, QuadConfig{}, seed);
    std::string text = report::dump(report::to_json(rep));
    if (!out.empty()) report::write_file(out, text);
    if (!csv.empty()) report::write_file(csv, report::suite_csv(rep));
    std::printf("suite=%s checks=%zu all_passed=%s\n", rep.suite.c_str(),
                rep.checks.size(), rep.all_passed ? "true" : "false");
    for (const auto& c : rep.checks)
        if (!c.passed)
            std::printf("FAILED %s lhs=%.17g rhs=%.17g inputs=%s\n",
                        c.name.c_str(), c.lhs, c.rhs, c.inputs.c_str());
    return rep.all_passed ? 0 : 1;
}

int cmd_run(const std::string& config_path, const std::string& out_dir_cli,
            int threads) {
    if (!fs::exists(config_path)) {
        std::cerr << "error: missing config file: " << config_path << "\n";
        return 3;
    }
    std::ifstream in(config_path);
    json cfg_doc = json::parse(in, nullptr, true);

    std::vector<std::string> suites;
    if (cfg_doc.contains("suites"))
        for (const auto& s : cfg_doc["suites"]) suites.push_back(s.get<std::string>());
    for (const auto& s : suites) {
        const auto& names = suite_names();
        if (std::find(names.begin(), names.end(), s) == names.end()) {
            std::cerr << "error: unknown suite: " << s << "\n";
            return 3;
        }
    }

    QuadConfig qc;
    if (cfg_doc.contains("quad")) {
        const auto& q = cfg_doc["quad"];
        if (q.contains("abs_tol")) qc.abs_tol = q["abs_tol"].get<double>();
        if (q.contains("rel_tol")) qc.rel_tol = q["rel_tol"].get<double>();
        if (q.contains("max_panels")) qc.max_panels = q["max_panels"].get<int>();
        if (q.contains("log_radius_cut"))
            qc.log_radius_cut = q["log_radius_cut"].get<double>();
    }
    std::uint64_t seed = 0;
    if (cfg_doc.contains("seed")) seed = cfg_doc["seed"].get<std::uint64_t>();
    std::string format = "json";
    if (cfg_doc.contains("format")) format = cfg_doc["format"].get<std::string>();
    if (format != "json" && format != "csv") {
        std::cerr << "error: unknown format: " << format << "\n";
        return 3;
    }
    std::string out_dir = out_dir_cli;
    if (out_dir.empty() && cfg_doc.contains("output_dir"))
        out_dir = cfg_doc["output_dir"].get<std::string>();
    if (out_dir.empty()) out_dir = ".";

    // resolve configured matrix files relative to the config location
    json matrix_summaries = json::array();
    if (cfg_doc.contains("matrices")) {
        fs::path base = fs::path(config_path).parent_path();
        for (const auto& mp : cfg_doc["matrices"]) {
            std::string raw = mp.get<std::string>();
            fs::path p(raw);
            if (p.is_relative() && !fs::exists(p) && fs::exists(base / p))
                p = base / p;
            if (!fs::exists(p)) {
                std::cerr << "error: missing matrix file: " << raw << "\n";
                return 2;
            }
            SectorialOp op(load_matrix_any(p.string()), p.stem().string());
            json m;
            m["name"] = op.name();
            m["path"] = raw;
            m["n"] = op.dim();
            m["theta"] = report::jnum(op.theta());
            m["spectral_radius"] = report::jnum(op.spectral_radius());
            matrix_summaries.push_back(std::move(m));
        }
    }

    fs::create_directories(out_dir);
    json summary;
    summary["config"] = config_path;
    summary["seed"] = seed;
    summary["format"] = format;
    summary["matrices"] = std::move(matrix_summaries);
    json suite_rows = json::array();
    bool all_ok = true;
    for (const auto& name : suites) {
        SuiteReport rep = run_suite(name, threads, qc, seed);
        report::write_file((fs::path(out_dir) / (name + ".json")).string(),
                           report::dump(report::to_json(rep)));
        if (format == "csv")
            report::write_file((fs::path(out_dir) / (name + ".csv")).string(),
                               report::suite_csv(rep));
        long passed = 0;
        for (const auto& c : rep.checks) passed += c.passed ? 1 : 0;
        json row;
        row["suite"] = name;
        row["checks"] = (long)rep.checks.size();
        row["passed"] = passed;
        row["failed"] = (long)rep.checks.size() - passed;
        row["all_passed"] = rep.all_passed;
        suite_rows.push_back(std::move(row));
        all_ok = all_ok && rep.all_passed;
        std::printf("suite=%s all_passed=%s\n", name.c_str(),
                    rep.all_passed ? "true" : "false");
    }
    summary["suites"] = std::move(suite_rows);
    summary["all_passed"] = all_ok;
    report::write_file((fs::path(out_dir) / "summary.json").string(),
                       report::dump(summary));
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "numerical engine for weighted-derivative and sector Hardy-Sobolev "
        "function norms, reproducing formulas, and matrix functional calculi"};
    app.require_subcommand(1);

    int threads = 0;
    app.add_option("--threads", threads,
                   "worker threads (default: SECCALC_THREADS env or all cores)");

    // norm ------------------------------------------------------------------
    auto* norm = app.add_subcommand("norm", "compute one function-space norm");
    std::string n_space = "ds", n_fn = "resolvent:1", n_out;
    double n_s = 0.0, n_psi = PI / 4, n_tol = 1e-9;
    bool n_prime = false;
    norm->add_option("--space", n_space,
                     "vs|ds|ds-inf|b|h1-sector|h1-star|hpsi|epsi|hp");
    norm->add_option("--fn", n_fn, "catalog key, e.g. resolvent:1, arccot");
    norm->add_option("--s", n_s, "weight parameter");
    norm->add_option("--psi", n_psi, "sector half-angle");
    norm->add_option("--tol", n_tol, "quadrature tolerance");
    norm->add_flag("--prime", n_prime,
                   "hpsi: use limit-at-infinity form instead of sup form");
    norm->add_option("--report", n_out, "write the JSON report to this path");

    // reproduce ---------------------------------------------------------------
    auto* rep = app.add_subcommand(
        "reproduce", "check a reproducing formula on random probe points");
    std::string r_formula = "qs", r_fn = "resolvent:1", r_out;
    double r_s = 0.0, r_psi = PI / 4, r_tol = 1e-6;
    int r_count = 20;
    std::uint64_t r_seed = 20250814;
    rep->add_option("--formula", r_formula, "qs|repa1|arccot");
    rep->add_option("--fn", r_fn, "catalog key");
    rep->add_option("--s", r_s, "weight parameter (qs formula)");
    rep->add_option("--psi", r_psi, "sector half-angle (repa1/arccot)");
    rep->add_option("--count", r_count, "number of probe points");
    rep->add_option("--seed", r_seed, "probe point seed");
    rep->add_option("--tol", r_tol, "per-point tolerance");
    rep->add_option("--report", r_out, "write the JSON report to this path");

    // calc ------------------------------------------------------------------
    auto* calc = app.add_subcommand("calc", "apply f to a matrix");
    std::string c_method = "d", c_fn = "resolvent:1", c_matrix, c_out;
    double c_s = 0.0, c_psi = PI / 2, c_tol = 1e-9;
    calc->add_option("--method", c_method, "d|h-lift|h-arccot|hp");
    calc->add_option("--fn", c_fn, "catalog key");
    calc->add_option("--matrix", c_matrix, "matrix file (.json or .mtx)")
        ->required();
    calc->add_option("--s", c_s, "weight parameter (method d)");
    calc->add_option("--psi", c_psi, "sector half-angle (h-lift/h-arccot)");
    calc->add_option("--tol", c_tol, "quadrature tolerance");
    calc->add_option("--report", c_out, "write the JSON report to this path");

    // verify ------------------------------------------------------------------
    auto* ver = app.add_subcommand("verify", "run one verification suite");
    std::string v_suite, v_out, v_csv;
    std::uint64_t v_seed = 0;
    ver->add_option("--suite", v_suite, "suite name")->required();
    ver->add_option("--out", v_out, "JSON report path");
    ver->add_option("--csv", v_csv, "CSV table path");
    ver->add_option("--seed", v_seed, "probe point seed (0 = built-in)");

    // run -------------------------------------------------------------------
    auto* run = app.add_subcommand("run", "execute suites from a JSON config");
    std::string run_config, run_out_dir;
    run->add_option("config", run_config, "config JSON path")->required();
    run->add_option("--output-dir", run_out_dir,
                    "overrides output_dir from the config");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*norm)
            return cmd_norm(n_space, n_fn, n_s, n_psi, n_tol, n_prime, n_out);
        if (*rep)
            return cmd_reproduce(r_formula, r_fn, r_s, r_psi, r_count, r_seed,
                                 r_tol, r_out);
        if (*calc)
            return cmd_calc(c_method, c_fn, c_matrix, c_s, c_psi, c_tol, c_out);
        if (*ver) return cmd_verify(v_suite, v_out, v_csv, threads, v_seed);
        if (*run) return cmd_run(run_config, run_out_dir, threads);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 1;
}
