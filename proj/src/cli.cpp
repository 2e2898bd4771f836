#include "multidir/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "multidir/errors.hpp"

namespace multidir {

namespace {

namespace fs = std::filesystem;

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ParseError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

ConvexBody resolve_body(const ExperimentConfig& cfg) {
    if (!cfg.body_spec.is_null()) return body_from_json(cfg.body_spec);
    if (!cfg.body_file.empty()) return body_from_json(load_json_file(cfg.body_file));
    throw ParseError("config needs a 'body' or 'body_file'");
}

ScalarFunction resolve_function(const ExperimentConfig& cfg, int dim) {
    if (cfg.function_spec.is_null()) throw ParseError("config needs a 'function'");
    return function_from_json(cfg.function_spec, dim);
}

Json config_echo(const ExperimentConfig& cfg) {
    Json j = cfg.to_json();
    j["subcommand"] = cfg.subcommand;
    return j;
}

struct CellResult {
    std::string status;  // "pass", "fail:<reason>", "skip:<reason>"
    Json detail;
};

bool is_smooth_or_max_affine(const std::string& label) {
    return label == "linear" || label == "affine" || label == "quadratic" ||
           label == "shifted_quadratic" || label == "max_affine" ||
           label == "quad_plus_max_affine";
}

Vec far_apex(int dim) {
    Vec a = zeros(dim);
    a[0] = 10.0;
    return a;
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("config must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        static const char* allowed[] = {"function", "body",  "body_file", "cloud_file",
                                        "apex",     "point", "r",         "eps",
                                        "tol",      "grid",  "seed",      "schedule",
                                        "out",      "subcommand"};
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) throw ParseError("unknown config key: " + it.key());
    }
    ExperimentConfig cfg;
    try {
        if (j.contains("subcommand")) cfg.subcommand = j.at("subcommand").get<std::string>();
        if (j.contains("function")) cfg.function_spec = j.at("function");
        if (j.contains("body")) cfg.body_spec = j.at("body");
        if (j.contains("body_file")) cfg.body_file = j.at("body_file").get<std::string>();
        if (j.contains("cloud_file")) cfg.cloud_file = j.at("cloud_file").get<std::string>();
        if (j.contains("apex")) cfg.apex = vec_from_json(j.at("apex"));
        if (j.contains("point")) cfg.point = vec_from_json(j.at("point"));
        if (j.contains("r")) cfg.r = j.at("r").get<double>();
        if (j.contains("eps")) cfg.eps = j.at("eps").get<double>();
        if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
        if (j.contains("grid")) cfg.grid = j.at("grid").get<int>();
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("out")) cfg.out_dir = j.at("out").get<std::string>();
        if (j.contains("schedule")) {
            const Json& s = j.at("schedule");
            for (auto it = s.begin(); it != s.end(); ++it)
                if (it.key() != "t0" && it.key() != "rho" && it.key() != "steps" &&
                    it.key() != "tail_window")
                    throw ParseError("unknown schedule key: " + it.key());
            if (s.contains("t0")) cfg.schedule.t0 = s.at("t0").get<double>();
            if (s.contains("rho")) cfg.schedule.rho = s.at("rho").get<double>();
            if (s.contains("steps")) cfg.schedule.steps = s.at("steps").get<int>();
            if (s.contains("tail_window")) cfg.schedule.tail_window = s.at("tail_window").get<int>();
        }
    } catch (const Json::exception& e) {
        throw ParseError(std::string("config field type error: ") + e.what());
    }
    return cfg;
}

Json ExperimentConfig::to_json() const {
    Json j;
    if (!function_spec.is_null()) j["function"] = function_spec;
    if (!body_spec.is_null()) j["body"] = body_spec;
    if (!body_file.empty()) j["body_file"] = body_file;
    if (!cloud_file.empty()) j["cloud_file"] = cloud_file;
    if (!apex.empty()) j["apex"] = vec_to_json(apex);
    if (!point.empty()) j["point"] = vec_to_json(point);
    j["r"] = r;
    j["eps"] = eps;
    j["tol"] = tol;
    j["grid"] = grid;
    j["seed"] = seed;
    j["schedule"] = {{"t0", schedule.t0},
                     {"rho", schedule.rho},
                     {"steps", schedule.steps},
                     {"tail_window", schedule.tail_window}};
    j["out"] = out_dir;
    return j;
}

std::vector<ConvexBody> standard_bodies(int dim) {
    std::vector<ConvexBody> bodies;
    if (dim == 2) {
        bodies.push_back(ConvexBody::polytope({{2.0, -1.0}, {2.0, 1.0}}));
        bodies.push_back(ConvexBody::polytope({{1.0, 0.0}, {0.0, 1.0}}));
        bodies.push_back(ConvexBody::ball({3.0, 0.0}, 1.0));
        bodies.push_back(ConvexBody::enlargement(ConvexBody::polytope({{2.0, 0.0}}), 0.5));
        return bodies;
    }
    if (dim == 3) {
        bodies.push_back(ConvexBody::polytope(
            {{2.0, -1.0, -1.0}, {2.0, 1.0, -1.0}, {2.0, -1.0, 1.0}, {2.0, 1.0, 1.0}}));
        bodies.push_back(ConvexBody::polytope({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}));
        bodies.push_back(ConvexBody::ball({3.0, 0.0, 0.0}, 1.0));
        bodies.push_back(ConvexBody::enlargement(ConvexBody::polytope({{2.0, 0.0, 0.0}}), 0.5));
        return bodies;
    }
    throw Error("standard_bodies: only dimensions 2 and 3 are provided");
}

std::vector<std::string> standard_body_names() {
    return {"slab", "simplex", "ball", "point_enlargement"};
}

namespace {

RunOutcome run_derivative(const ExperimentConfig& cfg) {
    ConvexBody body = resolve_body(cfg);
    ScalarFunction f = resolve_function(cfg, body.dimension());
    if (cfg.point.empty()) throw ParseError("derivative needs a 'point'");
    auto est = multidir_derivative(f, cfg.point, body, cfg.schedule, std::max(cfg.grid, 16));
    RunOutcome out;
    out.report["config"] = config_echo(cfg);
    out.report["estimate"] = derivative_to_json(est);
    write_file(fs::path(cfg.out_dir) / "report.json", out.report.dump(2) + "\n");
    write_file(fs::path(cfg.out_dir) / "trace.csv", derivative_trace_csv(est));
    return out;
}

RunOutcome run_witness(const ExperimentConfig& cfg, bool lagrange) {
    ConvexBody body = resolve_body(cfg);
    ScalarFunction f = resolve_function(cfg, body.dimension());
    if (cfg.apex.empty()) throw ParseError("witness search needs an 'apex'");
    RunOutcome out;
    out.report["config"] = config_echo(cfg);
    WitnessReport rep = lagrange ? lagrange_witness(f, cfg.apex, body, cfg.r, cfg.grid, cfg.tol)
                                 : rolle_witness(f, cfg.apex, body, cfg.grid, cfg.tol);
    out.report["witness_report"] = witness_report_to_json(rep);
    if (!rep.verified) {
        out.exit_code = 1;
        out.failing = !rep.value_ok    ? "f(witness) <= bound + tol/2"
                      : !rep.slack_ok  ? "derivative estimate >= target - tol/2"
                                       : "witness membership in [a,A]";
        out.report["failing"] = out.failing;
    }
    write_file(fs::path(cfg.out_dir) / "report.json", out.report.dump(2) + "\n");
    write_file(fs::path(cfg.out_dir) / "trace.csv",
               derivative_trace_csv(rep.derivative_estimate));
    return out;
}

RunOutcome run_dual(const ExperimentConfig& cfg) {
    ConvexBody body = resolve_body(cfg);
    ScalarFunction f = resolve_function(cfg, body.dimension());
    if (cfg.apex.empty()) throw ParseError("dual needs an 'apex'");
    RunOutcome out;
    out.report["config"] = config_echo(cfg);
    DualWitnessReport rep =
        clarke_ledyaev_dual(f, cfg.apex, body, cfg.r, cfg.eps, cfg.grid, cfg.seed);
    out.report["dual_report"] = dual_report_to_json(rep);
    if (!rep.verified) {
        out.exit_code = 1;
        out.failing = !rep.membership_ok ? "xi in [a,A]_eps"
                      : !rep.value_ok    ? "f(xi) < max{f(a),r} + eps"
                                         : "inf p(A) - p(a) > r - f(a)";
        out.report["failing"] = out.failing;
    }
    write_file(fs::path(cfg.out_dir) / "report.json", out.report.dump(2) + "\n");
    write_file(fs::path(cfg.out_dir) / "trace.csv", bridge_trace_csv(rep.trace));
    return out;
}

RunOutcome run_bp_search(const ExperimentConfig& cfg) {
    ConvexBody body = resolve_body(cfg);
    if (cfg.cloud_file.empty()) throw ParseError("bp-search needs a 'cloud_file'");
    if (cfg.apex.empty()) throw ParseError("bp-search needs an 'apex'");
    Json cj = load_json_file(cfg.cloud_file);
    if (!cj.is_array()) throw ParseError("cloud file must be a JSON array of points");
    std::vector<Vec> pts;
    for (const auto& p : cj) pts.push_back(vec_from_json(p));
    PointCloud cloud = PointCloud::from_points(std::move(pts), body.context());
    BpResult res = bp_lemma(cloud, cfg.apex, body, std::min(cfg.tol, 1e-7));
    RunOutcome out;
    out.report["config"] = config_echo(cfg);
    out.report["extremal"] = vec_to_json(res.point);
    out.report["scaling"] = res.scaling;
    out.report["cone_filtered"] = res.cone_filtered;
    out.report["orbit"] = orbit_trace_to_json(res.trace);
    write_file(fs::path(cfg.out_dir) / "report.json", out.report.dump(2) + "\n");
    write_file(fs::path(cfg.out_dir) / "trace.csv", orbit_trace_csv(res.trace));
    return out;
}

CellResult suite_bp_cell(const ScalarFunction& f, const Vec& apex, const ConvexBody& A, int grid,
                         double tol) {
    CellResult cell;
    if (f.evaluate(apex) == std::numeric_limits<double>::infinity()) {
        cell.status = "skip:f(a) infinite";
        return cell;
    }
    if (body_membership(A, apex, tol)) {
        cell.status = "skip:apex in A";
        return cell;
    }
    double fa = f.evaluate(apex);
    std::vector<Vec> sub;
    for (auto& x : interval_grid(apex, A, grid))
        if (f.evaluate(x) <= fa + tol) sub.push_back(std::move(x));
    PointCloud M = PointCloud::from_points(std::move(sub), A.context());
    BpResult res = bp_lemma(M, apex, A, std::min(tol, 1e-7));  // post-verified internally
    auto stats = cone_stats(translate(A, scaled(apex, -1.0)));
    double bound = A.context().dist(res.trace.extremal, res.trace.visited.front()) / stats.c;
    if (res.trace.total_step_length > bound + 1e-7) {
        cell.status = "fail:orbit length bound";
        return cell;
    }
    cell.status = "pass";
    cell.detail["extremal"] = vec_to_json(res.point);
    cell.detail["orbit_steps"] = res.trace.steps.size();
    return cell;
}

CellResult suite_rolle_cell(const ScalarFunction& f, const ConvexBody& A, int dim, int grid,
                            double tol) {
    CellResult cell;
    for (const Vec& apex : {zeros(dim), far_apex(dim)}) {
        double fa = f.evaluate(apex);
        if (fa == std::numeric_limits<double>::infinity()) continue;
        double inf_s;
        try {
            inf_s = inf_over_body(f, A, grid);
        } catch (const AllInfiniteError&) {
            inf_s = std::numeric_limits<double>::infinity();
        }
        if (fa > inf_s + tol) continue;
        WitnessReport rep = rolle_witness(f, apex, A, grid, tol);
        bool ok = rep.f_at_witness <= fa + 1e-6 && rep.slack >= -1e-3 && rep.membership_ok;
        cell.status = ok ? "pass" : "fail:rolle conclusions";
        cell.detail = witness_report_to_json(rep);
        return cell;
    }
    cell.status = "skip:precondition f(a) <= inf f(A)";
    return cell;
}

CellResult suite_lagrange_cell(const ScalarFunction& f, const ConvexBody& A, int dim, int grid,
                               double tol) {
    CellResult cell;
    for (const Vec& apex : {zeros(dim), far_apex(dim)}) {
        double fa = f.evaluate(apex);
        if (fa == std::numeric_limits<double>::infinity()) continue;
        double inf_s;
        try {
            inf_s = inf_over_body(f, A, grid);
        } catch (const AllInfiniteError&) {
            continue;  // r would be infinite
        }
        double r = inf_s;
        WitnessReport rep = lagrange_witness(f, apex, A, r, grid, tol);
        bool ok = rep.f_at_witness <= std::max(fa, r) + 1e-6 && rep.slack >= -1e-3 &&
                  rep.membership_ok;
        cell.status = ok ? "pass" : "fail:lagrange conclusions";
        cell.detail = witness_report_to_json(rep);
        return cell;
    }
    cell.status = "skip:f(a) infinite";
    return cell;
}

CellResult suite_dual_cell(const ScalarFunction& f, const ConvexBody& A, int dim, int grid,
                           std::uint64_t seed) {
    CellResult cell;
    if (!is_smooth_or_max_affine(f.label)) {
        cell.status = "skip:oracle kind outside the dual matrix";
        return cell;
    }
    Vec apex = zeros(dim);
    double inf_s = inf_over_body(f, A, grid);
    double r = inf_s - 0.1;
    DualWitnessReport rep = clarke_ledyaev_dual(f, apex, A, r, 0.2, grid, seed);
    cell.status = rep.verified ? "pass" : "fail:dual conclusions";
    cell.detail = dual_report_to_json(rep);
    return cell;
}

}  // namespace

RunOutcome suite_command(const std::string& out_dir, std::uint64_t seed, double tol, int grid) {
    RunOutcome out;
    Json cells = Json::array();
    int passes = 0, failures = 0, skips = 0;
    auto t_start = std::chrono::steady_clock::now();
    Json timings = Json::array();

    for (int dim : {2, 3}) {
        auto catalog = standard_catalog(dim);
        auto bodies = standard_bodies(dim);
        auto names = standard_body_names();
        for (const auto& f : catalog) {
            for (std::size_t bi = 0; bi < bodies.size(); ++bi) {
                for (const std::string check : {"bp", "rolle", "lagrange", "dual"}) {
                    auto t0 = std::chrono::steady_clock::now();
                    CellResult cell;
                    try {
                        if (check == "bp") {
                            // the Rolle sublevel cloud from the near apex
                            Vec apex = f.label == "negnorm" ? far_apex(dim) : zeros(dim);
                            cell = suite_bp_cell(f, apex, bodies[bi], grid, tol);
                        } else if (check == "rolle") {
                            cell = suite_rolle_cell(f, bodies[bi], dim, grid, tol);
                        } else if (check == "lagrange") {
                            cell = suite_lagrange_cell(f, bodies[bi], dim, grid, tol);
                        } else {
                            cell = suite_dual_cell(f, bodies[bi], dim, grid, seed);
                        }
                    } catch (const PreconditionFailedError& e) {
                        cell.status = std::string("fail:PreconditionFailed: ") + e.what();
                    } catch (const Error& e) {
                        cell.status = std::string("fail:") + e.what();
                    }
                    Json c;
                    c["dim"] = dim;
                    c["function"] = f.label;
                    c["body"] = names[bi];
                    c["check"] = check;
                    c["status"] = cell.status;
                    cells.push_back(c);
                    if (cell.status == "pass")
                        ++passes;
                    else if (cell.status.rfind("skip", 0) == 0)
                        ++skips;
                    else
                        ++failures;
                    auto t1 = std::chrono::steady_clock::now();
                    timings.push_back(
                        {{"cell", std::to_string(dim) + "/" + f.label + "/" + names[bi] + "/" +
                                      check},
                         {"ms", std::chrono::duration<double, std::milli>(t1 - t0).count()}});
                }
            }
        }
    }

    out.report["suite"] = {{"seed", seed}, {"tol", tol}, {"grid", grid}};
    out.report["cells"] = cells;
    out.report["summary"] = {{"pass", passes}, {"fail", failures}, {"skip", skips}};
    out.exit_code = failures == 0 ? 0 : 1;
    if (failures > 0) out.failing = "suite cells failed";

    write_file(fs::path(out_dir) / "report.json", out.report.dump(2) + "\n");
    auto t_end = std::chrono::steady_clock::now();
    Json tj;
    tj["total_ms"] = std::chrono::duration<double, std::milli>(t_end - t_start).count();
    tj["cells"] = timings;
    // timings stay outside report.json so repeated runs are byte-identical
    write_file(fs::path(out_dir) / "timings.json", tj.dump(2) + "\n");

    std::cout << "suite: " << passes << " pass, " << failures << " fail, " << skips << " skip\n";
    for (const auto& c : cells)
        if (c["status"] != "pass")
            std::cout << "  [" << c["status"].get<std::string>() << "] dim="
                      << c["dim"].get<int>() << " " << c["function"].get<std::string>() << " x "
                      << c["body"].get<std::string>() << " " << c["check"].get<std::string>()
                      << "\n";
    return out;
}

RunOutcome run_command(const ExperimentConfig& cfg) {
    if (cfg.subcommand == "derivative") return run_derivative(cfg);
    if (cfg.subcommand == "rolle") return run_witness(cfg, false);
    if (cfg.subcommand == "lagrange") return run_witness(cfg, true);
    if (cfg.subcommand == "dual") return run_dual(cfg);
    if (cfg.subcommand == "bp-search") return run_bp_search(cfg);
    if (cfg.subcommand == "suite")
        return suite_command(cfg.out_dir, cfg.seed, cfg.tol, cfg.grid);
    throw ParseError("unknown subcommand: " + cfg.subcommand);
}

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"multidirectional nonsmooth analysis toolkit"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::uint64_t seed = 0;
    double tol = -1.0;
    int grid = -1;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* opt = sub->add_option("--config", config_path, "JSON experiment config");
        if (config_required) opt->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "seed for the stochastic minimiser starts");
        sub->add_option("--tol", tol, "tolerance override");
        sub->add_option("--grid", grid, "grid/refinement override");
    };
    for (const char* name : {"derivative", "rolle", "lagrange", "dual", "bp-search"})
        add_common(app.add_subcommand(name), true);
    add_common(app.add_subcommand("suite"), false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        ExperimentConfig cfg;
        if (!config_path.empty()) cfg = ExperimentConfig::from_json(load_json_file(config_path));
        cfg.subcommand = app.get_subcommands().front()->get_name();
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (seed != 0) cfg.seed = seed;
        if (tol >= 0.0) cfg.tol = tol;
        if (grid > 0) cfg.grid = grid;
        RunOutcome out = run_command(cfg);
        if (out.exit_code != 0 && !out.failing.empty())
            std::cerr << "verification failed: " << out.failing << "\n";
        return out.exit_code;
    } catch (const ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace multidir
