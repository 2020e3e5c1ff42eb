// Command-line front end: loads a model + boundary parameter from a JSON
// config, runs one task, and prints a deterministic JSON report to stdout.
// Errors go to stderr as {"error": <code>, "detail": <text>}; exit codes:
// 0 success, 1 identity-check failures, 2 unusable config, 3 module error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "kreinkit/config.hpp"
#include "kreinkit/identity_checks.hpp"
#include "kreinkit/json_out.hpp"
#include "kreinkit/spectral.hpp"
#include "kreinkit/von_neumann.hpp"

namespace {

using namespace kreinkit;
namespace jo = kreinkit::jsonout;

struct TaskOptions {
    std::string config;
    std::string out;
    double tol = 0.0;
    bool has_tol = false;
};

double resolve_tol(const TaskOptions& opts, const RunConfig& cfg) {
    if (opts.has_tol) {
        if (!(opts.tol > 0.0))
            fail(ErrorCode::ConfigInvalid, "--tol must be positive");
        return opts.tol;
    }
    if (cfg.tol) return *cfg.tol;
    if (const char* env = std::getenv("KREINKIT_TOL")) {
        char* end = nullptr;
        const double t = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(t > 0.0))
            fail(ErrorCode::ConfigInvalid,
                 "environment variable KREINKIT_TOL is not a positive number");
        return t;
    }
    return kDefaultTol;
}

jo::Object model_summary(const OperatorModel& model) {
    jo::Object m;
    if (is_diagonal(model)) {
        const auto& dm = std::get<DiagonalModel>(model);
        m.emplace_back("type", "diagonal");
        m.emplace_back("dim_state", std::int64_t(dm.dim_state()));
        m.emplace_back("dim_h", std::int64_t(dm.dim_h()));
    } else {
        const auto& pm = std::get<PointModel3D>(model);
        m.emplace_back("type", "point3d");
        m.emplace_back("dim_h", std::int64_t(pm.dim_h()));
    }
    return m;
}

void emit(const jo::Value& report, const std::string& out_dir,
          const std::string& file_name) {
    std::cout << jo::dump(report);
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        jo::write_file((std::filesystem::path(out_dir) / file_name).string(), report);
    }
}

int task_check(const TaskOptions& opts) {
    const RunConfig cfg = load_config(opts.config);
    const double tol = resolve_tol(opts, cfg);
    KreinExtension ext(cfg.model, cfg.theta, cfg.ref, tol);
    const IdentityReport report = run_identity_checks(ext, tol);

    jo::Array checks;
    for (const auto& c : report.checks) {
        jo::Object item;
        item.emplace_back("id", c.id);
        item.emplace_back("label", c.label);
        item.emplace_back("residual", c.residual);
        item.emplace_back("tolerance", c.tolerance);
        item.emplace_back("pass", c.pass);
        checks.push_back(std::move(item));
    }
    jo::Object root;
    root.emplace_back("task", "check");
    root.emplace_back("model", model_summary(cfg.model));
    root.emplace_back("z0", jo::complex_value(cfg.ref.z0()));
    root.emplace_back("tolerance", tol);
    root.emplace_back("checks", std::move(checks));
    root.emplace_back("all_pass", report.all_pass());
    emit(jo::Value(std::move(root)), opts.out, "check.json");
    return report.all_pass() ? 0 : 1;
}

int task_bound_states(const TaskOptions& opts) {
    const RunConfig cfg = load_config(opts.config);
    const double tol = resolve_tol(opts, cfg);
    KreinExtension ext(cfg.model, cfg.theta, cfg.ref, tol);

    double lo, hi;
    if (cfg.interval) {
        lo = cfg.interval->first;
        hi = cfg.interval->second;
    } else {
        std::tie(lo, hi) = default_search_interval(ext);
    }
    SpectrumOptions sopts;
    sopts.grid = cfg.grid.value_or(200);
    sopts.tol = tol;
    const std::vector<EigenResult> results = find_point_spectrum(ext, lo, hi, sopts);

    jo::Array eigs;
    std::string csv = "lambda,multiplicity,kernel_residual\n";
    for (const auto& r : results) {
        jo::Object item;
        item.emplace_back("lambda", r.lambda);
        item.emplace_back("multiplicity", std::int64_t(r.multiplicity));
        item.emplace_back("kernel_residual", r.kernel_residual);
        item.emplace_back("charge", jo::vector_value(r.charge));
        eigs.push_back(std::move(item));
        csv += jo::format_double(r.lambda) + "," + std::to_string(r.multiplicity) +
               "," + jo::format_double(r.kernel_residual) + "\n";
    }
    jo::Object root;
    root.emplace_back("task", "bound-states");
    root.emplace_back("model", model_summary(cfg.model));
    root.emplace_back("interval", jo::Array{jo::Value(lo), jo::Value(hi)});
    root.emplace_back("grid", std::int64_t(sopts.grid));
    root.emplace_back("tolerance", tol);
    root.emplace_back("count", std::int64_t(results.size()));
    root.emplace_back("eigenvalues", std::move(eigs));
    emit(jo::Value(std::move(root)), opts.out, "bound-states.json");
    if (!opts.out.empty()) {
        std::ofstream f(std::filesystem::path(opts.out) / "bound-states.csv",
                        std::ios::binary);
        f << csv;
    }
    return 0;
}

int task_resolvent(const TaskOptions& opts) {
    const RunConfig cfg = load_config(opts.config);
    const double tol = resolve_tol(opts, cfg);
    KreinExtension ext(cfg.model, cfg.theta, cfg.ref, tol);
    if (!cfg.z)
        fail(ErrorCode::ConfigInvalid, "resolvent task needs \"z\" in the config");

    jo::Object root;
    root.emplace_back("task", "resolvent");
    root.emplace_back("model", model_summary(cfg.model));
    root.emplace_back("z", jo::complex_value(*cfg.z));
    if (is_diagonal(cfg.model)) {
        if (!cfg.state)
            fail(ErrorCode::ConfigInvalid,
                 "resolvent task on a diagonal model needs \"state\"");
        const Vector out_state = ext.resolvent_apply(*cfg.z, *cfg.state);
        const Vector charge = ext.charge_of(*cfg.z, *cfg.state);
        root.emplace_back("charge", jo::vector_value(charge));
        root.emplace_back("state", jo::vector_value(out_state));
    } else {
        if (!cfg.field)
            fail(ErrorCode::ConfigInvalid,
                 "resolvent task on a point model needs \"state\" kernels");
        const KernelField out_field = ext.resolvent_apply(*cfg.z, *cfg.field);
        const Vector charge = ext.charge_of(*cfg.z, *cfg.field);
        root.emplace_back("charge", jo::vector_value(charge));
        jo::Array values;
        for (const auto& p : cfg.points) {
            jo::Object item;
            item.emplace_back("point", jo::Array{jo::Value(p.x()), jo::Value(p.y()),
                                                 jo::Value(p.z())});
            item.emplace_back("value", jo::complex_value(out_field.eval(p)));
            values.push_back(std::move(item));
        }
        root.emplace_back("values", std::move(values));
        jo::Array kernels;
        for (const auto& t : out_field.terms()) {
            jo::Object item;
            item.emplace_back("center", jo::Array{jo::Value(t.center.x()),
                                                  jo::Value(t.center.y()),
                                                  jo::Value(t.center.z())});
            item.emplace_back("z", jo::complex_value(t.z));
            item.emplace_back("amplitude", jo::complex_value(t.amplitude));
            kernels.push_back(std::move(item));
        }
        root.emplace_back("kernels", std::move(kernels));
    }
    emit(jo::Value(std::move(root)), opts.out, "resolvent.json");
    return 0;
}

int task_vn_forward(const TaskOptions& opts) {
    const RunConfig cfg = load_config(opts.config);
    const double tol = resolve_tol(opts, cfg);
    const Matrix gi = gamma_i(cfg.model);
    const ReducedUnitary wu = theta_to_w(cfg.theta, gi);
    (void)tol;

    jo::Object root;
    root.emplace_back("task", "vn-forward");
    root.emplace_back("model", model_summary(cfg.model));
    root.emplace_back("gamma_i", jo::matrix_value(gi));
    root.emplace_back("w", jo::matrix_value(wu.w()));
    root.emplace_back("unitarity_defect", wu.unitarity_defect());
    emit(jo::Value(std::move(root)), opts.out, "vn-forward.json");
    return 0;
}

int task_vn_inverse(const TaskOptions& opts) {
    const RunConfig cfg = load_config(opts.config);
    const double tol = resolve_tol(opts, cfg);
    if (!cfg.w)
        fail(ErrorCode::ConfigInvalid, "vn-inverse task needs \"w\" in the config");
    const Matrix gi = gamma_i(cfg.model);
    const ReducedUnitary wu(*cfg.w, gi, tol);
    const ThetaParam theta = w_to_theta(wu);

    jo::Object root;
    root.emplace_back("task", "vn-inverse");
    root.emplace_back("model", model_summary(cfg.model));
    root.emplace_back("theta", jo::matrix_value(theta.matrix()));
    emit(jo::Value(std::move(root)), opts.out, "vn-inverse.json");
    return 0;
}

int emit_error_and_code(const Error& e) {
    jo::Object err;
    err.emplace_back("error", error_code_name(e.code()));
    err.emplace_back("detail", e.detail());
    std::cerr << jo::dump(jo::Value(std::move(err)));
    return e.code() == ErrorCode::ConfigInvalid ? 2 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"self-adjoint extensions of restricted operators: resolvents, "
                 "boundary parameters, and point spectra"};
    app.require_subcommand(1);

    const std::vector<std::pair<std::string, std::string>> tasks = {
        {"check", "run the built-in identity suite and report residuals"},
        {"bound-states", "scan an interval for point spectrum of the extension"},
        {"resolvent", "apply the perturbed resolvent to a state"},
        {"vn-forward", "map the boundary parameter to the deficiency-space unitary"},
        {"vn-inverse", "recover the boundary parameter from the deficiency-space unitary"},
    };

    std::map<std::string, TaskOptions> opts;
    std::map<std::string, CLI::Option*> tol_opts;
    for (const auto& [name, desc] : tasks) {
        CLI::App* sub = app.add_subcommand(name, desc);
        sub->add_option("--config", opts[name].config, "path to the JSON config file")
            ->required();
        sub->add_option("--out", opts[name].out, "directory to place report files in");
        tol_opts[name] =
            sub->add_option("--tol", opts[name].tol, "residual tolerance override");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        jo::Object err;
        err.emplace_back("error", error_code_name(ErrorCode::ConfigInvalid));
        err.emplace_back("detail", std::string("command line: ") + e.what());
        std::cerr << jo::dump(jo::Value(std::move(err)));
        return 2;
    }

    try {
        for (const auto& [name, desc] : tasks) {
            (void)desc;
            if (!app.get_subcommand(name)->parsed()) continue;
            opts[name].has_tol = tol_opts[name]->count() > 0;
            if (name == "check") return task_check(opts[name]);
            if (name == "bound-states") return task_bound_states(opts[name]);
            if (name == "resolvent") return task_resolvent(opts[name]);
            if (name == "vn-forward") return task_vn_forward(opts[name]);
            if (name == "vn-inverse") return task_vn_inverse(opts[name]);
        }
        fail(ErrorCode::ConfigInvalid, "no task selected");
    } catch (const Error& e) {
        return emit_error_and_code(e);
    } catch (const std::exception& e) {
        jo::Object err;
        err.emplace_back("error", error_code_name(ErrorCode::SolveFailed));
        err.emplace_back("detail", std::string("unexpected failure: ") + e.what());
        std::cerr << jo::dump(jo::Value(std::move(err)));
        return 3;
    }
}
