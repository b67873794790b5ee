// phonolase: command-line front end. Every subcommand writes CSV to stdout or --out.
//
// Exit codes: 0 success, 1 schema/usage error, 2 verification failure.

#include "phonolase/phonolase.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

namespace {

using namespace phonolase;

constexpr int exit_ok = 0;
constexpr int exit_schema = 1;
constexpr int exit_verify = 2;

struct Output {
    std::string path;

    template <class Fn>
    void write(Fn&& fn) const {
        if (path.empty()) {
            fn(std::cout);
            std::cout.flush();
            return;
        }
        std::ofstream os(path, std::ios::binary);
        if (!os) throw InvalidConfig("cannot open output file '" + path + "'");
        fn(os);
        if (!os) throw InvalidConfig("failed writing '" + path + "'");
    }
};

struct AxisArgs {
    std::string name;
    double from = 0.0;
    double to = 0.0;
    int steps = 0;

    SweepAxis axis() const { return {name, from, to, steps}; }
};

void add_axis(CLI::App* cmd, AxisArgs& a, const std::string& prefix, bool name_required = true) {
    auto* opt = cmd->add_option("--" + prefix + "axis", a.name, "Axis: a parameter name, delta_phi, n_plus or n_minus");
    if (name_required) opt->required();
    cmd->add_option("--" + prefix + "from", a.from, "Axis start")->required();
    cmd->add_option("--" + prefix + "to", a.to, "Axis stop")->required();
    cmd->add_option("--" + prefix + "steps", a.steps, "Number of samples (>= 2)")->required();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phase-controlled optomechanical coupling and phonon-laser calculator"};
    app.require_subcommand(1);

    std::string config_path;
    Output out;
    unsigned threads = 1;

    auto common = [&](CLI::App* cmd, bool needs_config = true) {
        if (needs_config) cmd->add_option("--config", config_path, "JSON configuration file")->required();
        cmd->add_option("--out", out.path, "Write CSV here instead of stdout");
    };
    auto threaded = [&](CLI::App* cmd) {
        cmd->add_option("--threads", threads, "Worker threads (output order is unaffected)")
            ->check(CLI::Range(1u, 256u));
    };

    auto* analyze_cmd = app.add_subcommand("analyze", "Full single-point report");
    common(analyze_cmd);
    bool audit_table = false;
    analyze_cmd->add_flag("--rwa", audit_table, "Emit the RWA audit table instead of the report");

    auto* sweep_cmd = app.add_subcommand("sweep", "One-dimensional sweep");
    common(sweep_cmd);
    threaded(sweep_cmd);
    AxisArgs sweep_axis;
    add_axis(sweep_cmd, sweep_axis, "");
    std::vector<std::string> outputs;
    sweep_cmd->add_option("--outputs", outputs, "Comma-separated columns to keep")->delimiter(',');

    auto* grid_cmd = app.add_subcommand("grid", "Two-dimensional grid in long format");
    common(grid_cmd);
    threaded(grid_cmd);
    AxisArgs x_axis, y_axis;
    add_axis(grid_cmd, x_axis, "x-");
    add_axis(grid_cmd, y_axis, "y-");
    std::vector<std::string> fields;
    grid_cmd->add_option("--fields", fields, "Comma-separated numeric fields (default f1,f2)")->delimiter(',');

    auto* contours_cmd = app.add_subcommand("contours", "Iso-level polylines from a grid CSV");
    common(contours_cmd, false);
    std::string grid_path;
    std::string contour_field = "f1";
    std::vector<double> levels;
    contours_cmd->add_option("--grid", grid_path, "Grid CSV written by 'grid'")->required();
    contours_cmd->add_option("--field", contour_field, "Field to contour")->capture_default_str();
    contours_cmd->add_option("--level", levels, "Contour level (repeatable)")->required()->take_all();

    auto* laser_cmd = app.add_subcommand("laser-sweep", "Phonon-laser quantities along one axis");
    common(laser_cmd);
    threaded(laser_cmd);
    AxisArgs laser_axis;
    laser_axis.name = "delta_phi";
    add_axis(laser_cmd, laser_axis, "", false);

    auto* verify_cmd = app.add_subcommand("verify", "Identity and oracle checks plus the RWA audit");
    common(verify_cmd);
    std::size_t random_sets = 0;
    std::uint64_t seed = 1;
    verify_cmd->add_option("--random", random_sets, "Random parameter sets per branch");
    verify_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_schema;
    }

    try {
        if (*analyze_cmd) {
            const Config cfg = load_config(config_path);
            const PointResult point = evaluate_point(cfg);
            if (audit_table) {
                if (!point.ok()) throw InvalidConfig(point.error);
                const auto report = oracle::rwa_error_report(validate(cfg.params), cfg.options.regime);
                out.write([&](std::ostream& os) { write_csv(os, rwa_table(report)); });
                return exit_ok;
            }
            const Table t = analyze(cfg);
            out.write([&](std::ostream& os) { write_csv(os, t); });
            if (!point.ok()) {
                std::cerr << "error: " << point.error << '\n';
                return exit_schema;
            }
            return exit_ok;
        }
        if (*sweep_cmd) {
            const Config cfg = load_config(config_path);
            SweepSpec spec;
            spec.axis = sweep_axis.axis();
            spec.outputs = outputs;
            spec.threads = threads;
            const Table t = run_sweep(cfg, spec);
            out.write([&](std::ostream& os) { write_csv(os, t); });
            return exit_ok;
        }
        if (*grid_cmd) {
            const Config cfg = load_config(config_path);
            SweepSpec spec;
            spec.axis = x_axis.axis();
            spec.second = y_axis.axis();
            spec.outputs = fields;
            spec.threads = threads;
            const Grid g = run_grid(cfg, spec);
            out.write([&](std::ostream& os) { write_grid_csv(os, g); });
            return exit_ok;
        }
        if (*contours_cmd) {
            std::ifstream is(grid_path, std::ios::binary);
            if (!is) throw InvalidConfig("cannot open grid file '" + grid_path + "'");
            const Grid g = read_grid_csv(is);
            const ContourSet set = extract_contours(g, contour_field, levels);
            for (const auto& lvl : set.levels)
                if (lvl.status == ContourStatus::EmptyContour)
                    std::cerr << "note: level " << format_double(lvl.level) << " never crosses the grid\n";
            out.write([&](std::ostream& os) { write_contours_csv(os, set); });
            return exit_ok;
        }
        if (*laser_cmd) {
            const Config cfg = load_config(config_path);
            const Table t = run_laser_sweep(cfg, laser_axis.axis(), threads);
            out.write([&](std::ostream& os) { write_csv(os, t); });
            return exit_ok;
        }
        if (*verify_cmd) {
            const Config cfg = load_config(config_path);
            const CheckBook book = verify(cfg.params, random_sets, seed);
            Table checks;
            checks.header = {"check", "status", "cases", "max_error", "tolerance", "detail"};
            for (const auto& c : book.results())
                checks.rows.push_back({c.name, c.pass() ? "pass" : "fail", std::to_string(c.cases),
                                       format_double(c.max_error), format_double(c.tolerance), c.failure});
            Table audit;
            try {
                audit = rwa_table(oracle::rwa_error_report(validate(cfg.params), cfg.options.regime));
            } catch (const Error& e) {
                audit.header = {"branch", "term", "magnitude", "gap", "ratio"};
                audit.rows.push_back({"none", std::string("error:") + e.what(), "nan", "nan", "nan"});
            }
            out.write([&](std::ostream& os) {
                write_csv(os, checks);
                os << '\n';
                write_csv(os, audit);
            });
            return book.all_pass() ? exit_ok : exit_verify;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_schema;
    }
    return exit_ok;
}
