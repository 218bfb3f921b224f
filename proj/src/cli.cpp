#include "pcdae/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>

#include "pcdae/errors.hpp"
#include "pcdae/io/compare.hpp"
#include "pcdae/io/convergence.hpp"
#include "pcdae/io/scenario.hpp"
#include "pcdae/io/trajectory.hpp"

namespace pcdae {

namespace {

struct Overrides {
    std::string config;
    std::string model;
    std::string solver;
    std::string out;
    std::optional<double> rtol;
    std::optional<double> atol;
    std::optional<double> epsilon;
    std::optional<double> h0;
    std::optional<double> h_min;
    std::optional<double> h_max;
    std::optional<double> t_end;
    std::optional<double> fixed_step;
};

void add_scenario_flags(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config, "key = value scenario file");
    cmd->add_option("--model", o.model, "smib | multimachine | scalar-linear | linear-ode");
    cmd->add_option("--solver", o.solver, "itm | pc-hold | pc-predict");
    cmd->add_option("--rtol", o.rtol, "relative tolerance");
    cmd->add_option("--atol", o.atol, "absolute tolerance");
    cmd->add_option("--epsilon", o.epsilon, "algebraic consistency threshold");
    cmd->add_option("--h0", o.h0, "initial step size");
    cmd->add_option("--h-min", o.h_min, "minimum step size");
    cmd->add_option("--h-max", o.h_max, "maximum step size");
    cmd->add_option("--t-end", o.t_end, "final time");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--fixed-step", o.fixed_step, "run with a constant step size");
}

Config merged_config(const Overrides& o, const std::vector<std::pair<std::string, std::string>>&
                                             defaults = {}) {
    Config cfg = o.config.empty() ? Config{} : Config::load(o.config);
    for (const auto& [k, v] : defaults) {
        if (cfg.entries().count(k) == 0) {
            cfg.set(k, v);
        }
    }
    auto put = [&](const char* key, const std::optional<double>& v) {
        if (v) {
            cfg.set(key, format_number(*v));
        }
    };
    if (!o.model.empty()) cfg.set("model.type", o.model);
    if (!o.solver.empty()) cfg.set("solver.scheme", o.solver);
    if (!o.out.empty()) cfg.set("output.dir", o.out);
    put("controller.rtol", o.rtol);
    put("controller.atol", o.atol);
    put("check.epsilon", o.epsilon);
    put("controller.h_init", o.h0);
    put("controller.h_min", o.h_min);
    put("controller.h_max", o.h_max);
    put("run.t_end", o.t_end);
    put("run.fixed_step", o.fixed_step);
    return cfg;
}

void print_metrics_table(std::ostream& out, const std::string& solver, const RunMetrics& m) {
    out << std::left << std::setw(16) << solver << std::right << std::setw(16)
        << m.nonlinear_calls << std::setw(12) << m.accepted_steps << std::setw(12)
        << m.rejected_steps << std::setw(15) << m.recorrections << std::setw(10)
        << (m.diverged ? "yes" : "no") << '\n';
}

void print_table_header(std::ostream& out) {
    out << std::left << std::setw(16) << "solver" << std::right << std::setw(16)
        << "nonlinear_calls" << std::setw(12) << "accepted" << std::setw(12) << "rejected"
        << std::setw(15) << "recorrections" << std::setw(10) << "diverged" << '\n';
}

int cmd_run(const Overrides& o, std::ostream& out) {
    const ScenarioConfig s = scenario_from_config(merged_config(o));
    const ModelInstance model = build_model(s);
    const SimulationResult r = simulate(*model.system, model.initial, s.sim);

    std::error_code ec;
    std::filesystem::create_directories(s.output_dir, ec);
    if (ec) {
        throw IoError("cannot create output directory '" + s.output_dir + "': " + ec.message());
    }
    const std::filesystem::path dir(s.output_dir);
    write_trajectory_csv(r.trajectory, (dir / "trajectory.csv").string());
    write_step_trace_csv(r.metrics, (dir / "steps.csv").string());
    write_metrics(r.metrics, (dir / "metrics.txt").string());

    print_table_header(out);
    print_metrics_table(out, std::string(to_string(s.sim.scheme.kind)), r.metrics);
    write_metrics(r.metrics, out);
    return r.metrics.diverged ? kExitDiverged : kExitOk;
}

int cmd_compare(const std::string& ref_path, const std::string& cand_path,
                const std::string& series_path, std::ostream& out) {
    const Trajectory ref = read_trajectory_csv(ref_path);
    const Trajectory cand = read_trajectory_csv(cand_path);
    const ComparisonReport rep = compare_trajectories(ref, cand);
    out << std::left << std::setw(16) << "variable" << std::right << std::setw(24) << "l2"
        << std::setw(24) << "linf" << '\n';
    for (const auto& v : rep.variables) {
        out << std::left << std::setw(16) << v.name << std::right << std::setw(24)
            << format_number(v.l2) << std::setw(24) << format_number(v.linf) << '\n';
    }
    out << "worst_variable = " << rep.worst_variable().name << '\n'
        << "worst_l2 = " << format_number(rep.worst_variable().l2) << '\n'
        << "worst_linf = " << format_number(rep.worst_variable().linf) << '\n'
        << "max_abs = " << format_number(rep.max_abs) << '\n';
    if (!series_path.empty()) {
        std::ofstream f(series_path, std::ios::binary);
        if (!f) {
            throw IoError("cannot open '" + series_path + "' for writing");
        }
        f << "t," << rep.worst_variable().name << '\n';
        for (std::size_t i = 0; i < rep.times.size(); ++i) {
            f << format_number(rep.times[i]) << ',' << format_number(rep.worst_series[i]) << '\n';
        }
        if (!f) {
            throw IoError("write to '" + series_path + "' failed");
        }
    }
    return kExitOk;
}

int cmd_converge(const Overrides& o, const std::string& quantity, std::vector<double> steps,
                 std::ostream& out) {
    const ScenarioConfig s = scenario_from_config(
        merged_config(o, {{"model.type", "scalar-linear"}, {"run.t_end", "1"}}));
    const ModelInstance model = build_model(s);
    ConvergenceSpec spec;
    spec.scheme = s.sim.scheme;
    spec.settings = s.sim.step;
    spec.t_end = s.sim.t_end;
    spec.steps = std::move(steps);
    if (quantity == "state") {
        spec.quantity = StudyQuantity::FinalState;
    } else if (quantity == "estimate") {
        spec.quantity = StudyQuantity::AlgebraicEstimate;
    } else {
        throw ConfigError("--quantity expects state or estimate, got '" + quantity + "'");
    }
    const ConvergenceResult r = convergence_study(model, spec);
    out << "h,error\n";
    for (const auto& p : r.points) {
        out << format_number(p.h) << ',' << format_number(p.error) << '\n';
    }
    out << "slope = " << format_number(r.slope) << '\n';
    return kExitOk;
}

int cmd_bench(const Overrides& o, std::ostream& out) {
    const ScenarioConfig s = scenario_from_config(merged_config(o));
    const ModelInstance model = build_model(s);
    struct Row {
        std::string name;
        SchemeKind kind;
        double epsilon;
    };
    const std::vector<Row> rows = {
        {"itm", SchemeKind::SimultaneousItm, s.sim.step.check.epsilon},
        {"pc-predict", SchemeKind::PartitionedPredict, s.sim.step.check.epsilon},
        {"pc-hold", SchemeKind::PartitionedHold, s.sim.step.check.epsilon},
        {"pc-hold-tight", SchemeKind::PartitionedHold, AlgebraicCheck::kTightEpsilon},
    };
    std::vector<RunMetrics> results;
    for (const auto& row : rows) {
        SimulationOptions opts = s.sim;
        opts.scheme.kind = row.kind;
        opts.step.check.epsilon = row.epsilon;
        RunMetrics m = simulate(*model.system, model.initial, opts).metrics;
        m.step_records.clear();
        results.push_back(std::move(m));
    }
    print_table_header(out);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        print_metrics_table(out, rows[i].name, results[i]);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& m = results[i];
        const std::string& n = rows[i].name;
        out << n << ".epsilon = " << format_number(rows[i].epsilon) << '\n'
            << n << ".nonlinear_calls = " << m.nonlinear_calls << '\n'
            << n << ".accepted_steps = " << m.accepted_steps << '\n'
            << n << ".rejected_steps = " << m.rejected_steps << '\n'
            << n << ".recorrections = " << m.recorrections << '\n'
            << n << ".diverged = " << (m.diverged ? "true" : "false") << '\n';
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Partitioned predictor-corrector DAE solver", "pcdae"};
    app.require_subcommand(1);

    Overrides run_o;
    auto* run = app.add_subcommand("run", "simulate one scenario and write its outputs");
    add_scenario_flags(run, run_o);

    std::string ref_path;
    std::string cand_path;
    std::string series_path;
    auto* compare = app.add_subcommand("compare", "compare two trajectory files");
    compare->add_option("reference", ref_path, "reference trajectory CSV")->required();
    compare->add_option("candidate", cand_path, "candidate trajectory CSV")->required();
    compare->add_option("--out", series_path, "write the worst variable's difference series");

    Overrides conv_o;
    std::string quantity = "state";
    std::vector<double> steps = {0.1, 0.05, 0.025, 0.0125};
    auto* converge = app.add_subcommand("converge", "fixed-step convergence study");
    add_scenario_flags(converge, conv_o);
    converge->add_option("--quantity", quantity, "state | estimate");
    converge->add_option("--steps", steps, "strictly decreasing step sizes");

    Overrides bench_o;
    auto* bench = app.add_subcommand("bench", "run every scheme on one scenario");
    add_scenario_flags(bench, bench_o);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    try {
        if (run->parsed()) {
            return cmd_run(run_o, out);
        }
        if (compare->parsed()) {
            return cmd_compare(ref_path, cand_path, series_path, out);
        }
        if (converge->parsed()) {
            return cmd_converge(conv_o, quantity, steps, out);
        }
        return cmd_bench(bench_o, out);
    } catch (const ConfigError& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const MalformedCase& e) {
        err << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return kExitIo;
    } catch (const VariableMismatch& e) {
        err << "comparison error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const Error& e) {
        err << "run failed: " << e.what() << '\n';
        return kExitDiverged;
    }
}

}  // namespace pcdae
