#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wardowski/config.hpp"
#include "wardowski/log.hpp"
#include "wardowski/report.hpp"

namespace {

using wardowski::ConfigParseError;
using wardowski::ConfigSemanticError;
using wardowski::ExperimentConfig;
using wardowski::IoError;
using wardowski::MultiConfig;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

struct GlobalFlags {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::string format = "json";
};

struct StageFlags {
    std::string space;    // real_line | euclidean:N | matrix:PATH
    std::string map;      // affine:scale:offset | table:i,j,k
    std::string F;        // log | log_poly:a,b,c | neg_power:d | step_log:jump,at
    std::optional<double> a;
    std::optional<double> k;
    std::optional<double> eps;
    std::optional<std::size_t> max_iter;
    std::vector<double> starts;
    std::string t_grid;
    std::string condition;
    std::string mode;  // exhaustive | sampled:N:seed
    std::optional<double> box_lo, box_hi;
    std::string trace_file;
    std::optional<double> eta;
    std::string delta;
    std::optional<std::size_t> j_count;
    std::optional<std::string> iterates_csv;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

double parse_num(const std::string& field, const std::string& v) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigSemanticError("flag " + field + ": not a number: '" + v + "'");
    }
}

void apply_stage_flags(ExperimentConfig& e, const StageFlags& f) {
    using wardowski::FSpec;
    using wardowski::MapSpec;
    using wardowski::SpaceSpec;

    if (!f.space.empty()) {
        const auto parts = split(f.space, ':');
        if (parts[0] == "real_line" && parts.size() == 1) {
            e.space.kind = SpaceSpec::Kind::RealLine;
        } else if (parts[0] == "euclidean" && parts.size() == 2) {
            e.space.kind = SpaceSpec::Kind::Euclidean;
            e.space.dim = static_cast<std::size_t>(parse_num("--space", parts[1]));
        } else if (parts[0] == "matrix" && parts.size() == 2) {
            e.space.kind = SpaceSpec::Kind::FiniteMatrix;
            e.space.matrix_file = parts[1];
        } else {
            throw ConfigSemanticError("flag --space: expected real_line, euclidean:N or matrix:PATH");
        }
    }
    if (!f.map.empty()) {
        const auto parts = split(f.map, ':');
        if (parts[0] == "affine" && (parts.size() == 2 || parts.size() == 3)) {
            e.map.kind = MapSpec::Kind::Affine;
            e.map.scale = parse_num("--map", parts[1]);
            e.map.offset = {parts.size() == 3 ? parse_num("--map", parts[2]) : 0.0};
        } else if (parts[0] == "table" && parts.size() == 2) {
            e.map.kind = MapSpec::Kind::Table;
            e.map.table.clear();
            for (const auto& t : split(parts[1], ','))
                e.map.table.push_back(static_cast<std::size_t>(parse_num("--map", t)));
        } else {
            throw ConfigSemanticError("flag --map: expected affine:scale[:offset] or table:i,j,...");
        }
    }
    if (!f.F.empty()) {
        const auto parts = split(f.F, ':');
        FSpec spec;
        spec.family = parts[0];
        const auto args = parts.size() > 1 ? split(parts[1], ',') : std::vector<std::string>{};
        if (spec.family == "log_poly" && args.size() == 3) {
            spec.alpha = parse_num("--F", args[0]);
            spec.beta = parse_num("--F", args[1]);
            spec.gamma = parse_num("--F", args[2]);
        } else if (spec.family == "neg_power" && args.size() == 1) {
            spec.delta = parse_num("--F", args[0]);
        } else if (spec.family == "step_log" && args.size() == 2) {
            spec.jump = parse_num("--F", args[0]);
            spec.at = parse_num("--F", args[1]);
        } else if (spec.family != "log" || !args.empty()) {
            throw ConfigSemanticError(
                "flag --F: expected log, log_poly:a,b,c, neg_power:d or step_log:jump,at");
        }
        e.F = spec;
    }
    if (f.a) {
        if (!(*f.a > 0.0)) throw ConfigSemanticError("flag --a: must be positive");
        e.a = f.a;
    }
    if (f.k) {
        if (!(*f.k > 0.0 && *f.k < 1.0)) throw ConfigSemanticError("flag --k: must lie in (0,1)");
        e.k = f.k;
    }
    if (f.eps) e.solve.eps = *f.eps;
    if (f.max_iter) e.solve.max_iter = *f.max_iter;
    if (!f.starts.empty()) {
        e.solve.starts.clear();
        for (double s : f.starts) e.solve.starts.push_back({s});
    }
    if (!f.t_grid.empty()) {
        e.t_grid.clear();
        for (const auto& t : split(f.t_grid, ',')) e.t_grid.push_back(parse_num("--t-grid", t));
    }
    if (!f.condition.empty()) e.verify.condition = f.condition;
    if (!f.mode.empty()) {
        const auto parts = split(f.mode, ':');
        if (parts[0] == "exhaustive" && parts.size() == 1) {
            e.verify.mode = "exhaustive";
        } else if (parts[0] == "sampled" && parts.size() <= 3) {
            e.verify.mode = "sampled";
            if (parts.size() >= 2)
                e.verify.samples = static_cast<std::size_t>(parse_num("--mode", parts[1]));
            if (parts.size() == 3)
                e.verify.seed = static_cast<std::uint64_t>(parse_num("--mode", parts[2]));
        } else {
            throw ConfigSemanticError("flag --mode: expected exhaustive or sampled[:N[:seed]]");
        }
    }
    if (f.box_lo) e.verify.box_lo = {*f.box_lo};
    if (f.box_hi) e.verify.box_hi = {*f.box_hi};
    if (!f.trace_file.empty()) e.witness.trace_file = f.trace_file;
    if (f.eta) e.witness.eta = *f.eta;
    if (!f.delta.empty()) {
        e.witness.delta.clear();
        for (const auto& d : split(f.delta, ',')) e.witness.delta.push_back(parse_num("--delta", d));
    }
    if (f.j_count) e.witness.j_count = f.j_count;
    if (f.iterates_csv) e.iterates_csv = f.iterates_csv;
}

void add_stage_options(CLI::App* cmd, StageFlags& f) {
    cmd->add_option("--space", f.space, "Space: real_line, euclidean:N or matrix:PATH");
    cmd->add_option("--map", f.map, "Self-map: affine:scale[:offset] or table:i,j,...");
    cmd->add_option("--F", f.F, "Wardowski family: log, log_poly:a,b,c, neg_power:d, step_log:jump,at");
    cmd->add_option("--a", f.a, "Contraction constant a > 0");
    cmd->add_option("--k", f.k, "Regularity exponent k in (0,1)");
    cmd->add_option("--eps", f.eps, "Convergence eps");
    cmd->add_option("--max-iter", f.max_iter, "Iteration budget");
    cmd->add_option("--start", f.starts, "Start point (repeatable)");
    cmd->add_option("--t-grid", f.t_grid, "Comma-separated t values for derive-phi");
    cmd->add_option("--condition", f.condition, "aF | phi | strict | nonexpansive")
        ->check(CLI::IsMember({"aF", "phi", "strict", "nonexpansive"}));
    cmd->add_option("--mode", f.mode, "exhaustive or sampled[:N[:seed]]");
    cmd->add_option("--box-lo", f.box_lo, "Sampling box lower bound");
    cmd->add_option("--box-hi", f.box_hi, "Sampling box upper bound");
    cmd->add_option("--trace-file", f.trace_file, "CSV of trace points for witness extraction");
    cmd->add_option("--eta", f.eta, "Witness level eta");
    cmd->add_option("--delta", f.delta, "Comma-separated declared discontinuity points");
    cmd->add_option("--j-count", f.j_count, "Number of witness ranks to extract");
    cmd->add_option("--iterates-csv", f.iterates_csv, "Per-iterate CSV filename");
}

int run_stage_command(const std::string& stage, const GlobalFlags& g, const StageFlags& f) {
    MultiConfig multi;
    if (!g.config_path.empty()) {
        multi = wardowski::load_config(g.config_path);
        if (multi.experiments.size() != 1)
            throw ConfigSemanticError("stage subcommands need a single-experiment config");
    } else {
        multi.experiments.emplace_back();
    }
    if (g.seed) multi.seed = *g.seed;

    ExperimentConfig& e = multi.experiments.front();
    apply_stage_flags(e, f);
    e.pipeline = {stage};
    wardowski::validate_experiment(e);

    const auto report = wardowski::run_experiment(e, multi.seed, g.out_dir);
    if (g.format == "csv")
        std::cout << wardowski::json_to_csv(report);
    else
        std::cout << report.dump(2) << "\n";
    return kExitOk;
}

int run_report_command(const GlobalFlags& g) {
    if (g.config_path.empty())
        throw ConfigSemanticError("report: --config is required");
    const MultiConfig multi = [&] {
        MultiConfig m = wardowski::load_config(g.config_path);
        if (auto s = g.seed) m.seed = *s;
        return m;
    }();
    const auto summary = wardowski::run_config(multi, g.out_dir);
    if (g.format == "csv")
        std::cout << wardowski::json_to_csv(summary);
    else
        std::cout << summary.dump(2) << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fixed-point solver and contraction verification toolkit"};
    app.require_subcommand(1);

    GlobalFlags g;
    app.add_option("--config", g.config_path, "Experiment config file")->expected(1);
    app.add_option("--out", g.out_dir, "Output directory for report files");
    app.add_option("--seed", g.seed, "Global RNG seed");
    app.add_option("--format", g.format, "Stdout format")
        ->check(CLI::IsMember({"json", "csv"}));

    StageFlags f;
    const std::vector<std::pair<std::string, std::string>> stages = {
        {"solve", "Run certified Picard iteration from the configured starts"},
        {"verify", "Check a contraction condition over sampled or exhaustive pairs"},
        {"derive-phi", "Derive the comparison function from (a, F) over a t grid"},
        {"classify", "Classify the operator from multiple starts"},
        {"witness", "Extract the rank sequences of a non-Cauchy trace"},
    };
    for (const auto& [name, desc] : stages) {
        auto* cmd = app.add_subcommand(name, desc);
        cmd->fallthrough();  // accept the global flags after the subcommand too
        add_stage_options(cmd, f);
        cmd->callback([name = name, &g, &f] {
            const int rc = run_stage_command(name, g, f);
            if (rc != kExitOk) throw CLI::RuntimeError(rc);
        });
    }
    auto* rep = app.add_subcommand("report", "Run the full configured pipeline and write report files");
    rep->fallthrough();
    rep->callback([&g] {
        const int rc = run_report_command(g);
        if (rc != kExitOk) throw CLI::RuntimeError(rc);
    });

    try {
        app.parse(argc, argv);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitConfig;
    } catch (const ConfigParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ConfigSemanticError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
