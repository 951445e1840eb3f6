#include "wardowski/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace wardowski {

namespace {

[[noreturn]] void bad_value(const std::string& key, const std::string& why) {
    throw ConfigSemanticError("config field " + key + ": " + why);
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string unquote(std::string v) {
    if (v.size() >= 2 && ((v.front() == '"' && v.back() == '"') ||
                          (v.front() == '\'' && v.back() == '\'')))
        return v.substr(1, v.size() - 2);
    return v;
}

double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) bad_value(key, "trailing characters in number '" + v + "'");
        return x;
    } catch (const ConfigSemanticError&) {
        throw;
    } catch (const std::exception&) {
        bad_value(key, "not a number: '" + v + "'");
    }
}

std::size_t parse_index(const std::string& key, const std::string& v) {
    std::size_t x = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc{} || p != v.data() + v.size())
        bad_value(key, "not a nonnegative integer: '" + v + "'");
    return x;
}

std::vector<std::string> split_items(const std::string& v, char extra_sep = ',') {
    std::vector<std::string> items;
    std::string cur;
    for (char c : v) {
        if (c == ' ' || c == '\t' || c == extra_sep) {
            if (!cur.empty()) items.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) items.push_back(cur);
    return items;
}

std::vector<double> parse_double_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    for (const auto& item : split_items(v)) out.push_back(parse_double(key, item));
    if (out.empty()) bad_value(key, "empty list");
    return out;
}

std::vector<std::vector<double>> parse_point_list(const std::string& key, const std::string& v) {
    std::vector<std::vector<double>> pts;
    std::stringstream ss(v);
    std::string part;
    while (std::getline(ss, part, ';')) {
        part = trim(part);
        if (part.empty()) continue;
        pts.push_back(parse_double_list(key, part));
    }
    if (pts.empty()) bad_value(key, "empty point list");
    return pts;
}

const std::set<std::string> kStages = {"verify", "derive-phi", "solve", "classify", "witness"};

void apply_key(ExperimentConfig& e, const std::string& key, const std::string& value) {
    if (key == "pipeline") {
        for (const auto& s : split_items(value)) {
            if (!kStages.count(s)) bad_value(key, "unknown stage '" + s + "'");
            e.pipeline.push_back(s);
        }
    } else if (key == "space.kind") {
        if (value == "real_line") e.space.kind = SpaceSpec::Kind::RealLine;
        else if (value == "euclidean") e.space.kind = SpaceSpec::Kind::Euclidean;
        else if (value == "finite_matrix") e.space.kind = SpaceSpec::Kind::FiniteMatrix;
        else bad_value(key, "unknown space kind '" + value + "'");
    } else if (key == "space.dim") {
        e.space.dim = parse_index(key, value);
        if (e.space.dim == 0) bad_value(key, "must be positive");
    } else if (key == "space.matrix_file") {
        e.space.matrix_file = value;
    } else if (key == "map.kind") {
        if (value == "affine") e.map.kind = MapSpec::Kind::Affine;
        else if (value == "table") e.map.kind = MapSpec::Kind::Table;
        else bad_value(key, "unknown map kind '" + value + "'");
    } else if (key == "map.scale") {
        e.map.scale = parse_double(key, value);
    } else if (key == "map.offset") {
        e.map.offset = parse_double_list(key, value);
    } else if (key == "map.table") {
        e.map.table.clear();
        for (const auto& item : split_items(value)) e.map.table.push_back(parse_index(key, item));
    } else if (key == "F.family") {
        if (!e.F) e.F.emplace();
        if (value != "log" && value != "log_poly" && value != "neg_power" && value != "step_log")
            bad_value(key, "unknown family '" + value + "'");
        e.F->family = value;
    } else if (key == "F.alpha" || key == "F.beta" || key == "F.gamma" || key == "F.delta" ||
               key == "F.jump" || key == "F.at") {
        if (!e.F) e.F.emplace();
        const double x = parse_double(key, value);
        if (key == "F.alpha") e.F->alpha = x;
        else if (key == "F.beta") e.F->beta = x;
        else if (key == "F.gamma") e.F->gamma = x;
        else if (key == "F.delta") e.F->delta = x;
        else if (key == "F.jump") e.F->jump = x;
        else e.F->at = x;
    } else if (key == "contraction.a") {
        e.a = parse_double(key, value);
        if (!(*e.a > 0.0)) bad_value(key, "must be positive");
    } else if (key == "regularity.k") {
        e.k = parse_double(key, value);
        if (!(*e.k > 0.0 && *e.k < 1.0)) bad_value(key, "must lie in (0,1)");
    } else if (key == "regularity.beta") {
        e.tail_beta = parse_double(key, value);
        if (!(*e.tail_beta > 0.0)) bad_value(key, "must be positive");
    } else if (key == "phi.kind") {
        if (value == "derived") e.phi.kind = PhiSpec::Kind::Derived;
        else if (value == "linear") e.phi.kind = PhiSpec::Kind::Linear;
        else bad_value(key, "unknown phi kind '" + value + "'");
    } else if (key == "phi.alpha") {
        e.phi.alpha = parse_double(key, value);
        if (!(e.phi.alpha > 0.0 && e.phi.alpha < 1.0)) bad_value(key, "must lie in (0,1)");
    } else if (key == "derive_phi.t_grid") {
        e.t_grid = parse_double_list(key, value);
    } else if (key == "solve.eps") {
        e.solve.eps = parse_double(key, value);
        if (!(e.solve.eps > 0.0)) bad_value(key, "must be positive");
    } else if (key == "solve.max_iter") {
        e.solve.max_iter = parse_index(key, value);
        if (e.solve.max_iter == 0) bad_value(key, "must be positive");
    } else if (key == "solve.starts") {
        e.solve.starts = parse_point_list(key, value);
    } else if (key == "verify.condition") {
        if (value != "aF" && value != "phi" && value != "strict" && value != "nonexpansive")
            bad_value(key, "unknown condition '" + value + "'");
        e.verify.condition = value;
    } else if (key == "verify.mode") {
        if (value != "exhaustive" && value != "sampled")
            bad_value(key, "unknown mode '" + value + "'");
        e.verify.mode = value;
    } else if (key == "verify.samples") {
        e.verify.samples = parse_index(key, value);
        if (e.verify.samples == 0) bad_value(key, "must be positive");
    } else if (key == "verify.seed") {
        e.verify.seed = parse_index(key, value);
    } else if (key == "verify.box_lo") {
        e.verify.box_lo = parse_double_list(key, value);
    } else if (key == "verify.box_hi") {
        e.verify.box_hi = parse_double_list(key, value);
    } else if (key == "witness.trace_file") {
        e.witness.trace_file = value;
    } else if (key == "witness.eta") {
        e.witness.eta = parse_double(key, value);
        if (!(*e.witness.eta > 0.0)) bad_value(key, "must be positive");
    } else if (key == "witness.delta") {
        e.witness.delta = parse_double_list(key, value);
    } else if (key == "witness.j_count") {
        e.witness.j_count = parse_index(key, value);
    } else if (key == "output.iterates_csv") {
        e.iterates_csv = value;
    } else {
        throw ConfigSemanticError("unknown config key: " + key);
    }
}

} // namespace

MultiConfig parse_config_text(const std::string& text) {
    MultiConfig cfg;
    std::map<std::string, ExperimentConfig> experiments;
    std::set<std::string> seen;

    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigParseError("line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = unquote(trim(line.substr(eq + 1)));
        if (key.empty())
            throw ConfigParseError("line " + std::to_string(lineno) + ": empty key");
        if (value.empty())
            throw ConfigParseError("line " + std::to_string(lineno) + ": empty value for " + key);
        if (!seen.insert(key).second)
            throw ConfigSemanticError("duplicate config key: " + key);

        if (key == "seed") {
            cfg.seed = parse_index(key, value);
            continue;
        }
        if (key == "output.summary") {
            cfg.summary_file = value;
            continue;
        }

        std::string id = "default";
        std::string rest = key;
        if (key.rfind("experiment.", 0) == 0) {
            const auto dot = key.find('.', std::string("experiment.").size());
            if (dot == std::string::npos)
                throw ConfigSemanticError("malformed experiment key: " + key);
            id = key.substr(std::string("experiment.").size(),
                            dot - std::string("experiment.").size());
            rest = key.substr(dot + 1);
            if (id.empty()) throw ConfigSemanticError("empty experiment id in key: " + key);
        }
        auto& e = experiments[id];
        e.id = id;
        apply_key(e, rest, value);
    }

    if (experiments.empty())
        throw ConfigSemanticError("config declares no experiment settings");
    if (experiments.size() > 1 && experiments.count("default"))
        throw ConfigSemanticError(
            "mix of experiment-prefixed and unprefixed keys; prefix all experiments");

    std::set<std::string> csv_names;
    for (auto& [id, e] : experiments) {
        if (e.pipeline.empty())
            throw ConfigSemanticError("experiment '" + id + "': pipeline is required");
        if (e.iterates_csv && !csv_names.insert(*e.iterates_csv).second)
            throw ConfigSemanticError("experiment '" + id + "': duplicate iterates_csv name");
        validate_experiment(e);
        cfg.experiments.push_back(std::move(e));
    }
    return cfg;
}

MultiConfig load_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open config file: " + file.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

WardowskiFunction build_wardowski(const FSpec& spec) {
    try {
        if (spec.family == "log") return make_log();
        if (spec.family == "log_poly") return make_log_poly(spec.alpha, spec.beta, spec.gamma);
        if (spec.family == "neg_power") return make_neg_power(spec.delta);
        if (spec.family == "step_log") return make_step_log(spec.jump, spec.at);
    } catch (const InvalidParameter& e) {
        throw ConfigSemanticError(std::string("config field F: ") + e.what());
    }
    throw ConfigSemanticError("config field F.family: unknown family '" + spec.family + "'");
}

void validate_experiment(const ExperimentConfig& cfg) {
    const std::string where = "experiment '" + cfg.id + "': ";
    auto in_pipeline = [&](const std::string& stage) {
        return std::find(cfg.pipeline.begin(), cfg.pipeline.end(), stage) != cfg.pipeline.end();
    };

    if (cfg.space.kind == SpaceSpec::Kind::FiniteMatrix && cfg.space.matrix_file.empty())
        throw ConfigSemanticError(where + "space.matrix_file is required for finite_matrix");
    if (cfg.space.kind == SpaceSpec::Kind::FiniteMatrix && cfg.map.kind != MapSpec::Kind::Table)
        throw ConfigSemanticError(where + "finite_matrix spaces need map.kind = table");
    if (cfg.map.kind == MapSpec::Kind::Table && cfg.map.table.empty())
        throw ConfigSemanticError(where + "map.table is required for table maps");

    const bool needs_F = in_pipeline("derive-phi") ||
                         (in_pipeline("verify") &&
                          (cfg.verify.condition == "aF" ||
                           (cfg.verify.condition == "phi" && cfg.phi.kind == PhiSpec::Kind::Derived)));
    if (needs_F && !cfg.F)
        throw ConfigSemanticError(where + "F.family is required by the configured pipeline");
    if (needs_F && !cfg.a)
        throw ConfigSemanticError(where + "contraction.a is required by the configured pipeline");
    if (cfg.F) build_wardowski(*cfg.F);  // surface parameter errors now

    if ((in_pipeline("solve") || in_pipeline("classify")) && cfg.solve.starts.empty())
        throw ConfigSemanticError(where + "solve.starts is required by the configured pipeline");
    if (in_pipeline("classify") && cfg.solve.starts.size() < 2)
        throw ConfigSemanticError(where + "classify needs at least two solve.starts");
    if (in_pipeline("derive-phi") && cfg.t_grid.empty())
        throw ConfigSemanticError(where + "derive_phi.t_grid is required by the configured pipeline");
    if (in_pipeline("witness")) {
        if (cfg.witness.trace_file.empty())
            throw ConfigSemanticError(where + "witness.trace_file is required");
        if (cfg.witness.eta && !(*cfg.witness.eta > 0.0))
            throw ConfigSemanticError(where + "witness.eta must be positive");
    }
    if (in_pipeline("verify")) {
        if (cfg.verify.mode == "exhaustive" && cfg.space.kind != SpaceSpec::Kind::FiniteMatrix)
            throw ConfigSemanticError(where + "verify.mode exhaustive needs a finite_matrix space");
        if (cfg.verify.box_lo.size() != cfg.verify.box_hi.size())
            throw ConfigSemanticError(where + "verify.box_lo and verify.box_hi sizes differ");
    }
    for (const auto& p : cfg.solve.starts) {
        const std::size_t want = cfg.space.kind == SpaceSpec::Kind::Euclidean ? cfg.space.dim : 1;
        if (p.size() != want)
            throw ConfigSemanticError(where + "solve.starts entry has wrong dimension");
    }
}

} // namespace wardowski
