#include "wardowski/report.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <functional>
#include <future>
#include <random>
#include <sstream>
#include <variant>

#include "wardowski/log.hpp"
#include "wardowski/solver.hpp"
#include "wardowski/verifier.hpp"

namespace wardowski {

using nlohmann::json;

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json point_json(double p) { return p; }
json point_json(std::size_t p) { return p; }
json point_json(const std::vector<double>& p) { return p; }

std::string point_csv(double p) { return fmt_double(p); }
std::string point_csv(std::size_t p) { return std::to_string(p); }
std::string point_csv(const std::vector<double>& p) {
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? ";" : "") + fmt_double(p[i]);
    return s;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write: " + path.string());
    out << content;
    if (!out) throw IoError("write failed: " + path.string());
}

std::string csv_name(const ExperimentConfig& cfg, const std::string& base) {
    return cfg.id == "default" ? base : cfg.id + "." + base;
}

std::vector<std::vector<double>> load_points_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw IoError("cannot open trace file: " + file.string());
    std::vector<std::vector<double>> pts;
    std::string line;
    while (std::getline(in, line)) {
        for (char& c : line)
            if (c == ',' || c == '\t') c = ' ';
        std::stringstream ss(line);
        std::vector<double> row;
        double v;
        while (ss >> v) row.push_back(v);
        if (row.empty()) continue;
        if (!pts.empty() && row.size() != pts.front().size())
            throw IoError("trace file: inconsistent column count: " + file.string());
        pts.push_back(std::move(row));
    }
    if (pts.size() < 2) throw IoError("trace file: need at least two points: " + file.string());
    return pts;
}

json mode_json(const CheckMode& m) {
    json j;
    j["kind"] = m.kind == CheckMode::Kind::Exhaustive ? "exhaustive" : "sampled";
    j["count"] = m.count;
    if (m.kind == CheckMode::Kind::Sampled) j["seed"] = m.seed;
    return j;
}

template <typename P>
json contraction_json(const ContractionReport<P>& rep) {
    json j;
    j["condition"] = to_string(rep.condition);
    j["mode"] = mode_json(rep.mode);
    j["verdict"] = rep.holds ? "holds" : "fails";
    j["pairs_checked"] = rep.pairs_checked;
    if (rep.witness) {
        j["witness"] = {{"x", point_json(rep.witness->first)},
                        {"y", point_json(rep.witness->second)},
                        {"lhs", rep.witness_lhs},
                        {"rhs", rep.witness_rhs}};
    } else {
        j["witness"] = nullptr;
    }
    return j;
}

json tele_json(const TeleSumCertificate& c) {
    json j;
    j["partial"] = c.partial;
    j["ratio"] = c.ratio ? json(*c.ratio) : json(nullptr);
    j["tail_estimate"] = c.tail_estimate ? json(*c.tail_estimate) : json(nullptr);
    return j;
}

json tail_json(const TailBoundCertificate& c) {
    json j;
    j["k"] = c.k;
    j["beta"] = c.beta;
    j["a"] = c.a;
    j["from_rank"] = c.from_rank;
    j["rho_bound_holds"] = c.rho_bound_holds;
    j["trivial"] = c.trivial;
    j["tail_from"] = c.tail_from;
    j["tail_sum_bound"] = c.tail_sum_bound;
    return j;
}

struct ExperimentContext {
    const ExperimentConfig& cfg;
    std::uint64_t seed;
    std::filesystem::path out_dir;
    std::optional<WardowskiFunction> F;
};

std::optional<ComparisonFunction> make_phi(const ExperimentContext& ctx) {
    if (ctx.cfg.phi.kind == PhiSpec::Kind::Linear)
        return linear_comparison(ctx.cfg.phi.alpha);
    if (ctx.F && ctx.cfg.a) return derived_comparison(*ctx.F, *ctx.cfg.a);
    return std::nullopt;
}

json derive_phi_stage(const ExperimentContext& ctx) {
    const auto& cfg = ctx.cfg;
    json rows = json::array();
    std::string csv = "t,phi,self_inequality_certified,budget_exhausted\n";
    const bool certified = ctx.F->left_continuous;
    for (double t : cfg.t_grid) {
        if (!(t >= 0.0)) throw ConfigSemanticError("config field derive_phi.t_grid: negative t");
        const auto r = derive_phi_detailed(*ctx.F, *cfg.a, t);
        rows.push_back({{"t", r.t},
                        {"phi", r.phi},
                        {"budget_exhausted", r.budget_exhausted}});
        csv += fmt_double(t) + "," + fmt_double(r.phi) + "," + std::to_string(int(certified)) +
               "," + std::to_string(int(r.budget_exhausted)) + "\n";
    }
    write_file(ctx.out_dir / csv_name(cfg, "derive_phi.csv"), csv);
    json j;
    j["F"] = ctx.F->name;
    j["a"] = *cfg.a;
    j["self_inequality_certified"] = certified;
    j["rows"] = rows;
    j["csv"] = csv_name(cfg, "derive_phi.csv");
    return j;
}

template <MetricSpaceLike S>
void write_iterates_csv(const ExperimentContext& ctx, const S&, const PicardRun<typename S::Point>& run,
                        const std::optional<TailBoundCertificate>& tail, std::size_t run_index,
                        std::size_t run_count) {
    if (!ctx.cfg.iterates_csv) return;
    std::string name = *ctx.cfg.iterates_csv;
    if (run_count > 1) {
        const auto dot = name.rfind('.');
        const std::string idx = "." + std::to_string(run_index);
        name = dot == std::string::npos ? name + idx
                                        : name.substr(0, dot) + idx + name.substr(dot);
    }
    std::string csv = "n,x,rho,F_rho,tele_partial,tail_bound\n";
    double partial = 0.0;
    for (std::size_t n = 0; n < run.trace.points.size(); ++n) {
        csv += std::to_string(n) + "," + point_csv(run.trace.points[n]);
        if (n < run.trace.rho.size()) {
            const double rho = run.trace.rho[n];
            partial += rho;
            csv += "," + fmt_double(rho);
            if (ctx.F) {
                const ExtReal f = ctx.F->eval(rho);
                csv += "," + (f.is_finite() ? fmt_double(f.finite_value()) : std::string("-inf"));
            } else {
                csv += ",";
            }
            csv += "," + fmt_double(partial);
            if (tail && !tail->trivial && n >= std::max<std::size_t>(tail->from_rank, 1) &&
                rho > 0.0) {
                const double bound =
                    std::pow(tail->beta / (tail->a * static_cast<double>(n)), 1.0 / tail->k);
                csv += "," + fmt_double(bound);
            } else {
                csv += ",";
            }
        } else {
            csv += ",,,,";
        }
        csv += "\n";
    }
    write_file(ctx.out_dir / csv_name(ctx.cfg, name), csv);
}

template <MetricSpaceLike S>
json solve_stage(const ExperimentContext& ctx, const S& space,
                 const SelfMap<typename S::Point>& T,
                 const std::vector<typename S::Point>& starts) {
    const auto& cfg = ctx.cfg;
    PicardOptions opt;
    opt.eps = cfg.solve.eps;
    opt.max_iter = cfg.solve.max_iter;

    json runs = json::array();
    for (std::size_t i = 0; i < starts.size(); ++i) {
        auto run = picard_iterate(space, T, starts[i], opt);
        json r;
        r["start"] = point_json(starts[i]);
        r["status"] = to_string(run.status);
        r["iterations"] = run.trace.rho.size();
        r["limit"] = run.limit ? point_json(*run.limit) : json(nullptr);
        r["fixed_index"] = run.fixed_index ? json(*run.fixed_index) : json(nullptr);
        r["rho_first"] = run.trace.rho.empty() ? json(nullptr) : json(run.trace.rho.front());
        r["rho_last"] = run.trace.rho.empty() ? json(nullptr) : json(run.trace.rho.back());

        r["tele"] = tele_json(telescopic_certificate(run));

        if (ctx.F && cfg.a) {
            try {
                const double rho0 = run.trace.rho.empty() ? 0.0 : run.trace.rho.front();
                const double bound =
                    hyers_ulam_bound(derived_comparison(*ctx.F, *cfg.a), rho0, {}, 50'000);
                r["hyers_ulam"] = {{"residual", rho0}, {"bound", bound}};
            } catch (const SeriesNotConvergent&) {
                r["hyers_ulam"] = nullptr;
            }
        } else {
            r["hyers_ulam"] = nullptr;
        }

        std::optional<TailBoundCertificate> tail;
        if (ctx.F && cfg.a && cfg.k) {
            try {
                tail = tail_bound_regular(run, *ctx.F, *cfg.a, *cfg.k, cfg.tail_beta);
                r["tail_bound"] = tail_json(*tail);
            } catch (const RankNotFound& e) {
                r["tail_bound"] = {{"error", e.what()}};
            }
        } else {
            r["tail_bound"] = nullptr;
        }

        write_iterates_csv(ctx, space, run, tail, i, starts.size());
        runs.push_back(std::move(r));
    }
    json j;
    j["eps"] = opt.eps;
    j["max_iter"] = opt.max_iter;
    j["runs"] = runs;
    return j;
}

template <MetricSpaceLike S>
json classify_stage(const ExperimentContext& ctx, const S& space,
                    const SelfMap<typename S::Point>& T,
                    const std::vector<typename S::Point>& starts) {
    PicardOptions opt;
    opt.eps = ctx.cfg.solve.eps;
    opt.max_iter = ctx.cfg.solve.max_iter;
    const auto cls =
        classify_operator(space, T, std::span<const typename S::Point>(starts), opt);
    json j;
    j["picard_evidence"] = cls.picard_evidence;
    j["strong_evidence"] = cls.strong_evidence;
    j["globally_strong_evidence"] = cls.globally_strong_evidence;
    j["tele_evidence"] = cls.tele_evidence;
    json runs = json::array();
    for (const auto& run : cls.runs)
        runs.push_back({{"status", to_string(run.status)},
                        {"limit", run.limit ? point_json(*run.limit) : json(nullptr)}});
    j["runs"] = runs;
    return j;
}

template <MetricSpaceLike S>
json verify_stage(const ExperimentContext& ctx, const S& space,
                  const SelfMap<typename S::Point>& T,
                  std::vector<std::pair<typename S::Point, typename S::Point>> pairs,
                  CheckMode mode) {
    const auto& cfg = ctx.cfg;
    const auto span_pairs =
        std::span<const std::pair<typename S::Point, typename S::Point>>(pairs);
    if (cfg.verify.condition == "aF")
        return contraction_json(check_aF_contractive(space, T, *ctx.F, *cfg.a, span_pairs, mode));
    if (cfg.verify.condition == "phi") {
        auto phi = make_phi(ctx);
        if (!phi)
            throw ConfigSemanticError("experiment '" + cfg.id +
                                      "': phi verification needs phi.kind=linear or F + contraction.a");
        return contraction_json(check_phi_contractive(space, T, *phi, span_pairs, mode));
    }
    auto [strict, nonexp] = check_strict_and_nonexpansive(space, T, span_pairs, mode);
    return contraction_json(cfg.verify.condition == "strict" ? strict : nonexp);
}

json witness_stage(const ExperimentContext& ctx) {
    const auto& w = ctx.cfg.witness;
    const auto pts = load_points_csv(w.trace_file);

    json j;
    // When only delta is given, place eta in the widest discontinuity-free
    // gap between the trace's tail step and its largest pair distance.
    auto resolve_eta = [&](const auto& space, const auto& trace) -> double {
        if (w.eta) {
            j["eta_proposed"] = false;
            return *w.eta;
        }
        double lo = trace.rho.back();
        if (!(lo > 0.0))
            for (double r : trace.rho)
                if (r > 0.0 && (lo <= 0.0 || r < lo)) lo = r;
        double hi = 0.0;
        for (std::size_t m = 0; m + 1 < trace.points.size(); ++m)
            for (std::size_t n = m + 1; n < trace.points.size(); ++n)
                hi = std::max(hi, space.dist(trace.points[m], trace.points[n]));
        if (!(lo > 0.0) || !(lo < hi))
            throw InvalidParameter("witness: trace scale too degenerate to propose eta");
        const double eta = propose_eta(std::span<const double>(w.delta), lo, hi);
        j["eta_proposed"] = true;
        return eta;
    };

    auto fill = [&](const WitnessExtraction& ex) {
        j["eta"] = ex.eta;
        j["j_eta"] = ex.j_eta ? json(*ex.j_eta) : json(nullptr);
        j["j_extracted"] = ex.m_seq.size();
        const std::size_t head = std::min<std::size_t>(8, ex.m_seq.size());
        json mh = json::array(), nh = json::array();
        for (std::size_t i = 0; i < head; ++i) {
            mh.push_back(ex.m_seq[i]);
            nh.push_back(ex.n_seq[i]);
        }
        j["m_head"] = mh;
        j["n_head"] = nh;
        j["overshoot_all"] = ex.overshoot_all;
        j["gap_all"] = ex.gap_all;
        j["trend_overshoot"] = ex.trend_overshoot;
        json shifted;
        for (std::size_t p = 0; p < 2; ++p)
            for (std::size_t q = 0; q < 2; ++q) {
                const std::string key = "p" + std::to_string(p) + "q" + std::to_string(q);
                shifted[key] =
                    ex.trend_shifted[p][q] ? json(*ex.trend_shifted[p][q]) : json(nullptr);
            }
        j["trend_shifted"] = shifted;
    };

    if (pts.front().size() == 1) {
        RealLine line;
        std::vector<double> xs;
        xs.reserve(pts.size());
        for (const auto& p : pts) xs.push_back(p[0]);
        const auto trace = make_trace(line, std::move(xs));
        const double eta = resolve_eta(line, trace);
        fill(extract_witness(line, trace, eta, std::span<const double>(w.delta), w.j_count));
    } else {
        EuclideanSpace space(pts.front().size());
        const auto trace = make_trace(space, pts);
        const double eta = resolve_eta(space, trace);
        fill(extract_witness(space, trace, eta, std::span<const double>(w.delta), w.j_count));
    }
    return j;
}

template <MetricSpaceLike S>
json run_stages(const ExperimentContext& ctx, const S& space,
                const SelfMap<typename S::Point>& T,
                const std::vector<typename S::Point>& starts,
                std::vector<std::pair<typename S::Point, typename S::Point>> verify_pairs,
                CheckMode mode) {
    json out;
    for (const auto& stage : ctx.cfg.pipeline) {
        log_debug("experiment " + ctx.cfg.id + ": stage " + stage);
        if (stage == "verify")
            out["verify"] = verify_stage(ctx, space, T, verify_pairs, mode);
        else if (stage == "derive-phi")
            out["derive_phi"] = derive_phi_stage(ctx);
        else if (stage == "solve")
            out["solve"] = solve_stage(ctx, space, T, starts);
        else if (stage == "classify")
            out["classify"] = classify_stage(ctx, space, T, starts);
        else if (stage == "witness")
            out["witness"] = witness_stage(ctx);
    }
    return out;
}

json config_echo(const ExperimentConfig& cfg) {
    json j;
    j["pipeline"] = cfg.pipeline;
    j["space"] = cfg.space.kind == SpaceSpec::Kind::RealLine    ? "real_line"
                 : cfg.space.kind == SpaceSpec::Kind::Euclidean ? "euclidean"
                                                                : "finite_matrix";
    if (cfg.F) j["F"] = cfg.F->family;
    if (cfg.a) j["a"] = *cfg.a;
    if (cfg.k) j["k"] = *cfg.k;
    j["eps"] = cfg.solve.eps;
    j["max_iter"] = cfg.solve.max_iter;
    return j;
}

} // namespace

json run_experiment(const ExperimentConfig& cfg, std::uint64_t seed,
                    const std::filesystem::path& out_dir) {
    validate_experiment(cfg);
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + out_dir.string());
    ExperimentContext ctx{cfg, seed, out_dir, std::nullopt};
    if (cfg.F) ctx.F = build_wardowski(*cfg.F);
    const std::uint64_t verify_seed = cfg.verify.seed.value_or(seed);

    json report;
    report["config"] = config_echo(cfg);

    switch (cfg.space.kind) {
        case SpaceSpec::Kind::RealLine: {
            RealLine space;
            if (cfg.map.kind != MapSpec::Kind::Affine)
                throw ConfigSemanticError("experiment '" + cfg.id +
                                          "': real_line spaces need map.kind = affine");
            if (cfg.map.offset.size() != 1)
                throw ConfigSemanticError("experiment '" + cfg.id +
                                          "': map.offset must have one entry on the line");
            const double s = cfg.map.scale, o = cfg.map.offset[0];
            SelfMap<double> T{[s, o](const double& x) { return s * x + o; }, "affine"};
            std::vector<double> starts;
            for (const auto& p : cfg.solve.starts) starts.push_back(p[0]);
            std::vector<std::pair<double, double>> pairs;
            if (std::find(cfg.pipeline.begin(), cfg.pipeline.end(), "verify") != cfg.pipeline.end())
                pairs = sample_pairs_box(cfg.verify.box_lo[0], cfg.verify.box_hi[0],
                                         cfg.verify.samples, verify_seed);
            report.update(run_stages(ctx, space, T, starts, std::move(pairs),
                                     CheckMode::sampled(cfg.verify.samples, verify_seed)));
            break;
        }
        case SpaceSpec::Kind::Euclidean: {
            EuclideanSpace space(cfg.space.dim);
            if (cfg.map.kind != MapSpec::Kind::Affine)
                throw ConfigSemanticError("experiment '" + cfg.id +
                                          "': euclidean spaces need map.kind = affine");
            if (cfg.map.offset.size() != cfg.space.dim)
                throw ConfigSemanticError("experiment '" + cfg.id +
                                          "': map.offset must match space.dim");
            const double s = cfg.map.scale;
            const std::vector<double> o = cfg.map.offset;
            SelfMap<std::vector<double>> T{[s, o](const std::vector<double>& x) {
                                               std::vector<double> y(x.size());
                                               for (std::size_t i = 0; i < x.size(); ++i)
                                                   y[i] = s * x[i] + o[i];
                                               return y;
                                           },
                                           "affine"};
            std::vector<std::vector<double>> starts = cfg.solve.starts;
            std::vector<std::pair<std::vector<double>, std::vector<double>>> pairs;
            if (std::find(cfg.pipeline.begin(), cfg.pipeline.end(), "verify") !=
                cfg.pipeline.end()) {
                if (cfg.verify.box_lo.size() != cfg.space.dim)
                    throw ConfigSemanticError("experiment '" + cfg.id +
                                              "': verify box must match space.dim");
                pairs = sample_pairs_box(cfg.verify.box_lo, cfg.verify.box_hi,
                                         cfg.verify.samples, verify_seed);
            }
            report.update(run_stages(ctx, space, T, starts, std::move(pairs),
                                     CheckMode::sampled(cfg.verify.samples, verify_seed)));
            break;
        }
        case SpaceSpec::Kind::FiniteMatrix: {
            FiniteMetricSpace space = FiniteMetricSpace::load(cfg.space.matrix_file);
            const auto& table = cfg.map.table;
            if (table.size() != space.size())
                throw ConfigSemanticError("experiment '" + cfg.id +
                                          "': map.table size must equal the space size");
            for (std::size_t t : table)
                if (t >= space.size())
                    throw ConfigSemanticError("experiment '" + cfg.id +
                                              "': map.table entry out of range");
            SelfMap<std::size_t> T{[table](const std::size_t& i) { return table[i]; }, "table"};
            std::vector<std::size_t> starts;
            for (const auto& p : cfg.solve.starts) {
                if (p[0] < 0 || p[0] != static_cast<double>(static_cast<std::size_t>(p[0])) ||
                    static_cast<std::size_t>(p[0]) >= space.size())
                    throw ConfigSemanticError("experiment '" + cfg.id +
                                              "': solve.starts must be point indices");
                starts.push_back(static_cast<std::size_t>(p[0]));
            }
            std::vector<std::pair<std::size_t, std::size_t>> pairs;
            CheckMode mode = CheckMode::exhaustive(0);
            if (cfg.verify.mode == "exhaustive") {
                pairs = exhaustive_pairs(space);
                mode = CheckMode::exhaustive(pairs.size());
            } else {
                std::mt19937_64 rng(verify_seed);
                std::uniform_int_distribution<std::size_t> U(0, space.size() - 1);
                for (std::size_t i = 0; i < cfg.verify.samples; ++i)
                    pairs.emplace_back(U(rng), U(rng));
                mode = CheckMode::sampled(cfg.verify.samples, verify_seed);
            }
            report.update(run_stages(ctx, space, T, starts, std::move(pairs), mode));
            break;
        }
    }
    return report;
}

json run_config(const MultiConfig& cfg, const std::filesystem::path& out_dir) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory: " + out_dir.string());

    json experiments;
    if (cfg.experiments.size() == 1) {
        experiments[cfg.experiments.front().id] =
            run_experiment(cfg.experiments.front(), cfg.seed, out_dir);
    } else {
        std::vector<std::future<json>> futs;
        futs.reserve(cfg.experiments.size());
        for (const auto& e : cfg.experiments)
            futs.push_back(std::async(std::launch::async, [&e, &cfg, &out_dir] {
                return run_experiment(e, cfg.seed, out_dir);
            }));
        for (std::size_t i = 0; i < cfg.experiments.size(); ++i)
            experiments[cfg.experiments[i].id] = futs[i].get();
    }

    json summary;
    summary["seed"] = cfg.seed;
    summary["experiments"] = experiments;

    write_file(out_dir / cfg.summary_file, summary.dump(2) + "\n");

    const auto now = std::chrono::system_clock::now();
    const auto t = std::chrono::system_clock::to_time_t(now);
    char stamp[64];
    std::strftime(stamp, sizeof(stamp), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    write_file(out_dir / "meta.txt",
               std::string("generated_at: ") + stamp + "\nsummary: " + cfg.summary_file + "\n");

    log_info("wrote " + (out_dir / cfg.summary_file).string());
    return summary;
}

std::string json_to_csv(const nlohmann::json& j) {
    std::string out = "key,value\n";
    std::function<void(const nlohmann::json&, const std::string&)> walk =
        [&](const nlohmann::json& node, const std::string& prefix) {
            if (node.is_object()) {
                for (auto it = node.begin(); it != node.end(); ++it)
                    walk(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
            } else if (node.is_array()) {
                std::size_t i = 0;
                for (const auto& v : node) walk(v, prefix + "." + std::to_string(i++));
            } else {
                std::string v = node.dump();
                if (v.find(',') != std::string::npos) v = "\"" + v + "\"";
                out += prefix + "," + v + "\n";
            }
        };
    walk(j, "");
    return out;
}

} // namespace wardowski
