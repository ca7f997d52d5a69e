// Command-line front end: simulate | span | classify | controlset | example | audit.

#include <CLI11.hpp>

#include "ivl/classify.hpp"
#include "ivl/control_sets.hpp"
#include "ivl/examples.hpp"
#include "ivl/io.hpp"
#include "ivl/report.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace ivl;

namespace {

std::string sanitize(const std::string& raw) {
    std::string out;
    for (char c : raw) out.push_back((std::isalnum(static_cast<unsigned char>(c)) != 0) ? c : '_');
    return out;
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

StatePoint parse_state(const std::string& text, bool interval_system) {
    if (interval_system) return Scalar::exact(parse_rat(text));
    auto open = text.find('(');
    auto close = text.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close < open)
        throw ParseError("symbolic point must look like prefix(cycle): " + text);
    return SymbolicPoint(text.substr(0, open), text.substr(open + 1, close - open - 1));
}

Schedule parse_schedule(const std::string& text) {
    auto open = text.find('(');
    Word prefix, cycle;
    std::string prefix_text = open == std::string::npos ? text : text.substr(0, open);
    for (char c : prefix_text) {
        if (c < '0' || c > '9') throw ParseError("schedule symbols must be digits: " + text);
        prefix.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    if (open != std::string::npos) {
        auto close = text.rfind(')');
        if (close == std::string::npos || close < open)
            throw ParseError("unbalanced cycle in schedule: " + text);
        for (char c : text.substr(open + 1, close - open - 1)) {
            if (c < '0' || c > '9') throw ParseError("schedule symbols must be digits: " + text);
            cycle.push_back(static_cast<std::uint8_t>(c - '0'));
        }
    }
    if (cycle.empty()) return Schedule::finite(prefix);
    return Schedule::periodic(prefix, cycle);
}

TargetGrid make_grid(const ExampleBundle& bundle, const RunConfig& cfg) {
    if (bundle.q.is_interval())
        return TargetGrid::intervals(bundle.q.interval_union(), cfg.grid_step);
    return TargetGrid::blocks(bundle.q.block_language(), cfg.block_depth, example_block_tail());
}

SearchBudget make_budget(const ExampleBundle& bundle, const RunConfig& cfg) {
    SearchBudget sb;
    for (int k = 4; k <= 10; ++k) sb.delta_ladder.push_back(Rat(1, 1 << k));
    if (!cfg.delta_ladder.empty()) sb.delta_ladder = cfg.delta_ladder;
    sb.params.horizon = cfg.horizon;
    sb.params.burn_in = cfg.burn_in;
    sb.params.window = cfg.window;
    sb.params.density_horizon = cfg.density_horizon;
    sb.grid_h = cfg.grid_step;
    if (bundle.system.is_interval()) {
        sb.candidates = default_candidate_pool(bundle.system.alphabet_size(), cfg.splice_max);
        if (bundle.id == ExampleId::A2_EIM_not_EI) {
            // Seed the mean-criterion construction at 3/8 for each tolerance:
            // enough leading zeros that the single excursion stays below eps,
            // with the matching construction delta appended to the ladder.
            for (const Rat& eps : cfg.epsilons) {
                Rat need = 1 / (2 * eps);
                long n = static_cast<long>(rat_num(need) / rat_den(need)) + 1;
                sb.candidates.push_back(excursion_splice_schedule(static_cast<std::size_t>(n)));
                sb.delta_ladder.push_back(excursion_splice_delta(static_cast<std::size_t>(n)));
            }
        }
    } else {
        sb.candidates = block_candidate_pool(4);
        sb.symbolic_base = make_grid(bundle, cfg).points;
    }
    return sb;
}

fs::path cache_dir(const RunConfig& cfg) {
    if (const char* env = std::getenv("IVL_CACHE_DIR")) return fs::path(env);
    return fs::path(cfg.out_dir);
}

int cmd_simulate(const RunConfig& cfg, const std::string& x_text,
                 const std::string& schedule_text, std::size_t n) {
    auto id = parse_example(cfg.example);
    if (!id) throw ParseError("unknown example: " + cfg.example);
    ExampleBundle bundle = build_example(*id);
    StatePoint x = parse_state(x_text, bundle.system.is_interval());
    Schedule w = parse_schedule(schedule_text);

    std::ostringstream csv;
    csv << csv_row({"k", "state", "dist_to_Q", "running_mean"});
    StatePoint state = x;
    Scalar sum = Scalar::exact(Rat(0));
    for (std::size_t k = 0; k <= n; ++k) {
        Scalar d = bundle.q.distance(state);
        sum = sum + d;
        Scalar mean = sum.div_int(static_cast<long>(k) + 1);
        csv << csv_row({std::to_string(k), state_to_string(state), scalar_csv(d),
                        scalar_csv(mean)});
        if (k < n) state = bundle.system.step(state, w.at(k));
    }
    fs::path out = fs::path(cfg.out_dir) / ("simulate_" + sanitize(cfg.example) + ".csv");
    write_file(out, csv.str());
    std::cout << "wrote " << out.string() << "\n";
    return 0;
}

int cmd_span(const RunConfig& cfg) {
    auto id = parse_example(cfg.example);
    if (!id) throw ParseError("unknown example: " + cfg.example);
    ExampleBundle bundle = build_example(*id);
    TargetGrid grid = make_grid(bundle, cfg);
    KernelMode mode = cfg.mode == "mean" ? KernelMode::Mean : KernelMode::Plain;
    std::string hash = config_hash(cfg);

    for (const Rat& eps : cfg.epsilons) {
        fs::path cache_path = cache_dir(cfg) / ("span_" + sanitize(cfg.example) + "_" +
                                                sanitize(rat_to_string(eps)) + "_" + cfg.mode +
                                                ".ivlk");
        SpanCache cache;
        bool reused = false;
        if (auto loaded = load_span_cache(cache_path.string())) {
            if (loaded->config_hash == hash) {
                cache = std::move(*loaded);
                reused = true;
            }
        }
        if (!reused) {
            EnumerationBudget budget;
            cache.config_hash = hash;
            cache.profile =
                complexity_profile(bundle.system, bundle.q, grid, eps, cfg.n_max, mode, budget,
                                   cfg.exact_threshold, cfg.jobs, &cache.table);
            fs::create_directories(cache_path.parent_path().empty() ? "." : cache_path.parent_path());
            save_span_cache(cache_path.string(), cache);
        }
        fs::path csv_path = fs::path(cfg.out_dir) / ("span_" + sanitize(cfg.example) + "_" +
                                                     sanitize(rat_to_string(eps)) + "_" +
                                                     cfg.mode + ".csv");
        write_file(csv_path, render_profile_csv(cache.profile));
        BoundedComplexityVerdict verdict = bounded_complexity_verdict(cache.profile);
        std::cout << "eps=" << rat_to_string(eps) << (reused ? " [cache]" : "") << "\n"
                  << render_profile(cache.profile, verdict);
        if (cache.profile.entries.size() >= 4) {
            EntropyEstimate est = entropy_estimate(cache.profile);
            std::cout << "entropy estimate at fixed eps: tail slope " << est.tail_slope
                      << (est.exact_only ? "" : " (bound-only)") << "\n";
        }
    }
    return 0;
}

struct ClassifyArtifacts {
    WitnessFile witnesses;
    std::string report;
    bool audit_consistent = true;
};

ClassifyArtifacts run_classification(const RunConfig& cfg) {
    auto id = parse_example(cfg.example);
    if (!id) throw ParseError("unknown example: " + cfg.example);
    ExampleBundle bundle = build_example(*id);
    TargetGrid grid = make_grid(bundle, cfg);
    SearchBudget budget = make_budget(bundle, cfg);

    ClassifyArtifacts art;
    std::ostringstream report;
    for (const std::string& notion_text : cfg.notions) {
        auto notion = parse_notion(notion_text);
        if (!notion) throw ParseError("unknown notion: " + notion_text);
        for (const Rat& eps : cfg.epsilons) {
            SetClassification sc = classify_set(bundle.system, bundle.q, grid, *notion, eps,
                                                budget, cfg.delta0, cfg.refute_horizon);
            report << render_set_classification(grid, sc, *notion, eps);
            for (std::size_t i = 0; i < grid.points.size(); ++i) {
                const Verdict& v = sc.verdicts[i];
                VerdictRecord rec;
                rec.system = cfg.example;
                rec.point = state_to_string(grid.points[i]);
                rec.notion = *notion;
                rec.kind = v.kind;
                rec.eps = eps;
                rec.delta = v.kind == Verdict::Kind::Certified ? v.certificate->delta
                            : v.kind == Verdict::Kind::RefutedAtResolution
                                ? v.refutation->delta0
                                : Rat(0);
                rec.horizon = v.kind == Verdict::Kind::RefutedAtResolution
                                  ? v.refutation->horizon
                                  : budget.params.horizon;
                rec.source = "classify";
                art.witnesses.records.push_back(rec);
                std::string label = cfg.example + ":" + notion_name(*notion) + ":" +
                                    state_to_string(grid.points[i]);
                if (v.kind == Verdict::Kind::Certified)
                    art.witnesses.certificates.emplace_back(label, *v.certificate);
                if (v.kind == Verdict::Kind::RefutedAtResolution)
                    art.witnesses.refutations.emplace_back(label, *v.refutation);
            }
        }
    }
    AuditReport audit = implication_audit(art.witnesses.records);
    report << render_audit(audit, "implication audit");
    art.audit_consistent = audit.consistent();
    art.report = report.str();
    return art;
}

int cmd_classify(const RunConfig& cfg) {
    ClassifyArtifacts art = run_classification(cfg);
    fs::path report_path = fs::path(cfg.out_dir) / ("classify_" + sanitize(cfg.example) + ".txt");
    fs::path witness_path = fs::path(cfg.out_dir) / ("classify_" + sanitize(cfg.example) + ".ivlw");
    write_file(report_path, art.report);
    fs::create_directories(witness_path.parent_path().empty() ? "." : witness_path.parent_path());
    save_witness_file(witness_path.string(), art.witnesses);
    std::cout << art.report;
    std::cout << "wrote " << report_path.string() << " and " << witness_path.string() << "\n";
    return art.audit_consistent ? 0 : 1;
}

int cmd_controlset(const RunConfig& cfg, const std::string& x_text, std::size_t reach_n,
                   long k_min, long k_max) {
    auto id = parse_example(cfg.example);
    if (!id) throw ParseError("unknown example: " + cfg.example);
    ExampleBundle bundle = build_example(*id);
    TargetGrid grid = make_grid(bundle, cfg);
    SearchBudget budget = make_budget(bundle, cfg);
    std::ostringstream report;

    if (!x_text.empty()) {
        StatePoint x = parse_state(x_text, bundle.system.is_interval());
        ReachSet reach = reachable_set(bundle.system, x, reach_n, cfg.grid_step);
        fs::path reach_path =
            fs::path(cfg.out_dir) / ("reach_" + sanitize(cfg.example) + ".csv");
        write_file(reach_path, render_reach_csv(reach));
        report << "reach set from " << state_to_string(x) << ": " << reach.entries.size()
               << " buckets within " << reach_n << " steps -> " << reach_path.string() << "\n";
    }

    InvarianceReport inv = controlled_invariance_check(bundle.system, bundle.q, grid,
                                                       cfg.refute_horizon, cfg.epsilons.front());
    std::size_t passing = 0;
    for (const PointInvariance& p : inv.points)
        if (p.invariant) ++passing;
    report << "controlled invariance: " << passing << "/" << inv.points.size()
           << " grid points keep a length-" << cfg.refute_horizon << " word\n";

    DichotomyMode mode = cfg.mode == "limsup" ? DichotomyMode::LimsupMean : DichotomyMode::Mean;
    DichotomyVerdict dich = dichotomy_probe(bundle.system, bundle.q, grid, k_min, k_max, budget,
                                            cfg.delta0, cfg.refute_horizon, mode);
    report << render_dichotomy(dich, mode);

    if (bundle.id == ExampleId::A2_EIM_not_EI) {
        // Built-in excursion samples: the splice construction returns to Q
        // after visiting 1, violating no-return on the way.
        std::vector<NoReturnSample> samples;
        samples.push_back(
            NoReturnSample{Scalar::exact(Rat(3, 8) + Rat(1, 64)),
                           excursion_splice_schedule(4), 8});
        NoReturnReport nr = no_return_check(bundle.system, bundle.q, samples,
                                            cfg.epsilons.front());
        report << "no-return probe: " << nr.flagged.size() << "/" << nr.samples_checked
               << " sampled trajectories left B_eps(Q) between entry and return\n";
    }

    fs::path out = fs::path(cfg.out_dir) / ("controlset_" + sanitize(cfg.example) + ".txt");
    write_file(out, report.str());
    std::cout << report.str() << "wrote " << out.string() << "\n";
    return 0;
}

int cmd_example(const std::string& which) {
    if (which.empty() || which == "list") {
        for (ExampleId id : all_examples())
            std::cout << example_name(id) << "  " << claims_matrix(id).headline << "\n";
        return 0;
    }
    auto id = parse_example(which);
    if (!id) throw ParseError("unknown example: " + which);
    std::cout << render_example_dump(build_example(*id));
    return 0;
}

int cmd_audit(const std::vector<std::string>& witness_paths) {
    std::vector<VerdictRecord> records;
    for (const std::string& path : witness_paths) {
        auto wf = load_witness_file(path);
        if (!wf) throw std::runtime_error("cannot load witness file (missing or corrupt): " + path);
        records.insert(records.end(), wf->records.begin(), wf->records.end());
    }
    AuditReport report = implication_audit(records);
    std::cout << render_audit(report, "implication audit (" + std::to_string(records.size()) +
                                          " records)");
    return report.consistent() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"invariance-complexity and equi-invariance toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    RunConfig cfg;
    bool have_config = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key=value config file");
        sub->add_option("--example", cfg.example, "example id (A1..A5)");
        sub->add_option_function<std::string>(
            "--epsilon", [&cfg](const std::string& v) { cfg.epsilons = {parse_rat(v)}; },
            "tolerance eps (p/q)");
        sub->add_option("--nmax", cfg.n_max, "max horizon for span");
        sub->add_option_function<std::string>(
            "--grid", [&cfg](const std::string& v) { cfg.grid_step = parse_rat(v); },
            "grid step h (p/q)");
        sub->add_option("--out", cfg.out_dir, "output directory");
        sub->add_option("--mode", cfg.mode, "plain | mean | limsup");
        sub->add_option("--jobs", cfg.jobs, "worker threads");
    };

    std::string x_text, schedule_text, example_arg;
    std::size_t sim_n = 8, reach_n = 4;
    long k_min = 2, k_max = 8;
    std::vector<std::string> witness_paths;
    std::string notion_arg;

    CLI::App* simulate = app.add_subcommand("simulate", "trajectory CSV");
    add_common(simulate);
    simulate->add_option("--x", x_text, "start state")->required();
    simulate->add_option("--schedule", schedule_text, "control schedule prefix(cycle)")->required();
    simulate->add_option("--n", sim_n, "horizon");

    CLI::App* span = app.add_subcommand("span", "complexity profile + cache");
    add_common(span);

    CLI::App* classify = app.add_subcommand("classify", "verdicts + witness file + audits");
    add_common(classify);
    classify->add_option("--notion", notion_arg, "EI|EIM|MEI|FEI|FEIM|FMEI|FMLS");
    classify->add_option_function<std::string>(
        "--delta0", [&cfg](const std::string& v) { cfg.delta0 = parse_rat(v); },
        "refutation ball radius");
    classify->add_option("--nrefute", cfg.refute_horizon, "refutation word length");

    CLI::App* controlset = app.add_subcommand("controlset", "reachability and dichotomy probes");
    add_common(controlset);
    controlset->add_option("--x", x_text, "reach-set source state");
    controlset->add_option("--n", reach_n, "reach horizon");
    controlset->add_option("--kmin", k_min, "dichotomy k range start");
    controlset->add_option("--kmax", k_max, "dichotomy k range end");

    CLI::App* example = app.add_subcommand("example", "list or dump the bundled systems");
    example->add_option("id", example_arg, "list | A1..A5");

    CLI::App* audit = app.add_subcommand("audit", "merge witness files and audit");
    audit->add_option("witness", witness_paths, "IVLW1 files")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (!config_path.empty()) {
            RunConfig file_cfg = load_config_file(config_path);
            // Command-line values already written into cfg win over the file
            // only for options the user actually passed; CLI11 applied them
            // before we read the file, so merge file values for the rest.
            RunConfig defaults;
            auto keep = [&](auto RunConfig::* field) {
                return !(cfg.*field == defaults.*field);
            };
            RunConfig merged = file_cfg;
            if (keep(&RunConfig::example)) merged.example = cfg.example;
            if (!(cfg.epsilons == defaults.epsilons)) merged.epsilons = cfg.epsilons;
            if (keep(&RunConfig::n_max)) merged.n_max = cfg.n_max;
            if (!(cfg.grid_step == defaults.grid_step)) merged.grid_step = cfg.grid_step;
            if (keep(&RunConfig::out_dir)) merged.out_dir = cfg.out_dir;
            if (keep(&RunConfig::mode)) merged.mode = cfg.mode;
            if (keep(&RunConfig::jobs)) merged.jobs = cfg.jobs;
            if (!(cfg.delta0 == defaults.delta0)) merged.delta0 = cfg.delta0;
            if (keep(&RunConfig::refute_horizon)) merged.refute_horizon = cfg.refute_horizon;
            cfg = merged;
            have_config = true;
        }
        (void)have_config;
        if (!notion_arg.empty()) cfg.notions = {notion_arg};

        if (simulate->parsed()) return cmd_simulate(cfg, x_text, schedule_text, sim_n);
        if (span->parsed()) return cmd_span(cfg);
        if (classify->parsed()) return cmd_classify(cfg);
        if (controlset->parsed()) return cmd_controlset(cfg, x_text, reach_n, k_min, k_max);
        if (example->parsed()) return cmd_example(example_arg);
        if (audit->parsed()) return cmd_audit(witness_paths);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
