// bcall: two-dimensional roll-call scores (ideology d1, cohesion d2) with
// left/right clustering, RICE/UNITY cohesion indices, score-file comparison
// and a synthetic legislature generator.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "bcall/clustering.hpp"
#include "bcall/cohesion.hpp"
#include "bcall/engine.hpp"
#include "bcall/io.hpp"
#include "bcall/pipeline.hpp"
#include "bcall/synth.hpp"

namespace fs = std::filesystem;
using namespace bcall;

namespace {

// "2015-01-01..2016-12-31=2015-2016,..." -> explicit ranges; label optional
PeriodPolicy parse_period_flag(const std::string& flag) {
    if (flag == "year") return PeriodPolicy::calendar_year();
    const std::string prefix = "ranges=";
    if (flag.rfind(prefix, 0) != 0)
        throw ConfigError("--period must be 'year' or 'ranges=<start>..<end>[=<label>][,...]'");
    std::vector<PeriodRange> ranges;
    std::string spec = flag.substr(prefix.size());
    std::size_t pos = 0;
    while (pos <= spec.size()) {
        std::size_t comma = spec.find(',', pos);
        std::string item = spec.substr(pos, comma == std::string::npos ? comma : comma - pos);
        if (!item.empty()) {
            std::string label;
            if (std::size_t eq = item.find('='); eq != std::string::npos) {
                label = item.substr(eq + 1);
                item = item.substr(0, eq);
            }
            std::size_t dots = item.find("..");
            if (dots == std::string::npos)
                throw ConfigError("period range '" + item + "' must look like <start>..<end>");
            auto start = parse_date(item.substr(0, dots));
            auto end = parse_date(item.substr(dots + 2));
            if (!start || !end)
                throw ConfigError("period range '" + item + "' has an unparseable date");
            ranges.push_back(PeriodRange{*start, *end, label});
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return PeriodPolicy::explicit_ranges(std::move(ranges));
}

// "cluster", "file=<path>" or "party=<path>"
void parse_groups_flag(const std::string& flag, RunConfig& cfg) {
    if (flag == "cluster") {
        cfg.grouping = GroupingSource::Cluster;
        return;
    }
    if (flag.rfind("file=", 0) == 0) {
        cfg.grouping = GroupingSource::ExternalLabels;
        cfg.groups_path = flag.substr(5);
        return;
    }
    if (flag.rfind("party=", 0) == 0) {
        cfg.grouping = GroupingSource::PartyMap;
        cfg.groups_path = flag.substr(6);
        return;
    }
    throw ConfigError("--groups must be 'cluster', 'file=<path>' or 'party=<path>'");
}

struct CommonFlags {
    std::string input;
    std::string adapter = "canonical";
    std::string members, rollcalls;
    std::string period = "year";
    double min_participation = 0.10;
    std::string groups = "cluster";
    std::string anchor_left;
    std::size_t max_refine_iters = 100;
    std::string index_group = "bloc";
    std::uint64_t seed = 0;
    std::string out;
};

void add_input_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--input", f.input, "Input votes file")->required();
    cmd->add_option("--adapter", f.adapter, "Input format")
        ->check(CLI::IsMember({"canonical", "voteview"}))
        ->capture_default_str();
    cmd->add_option("--voteview-members", f.members, "Voteview members file (icpsr,bioname,party_code)");
    cmd->add_option("--voteview-rollcalls", f.rollcalls, "Voteview rollcalls file with dates");
}

void add_pipeline_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--period", f.period, "'year' or 'ranges=<start>..<end>[=<label>][,...]'")
        ->capture_default_str();
    cmd->add_option("--min-participation", f.min_participation,
                    "Drop legislators voting in less than this fraction of a period's rollcalls")
        ->capture_default_str();
    cmd->add_option("--groups", f.groups, "'cluster', 'file=<path>' or 'party=<path>'")
        ->capture_default_str();
    cmd->add_option("--anchor-left", f.anchor_left,
                    "Legislator whose cluster is labeled left (cluster grouping)");
    cmd->add_option("--max-refine-iters", f.max_refine_iters, "Refinement sweep cap")
        ->capture_default_str();
    cmd->add_option("--index-group", f.index_group, "Aggregation level for cohesion indices")
        ->check(CLI::IsMember({"bloc", "party"}))
        ->capture_default_str();
    cmd->add_option("--seed", f.seed, "Echoed into the run manifest")->capture_default_str();
}

RunConfig to_run_config(const CommonFlags& f) {
    RunConfig cfg;
    cfg.input = f.input;
    cfg.adapter = f.adapter == "voteview" ? Adapter::Voteview : Adapter::Canonical;
    if (!f.members.empty()) cfg.voteview_members = f.members;
    if (!f.rollcalls.empty()) cfg.voteview_rollcalls = f.rollcalls;
    cfg.period = parse_period_flag(f.period);
    if (f.min_participation < 0.0 || f.min_participation > 1.0)
        throw ConfigError("--min-participation must be in [0,1]");
    cfg.min_participation = f.min_participation;
    parse_groups_flag(f.groups, cfg);
    if (!f.anchor_left.empty()) cfg.anchor_left = f.anchor_left;
    cfg.max_refine_iters = f.max_refine_iters;
    cfg.index_aggregation =
        f.index_group == "party" ? IndexAggregation::Party : IndexAggregation::Bloc;
    cfg.seed = f.seed;
    cfg.out_dir = f.out;
    return cfg;
}

int cmd_ingest(const CommonFlags& f) {
    RunConfig cfg = to_run_config(f);
    VoteMatrix m = ingest(cfg);
    write_canonical_csv(m, f.out);
    std::cout << "wrote " << f.out << " (" << m.n_legislators() << " legislators, "
              << m.n_rollcalls() << " rollcalls)\n";
    return 0;
}

int cmd_cluster(const CommonFlags& f) {
    RunConfig cfg = to_run_config(f);
    VoteMatrix m = filter_low_participation(ingest(cfg), cfg.min_participation);
    DistanceMatrix d = pairwise_distance(m);
    PolarityPartition p = agglomerate(m, d);
    p = refine(std::move(p), m, cfg.max_refine_iters);
    p = orient_labels(std::move(p), cfg.anchor_left);
    write_group_labels(m, p.assignment, f.out);
    std::cout << "wrote " << f.out << " (" << p.iterations << " refinement sweeps, "
              << (p.converged ? "converged" : "not converged") << ")\n";
    return 0;
}

int cmd_score(const CommonFlags& f) {
    RunConfig cfg = to_run_config(f);
    RunResult r = run_pipeline(cfg);
    std::size_t skipped = 0;
    for (const auto& p : r.periods)
        if (p.skipped) ++skipped;
    std::cout << "wrote " << cfg.out_dir.string() << " (" << r.periods.size() << " periods";
    if (skipped > 0) std::cout << ", " << skipped << " skipped";
    std::cout << ", " << r.scores.size() << " scored legislator-periods)\n";
    return 0;
}

int cmd_indices(const CommonFlags& f) {
    RunConfig cfg = to_run_config(f);
    RunResult r = run_pipeline_in_memory(cfg);
    fs::create_directories(cfg.out_dir);
    write_indices_csv(r.indices, cfg.out_dir / "indices.csv");

    std::vector<GroupedScore> grouped;
    if (cfg.index_aggregation == IndexAggregation::Party) {
        for (const auto& s : r.scores)
            if (!s.party.empty()) grouped.push_back({s.party, s.period, s.d2});
    } else {
        for (const auto& s : r.scores) grouped.push_back({to_string(s.group), s.period, s.d2});
    }
    try {
        CohesionComparison cmp = cohesion_comparison(grouped, r.indices);
        write_cohesion_report_csv(cmp, cfg.out_dir / "cohesion_report.csv");
        std::cout << "wrote indices.csv and cohesion_report.csv (" << cmp.n_cells << " cells)\n";
    } catch (const DataError& e) {
        std::cout << "wrote indices.csv; no cohesion report: " << e.what() << "\n";
    }
    return 0;
}

int cmd_compare(const std::string& a, const std::string& b, const std::string& col_a,
                const std::string& col_b, const std::string& out) {
    std::optional<std::string> ca, cb;
    if (!col_a.empty()) ca = col_a;
    if (!col_b.empty()) cb = col_b;
    auto rows = compare_score_files(a, b, ca, cb);
    fs::create_directories(out);
    write_comparison_csv(rows, fs::path(out) / "comparison.csv");

    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json e;
        e["period"] = r.period;
        e["n"] = r.report.n;
        e["sufficient"] = r.sufficient;
        if (r.report.pearson_r) e["r"] = *r.report.pearson_r;
        if (r.report.pearson_se) e["se"] = *r.report.pearson_se;
        if (r.report.spearman_rho) e["rho"] = *r.report.spearman_rho;
        if (r.report.spearman_se) e["rho_se"] = *r.report.spearman_se;
        j.push_back(e);
    }
    write_file_atomic(fs::path(out) / "comparison.json", j.dump(2) + "\n");
    std::cout << "wrote comparison.csv and comparison.json (" << rows.size() << " periods)\n";
    return 0;
}

struct SynthFlags {
    std::size_t legislators = 100;
    std::size_t rollcalls = 250;
    std::uint64_t seed = 0;
    double sigma_min = 0.1, sigma_max = 0.6;
    double abstain_prob = 0.0, absent_prob = 0.0;
    bool blocs = false;
    int year = 2020;
    std::string out;
};

int cmd_synth(const SynthFlags& f) {
    SynthConfig cfg = f.blocs ? two_bloc_config(f.legislators, f.rollcalls, f.seed)
                              : random_config(f.legislators, f.rollcalls, f.seed, -1.0, 1.0,
                                              f.sigma_min, f.sigma_max, f.abstain_prob,
                                              f.absent_prob);
    if (f.blocs) {
        cfg.abstain_prob = f.abstain_prob;
        cfg.absent_prob = f.absent_prob;
    }
    cfg.year = f.year;
    SynthResult r = generate(cfg);

    fs::path dir(f.out);
    fs::create_directories(dir);
    write_canonical_csv(r.matrix, dir / "votes.csv");
    std::string truth = "legislator_id,theta,sigma\n";
    for (std::size_t i = 0; i < r.matrix.n_legislators(); ++i) {
        truth += r.matrix.legislators()[i].id;
        truth += ',';
        truth += format_real(r.theta[i]);
        truth += ',';
        truth += format_real(r.sigma[i]);
        truth += '\n';
    }
    write_file_atomic(dir / "truth.csv", truth);

    nlohmann::json meta;
    meta["rng"] = kRngContract;
    meta["seed"] = cfg.seed;
    meta["n_legislators"] = cfg.n_legislators;
    meta["n_rollcalls"] = cfg.n_rollcalls;
    meta["abstain_prob"] = cfg.abstain_prob;
    meta["absent_prob"] = cfg.absent_prob;
    meta["cutpoint_range"] = {cfg.cutpoint_min, cfg.cutpoint_max};
    meta["blocs"] = f.blocs;
    write_file_atomic(dir / "synth_meta.json", meta.dump(2) + "\n");
    std::cout << "wrote " << f.out << " (votes.csv, truth.csv, synth_meta.json)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-dimensional roll-call vote scores: ideology (d1) and cohesion (d2)"};
    app.require_subcommand(1);
    // usage: bcall --config run.ini <subcommand> ...; the file uses one INI
    // section per subcommand and command-line flags win
    app.set_config("--config", "", "Read flags from an INI file with [subcommand] sections");

    CommonFlags ing, clu, sco, ind;
    SynthFlags syn;
    std::string cmp_a, cmp_b, cmp_col_a, cmp_col_b, cmp_out;

    CLI::App* c_ingest = app.add_subcommand("ingest", "Normalize input to the canonical CSV");
    add_input_flags(c_ingest, ing);
    c_ingest->add_option("--out", ing.out, "Output CSV file")->required();

    CLI::App* c_cluster =
        app.add_subcommand("cluster", "Left/right agglomerative clustering over the whole input");
    add_input_flags(c_cluster, clu);
    c_cluster->add_option("--min-participation", clu.min_participation, "Participation filter")
        ->capture_default_str();
    c_cluster->add_option("--anchor-left", clu.anchor_left, "Legislator whose cluster is left");
    c_cluster->add_option("--max-refine-iters", clu.max_refine_iters, "Refinement sweep cap")
        ->capture_default_str();
    c_cluster->add_option("--out", clu.out, "Output labels CSV")->required();

    CLI::App* c_score = app.add_subcommand(
        "score", "Full pipeline: slice, filter, group, score, indices, plot data");
    add_input_flags(c_score, sco);
    add_pipeline_flags(c_score, sco);
    c_score->add_option("--out", sco.out, "Output directory")->required();

    CLI::App* c_indices =
        app.add_subcommand("indices", "Group cohesion indices and the d2 comparison report");
    add_input_flags(c_indices, ind);
    add_pipeline_flags(c_indices, ind);
    c_indices->add_option("--out", ind.out, "Output directory")->required();

    CLI::App* c_compare =
        app.add_subcommand("compare", "Correlate two score files per period (inner join)");
    c_compare->add_option("--a", cmp_a, "First score file")->required();
    c_compare->add_option("--b", cmp_b, "Second score file")->required();
    c_compare->add_option("--col-a", cmp_col_a, "Score column in --a (default: score, then d1)");
    c_compare->add_option("--col-b", cmp_col_b, "Score column in --b (default: score, then d1)");
    c_compare->add_option("--out", cmp_out, "Output directory")->required();

    CLI::App* c_synth = app.add_subcommand("synth", "Generate a synthetic legislature");
    c_synth->add_option("--legislators", syn.legislators, "Legislator count")
        ->capture_default_str();
    c_synth->add_option("--rollcalls", syn.rollcalls, "Rollcall count")->capture_default_str();
    c_synth->add_option("--seed", syn.seed, "Random stream seed")->capture_default_str();
    c_synth->add_option("--sigma-min", syn.sigma_min, "Lower noise bound")->capture_default_str();
    c_synth->add_option("--sigma-max", syn.sigma_max, "Upper noise bound")->capture_default_str();
    c_synth->add_option("--abstain-prob", syn.abstain_prob, "Abstain probability")
        ->capture_default_str();
    c_synth->add_option("--absent-prob", syn.absent_prob, "Absent probability")
        ->capture_default_str();
    c_synth->add_flag("--blocs", syn.blocs, "Two noise-free blocs at theta = -0.8/+0.8");
    c_synth->add_option("--year", syn.year, "Calendar year for generated dates")
        ->capture_default_str();
    c_synth->add_option("--out", syn.out, "Output directory")->required();

    try {
        app.parse(argc, argv);
        if (c_ingest->parsed()) return cmd_ingest(ing);
        if (c_cluster->parsed()) return cmd_cluster(clu);
        if (c_score->parsed()) return cmd_score(sco);
        if (c_indices->parsed()) return cmd_indices(ind);
        if (c_compare->parsed()) return cmd_compare(cmp_a, cmp_b, cmp_col_a, cmp_col_b, cmp_out);
        if (c_synth->parsed()) return cmd_synth(syn);
        return 2;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
