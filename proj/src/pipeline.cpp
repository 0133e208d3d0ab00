#include "bcall/pipeline.hpp"

#include <algorithm>
#include <map>
#include <set>

#include <json.hpp>

#include "bcall/clustering.hpp"
#include "bcall/cohesion.hpp"
#include "bcall/engine.hpp"
#include "bcall/synth.hpp"

namespace bcall {

namespace fs = std::filesystem;
using nlohmann::json;

VoteMatrix ingest(const RunConfig& cfg) {
    if (cfg.adapter == Adapter::Canonical) return read_canonical_csv(cfg.input);
    return read_voteview(cfg.input, cfg.voteview_members, cfg.voteview_rollcalls);
}

namespace {

GroupMap resolve_by_party_map(const VoteMatrix& m,
                              const std::unordered_map<std::string, Group>& party_map,
                              const std::string& period) {
    GroupMap groups;
    for (const auto& leg : m.legislators()) {
        if (leg.party.empty())
            throw DataError("period " + period + ": legislator '" + leg.id +
                            "' has no party, cannot apply the party map");
        auto it = party_map.find(leg.party);
        if (it == party_map.end())
            throw DataError("period " + period + ": party '" + leg.party + "' (legislator '" +
                            leg.id + "') is not in the party map");
        groups.emplace(leg.id, it->second);
    }
    return groups;
}

GroupMap resolve_by_labels(const VoteMatrix& m, const GroupMap& labels, const std::string& period) {
    GroupMap groups;
    for (const auto& leg : m.legislators()) {
        auto it = labels.find(leg.id);
        if (it == labels.end())
            throw DataError("period " + period + ": no external label for legislator '" + leg.id +
                            "'");
        groups.emplace(leg.id, it->second);
    }
    return groups;
}

void process_period(const RunConfig& cfg, const PeriodKey& period, const VoteMatrix& slice,
                    const GroupMap& external_labels,
                    const std::unordered_map<std::string, Group>& party_map, RunResult& result) {
    PeriodSummary summary;
    summary.period = period.label;
    summary.n_rollcalls = slice.n_rollcalls();
    summary.n_legislators = slice.n_legislators();

    VoteMatrix filtered = filter_low_participation(slice, cfg.min_participation);
    summary.n_retained_legislators = filtered.n_legislators();
    if (filtered.n_legislators() < 2) {
        summary.skipped = true;
        summary.warnings.push_back("fewer than 2 legislators after participation filter");
        result.periods.push_back(std::move(summary));
        return;
    }

    GroupMap groups;
    switch (cfg.grouping) {
    case GroupingSource::Cluster: {
        DistanceMatrix d = pairwise_distance(filtered);
        PolarityPartition p = agglomerate(filtered, d);
        p = refine(std::move(p), filtered, cfg.max_refine_iters);
        try {
            p = orient_labels(std::move(p), cfg.anchor_left);
        } catch (const DataError& e) {
            throw DataError("period " + period.label + ": " + e.what());
        }
        summary.refine_iterations = p.iterations;
        summary.refine_converged = p.converged;
        summary.refused_moves = p.refused_moves;
        if (!p.converged)
            summary.warnings.push_back("refinement did not converge within " +
                                       std::to_string(cfg.max_refine_iters) + " sweeps");
        groups = std::move(p.assignment);
        break;
    }
    case GroupingSource::PartyMap:
        groups = resolve_by_party_map(filtered, party_map, period.label);
        break;
    case GroupingSource::ExternalLabels:
        groups = resolve_by_labels(filtered, external_labels, period.label);
        break;
    }

    ScoreSet set = bcall_scores(filtered, groups, period);
    summary.dropped_rollcalls = set.dropped_rollcalls;
    summary.retained_rollcalls = filtered.n_rollcalls() - set.dropped_rollcalls;
    summary.tied_rollcalls = set.tied_rollcalls;
    if (set.scores.empty())
        summary.warnings.push_back("no scorable legislators (every rollcall dropped)");

    std::unordered_map<std::string, const BCallScore*> score_of;
    for (const auto& s : set.scores) score_of[s.legislator_id] = &s;
    for (const auto& leg : filtered.legislators()) {
        auto it = score_of.find(leg.id);
        if (it == score_of.end()) continue;
        ScoreRow row;
        row.legislator_id = leg.id;
        row.name = leg.name;
        row.party = leg.party;
        row.period = period.label;
        row.n_votes = it->second->n_votes;
        row.d1 = it->second->d1;
        row.d2 = it->second->d2;
        row.group = groups.at(leg.id);
        result.scores.push_back(std::move(row));
    }

    // cluster rows in legislator input order
    for (const auto& leg : filtered.legislators())
        if (auto it = groups.find(leg.id); it != groups.end())
            result.clusters.push_back(ClusterRow{period.label, leg.id, it->second});

    // group cohesion indices at the configured aggregation level
    std::vector<GroupVoteTally> tallies = cfg.index_aggregation == IndexAggregation::Party
                                              ? tally_by_party(filtered)
                                              : tally_by_bloc(filtered, groups);
    std::vector<GroupVoteTally> chamber = chamber_tallies(filtered);
    std::map<std::string, std::vector<GroupVoteTally>> per_group;
    for (auto& t : tallies) per_group[t.group].push_back(t);
    for (const auto& [group, group_tallies] : per_group)
        result.indices.push_back(make_index_series(group, period.label, group_tallies, chamber));

    result.periods.push_back(std::move(summary));
}

json config_echo(const RunConfig& cfg) {
    json j;
    j["input"] = cfg.input.string();
    j["adapter"] = cfg.adapter == Adapter::Canonical ? "canonical" : "voteview";
    if (cfg.voteview_members) j["voteview_members"] = cfg.voteview_members->string();
    if (cfg.voteview_rollcalls) j["voteview_rollcalls"] = cfg.voteview_rollcalls->string();
    if (cfg.period.kind == PeriodPolicy::Kind::CalendarYear) {
        j["period"] = "year";
    } else {
        json ranges = json::array();
        for (const auto& r : cfg.period.ranges)
            ranges.push_back(
                {{"start", to_string(r.start)}, {"end", to_string(r.end)}, {"label", r.label}});
        j["period"] = ranges;
    }
    j["min_participation"] = cfg.min_participation;
    switch (cfg.grouping) {
    case GroupingSource::Cluster: j["groups"] = "cluster"; break;
    case GroupingSource::PartyMap: j["groups"] = "party:" + cfg.groups_path.string(); break;
    case GroupingSource::ExternalLabels: j["groups"] = "file:" + cfg.groups_path.string(); break;
    }
    if (cfg.anchor_left) j["anchor_left"] = *cfg.anchor_left;
    j["max_refine_iters"] = cfg.max_refine_iters;
    j["index_aggregation"] = cfg.index_aggregation == IndexAggregation::Bloc ? "bloc" : "party";
    j["seed"] = cfg.seed;
    return j;
}

} // namespace

RunResult run_pipeline_in_memory(const RunConfig& cfg) {
    VoteMatrix full = ingest(cfg);

    GroupMap external_labels;
    std::unordered_map<std::string, Group> party_map;
    if (cfg.grouping == GroupingSource::ExternalLabels)
        external_labels = read_group_labels(cfg.groups_path);
    else if (cfg.grouping == GroupingSource::PartyMap)
        party_map = read_party_map(cfg.groups_path);

    RunResult result;
    for (const auto& [period, slice] : slice_by_period(full, cfg.period))
        process_period(cfg, period, slice, external_labels, party_map, result);
    return result;
}

RunResult run_pipeline(const RunConfig& cfg) {
    RunResult result = run_pipeline_in_memory(cfg);

    fs::create_directories(cfg.out_dir);
    write_scores_csv(result.scores, cfg.out_dir / "scores.csv");
    write_plot_csv(result.scores, cfg.out_dir / "plot.csv");
    write_indices_csv(result.indices, cfg.out_dir / "indices.csv");

    std::string clusters_csv = "period,legislator_id,cluster\n";
    for (const auto& row : result.clusters) {
        clusters_csv += csv_escape(row.period);
        clusters_csv += ',';
        clusters_csv += csv_escape(row.legislator_id);
        clusters_csv += ',';
        clusters_csv += to_string(row.group);
        clusters_csv += '\n';
    }
    write_file_atomic(cfg.out_dir / "clusters.csv", clusters_csv);

    json manifest;
    manifest["config"] = config_echo(cfg);
    manifest["label_convention"] = cfg.anchor_left
                                       ? "left = cluster containing the anchor legislator"
                                       : "left = cluster containing the first-seeded legislator";
    manifest["unity_variant"] = "closeness_weighted_rice";
    json periods = json::array();
    std::size_t total_rollcalls = 0, total_dropped = 0;
    for (const auto& p : result.periods) {
        json jp;
        jp["period"] = p.period;
        jp["n_rollcalls"] = p.n_rollcalls;
        jp["n_legislators"] = p.n_legislators;
        jp["n_retained_legislators"] = p.n_retained_legislators;
        jp["dropped_rollcalls"] = p.dropped_rollcalls;
        jp["retained_rollcalls"] = p.retained_rollcalls;
        jp["tied_rollcalls"] = p.tied_rollcalls;
        jp["refine_iterations"] = p.refine_iterations;
        jp["refine_converged"] = p.refine_converged;
        jp["refused_moves"] = p.refused_moves;
        jp["skipped"] = p.skipped;
        jp["warnings"] = p.warnings;
        periods.push_back(jp);
        total_rollcalls += p.n_rollcalls;
        total_dropped += p.dropped_rollcalls;
    }
    manifest["periods"] = periods;
    manifest["totals"] = {{"rollcalls", total_rollcalls},
                          {"dropped_rollcalls", total_dropped},
                          {"scored_legislator_periods", result.scores.size()}};
    write_file_atomic(cfg.out_dir / "manifest.json", manifest.dump(2) + "\n");

    return result;
}

std::vector<PeriodComparison> compare_score_files(const fs::path& a, const fs::path& b,
                                                  const std::optional<std::string>& column_a,
                                                  const std::optional<std::string>& column_b) {
    auto rows_a = read_score_file(a, column_a);
    auto rows_b = read_score_file(b, column_b);

    std::map<std::string, std::map<std::string, double>> by_period_a, by_period_b;
    for (const auto& r : rows_a) by_period_a[r.period][r.legislator_id] = r.score;
    for (const auto& r : rows_b) by_period_b[r.period][r.legislator_id] = r.score;

    std::set<std::string> periods;
    for (const auto& [p, _] : by_period_a) periods.insert(p);
    for (const auto& [p, _] : by_period_b) periods.insert(p);

    std::vector<PeriodComparison> out;
    for (const auto& period : periods) {
        PeriodComparison pc;
        pc.period = period;
        auto ita = by_period_a.find(period);
        auto itb = by_period_b.find(period);
        std::vector<double> x, y;
        if (ita != by_period_a.end() && itb != by_period_b.end()) {
            for (const auto& [id, score] : ita->second) {
                auto hit = itb->second.find(id);
                if (hit == itb->second.end()) continue;
                x.push_back(score);
                y.push_back(hit->second);
            }
        }
        pc.report.n = x.size();
        pc.sufficient = x.size() >= 3;
        if (pc.sufficient) pc.report = correlation_report(x, y);
        out.push_back(std::move(pc));
    }
    return out;
}

} // namespace bcall
