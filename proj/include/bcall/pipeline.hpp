#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "bcall/io.hpp"
#include "bcall/model.hpp"

namespace bcall {

enum class Adapter : std::uint8_t { Canonical, Voteview };
enum class GroupingSource : std::uint8_t { Cluster, PartyMap, ExternalLabels };
enum class IndexAggregation : std::uint8_t { Bloc, Party };

struct RunConfig {
    std::filesystem::path input;
    Adapter adapter = Adapter::Canonical;
    std::optional<std::filesystem::path> voteview_members;
    std::optional<std::filesystem::path> voteview_rollcalls;

    PeriodPolicy period = PeriodPolicy::calendar_year();
    double min_participation = 0.10;

    GroupingSource grouping = GroupingSource::Cluster;
    std::filesystem::path groups_path; // labels or party map, per grouping
    std::optional<std::string> anchor_left;
    std::size_t max_refine_iters = 100;

    IndexAggregation index_aggregation = IndexAggregation::Bloc;
    std::uint64_t seed = 0; // echoed into the manifest; the pipeline itself is deterministic
    std::filesystem::path out_dir;
};

struct PeriodSummary {
    std::string period;
    std::size_t n_rollcalls = 0;
    std::size_t n_legislators = 0;          // in the slice, before filtering
    std::size_t n_retained_legislators = 0; // after the participation filter
    std::size_t dropped_rollcalls = 0;
    std::size_t retained_rollcalls = 0;
    std::size_t tied_rollcalls = 0;
    std::size_t refine_iterations = 0;
    std::size_t refused_moves = 0;
    bool refine_converged = true;
    bool skipped = false;
    std::vector<std::string> warnings;
};

struct ClusterRow {
    std::string period;
    std::string legislator_id;
    Group group = Group::Left;
};

struct RunResult {
    std::vector<PeriodSummary> periods;
    std::vector<ScoreRow> scores;
    std::vector<ClusterRow> clusters;
    std::vector<GroupIndexSeries> indices;
};

VoteMatrix ingest(const RunConfig& cfg);

// Full workflow: ingest -> slice -> filter -> groups -> scores -> indices.
// Writes scores.csv, clusters.csv, indices.csv, plot.csv and manifest.json
// into cfg.out_dir. Reruns with identical inputs and config are byte-identical.
RunResult run_pipeline(const RunConfig& cfg);

// Computes everything but writes nothing.
RunResult run_pipeline_in_memory(const RunConfig& cfg);

// Inner-joins two score files on (legislator_id, period) and reports per-period
// Pearson/Spearman columns. Periods joining fewer than 3 rows are kept in the
// output with missing statistics.
std::vector<PeriodComparison> compare_score_files(const std::filesystem::path& a,
                                                  const std::filesystem::path& b,
                                                  const std::optional<std::string>& column_a,
                                                  const std::optional<std::string>& column_b);

} // namespace bcall
