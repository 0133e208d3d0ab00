#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "bcall/cohesion.hpp"
#include "bcall/correlation.hpp"
#include "bcall/engine.hpp"
#include "bcall/model.hpp"

namespace bcall {

// Minimal RFC-4180 style CSV: quoted fields, doubled quotes, embedded
// separators and newlines inside quotes. First record is the header.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers; // 1-based source line of each row

    std::optional<std::size_t> column(std::string_view name) const;
};

CsvTable read_csv(const std::filesystem::path& path);
CsvTable parse_csv(std::string_view text, const std::string& origin);
std::string csv_escape(std::string_view field);

// Canonical long format: legislator_id, legislator_name, party, rollcall_id,
// date, cast. Unknown cast tokens and bad dates are DataErrors naming the
// line; duplicate (legislator, rollcall) pairs are DataErrors naming both rows.
VoteMatrix read_canonical_csv(const std::filesystem::path& path);
void write_canonical_csv(const VoteMatrix& m, const std::filesystem::path& path);

// Voteview-style inputs: a votes file (icpsr, cast_code, and either a
// rollcall id column or congress/chamber/rollnumber), an optional members
// file (icpsr, bioname, party_code), and a rollcalls file carrying dates.
// Cast codes: 1-3 yea, 4-6 nay, 7-8 abstain, 0/9 absent.
VoteMatrix read_voteview(const std::filesystem::path& votes,
                         const std::optional<std::filesystem::path>& members,
                         const std::optional<std::filesystem::path>& rollcalls);

// Labels file: legislator_id, cluster with cluster in {left, right}.
GroupMap read_group_labels(const std::filesystem::path& path);
void write_group_labels(const VoteMatrix& m, const GroupMap& groups,
                        const std::filesystem::path& path);

// Party map file: party, cluster with cluster in {left, right}.
std::unordered_map<std::string, Group> read_party_map(const std::filesystem::path& path);

struct ScoreRow {
    std::string legislator_id;
    std::string name;
    std::string party;
    std::string period;
    std::size_t n_votes = 0;
    double d1 = 0.0;
    double d2 = 0.0;
    Group group = Group::Left;
};

void write_scores_csv(const std::vector<ScoreRow>& rows, const std::filesystem::path& path);
void write_plot_csv(const std::vector<ScoreRow>& rows, const std::filesystem::path& path);

void write_indices_csv(const std::vector<GroupIndexSeries>& series,
                       const std::filesystem::path& path);

// External score file for comparisons: legislator_id, period, <column>.
// Column defaults to "score" when present, then "d1".
struct ExternalScore {
    std::string legislator_id;
    std::string period;
    double score = 0.0;
};
std::vector<ExternalScore> read_score_file(const std::filesystem::path& path,
                                           const std::optional<std::string>& column);

struct PeriodComparison {
    std::string period;
    CorrelationReport report;
    bool sufficient = false; // at least 3 joined rows
};

void write_comparison_csv(const std::vector<PeriodComparison>& rows,
                          const std::filesystem::path& path);

// metric, r, se, rho, rho_se, n layout for index-vs-d2 reports
void write_cohesion_report_csv(const CohesionComparison& cmp, const std::filesystem::path& path);

// 6-decimal fixed formatting used by every writer; "NA" for missing.
std::string format_real(double v);
std::string format_real(const std::optional<double>& v);

// Writes via a temporary file in the same directory, then renames.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

} // namespace bcall
