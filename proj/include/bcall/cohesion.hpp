#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bcall/correlation.hpp"
#include "bcall/model.hpp"

namespace bcall {

struct GroupVoteTally {
    std::string group; // party name or bloc label
    std::string rollcall_id;
    std::size_t yea = 0;
    std::size_t nay = 0;
    std::size_t abstain = 0;
};

// One tally per (party, rollcall); legislators with no party are skipped.
std::vector<GroupVoteTally> tally_by_party(const VoteMatrix& m);

// One tally per (bloc, rollcall), blocs labeled "left"/"right".
std::vector<GroupVoteTally> tally_by_bloc(const VoteMatrix& m, const GroupMap& groups);

// Chamber-wide tallies, one per rollcall (group label empty).
std::vector<GroupVoteTally> chamber_tallies(const VoteMatrix& m);

// Mean of per-rollcall |yea - nay| / (yea + nay) over rollcalls where the
// group cast at least one yea or nay. Abstentions never enter the ratio.
// nullopt when no rollcall qualifies.
std::optional<double> rice_index(const std::vector<GroupVoteTally>& tallies);

// Closeness-weighted variant: each rollcall's Rice value is weighted by
// w = 1 - |yea_ch - nay_ch| / (yea_ch + nay_ch) from the chamber tally with
// the same rollcall id, so lopsided chamber votes contribute little or
// nothing. nullopt when every weight is zero or nothing aligns.
std::optional<double> unity_index(const std::vector<GroupVoteTally>& group_tallies,
                                  const std::vector<GroupVoteTally>& chamber);

struct GroupIndexSeries {
    std::string group;
    std::string period;
    std::optional<double> rice;
    std::optional<double> unity;
    std::size_t n_rollcalls = 0; // rollcalls where the group cast a yea or nay
};

GroupIndexSeries make_index_series(const std::string& group, const std::string& period,
                                   const std::vector<GroupVoteTally>& group_tallies,
                                   const std::vector<GroupVoteTally>& chamber);

// One scored legislator attributed to an aggregation cell.
struct GroupedScore {
    std::string group;
    std::string period;
    double d2 = 0.0;
};

struct CohesionComparison {
    CorrelationReport vs_rice;
    CorrelationReport vs_unity;
    std::size_t n_cells = 0;
};

// Correlates mean d2 per (group, period) cell against that cell's Rice and
// Unity values. Fewer than 3 matching cells is a DataError.
CohesionComparison cohesion_comparison(const std::vector<GroupedScore>& scores,
                                       const std::vector<GroupIndexSeries>& indices);

} // namespace bcall
