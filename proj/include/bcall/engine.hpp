#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bcall/model.hpp"

namespace bcall {

// A rollcall is Positive when the left-group mean is <= the right-group mean
// (deviations keep their sign), Negative when the left mean is greater
// (deviations are flipped), and Dropped when it carries no positional
// information: zero variance or a pole with no participant.
enum class Orientation : std::uint8_t { Positive, Negative, Dropped };

struct RollCallStats {
    std::string rollcall_id;
    double mean = 0.0;   // average vote over non-absent participants, in [-1,1]
    double stddev = 0.0; // population standard deviation, in [0,1]
    std::optional<double> left_mean;
    std::optional<double> right_mean;
    Orientation orientation = Orientation::Dropped;
    std::size_t n_participants = 0;
    bool tied = false; // left_mean == right_mean exactly (both defined)
};

// Per-rollcall statistics over non-absent participants. Every participant must
// be present in `groups` (DataError otherwise). A rollcall with no participants
// is Dropped with NaN mean/stddev.
RollCallStats rollcall_stats(const VoteMatrix& m, std::size_t rc_index, const GroupMap& groups);

// Oriented standardized deviation of a single vote value. Calling this on a
// Dropped rollcall is a programming error (std::logic_error).
double deviation(double vote_value, const RollCallStats& stats);

struct DeviationSeries {
    std::string legislator_id;
    std::vector<double> values; // one entry per retained (non-absent, non-dropped) vote
};

struct BCallScore {
    std::string legislator_id;
    std::string period;
    double d1 = 0.0; // ideology: mean of the deviation series
    double d2 = 0.0; // cohesion as dispersion: population stddev of the series
    std::size_t n_votes = 0;
};

struct ScoreSet {
    std::vector<BCallScore> scores; // input legislator order; only n_votes >= 1
    std::vector<RollCallStats> stats; // per rollcall, input order
    std::size_t dropped_rollcalls = 0;
    std::size_t tied_rollcalls = 0; // non-dropped rollcalls with equal group means
};

// Deviation series per legislator, input order. Legislators with no retained
// votes get an empty series.
std::vector<DeviationSeries> deviation_series(const VoteMatrix& m, const GroupMap& groups);

// Both score dimensions for every legislator with at least one retained vote.
ScoreSet bcall_scores(const VoteMatrix& m, const GroupMap& groups, const PeriodKey& period);

} // namespace bcall
