#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "bcall/errors.hpp"

namespace bcall {

// A single recorded choice. Yea/Nay/Abstain map to +1/-1/0; Absent carries
// no numeric value and is excluded from every statistic.
enum class Cast : std::uint8_t { Yea, Nay, Abstain, Absent };

inline std::optional<double> cast_value(Cast c) {
    switch (c) {
    case Cast::Yea: return 1.0;
    case Cast::Nay: return -1.0;
    case Cast::Abstain: return 0.0;
    case Cast::Absent: return std::nullopt;
    }
    return std::nullopt;
}

const char* to_string(Cast c);
std::optional<Cast> parse_cast(std::string_view token); // case-insensitive yea/nay/abstain/absent

enum class Group : std::uint8_t { Left, Right };

inline const char* to_string(Group g) { return g == Group::Left ? "left" : "right"; }
inline Group opposite(Group g) { return g == Group::Left ? Group::Right : Group::Left; }
std::optional<Group> parse_group(std::string_view token);

// Legislator id -> pole assignment.
using GroupMap = std::unordered_map<std::string, Group>;

struct Date {
    int year = 0;
    int month = 0;
    int day = 0;
    auto operator<=>(const Date&) const = default;
};

bool valid_date(const Date& d);
std::optional<Date> parse_date(std::string_view iso); // strict YYYY-MM-DD
std::string to_string(const Date& d);

struct Legislator {
    std::string id;
    std::string name;
    std::string party;          // empty = unknown
    std::optional<Group> group; // external label, when one was supplied
};

struct RollCall {
    std::string id;
    Date date;
    std::unordered_map<std::string, Cast> casts; // legislator id -> cast
};

struct PeriodKey {
    std::string label; // e.g. "2014" or "2015-2016"
    bool operator==(const PeriodKey&) const = default;
};

// Immutable legislators x rollcalls matrix. Construction validates that every
// cast references a known legislator; input order of both axes is preserved
// and is the tie-breaking anchor for everything downstream.
class VoteMatrix {
public:
    VoteMatrix() = default;
    VoteMatrix(std::vector<Legislator> legislators, std::vector<RollCall> rollcalls);

    const std::vector<Legislator>& legislators() const { return legislators_; }
    const std::vector<RollCall>& rollcalls() const { return rollcalls_; }
    std::size_t n_legislators() const { return legislators_.size(); }
    std::size_t n_rollcalls() const { return rollcalls_.size(); }

    std::optional<std::size_t> legislator_index(std::string_view id) const;

    // Recorded cast, or nullopt when the legislator does not appear in the rollcall.
    std::optional<Cast> cast_at(std::size_t leg, std::size_t rc) const;

    // Numeric vote value (+1/-1/0); nullopt when absent or unrecorded.
    std::optional<double> value_at(std::size_t leg, std::size_t rc) const {
        std::int8_t c = cells_[leg * rollcalls_.size() + rc];
        if (c == kNoValue) return std::nullopt;
        return static_cast<double>(c);
    }

    bool has_value(std::size_t leg, std::size_t rc) const {
        return cells_[leg * rollcalls_.size() + rc] != kNoValue;
    }

    // Count of non-absent casts for a legislator.
    std::size_t participation_count(std::size_t leg) const;

    static constexpr std::int8_t kNoValue = 127;

private:
    std::vector<Legislator> legislators_;
    std::vector<RollCall> rollcalls_;
    std::unordered_map<std::string, std::size_t> index_;
    std::vector<std::int8_t> cells_; // row-major [leg][rc]; -1/0/+1 or kNoValue
};

// Keeps only legislators whose participation (non-absent casts / total
// rollcalls) is >= threshold. Participation exactly at the threshold is
// retained. Rollcalls are unchanged; casts of removed legislators are dropped.
VoteMatrix filter_low_participation(const VoteMatrix& m, double threshold);

struct PeriodRange {
    Date start;
    Date end; // inclusive
    std::string label;
};

struct PeriodPolicy {
    enum class Kind { CalendarYear, ExplicitRanges };
    Kind kind = Kind::CalendarYear;
    std::vector<PeriodRange> ranges;

    static PeriodPolicy calendar_year() { return {}; }
    // Validates that ranges are well-formed and non-overlapping (ConfigError).
    static PeriodPolicy explicit_ranges(std::vector<PeriodRange> ranges);
};

// Partitions rollcalls by period. Each slice carries the legislators with at
// least one non-absent cast inside the period. Slice order follows the first
// occurrence of each period in rollcall input order. A date outside every
// explicit range is a DataError naming the rollcall.
std::vector<std::pair<PeriodKey, VoteMatrix>> slice_by_period(const VoteMatrix& m,
                                                              const PeriodPolicy& policy);

} // namespace bcall
