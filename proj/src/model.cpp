#include "bcall/model.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>

namespace bcall {

const char* to_string(Cast c) {
    switch (c) {
    case Cast::Yea: return "yea";
    case Cast::Nay: return "nay";
    case Cast::Abstain: return "abstain";
    case Cast::Absent: return "absent";
    }
    return "?";
}

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return out;
}

} // namespace

std::optional<Cast> parse_cast(std::string_view token) {
    std::string t = lower(token);
    if (t == "yea") return Cast::Yea;
    if (t == "nay") return Cast::Nay;
    if (t == "abstain") return Cast::Abstain;
    if (t == "absent") return Cast::Absent;
    return std::nullopt;
}

std::optional<Group> parse_group(std::string_view token) {
    std::string t = lower(token);
    if (t == "left") return Group::Left;
    if (t == "right") return Group::Right;
    return std::nullopt;
}

bool valid_date(const Date& d) {
    if (d.month < 1 || d.month > 12 || d.day < 1) return false;
    static constexpr std::array<int, 12> days = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    int max_day = days[static_cast<std::size_t>(d.month - 1)];
    bool leap = (d.year % 4 == 0 && d.year % 100 != 0) || d.year % 400 == 0;
    if (d.month == 2 && leap) max_day = 29;
    return d.day <= max_day;
}

std::optional<Date> parse_date(std::string_view iso) {
    // strict YYYY-MM-DD
    if (iso.size() != 10 || iso[4] != '-' || iso[7] != '-') return std::nullopt;
    auto digits = [](std::string_view s, int& out) {
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc{} && p == s.data() + s.size();
    };
    Date d;
    if (!digits(iso.substr(0, 4), d.year) || !digits(iso.substr(5, 2), d.month) ||
        !digits(iso.substr(8, 2), d.day))
        return std::nullopt;
    if (!valid_date(d)) return std::nullopt;
    return d;
}

std::string to_string(const Date& d) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
    return buf;
}

VoteMatrix::VoteMatrix(std::vector<Legislator> legislators, std::vector<RollCall> rollcalls)
    : legislators_(std::move(legislators)), rollcalls_(std::move(rollcalls)) {
    index_.reserve(legislators_.size());
    for (std::size_t i = 0; i < legislators_.size(); ++i) {
        auto [it, inserted] = index_.emplace(legislators_[i].id, i);
        if (!inserted)
            throw DataError("duplicate legislator id '" + legislators_[i].id + "'");
    }
    std::unordered_map<std::string, std::size_t> rc_ids;
    rc_ids.reserve(rollcalls_.size());
    for (const auto& rc : rollcalls_) {
        if (!rc_ids.emplace(rc.id, 0).second)
            throw DataError("duplicate rollcall id '" + rc.id + "'");
    }

    cells_.assign(legislators_.size() * rollcalls_.size(), kNoValue);
    for (std::size_t j = 0; j < rollcalls_.size(); ++j) {
        for (const auto& [leg_id, cast] : rollcalls_[j].casts) {
            auto it = index_.find(leg_id);
            if (it == index_.end())
                throw DataError("rollcall '" + rollcalls_[j].id + "' references unknown legislator '" +
                                leg_id + "'");
            if (auto v = cast_value(cast))
                cells_[it->second * rollcalls_.size() + j] = static_cast<std::int8_t>(*v);
        }
    }
}

std::optional<std::size_t> VoteMatrix::legislator_index(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<Cast> VoteMatrix::cast_at(std::size_t leg, std::size_t rc) const {
    const auto& casts = rollcalls_[rc].casts;
    auto it = casts.find(legislators_[leg].id);
    if (it == casts.end()) return std::nullopt;
    return it->second;
}

std::size_t VoteMatrix::participation_count(std::size_t leg) const {
    std::size_t count = 0;
    for (std::size_t j = 0; j < rollcalls_.size(); ++j)
        if (has_value(leg, j)) ++count;
    return count;
}

VoteMatrix filter_low_participation(const VoteMatrix& m, double threshold) {
    if (threshold < 0.0 || threshold > 1.0)
        throw ConfigError("participation threshold must be in [0,1]");

    std::vector<Legislator> kept;
    std::vector<bool> keep(m.n_legislators(), true);
    const double total = static_cast<double>(m.n_rollcalls());
    for (std::size_t i = 0; i < m.n_legislators(); ++i) {
        // participation as a fraction so that count 10 of 100 compares equal
        // to a threshold written as 0.10
        double frac = total > 0.0 ? static_cast<double>(m.participation_count(i)) / total : 1.0;
        keep[i] = frac >= threshold;
        if (keep[i]) kept.push_back(m.legislators()[i]);
    }

    std::vector<RollCall> rollcalls = m.rollcalls();
    for (auto& rc : rollcalls) {
        for (auto it = rc.casts.begin(); it != rc.casts.end();) {
            auto idx = m.legislator_index(it->first);
            if (idx && !keep[*idx])
                it = rc.casts.erase(it);
            else
                ++it;
        }
    }
    return VoteMatrix(std::move(kept), std::move(rollcalls));
}

PeriodPolicy PeriodPolicy::explicit_ranges(std::vector<PeriodRange> ranges) {
    if (ranges.empty()) throw ConfigError("explicit period policy needs at least one range");
    for (auto& r : ranges) {
        if (!valid_date(r.start) || !valid_date(r.end))
            throw ConfigError("invalid date in period range '" + r.label + "'");
        if (r.end < r.start)
            throw ConfigError("period range '" + r.label + "' ends before it starts");
        if (r.label.empty()) r.label = to_string(r.start) + ".." + to_string(r.end);
    }
    auto sorted = ranges;
    std::sort(sorted.begin(), sorted.end(),
              [](const PeriodRange& a, const PeriodRange& b) { return a.start < b.start; });
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (!(sorted[i - 1].end < sorted[i].start))
            throw ConfigError("period ranges '" + sorted[i - 1].label + "' and '" +
                              sorted[i].label + "' overlap");
    }
    PeriodPolicy p;
    p.kind = Kind::ExplicitRanges;
    p.ranges = std::move(ranges);
    return p;
}

std::vector<std::pair<PeriodKey, VoteMatrix>> slice_by_period(const VoteMatrix& m,
                                                              const PeriodPolicy& policy) {
    // label per rollcall, then group preserving first-occurrence order
    std::vector<std::string> labels(m.n_rollcalls());
    for (std::size_t j = 0; j < m.n_rollcalls(); ++j) {
        const RollCall& rc = m.rollcalls()[j];
        if (policy.kind == PeriodPolicy::Kind::CalendarYear) {
            labels[j] = std::to_string(rc.date.year);
        } else {
            const PeriodRange* hit = nullptr;
            for (const auto& r : policy.ranges) {
                if (!(rc.date < r.start) && !(r.end < rc.date)) {
                    hit = &r;
                    break;
                }
            }
            if (!hit)
                throw DataError("rollcall '" + rc.id + "' dated " + to_string(rc.date) +
                                " falls outside every period range");
            labels[j] = hit->label;
        }
    }

    std::vector<std::string> order;
    std::unordered_map<std::string, std::vector<std::size_t>> by_label;
    for (std::size_t j = 0; j < m.n_rollcalls(); ++j) {
        auto [it, inserted] = by_label.try_emplace(labels[j]);
        if (inserted) order.push_back(labels[j]);
        it->second.push_back(j);
    }

    std::vector<std::pair<PeriodKey, VoteMatrix>> slices;
    slices.reserve(order.size());
    for (const auto& label : order) {
        const auto& rc_idx = by_label[label];
        std::vector<Legislator> legs;
        std::vector<bool> keep(m.n_legislators(), false);
        for (std::size_t i = 0; i < m.n_legislators(); ++i) {
            for (std::size_t j : rc_idx) {
                if (m.has_value(i, j)) {
                    keep[i] = true;
                    break;
                }
            }
            if (keep[i]) legs.push_back(m.legislators()[i]);
        }
        std::vector<RollCall> rcs;
        rcs.reserve(rc_idx.size());
        for (std::size_t j : rc_idx) {
            RollCall rc = m.rollcalls()[j];
            for (auto it = rc.casts.begin(); it != rc.casts.end();) {
                auto idx = m.legislator_index(it->first);
                if (idx && !keep[*idx])
                    it = rc.casts.erase(it);
                else
                    ++it;
            }
            rcs.push_back(std::move(rc));
        }
        slices.emplace_back(PeriodKey{label}, VoteMatrix(std::move(legs), std::move(rcs)));
    }
    return slices;
}

} // namespace bcall
