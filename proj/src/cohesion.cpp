#include "bcall/cohesion.hpp"

#include <cmath>
#include <map>
#include <unordered_map>

namespace bcall {

namespace {

// Tallies per (group label, rollcall), rollcall order preserved, groups in
// first-appearance order within each rollcall.
std::vector<GroupVoteTally> tally_by(const VoteMatrix& m,
                                     const std::vector<std::optional<std::string>>& label_per_leg) {
    std::vector<GroupVoteTally> out;
    for (std::size_t j = 0; j < m.n_rollcalls(); ++j) {
        std::vector<std::string> order;
        std::unordered_map<std::string, GroupVoteTally> acc;
        for (std::size_t i = 0; i < m.n_legislators(); ++i) {
            if (!label_per_leg[i]) continue;
            auto cast = m.cast_at(i, j);
            if (!cast || *cast == Cast::Absent) continue;
            auto [it, inserted] = acc.try_emplace(*label_per_leg[i]);
            if (inserted) {
                it->second.group = *label_per_leg[i];
                it->second.rollcall_id = m.rollcalls()[j].id;
                order.push_back(*label_per_leg[i]);
            }
            switch (*cast) {
            case Cast::Yea: ++it->second.yea; break;
            case Cast::Nay: ++it->second.nay; break;
            case Cast::Abstain: ++it->second.abstain; break;
            case Cast::Absent: break;
            }
        }
        for (const auto& g : order) out.push_back(acc[g]);
    }
    return out;
}

double rice_of(const GroupVoteTally& t) {
    double y = static_cast<double>(t.yea), n = static_cast<double>(t.nay);
    return std::abs(y - n) / (y + n);
}

} // namespace

std::vector<GroupVoteTally> tally_by_party(const VoteMatrix& m) {
    std::vector<std::optional<std::string>> labels(m.n_legislators());
    for (std::size_t i = 0; i < m.n_legislators(); ++i)
        if (!m.legislators()[i].party.empty()) labels[i] = m.legislators()[i].party;
    return tally_by(m, labels);
}

std::vector<GroupVoteTally> tally_by_bloc(const VoteMatrix& m, const GroupMap& groups) {
    std::vector<std::optional<std::string>> labels(m.n_legislators());
    for (std::size_t i = 0; i < m.n_legislators(); ++i) {
        auto it = groups.find(m.legislators()[i].id);
        if (it != groups.end()) labels[i] = to_string(it->second);
    }
    return tally_by(m, labels);
}

std::vector<GroupVoteTally> chamber_tallies(const VoteMatrix& m) {
    std::vector<std::optional<std::string>> labels(m.n_legislators(), std::string());
    return tally_by(m, labels);
}

std::optional<double> rice_index(const std::vector<GroupVoteTally>& tallies) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const auto& t : tallies) {
        if (t.yea + t.nay == 0) continue;
        sum += rice_of(t);
        ++n;
    }
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
}

std::optional<double> unity_index(const std::vector<GroupVoteTally>& group_tallies,
                                  const std::vector<GroupVoteTally>& chamber) {
    std::unordered_map<std::string, const GroupVoteTally*> by_id;
    by_id.reserve(chamber.size());
    for (const auto& t : chamber) by_id[t.rollcall_id] = &t;

    double weighted = 0.0, weight_sum = 0.0;
    for (const auto& t : group_tallies) {
        if (t.yea + t.nay == 0) continue;
        auto it = by_id.find(t.rollcall_id);
        if (it == by_id.end() || it->second->yea + it->second->nay == 0) continue;
        double w = 1.0 - rice_of(*it->second);
        if (w <= 0.0) continue;
        weighted += w * rice_of(t);
        weight_sum += w;
    }
    if (weight_sum == 0.0) return std::nullopt;
    return weighted / weight_sum;
}

GroupIndexSeries make_index_series(const std::string& group, const std::string& period,
                                   const std::vector<GroupVoteTally>& group_tallies,
                                   const std::vector<GroupVoteTally>& chamber) {
    GroupIndexSeries s;
    s.group = group;
    s.period = period;
    s.rice = rice_index(group_tallies);
    s.unity = unity_index(group_tallies, chamber);
    for (const auto& t : group_tallies)
        if (t.yea + t.nay > 0) ++s.n_rollcalls;
    return s;
}

CohesionComparison cohesion_comparison(const std::vector<GroupedScore>& scores,
                                       const std::vector<GroupIndexSeries>& indices) {
    // mean d2 per cell; std::map keeps cell order deterministic
    std::map<std::pair<std::string, std::string>, std::pair<double, std::size_t>> cells;
    for (const auto& s : scores) {
        auto& acc = cells[{s.group, s.period}];
        acc.first += s.d2;
        acc.second += 1;
    }

    std::map<std::pair<std::string, std::string>, const GroupIndexSeries*> index_of;
    for (const auto& idx : indices) index_of[{idx.group, idx.period}] = &idx;

    std::vector<double> d2_rice, rice, d2_unity, unity;
    std::size_t matched = 0;
    for (const auto& [key, acc] : cells) {
        auto it = index_of.find(key);
        if (it == index_of.end()) continue;
        ++matched;
        double mean_d2 = acc.first / static_cast<double>(acc.second);
        if (it->second->rice) {
            d2_rice.push_back(mean_d2);
            rice.push_back(*it->second->rice);
        }
        if (it->second->unity) {
            d2_unity.push_back(mean_d2);
            unity.push_back(*it->second->unity);
        }
    }
    if (matched < 3) throw DataError("insufficient aggregation cells (" + std::to_string(matched) +
                                     " matched, need at least 3)");

    CohesionComparison out;
    out.n_cells = matched;
    out.vs_rice = correlation_report(d2_rice, rice);
    out.vs_unity = correlation_report(d2_unity, unity);
    return out;
}

} // namespace bcall
