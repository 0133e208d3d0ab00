#include "bcall/engine.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bcall {

RollCallStats rollcall_stats(const VoteMatrix& m, std::size_t rc_index, const GroupMap& groups) {
    RollCallStats st;
    st.rollcall_id = m.rollcalls()[rc_index].id;

    double sum = 0.0, left_sum = 0.0, right_sum = 0.0;
    std::size_t n = 0, n_left = 0, n_right = 0;
    for (std::size_t i = 0; i < m.n_legislators(); ++i) {
        auto v = m.value_at(i, rc_index);
        if (!v) continue;
        auto it = groups.find(m.legislators()[i].id);
        if (it == groups.end())
            throw DataError("legislator '" + m.legislators()[i].id +
                            "' participates in rollcall '" + st.rollcall_id +
                            "' but has no left/right assignment");
        sum += *v;
        ++n;
        if (it->second == Group::Left) {
            left_sum += *v;
            ++n_left;
        } else {
            right_sum += *v;
            ++n_right;
        }
    }

    st.n_participants = n;
    if (n == 0) {
        st.mean = st.stddev = std::numeric_limits<double>::quiet_NaN();
        st.orientation = Orientation::Dropped;
        return st;
    }

    st.mean = sum / static_cast<double>(n);
    double sq = 0.0;
    for (std::size_t i = 0; i < m.n_legislators(); ++i) {
        if (auto v = m.value_at(i, rc_index)) {
            double d = *v - st.mean;
            sq += d * d;
        }
    }
    st.stddev = std::sqrt(sq / static_cast<double>(n));
    if (n_left > 0) st.left_mean = left_sum / static_cast<double>(n_left);
    if (n_right > 0) st.right_mean = right_sum / static_cast<double>(n_right);

    if (st.stddev == 0.0 || !st.left_mean || !st.right_mean) {
        st.orientation = Orientation::Dropped;
    } else {
        st.tied = *st.left_mean == *st.right_mean;
        // the tie deliberately lands on the positive branch
        st.orientation =
            *st.left_mean <= *st.right_mean ? Orientation::Positive : Orientation::Negative;
    }
    return st;
}

double deviation(double vote_value, const RollCallStats& stats) {
    if (stats.orientation == Orientation::Dropped)
        throw std::logic_error("deviation() called on a dropped rollcall '" + stats.rollcall_id +
                               "'");
    double u = (vote_value - stats.mean) / stats.stddev;
    return stats.orientation == Orientation::Negative ? -u : u;
}

std::vector<DeviationSeries> deviation_series(const VoteMatrix& m, const GroupMap& groups) {
    std::vector<DeviationSeries> series(m.n_legislators());
    for (std::size_t i = 0; i < m.n_legislators(); ++i)
        series[i].legislator_id = m.legislators()[i].id;

    for (std::size_t j = 0; j < m.n_rollcalls(); ++j) {
        RollCallStats st = rollcall_stats(m, j, groups);
        if (st.orientation == Orientation::Dropped) continue;
        for (std::size_t i = 0; i < m.n_legislators(); ++i)
            if (auto v = m.value_at(i, j)) series[i].values.push_back(deviation(*v, st));
    }
    return series;
}

ScoreSet bcall_scores(const VoteMatrix& m, const GroupMap& groups, const PeriodKey& period) {
    ScoreSet out;
    out.stats.reserve(m.n_rollcalls());

    std::vector<DeviationSeries> series(m.n_legislators());
    for (std::size_t i = 0; i < m.n_legislators(); ++i)
        series[i].legislator_id = m.legislators()[i].id;

    for (std::size_t j = 0; j < m.n_rollcalls(); ++j) {
        RollCallStats st = rollcall_stats(m, j, groups);
        if (st.orientation == Orientation::Dropped) {
            ++out.dropped_rollcalls;
        } else {
            if (st.tied) ++out.tied_rollcalls;
            for (std::size_t i = 0; i < m.n_legislators(); ++i)
                if (auto v = m.value_at(i, j)) series[i].values.push_back(deviation(*v, st));
        }
        out.stats.push_back(std::move(st));
    }

    for (std::size_t i = 0; i < m.n_legislators(); ++i) {
        const auto& vals = series[i].values;
        if (vals.empty()) continue;
        const double n = static_cast<double>(vals.size());
        double sum = 0.0;
        for (double u : vals) sum += u;
        double d1 = sum / n;
        double sq = 0.0;
        for (double u : vals) {
            double d = u - d1;
            sq += d * d;
        }
        out.scores.push_back(BCallScore{m.legislators()[i].id, period.label, d1,
                                        std::sqrt(sq / n), vals.size()});
    }
    return out;
}

} // namespace bcall
