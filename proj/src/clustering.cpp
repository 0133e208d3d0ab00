#include "bcall/clustering.hpp"

#include <cmath>
#include <limits>

namespace bcall {

namespace {

constexpr double kMaxDistance = 2.0;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double legislator_pair_distance(const VoteMatrix& m, std::size_t a, std::size_t b,
                                std::uint32_t& shared) {
    double sum = 0.0;
    std::uint32_t count = 0;
    for (std::size_t j = 0; j < m.n_rollcalls(); ++j) {
        auto va = m.value_at(a, j);
        if (!va) continue;
        auto vb = m.value_at(b, j);
        if (!vb) continue;
        sum += std::abs(*va - *vb);
        ++count;
    }
    shared = count;
    return count > 0 ? sum / count : kMaxDistance;
}

// Per-rollcall mean of member votes; NaN where no member voted.
std::vector<double> compute_centroid(const VoteMatrix& m, const std::vector<std::size_t>& members) {
    std::vector<double> c(m.n_rollcalls(), kNaN);
    for (std::size_t j = 0; j < m.n_rollcalls(); ++j) {
        double sum = 0.0;
        std::size_t n = 0;
        for (std::size_t i : members) {
            if (auto v = m.value_at(i, j)) {
                sum += *v;
                ++n;
            }
        }
        if (n > 0) c[j] = sum / static_cast<double>(n);
    }
    return c;
}

std::vector<std::size_t> members_of(const VoteMatrix& m, const GroupMap& assignment, Group g) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < m.n_legislators(); ++i) {
        auto it = assignment.find(m.legislators()[i].id);
        if (it != assignment.end() && it->second == g) out.push_back(i);
    }
    return out;
}

} // namespace

DistanceMatrix pairwise_distance(const VoteMatrix& m) {
    const std::size_t n = m.n_legislators();
    if (n < 2) throw DataError("pairwise_distance needs at least 2 legislators");
    DistanceMatrix d;
    d.n = n;
    d.dist.assign(n * n, 0.0);
    d.shared.assign(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        d.shared[i * n + i] = static_cast<std::uint32_t>(m.participation_count(i));
        for (std::size_t j = i + 1; j < n; ++j) {
            std::uint32_t shared = 0;
            double dist = legislator_pair_distance(m, i, j, shared);
            d.dist[i * n + j] = d.dist[j * n + i] = dist;
            d.shared[i * n + j] = d.shared[j * n + i] = shared;
        }
    }
    return d;
}

double centroid_distance(const VoteMatrix& m, std::size_t leg, std::span<const double> centroid) {
    double sum = 0.0;
    std::size_t count = 0;
    for (std::size_t j = 0; j < m.n_rollcalls(); ++j) {
        if (std::isnan(centroid[j])) continue;
        if (auto v = m.value_at(leg, j)) {
            sum += std::abs(*v - centroid[j]);
            ++count;
        }
    }
    return count > 0 ? sum / static_cast<double>(count) : kMaxDistance;
}

PolarityPartition agglomerate(const VoteMatrix& m, const DistanceMatrix& d) {
    const std::size_t n = m.n_legislators();
    if (n < 2) throw DataError("cannot bipartition fewer than 2 legislators");

    // founding pair: maximal distance, earliest (i, j) on ties
    std::size_t seed_x = 0, seed_y = 1;
    double best = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (d.at(i, j) > best) {
                best = d.at(i, j);
                seed_x = i;
                seed_y = j;
            }
        }
    }

    std::vector<std::size_t> cx = {seed_x}, cy = {seed_y};
    std::vector<bool> assigned(n, false);
    assigned[seed_x] = assigned[seed_y] = true;
    std::size_t remaining = n - 2;

    std::vector<double> cent_x, cent_y;
    while (remaining > 0) {
        cent_x = compute_centroid(m, cx);
        cent_y = compute_centroid(m, cy);

        std::size_t best_leg = n;
        int best_cluster = 0;
        double best_dist = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            if (assigned[i]) continue;
            double dx = centroid_distance(m, i, cent_x);
            double dy = centroid_distance(m, i, cent_y);
            if (dx < best_dist) {
                best_dist = dx;
                best_leg = i;
                best_cluster = 0;
            }
            if (dy < best_dist) {
                best_dist = dy;
                best_leg = i;
                best_cluster = 1;
            }
        }
        (best_cluster == 0 ? cx : cy).push_back(best_leg);
        assigned[best_leg] = true;
        --remaining;
    }

    PolarityPartition p;
    for (std::size_t i : cx) p.assignment[m.legislators()[i].id] = Group::Left;
    for (std::size_t i : cy) p.assignment[m.legislators()[i].id] = Group::Right;
    p.centroid_left = compute_centroid(m, cx);
    p.centroid_right = compute_centroid(m, cy);
    p.seed_x = m.legislators()[seed_x].id;
    p.seed_y = m.legislators()[seed_y].id;
    return p;
}

PolarityPartition refine(PolarityPartition p, const VoteMatrix& m, std::size_t max_iters) {
    p.iterations = 0;
    p.converged = false;
    if (max_iters == 0) return p;

    for (std::size_t sweep = 0; sweep < max_iters; ++sweep) {
        auto left = members_of(m, p.assignment, Group::Left);
        auto right = members_of(m, p.assignment, Group::Right);
        p.centroid_left = compute_centroid(m, left);
        p.centroid_right = compute_centroid(m, right);
        ++p.iterations;

        // batch: everyone strictly closer to the opposite centroid moves
        std::size_t n_left = left.size(), n_right = right.size();
        std::size_t moved = 0;
        for (std::size_t i = 0; i < m.n_legislators(); ++i) {
            auto it = p.assignment.find(m.legislators()[i].id);
            if (it == p.assignment.end()) continue;
            double d_left = centroid_distance(m, i, p.centroid_left);
            double d_right = centroid_distance(m, i, p.centroid_right);
            Group own = it->second;
            double d_own = own == Group::Left ? d_left : d_right;
            double d_other = own == Group::Left ? d_right : d_left;
            if (d_other < d_own) {
                std::size_t& source = own == Group::Left ? n_left : n_right;
                if (source == 1) {
                    ++p.refused_moves;
                    continue;
                }
                --source;
                ++(own == Group::Left ? n_right : n_left);
                it->second = opposite(own);
                ++moved;
            }
        }

        if (moved == 0) {
            p.converged = true;
            break;
        }
    }

    // final centroids reflect the returned assignment
    p.centroid_left = compute_centroid(m, members_of(m, p.assignment, Group::Left));
    p.centroid_right = compute_centroid(m, members_of(m, p.assignment, Group::Right));
    return p;
}

PolarityPartition orient_labels(PolarityPartition p, const std::optional<std::string>& anchor_left) {
    std::string target = anchor_left ? *anchor_left : p.seed_x;
    auto it = p.assignment.find(target);
    if (it == p.assignment.end())
        throw DataError("anchor legislator '" + target + "' is not in the partition");
    if (it->second == Group::Right) {
        for (auto& [id, g] : p.assignment) g = opposite(g);
        std::swap(p.centroid_left, p.centroid_right);
    }
    return p;
}

} // namespace bcall
