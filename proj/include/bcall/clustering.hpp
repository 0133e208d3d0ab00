#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bcall/model.hpp"

namespace bcall {

// Symmetric legislator-pair distances, dense n x n. Distances average |v_x - v_y|
// over rollcalls where both casts are non-absent; pairs sharing no rollcall get
// the maximum distance 2 and a shared count of 0.
struct DistanceMatrix {
    std::size_t n = 0;
    std::vector<double> dist;            // n*n row-major
    std::vector<std::uint32_t> shared;   // co-voted rollcall counts

    double at(std::size_t i, std::size_t j) const { return dist[i * n + j]; }
    std::uint32_t shared_at(std::size_t i, std::size_t j) const { return shared[i * n + j]; }
};

DistanceMatrix pairwise_distance(const VoteMatrix& m);

struct PolarityPartition {
    GroupMap assignment;                 // every legislator -> Left/Right, both poles non-empty
    std::vector<double> centroid_left;   // per-rollcall mean of members' votes; NaN = no member voted
    std::vector<double> centroid_right;
    std::size_t iterations = 0;          // refinement sweeps executed
    bool converged = false;
    std::size_t refused_moves = 0;       // moves refused to keep both poles non-empty
    std::string seed_x, seed_y;          // the maximally distant founding pair
};

// Distance between a legislator and a real-valued centroid vector: mean of
// |v - c| over rollcalls where the legislator voted and the centroid is
// defined; 2 when there is no overlap.
double centroid_distance(const VoteMatrix& m, std::size_t leg, std::span<const double> centroid);

// Grows two clusters from the maximally distant pair, assigning at each step
// the unclustered legislator globally closest to a centroid (centroids are
// recomputed after every assignment). Ties prefer the earliest legislator in
// input order, then the x cluster. The x cluster is provisionally labeled Left.
PolarityPartition agglomerate(const VoteMatrix& m, const DistanceMatrix& d);

// Sweeps until no legislator is strictly closer to the opposite centroid, or
// until max_iters sweeps. Moves are batched per sweep against start-of-sweep
// centroids; a move that would empty a pole is refused and counted.
PolarityPartition refine(PolarityPartition p, const VoteMatrix& m, std::size_t max_iters);

// Fixes the Left/Right naming: the anchor's cluster becomes Left, or, without
// an anchor, the cluster currently containing the founding legislator x'.
PolarityPartition orient_labels(PolarityPartition p, const std::optional<std::string>& anchor_left);

} // namespace bcall
