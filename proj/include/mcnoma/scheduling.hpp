#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "mcnoma/power.hpp"
#include "mcnoma/rng.hpp"

namespace mcnoma {

// Symmetric pairing-cost table over virtual users: off-diagonal entries are
// minimum pair powers, diagonal entries are exclusive-use powers.
struct CostMatrix {
  std::size_t size = 0;
  std::vector<double> values;  // row-major, size x size

  double at(std::size_t i, std::size_t j) const { return values[i * size + j]; }
};

CostMatrix build_cost_matrix(const std::vector<VirtualUser>& users);

// Merge tree from bottom-up average-linkage clustering. Node ids follow the
// leaves-then-merges convention: 0..n-1 are leaves, n+k is the k-th merge.
struct DendrogramMerge {
  int left = 0;
  int right = 0;
  double height = 0;  // average pairing cost between the merged clusters
};

struct Dendrogram {
  int leaf_count = 0;
  std::vector<DendrogramMerge> merges;  // n-1 entries, heights nondecreasing
  std::vector<int> leaf_order;          // planar embedding, see leaf_order()
};

// Average linkage: the distance between two clusters is the arithmetic mean
// of all cross-pair costs. Merge ties resolve toward the clusters containing
// the smallest leaf indices, making the tree deterministic.
Dendrogram agglomerative_cluster(const CostMatrix& costs);

// Deterministic planar embedding of the merge tree: at every internal node
// the earlier-formed (lower) subtree goes left and the newly attached leaf
// or later-formed cluster goes right; ties resolve toward the smallest
// contained leaf index. Cheap-to-pair users therefore end up leftmost and
// isolated, expensive users rightmost.
std::vector<int> leaf_order(const Dendrogram& dendro);

struct SingleAssignment {
  VirtualUser user;
  double power_watts = 0;
};

struct PairAssignment {
  VirtualUser a;
  VirtualUser b;
  PairSolution solution;
};

using ScheduleEntry = std::variant<SingleAssignment, PairAssignment>;

// Complete assignment of pairs and singles to subcarriers (entry index =
// subcarrier). In the overload regime this is KL-M pairs and 2M-KL singles,
// with every virtual user appearing exactly once.
struct Schedule {
  std::vector<ScheduleEntry> entries;
  double total_power = 0;
};

// Clustering-guided heuristic: order virtual users by the dendrogram
// embedding, keep the rightmost (expensive) ones exclusive, and pair the
// left block first-half against second-half in successive order. Pairs that
// would put two replicas of one user on a subcarrier are repaired by
// swapping partners, and partner assignments then take pairwise swaps while
// the total power strictly decreases (ties keep the successive assignment).
Schedule schedule_proposed(const std::vector<UserProfile>& profiles, int num_subcarriers,
                           int subcarriers_per_user);

// Number of candidate combinations (choice of exclusive users times perfect
// matchings of the rest) for K single-subcarrier users over M subcarriers.
std::uint64_t count_combinations(int num_users, int num_subcarriers);

inline constexpr std::uint64_t kExhaustiveSearchLimit = 10'000'000;

// Full search over every candidate combination; refuses when the candidate
// count exceeds kExhaustiveSearchLimit. combinations_visited, when non-null,
// receives the number of evaluated candidates.
Schedule schedule_exhaustive(const std::vector<UserProfile>& profiles, int num_subcarriers,
                             int subcarriers_per_user,
                             std::uint64_t* combinations_visited = nullptr);

// Uniformly sampled valid combination: uniform exclusive-user subset, then a
// perfect matching built by pairing the lowest-indexed open user with a
// uniform partner. Draws that pair a user with itself are rejected and
// resampled, which keeps the distribution uniform over valid combinations.
Schedule schedule_random(const std::vector<UserProfile>& profiles, int num_subcarriers,
                         int subcarriers_per_user, Rng& rng);

}  // namespace mcnoma
