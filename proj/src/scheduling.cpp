#include "mcnoma/scheduling.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace mcnoma {

CostMatrix build_cost_matrix(const std::vector<VirtualUser>& users) {
  const std::size_t n = users.size();
  if (n < 2) {
    throw std::invalid_argument("cost matrix needs at least two virtual users");
  }
  CostMatrix m;
  m.size = n;
  m.values.assign(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    m.values[i * n + i] = solve_single(users[i]);
    for (std::size_t j = i + 1; j < n; ++j) {
      const double cost = solve_pair(users[i], users[j]).total;
      m.values[i * n + j] = cost;
      m.values[j * n + i] = cost;  // mirrored, bit-exact
    }
  }
  return m;
}

Dendrogram agglomerative_cluster(const CostMatrix& costs) {
  const int n = static_cast<int>(costs.size);
  if (n < 1) {
    throw std::invalid_argument("empty cost matrix");
  }
  Dendrogram dendro;
  dendro.leaf_count = n;
  if (n == 1) {
    dendro.leaf_order = {0};
    return dendro;
  }

  struct ActiveCluster {
    int node;
    int size;
    int min_leaf;
  };
  // The active list stays sorted by min_leaf: a merge replaces the earlier
  // slot, so the first strictly-smaller candidate found in (i, j) scan order
  // is also the tie-break winner (smallest contained leaf indices).
  std::vector<ActiveCluster> active;
  active.reserve(n);
  for (int i = 0; i < n; ++i) {
    active.push_back({i, 1, i});
  }
  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) {
        dist[i][j] = costs.at(i, j);
      }
    }
  }

  int next_node = n;
  while (active.size() > 1) {
    std::size_t bi = 0;
    std::size_t bj = 1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < active.size(); ++i) {
      for (std::size_t j = i + 1; j < active.size(); ++j) {
        if (dist[i][j] < best) {
          best = dist[i][j];
          bi = i;
          bj = j;
        }
      }
    }

    dendro.merges.push_back({active[bi].node, active[bj].node, best});
    const int size_i = active[bi].size;
    const int size_j = active[bj].size;
    // Average linkage: the merged cluster's distance to any other cluster is
    // the size-weighted mean, which equals the mean over all original
    // cross-pair costs.
    for (std::size_t k = 0; k < active.size(); ++k) {
      if (k == bi || k == bj) {
        continue;
      }
      const double merged = (size_i * dist[bi][k] + size_j * dist[bj][k]) / (size_i + size_j);
      dist[bi][k] = merged;
      dist[k][bi] = merged;
    }
    active[bi].node = next_node++;
    active[bi].size = size_i + size_j;
    active.erase(active.begin() + static_cast<std::ptrdiff_t>(bj));
    for (auto& row : dist) {
      row.erase(row.begin() + static_cast<std::ptrdiff_t>(bj));
    }
    dist.erase(dist.begin() + static_cast<std::ptrdiff_t>(bj));
  }

  dendro.leaf_order = leaf_order(dendro);
  return dendro;
}

std::vector<int> leaf_order(const Dendrogram& dendro) {
  const int n = dendro.leaf_count;
  if (n == 1) {
    return {0};
  }
  if (static_cast<int>(dendro.merges.size()) != n - 1) {
    throw std::invalid_argument("incomplete merge tree");
  }
  const int total_nodes = n + static_cast<int>(dendro.merges.size());
  std::vector<int> min_leaf(total_nodes);
  for (int i = 0; i < n; ++i) {
    min_leaf[i] = i;
  }
  for (std::size_t k = 0; k < dendro.merges.size(); ++k) {
    const auto& m = dendro.merges[k];
    min_leaf[n + k] = std::min(min_leaf[m.left], min_leaf[m.right]);
  }

  // A leaf has no formation height; it ranks after any merged subtree so the
  // point attached last at a node lands on the right.
  const auto height_key = [&](int node) {
    return node < n ? std::numeric_limits<double>::infinity() : dendro.merges[node - n].height;
  };

  std::vector<int> order;
  order.reserve(n);
  std::vector<int> stack{total_nodes - 1};
  while (!stack.empty()) {
    const int node = stack.back();
    stack.pop_back();
    if (node < n) {
      order.push_back(node);
      continue;
    }
    const auto& m = dendro.merges[node - n];
    int first = m.left;
    int second = m.right;
    const double key_first = height_key(first);
    const double key_second = height_key(second);
    if (key_first > key_second ||
        (key_first == key_second && min_leaf[first] > min_leaf[second])) {
      std::swap(first, second);
    }
    stack.push_back(second);  // LIFO: first is emitted first
    stack.push_back(first);
  }
  return order;
}

namespace {

// Candidate combination as indices into the virtual-user vector. Pairs are
// (low, high) with ascending first elements; singles ascend. This canonical
// form doubles as the lexicographic tie-break key.
struct Combination {
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> singles;

  bool operator<(const Combination& other) const {
    return std::tie(pairs, singles) < std::tie(other.pairs, other.singles);
  }
};

void check_load(std::size_t num_virtual, int num_subcarriers, int subcarriers_per_user) {
  if (num_subcarriers < 1) {
    throw std::invalid_argument("need at least one subcarrier");
  }
  const std::size_t m = static_cast<std::size_t>(num_subcarriers);
  if (!(num_virtual > m)) {
    throw std::invalid_argument("overload regime required: K*L must exceed M");
  }
  if (!(num_virtual <= 2 * m)) {
    throw std::invalid_argument("at most two users per subcarrier: K*L must be at most 2M");
  }
  if (subcarriers_per_user > num_subcarriers) {
    throw std::invalid_argument("each user needs its subcarriers on distinct carriers: L <= M");
  }
}

double combination_power(const Combination& combo, const CostMatrix& costs) {
  double total = 0;
  for (const auto& [i, j] : combo.pairs) {
    total += costs.at(i, j);
  }
  for (int i : combo.singles) {
    total += costs.at(i, i);
  }
  return total;
}

Schedule materialize(const Combination& combo, const std::vector<VirtualUser>& users,
                     const CostMatrix& costs) {
  Schedule schedule;
  schedule.entries.reserve(combo.pairs.size() + combo.singles.size());
  double total = 0;
  for (const auto& [i, j] : combo.pairs) {
    PairAssignment entry{users[i], users[j], solve_pair(users[i], users[j])};
    total += entry.solution.total;
    schedule.entries.emplace_back(std::move(entry));
  }
  for (int i : combo.singles) {
    SingleAssignment entry{users[i], costs.at(i, i)};
    total += entry.power_watts;
    schedule.entries.emplace_back(entry);
  }
  schedule.total_power = total;
  return schedule;
}

}  // namespace

Schedule schedule_proposed(const std::vector<UserProfile>& profiles, int num_subcarriers,
                           int subcarriers_per_user) {
  const auto users = make_virtual_users(profiles, subcarriers_per_user);
  check_load(users.size(), num_subcarriers, subcarriers_per_user);
  const CostMatrix costs = build_cost_matrix(users);
  const Dendrogram dendro = agglomerative_cluster(costs);
  const std::vector<int>& order = dendro.leaf_order;

  const int n = static_cast<int>(users.size());
  const int pair_count = n - num_subcarriers;
  std::vector<int> group_a(order.begin(), order.begin() + pair_count);
  std::vector<int> group_b(order.begin() + pair_count, order.begin() + 2 * pair_count);
  std::vector<int> singles(order.begin() + 2 * pair_count, order.end());

  // Repair pairs that landed on two replicas of one user: swap in the nearest
  // later partner, then the nearest earlier one, then the leftmost
  // compatible exclusive user. A swap must not create a conflict on either
  // side.
  const auto uid = [&](int v) { return users[v].user_id; };
  for (int t = 0; t < pair_count; ++t) {
    if (uid(group_a[t]) != uid(group_b[t])) {
      continue;
    }
    bool repaired = false;
    for (int u = t + 1; u < pair_count && !repaired; ++u) {
      if (uid(group_b[u]) != uid(group_a[t]) && uid(group_b[t]) != uid(group_a[u])) {
        std::swap(group_b[t], group_b[u]);
        repaired = true;
      }
    }
    for (int u = t - 1; u >= 0 && !repaired; --u) {
      if (uid(group_b[u]) != uid(group_a[t]) && uid(group_b[t]) != uid(group_a[u])) {
        std::swap(group_b[t], group_b[u]);
        repaired = true;
      }
    }
    for (std::size_t u = 0; u < singles.size() && !repaired; ++u) {
      if (uid(singles[u]) != uid(group_a[t])) {
        std::swap(group_b[t], singles[u]);
        repaired = true;
      }
    }
    if (!repaired) {
      throw std::logic_error("cannot pair user replicas apart");
    }
  }

  // Successive pairing meets its limits when the cheap half is itself
  // heterogeneous, so partner assignments are improved by pairwise swaps
  // while the total strictly decreases. Ties keep the successive assignment.
  bool improved = true;
  while (improved) {
    improved = false;
    for (int i = 0; i < pair_count; ++i) {
      for (int j = i + 1; j < pair_count; ++j) {
        if (uid(group_a[i]) == uid(group_b[j]) || uid(group_a[j]) == uid(group_b[i])) {
          continue;
        }
        const double current = costs.at(group_a[i], group_b[i]) + costs.at(group_a[j], group_b[j]);
        const double swapped = costs.at(group_a[i], group_b[j]) + costs.at(group_a[j], group_b[i]);
        if (swapped < current - 1e-15 * current) {
          std::swap(group_b[i], group_b[j]);
          improved = true;
        }
      }
    }
  }

  Combination combo;
  combo.pairs.reserve(pair_count);
  for (int t = 0; t < pair_count; ++t) {
    combo.pairs.emplace_back(group_a[t], group_b[t]);
  }
  combo.singles = singles;
  return materialize(combo, users, costs);
}

std::uint64_t count_combinations(int num_users, int num_subcarriers) {
  const int k = num_users;
  const int m = num_subcarriers;
  if (m < 1 || k <= m || k > 2 * m) {
    throw std::domain_error("combination count requires M < K <= 2M");
  }
  const int singles = 2 * m - k;
  const int pairs = k - m;
  const auto mul_checked = [](std::uint64_t x, std::uint64_t y) {
    if (y != 0 && x > std::numeric_limits<std::uint64_t>::max() / y) {
      throw std::overflow_error("combination count overflows 64 bits");
    }
    return x * y;
  };
  std::uint64_t result = 1;
  for (int i = 1; i <= singles; ++i) {  // C(k, singles), exact at every step
    result = mul_checked(result, static_cast<std::uint64_t>(k - singles + i)) /
             static_cast<std::uint64_t>(i);
  }
  for (int i = 1; i <= pairs; ++i) {  // perfect matchings of the remaining 2*pairs users
    result = mul_checked(result, static_cast<std::uint64_t>(2 * i - 1));
  }
  return result;
}

Schedule schedule_exhaustive(const std::vector<UserProfile>& profiles, int num_subcarriers,
                             int subcarriers_per_user, std::uint64_t* combinations_visited) {
  const auto users = make_virtual_users(profiles, subcarriers_per_user);
  const int n = static_cast<int>(users.size());
  check_load(users.size(), num_subcarriers, subcarriers_per_user);
  const std::uint64_t candidates = count_combinations(n, num_subcarriers);
  if (candidates > kExhaustiveSearchLimit) {
    throw std::invalid_argument("full search refused: " + std::to_string(candidates) +
                                " candidate combinations exceed the limit of " +
                                std::to_string(kExhaustiveSearchLimit));
  }
  const CostMatrix costs = build_cost_matrix(users);
  const int single_count = 2 * num_subcarriers - n;
  const bool forbid_self_pairs = subcarriers_per_user > 1;

  std::uint64_t visited = 0;
  double best_power = std::numeric_limits<double>::infinity();
  Combination best;
  Combination current;
  std::vector<char> used(n, 0);

  const auto evaluate = [&] {
    ++visited;
    const double power = combination_power(current, costs);
    if (power < best_power || (power == best_power && current < best)) {
      best_power = power;
      best = current;
    }
  };

  const auto match_rest = [&](auto&& self) -> void {
    int first = -1;
    for (int i = 0; i < n; ++i) {
      if (!used[i]) {
        first = i;
        break;
      }
    }
    if (first < 0) {
      evaluate();
      return;
    }
    used[first] = 1;
    for (int j = first + 1; j < n; ++j) {
      if (used[j] || (forbid_self_pairs && users[first].user_id == users[j].user_id)) {
        continue;
      }
      used[j] = 1;
      current.pairs.emplace_back(first, j);
      self(self);
      current.pairs.pop_back();
      used[j] = 0;
    }
    used[first] = 0;
  };

  const auto choose_singles = [&](auto&& self, int start, int remaining) -> void {
    if (remaining == 0) {
      match_rest(match_rest);
      return;
    }
    for (int i = start; i <= n - remaining; ++i) {
      used[i] = 1;
      current.singles.push_back(i);
      self(self, i + 1, remaining - 1);
      current.singles.pop_back();
      used[i] = 0;
    }
  };

  choose_singles(choose_singles, 0, single_count);

  if (combinations_visited != nullptr) {
    *combinations_visited = visited;
  }
  if (!std::isfinite(best_power)) {
    throw std::logic_error("no valid combination exists for this load");
  }
  return materialize(best, users, costs);
}

Schedule schedule_random(const std::vector<UserProfile>& profiles, int num_subcarriers,
                         int subcarriers_per_user, Rng& rng) {
  const auto users = make_virtual_users(profiles, subcarriers_per_user);
  const int n = static_cast<int>(users.size());
  check_load(users.size(), num_subcarriers, subcarriers_per_user);
  const CostMatrix costs = build_cost_matrix(users);
  const int single_count = 2 * num_subcarriers - n;
  const bool forbid_self_pairs = subcarriers_per_user > 1;

  constexpr int kMaxAttempts = 1'000'000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<int> indices(n);
    for (int i = 0; i < n; ++i) {
      indices[i] = i;
    }
    // Uniform exclusive subset via partial shuffle.
    for (int i = 0; i < single_count; ++i) {
      const auto pick = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(n - i)));
      std::swap(indices[i], indices[i + pick]);
    }
    Combination combo;
    combo.singles.assign(indices.begin(), indices.begin() + single_count);
    std::sort(combo.singles.begin(), combo.singles.end());

    std::vector<int> pool(indices.begin() + single_count, indices.end());
    std::sort(pool.begin(), pool.end());
    bool valid = true;
    while (!pool.empty()) {
      const int first = pool.front();
      pool.erase(pool.begin());
      const auto pick = static_cast<std::size_t>(rng.uniform_index(pool.size()));
      const int partner = pool[pick];
      pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
      if (forbid_self_pairs && users[first].user_id == users[partner].user_id) {
        valid = false;
        break;
      }
      combo.pairs.emplace_back(first, partner);
    }
    if (!valid) {
      continue;
    }
    return materialize(combo, users, costs);
  }
  throw std::runtime_error("could not draw a valid random schedule");
}

}  // namespace mcnoma
