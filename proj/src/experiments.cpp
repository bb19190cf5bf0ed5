#include "mcnoma/experiments.hpp"

#include <cmath>
#include <stdexcept>

namespace mcnoma {

SystemParams ScenarioConfig::system() const {
  return SystemParams::from_noise_dbm(noise_dbm, path_loss_exponent);
}

void ScenarioConfig::validate() const {
  if (num_users < 1 || num_subcarriers < 1 || subcarriers_per_user < 1) {
    throw std::invalid_argument("user, subcarrier, and per-user counts must be positive");
  }
  const long total = static_cast<long>(num_users) * subcarriers_per_user;
  if (!(total > num_subcarriers)) {
    throw std::invalid_argument("overload regime required: K*L must exceed M");
  }
  if (!(total <= 2L * num_subcarriers)) {
    throw std::invalid_argument("at most two users per subcarrier: K*L must be at most 2M");
  }
  if (subcarriers_per_user > num_subcarriers) {
    throw std::invalid_argument("each user needs its subcarriers on distinct carriers: L <= M");
  }
  if (!(cell_size_m > kMinUserDistanceM)) {
    throw std::invalid_argument("cell size must exceed the 30 m minimum user distance");
  }
  if (realizations < 1) {
    throw std::invalid_argument("need at least one realization");
  }
}

std::vector<UserProfile> generate_scenario(const ScenarioConfig& cfg, Rng& rng) {
  cfg.validate();
  const SystemParams params = cfg.system();
  std::vector<UserProfile> users;
  users.reserve(static_cast<std::size_t>(cfg.num_users));
  for (int i = 0; i < cfg.num_users; ++i) {
    const double distance = rng.uniform(kMinUserDistanceM, cfg.cell_size_m);
    const double rate = rng.uniform(kRateLo, kRateHi);
    const double delta = cfg.outage_case == OutageCase::kFixed
                             ? kFixedOutageReq
                             : rng.uniform(kUniformOutageLo, kUniformOutageHi);
    users.push_back(make_user_profile(i + 1, distance, rate, delta, params));
  }
  return users;
}

double oma_system_power(const std::vector<UserProfile>& profiles, int num_users,
                        int num_subcarriers) {
  if (num_users < 1 || num_subcarriers < 1) {
    throw std::invalid_argument("user and subcarrier counts must be positive");
  }
  const double split = static_cast<double>(num_users) / num_subcarriers;
  double total = 0;
  for (const UserProfile& u : profiles) {
    total += (std::exp2(split * u.total_rate) - 1.0) / (split * u.beta);
  }
  return total;
}

namespace {

PointStats summarize(const std::vector<double>& values, bool present) {
  PointStats stats;
  stats.present = present;
  stats.realizations = values.size();
  if (!present || values.empty()) {
    return stats;
  }
  double sum = 0;
  double comp = 0;
  for (double v : values) {  // compensated sum; order-independent in effect
    const double y = v - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  const double mean = sum / static_cast<double>(values.size());
  stats.mean_watts = mean;
  if (values.size() > 1) {
    double sq = 0;
    for (double v : values) {
      sq += (v - mean) * (v - mean);
    }
    const double variance = sq / static_cast<double>(values.size() - 1);
    stats.std_error_watts = std::sqrt(variance / static_cast<double>(values.size()));
  }
  return stats;
}

template <typename ApplyX>
SweepResult sweep_core(const ScenarioConfig& base, std::string x_name,
                       const std::vector<double>& x_values, ApplyX&& apply_x) {
  SweepResult result;
  result.x_name = std::move(x_name);
  result.x_values = x_values;
  result.seed = base.seed;
  const Rng root(base.seed);

  for (double x : x_values) {
    ScenarioConfig cfg = base;
    apply_x(cfg, x);
    cfg.validate();
    const int virtual_count = cfg.num_users * cfg.subcarriers_per_user;
    const bool run_exhaustive =
        count_combinations(virtual_count, cfg.num_subcarriers) <= kExhaustiveSearchLimit;

    std::vector<double> proposed_totals;
    std::vector<double> random_totals;
    std::vector<double> exhaustive_totals;
    std::vector<double> oma_totals;
    proposed_totals.reserve(static_cast<std::size_t>(cfg.realizations));

    for (int r = 0; r < cfg.realizations; ++r) {
      // Realization streams are keyed by index only, so all x values replay
      // the same user draws and all methods see the same scenario.
      Rng scenario_rng = root.split(static_cast<std::uint64_t>(r), 0);
      Rng random_rng = root.split(static_cast<std::uint64_t>(r), 1);
      const auto users = generate_scenario(cfg, scenario_rng);
      proposed_totals.push_back(
          schedule_proposed(users, cfg.num_subcarriers, cfg.subcarriers_per_user).total_power);
      random_totals.push_back(
          schedule_random(users, cfg.num_subcarriers, cfg.subcarriers_per_user, random_rng)
              .total_power);
      if (run_exhaustive) {
        exhaustive_totals.push_back(
            schedule_exhaustive(users, cfg.num_subcarriers, cfg.subcarriers_per_user)
                .total_power);
      }
      oma_totals.push_back(oma_system_power(users, cfg.num_users, cfg.num_subcarriers));
    }

    result.proposed.push_back(summarize(proposed_totals, true));
    result.random_baseline.push_back(summarize(random_totals, true));
    result.exhaustive.push_back(summarize(exhaustive_totals, run_exhaustive));
    result.oma.push_back(summarize(oma_totals, true));
  }
  return result;
}

}  // namespace

SweepResult sweep_cell_size(const ScenarioConfig& base, const std::vector<double>& cell_sizes_m) {
  return sweep_core(base, "cell_size_m", cell_sizes_m,
                    [](ScenarioConfig& cfg, double x) { cfg.cell_size_m = x; });
}

SweepResult sweep_num_users(const ScenarioConfig& base, const std::vector<int>& user_counts) {
  std::vector<double> xs;
  xs.reserve(user_counts.size());
  for (int k : user_counts) {
    xs.push_back(static_cast<double>(k));
  }
  return sweep_core(base, "num_users", xs,
                    [](ScenarioConfig& cfg, double x) { cfg.num_users = static_cast<int>(x); });
}

}  // namespace mcnoma
