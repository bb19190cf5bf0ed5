#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcnoma/channel.hpp"
#include "mcnoma/scheduling.hpp"

namespace mcnoma {

// Outage-requirement regimes used by the scenario generator.
enum class OutageCase {
  kFixed = 1,    // every user at delta = 1e-2
  kUniform = 2,  // delta drawn from U[1e-5, 0.1] per user
};

inline constexpr double kFixedOutageReq = 1e-2;
inline constexpr double kUniformOutageLo = 1e-5;
inline constexpr double kUniformOutageHi = 0.1;
inline constexpr double kMinUserDistanceM = 30.0;
inline constexpr double kRateLo = 0.1;
inline constexpr double kRateHi = 10.0;

struct ScenarioConfig {
  int num_users = 4;
  int num_subcarriers = 5;
  int subcarriers_per_user = 2;
  double cell_size_m = 200.0;
  OutageCase outage_case = OutageCase::kFixed;
  double noise_dbm = -128.0;
  double path_loss_exponent = 3.6;
  int realizations = 1000;
  std::uint64_t seed = 1;

  SystemParams system() const;
  void validate() const;
};

// K users with distance ~ U[30, D], total rate ~ U[0.1, 10] bit/s/Hz and the
// outage requirement of the configured case; ids are 1..K.
std::vector<UserProfile> generate_scenario(const ScenarioConfig& cfg, Rng& rng);

// Orthogonal baseline for the whole system: the band is split equally among
// the K users, concentrating each user's rate by a factor K/M relative to
// the shared-subcarrier layout.
double oma_system_power(const std::vector<UserProfile>& profiles, int num_users,
                        int num_subcarriers);

struct PointStats {
  double mean_watts = 0;
  double std_error_watts = 0;
  std::size_t realizations = 0;
  bool present = false;
};

// Mean total power per method along one sweep axis. All methods within one
// realization consume the same user draw; realization streams are addressed
// by index, so every x value replays identical scenarios.
struct SweepResult {
  std::string x_name;
  std::vector<double> x_values;
  std::vector<PointStats> proposed;
  std::vector<PointStats> random_baseline;
  std::vector<PointStats> exhaustive;  // absent where the search would exceed its limit
  std::vector<PointStats> oma;
  std::uint64_t seed = 0;
};

SweepResult sweep_cell_size(const ScenarioConfig& base, const std::vector<double>& cell_sizes_m);
SweepResult sweep_num_users(const ScenarioConfig& base, const std::vector<int>& user_counts);

}  // namespace mcnoma
