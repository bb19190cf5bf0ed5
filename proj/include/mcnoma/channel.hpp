#pragma once

#include "mcnoma/rng.hpp"

namespace mcnoma {

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

// Per-subcarrier noise power and path loss exponent, shared by all users.
struct SystemParams {
  double noise_power_watts = 0;
  double path_loss_exponent = 0;

  static SystemParams from_noise_dbm(double noise_dbm, double path_loss_exponent);
};

// Mean-gain factor 1/(1 + d^alpha). Distance 0 is allowed here as a boundary
// value for the bare math; user profiles reject it.
double path_attenuation(double distance_m, const SystemParams& params);

// P(|h|^2 <= x) for a Rayleigh-faded link at the given distance:
// 1 - exp(-(1 + d^alpha) x).
double channel_gain_cdf(double x, double distance_m, const SystemParams& params);

// QoS stringency coefficient -ln(1 - outage_req) / (noise * (1 + d^alpha)),
// in 1/W. A larger value means a cheaper-to-serve user (closer to the base
// station, or with a looser outage requirement).
double compute_beta(double distance_m, double outage_req, const SystemParams& params);

// One |h|^2 draw: exponential with rate (1 + d^alpha).
double sample_channel_gain(double distance_m, const SystemParams& params, Rng& rng);

// A downlink user: location, total rate demand, outage requirement, and the
// derived stringency coefficient.
struct UserProfile {
  int id = 0;
  double distance_m = 0;
  double total_rate = 0;  // bit/s/Hz summed over the user's subcarriers
  double outage_req = 0;  // tolerated outage probability, in (0, 1)
  double beta = 0;        // 1/W, derived from the fields above
};

UserProfile make_user_profile(int id, double distance_m, double total_rate,
                              double outage_req, const SystemParams& params);

}  // namespace mcnoma
