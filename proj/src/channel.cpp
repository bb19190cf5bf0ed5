#include "mcnoma/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace mcnoma {

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts * 1000.0); }

SystemParams SystemParams::from_noise_dbm(double noise_dbm, double path_loss_exponent) {
  if (!(path_loss_exponent > 0)) {
    throw std::invalid_argument("path loss exponent must be positive");
  }
  return SystemParams{dbm_to_watts(noise_dbm), path_loss_exponent};
}

namespace {

// exponential rate of |h|^2, i.e. 1 + d^alpha
double fading_rate(double distance_m, const SystemParams& params) {
  return 1.0 + std::pow(distance_m, params.path_loss_exponent);
}

}  // namespace

double path_attenuation(double distance_m, const SystemParams& params) {
  if (!(distance_m >= 0)) {
    throw std::domain_error("distance must be nonnegative");
  }
  return 1.0 / fading_rate(distance_m, params);
}

double channel_gain_cdf(double x, double distance_m, const SystemParams& params) {
  if (!(x >= 0)) {
    throw std::domain_error("gain value must be nonnegative");
  }
  if (!(distance_m >= 0)) {
    throw std::domain_error("distance must be nonnegative");
  }
  return -std::expm1(-fading_rate(distance_m, params) * x);
}

double compute_beta(double distance_m, double outage_req, const SystemParams& params) {
  if (!(outage_req > 0 && outage_req < 1)) {
    throw std::domain_error("outage requirement must lie in (0, 1)");
  }
  if (!(distance_m >= 0)) {
    throw std::domain_error("distance must be nonnegative");
  }
  if (!(params.noise_power_watts > 0)) {
    throw std::domain_error("noise power must be positive");
  }
  return -std::log1p(-outage_req) / (params.noise_power_watts * fading_rate(distance_m, params));
}

double sample_channel_gain(double distance_m, const SystemParams& params, Rng& rng) {
  if (!(distance_m >= 0)) {
    throw std::domain_error("distance must be nonnegative");
  }
  return rng.exponential(fading_rate(distance_m, params));
}

UserProfile make_user_profile(int id, double distance_m, double total_rate, double outage_req,
                              const SystemParams& params) {
  if (!(distance_m > 0)) {
    throw std::invalid_argument("user distance must be positive");
  }
  if (!(total_rate > 0)) {
    throw std::invalid_argument("total target rate must be positive");
  }
  if (!(outage_req > 0 && outage_req < 1)) {
    throw std::invalid_argument("outage requirement must lie in (0, 1)");
  }
  UserProfile p;
  p.id = id;
  p.distance_m = distance_m;
  p.total_rate = total_rate;
  p.outage_req = outage_req;
  p.beta = compute_beta(distance_m, outage_req, params);
  return p;
}

}  // namespace mcnoma
