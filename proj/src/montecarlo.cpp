#include "mcnoma/montecarlo.hpp"

#include <cmath>
#include <stdexcept>

namespace mcnoma {

namespace {

OutageEstimate make_estimate(std::size_t outages, std::size_t samples) {
  OutageEstimate e;
  e.samples = samples;
  e.outage_rate = static_cast<double>(outages) / static_cast<double>(samples);
  e.std_error = std::sqrt(e.outage_rate * (1.0 - e.outage_rate) / static_cast<double>(samples));
  return e;
}

double spectral_rate(double signal, double interference_plus_noise) {
  return std::log2(1.0 + signal / interference_plus_noise);
}

}  // namespace

PairOutageEstimate simulate_pair_outage(const PairSolution& solution, const ChannelUser& a,
                                        const ChannelUser& b, const SystemParams& params,
                                        std::size_t samples, Rng& rng) {
  if (samples < 1) {
    throw std::invalid_argument("need at least one sample");
  }
  const bool a_cancels = solution.sic_user == PairMember::A;
  const ChannelUser& s = a_cancels ? a : b;
  const ChannelUser& o = a_cancels ? b : a;
  const double p_s = a_cancels ? solution.power_a : solution.power_b;
  const double p_o = a_cancels ? solution.power_b : solution.power_a;
  if (!(p_o - p_s * o.demand.target_sinr > kSicMarginToleranceWatts)) {
    throw std::domain_error("power pair violates the cancellation power ordering");
  }

  const double noise = params.noise_power_watts;
  const double rate_s = 1.0 + std::pow(s.distance_m, params.path_loss_exponent);
  const double rate_o = 1.0 + std::pow(o.distance_m, params.path_loss_exponent);

  std::size_t outages_s = 0;
  std::size_t outages_o = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double h_s = rng.exponential(rate_s);
    const double h_o = rng.exponential(rate_o);
    // Canceller: decode the other user's signal first, then its own. Both
    // branches see the same fading draw.
    const double cross_rate = spectral_rate(p_o * h_s, p_s * h_s + noise);
    double own_rate;
    if (cross_rate >= o.demand.per_sc_rate) {
      own_rate = spectral_rate(p_s * h_s, noise);  // cancellation succeeded
    } else {
      own_rate = spectral_rate(p_s * h_s, p_o * h_s + noise);  // residual interference
    }
    if (own_rate < s.demand.per_sc_rate) {
      ++outages_s;
    }
    // The non-cancelling user always decodes under interference.
    if (spectral_rate(p_o * h_o, p_s * h_o + noise) < o.demand.per_sc_rate) {
      ++outages_o;
    }
  }

  PairOutageEstimate est;
  (a_cancels ? est.a : est.b) = make_estimate(outages_s, samples);
  (a_cancels ? est.b : est.a) = make_estimate(outages_o, samples);
  return est;
}

std::pair<double, double> closed_form_outage(const PairSolution& solution, const ChannelUser& a,
                                             const ChannelUser& b, const SystemParams& params) {
  const bool a_cancels = solution.sic_user == PairMember::A;
  const ChannelUser& s = a_cancels ? a : b;
  const ChannelUser& o = a_cancels ? b : a;
  const double p_s = a_cancels ? solution.power_a : solution.power_b;
  const double p_o = a_cancels ? solution.power_b : solution.power_a;
  const double margin = p_o - p_s * o.demand.target_sinr;
  if (!(margin > kSicMarginToleranceWatts)) {
    throw std::domain_error("power pair violates the cancellation power ordering");
  }
  const double noise = params.noise_power_watts;
  const double cross_threshold = o.demand.target_sinr * noise / margin;
  const double own_threshold = s.demand.target_sinr * noise / p_s;
  const double outage_s =
      channel_gain_cdf(std::max(own_threshold, cross_threshold), s.distance_m, params);
  const double outage_o = channel_gain_cdf(cross_threshold, o.distance_m, params);
  return a_cancels ? std::pair{outage_s, outage_o} : std::pair{outage_o, outage_s};
}

OutageEstimate simulate_single_outage(double power_watts, const ChannelUser& u,
                                      const SystemParams& params, std::size_t samples, Rng& rng) {
  if (!(power_watts > 0)) {
    throw std::domain_error("power must be positive");
  }
  if (samples < 1) {
    throw std::invalid_argument("need at least one sample");
  }
  const double rate = 1.0 + std::pow(u.distance_m, params.path_loss_exponent);
  std::size_t outages = 0;
  for (std::size_t i = 0; i < samples; ++i) {
    const double h = rng.exponential(rate);
    if (spectral_rate(power_watts * h, params.noise_power_watts) < u.demand.per_sc_rate) {
      ++outages;
    }
  }
  return make_estimate(outages, samples);
}

}  // namespace mcnoma
