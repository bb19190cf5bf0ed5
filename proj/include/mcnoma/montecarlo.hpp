#pragma once

#include <cstddef>
#include <utility>

#include "mcnoma/channel.hpp"
#include "mcnoma/power.hpp"
#include "mcnoma/rng.hpp"

namespace mcnoma {

// Demand plus location: everything needed to draw this user's fading.
struct ChannelUser {
  VirtualUser demand;
  double distance_m = 0;
};

struct OutageEstimate {
  std::size_t samples = 0;
  double outage_rate = 0;
  double std_error = 0;  // sqrt(rate * (1 - rate) / samples)
};

struct PairOutageEstimate {
  OutageEstimate a;
  OutageEstimate b;
};

// Empirical outage of both users under the given power pair, by direct
// simulation of the decode events. Cancellation success is decided per draw
// from the same fading realization used for the rates, so the coupling
// between the success branch and the outage event is preserved. The (a, b)
// order must match the solution's.
PairOutageEstimate simulate_pair_outage(const PairSolution& solution, const ChannelUser& a,
                                        const ChannelUser& b, const SystemParams& params,
                                        std::size_t samples, Rng& rng);

// Analytic outage pair for the same setup, in threshold form.
std::pair<double, double> closed_form_outage(const PairSolution& solution, const ChannelUser& a,
                                             const ChannelUser& b, const SystemParams& params);

// Empirical P{ log2(1 + p |h|^2 / noise) < rate } for a lone user.
OutageEstimate simulate_single_outage(double power_watts, const ChannelUser& u,
                                      const SystemParams& params, std::size_t samples, Rng& rng);

}  // namespace mcnoma
