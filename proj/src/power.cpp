#include "mcnoma/power.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace mcnoma {

namespace {

void check_user(const VirtualUser& u) {
  if (!(u.beta > 0)) {
    throw std::domain_error("stringency coefficient must be positive");
  }
  if (!(u.target_sinr > 0)) {
    throw std::domain_error("target SINR must be positive");
  }
}

}  // namespace

VirtualUser make_virtual_user(const UserProfile& profile, int subcarriers_per_user,
                              int replica_index) {
  if (subcarriers_per_user < 1) {
    throw std::invalid_argument("subcarriers per user must be at least 1");
  }
  if (replica_index < 0 || replica_index >= subcarriers_per_user) {
    throw std::invalid_argument("replica index out of range");
  }
  VirtualUser v;
  v.user_id = profile.id;
  v.replica_index = replica_index;
  v.per_sc_rate = profile.total_rate / subcarriers_per_user;
  v.target_sinr = std::exp2(v.per_sc_rate) - 1.0;
  v.beta = profile.beta;
  return v;
}

std::vector<VirtualUser> make_virtual_users(const std::vector<UserProfile>& profiles,
                                            int subcarriers_per_user) {
  std::vector<VirtualUser> users;
  users.reserve(profiles.size() * static_cast<std::size_t>(subcarriers_per_user));
  for (const UserProfile& p : profiles) {
    for (int r = 0; r < subcarriers_per_user; ++r) {
      users.push_back(make_virtual_user(p, subcarriers_per_user, r));
    }
  }
  return users;
}

VirtualUser virtual_user_from_rate(int user_id, double per_sc_rate, double beta) {
  VirtualUser v;
  v.user_id = user_id;
  v.per_sc_rate = per_sc_rate;
  v.target_sinr = std::exp2(per_sc_rate) - 1.0;
  v.beta = beta;
  return v;
}

VirtualUser virtual_user_from_sinr(int user_id, double target_sinr, double beta) {
  VirtualUser v;
  v.user_id = user_id;
  v.per_sc_rate = std::log2(1.0 + target_sinr);
  v.target_sinr = target_sinr;
  v.beta = beta;
  return v;
}

bool sic_prerequisites_hold(double power_sic, double power_other, double sinr_sic,
                            double sinr_other) {
  return power_other - power_sic * sinr_other > kSicMarginToleranceWatts &&
         power_sic - power_other * sinr_sic <= kSicMarginToleranceWatts;
}

PairSolution solve_pair_fixed_sic(const VirtualUser& sic_performer, const VirtualUser& other) {
  check_user(sic_performer);
  check_user(other);
  const double gs = sic_performer.target_sinr;
  const double go = other.target_sinr;
  const double bs = sic_performer.beta;
  const double bo = other.beta;
  // The cancelling user pays only for its own decode. The other user's power
  // must cover, whichever binds: decodability of its signal at the canceller,
  // its own outage target, and the cancellation power ordering.
  const double p_sic = gs / bs;
  const double p_other = std::max({gs * go / bs + go / bs, gs * go / bs + go / bo, 1.0 / bs});
  PairSolution s;
  s.power_a = p_sic;
  s.power_b = p_other;
  s.sic_user = PairMember::A;
  s.total = p_sic + p_other;
  return s;
}

PairSolution solve_pair(const VirtualUser& a, const VirtualUser& b) {
  const PairSolution first = solve_pair_fixed_sic(a, b);
  const PairSolution swapped = solve_pair_fixed_sic(b, a);
  if (first.total <= swapped.total) {
    return first;
  }
  PairSolution second;
  second.power_a = swapped.power_b;
  second.power_b = swapped.power_a;
  second.sic_user = PairMember::B;
  second.total = swapped.total;
  return second;
}

PairMember sic_order_rule(const VirtualUser& a, const VirtualUser& b) {
  check_user(a);
  check_user(b);
  if (!(a.target_sinr >= 1.0 && b.target_sinr >= 1.0)) {
    throw std::domain_error(
        "decoding-order shortcut requires both target SINRs >= 1; "
        "compare both cancellation assignments instead");
  }
  return a.beta >= b.beta ? PairMember::A : PairMember::B;
}

double solve_single(const VirtualUser& u) {
  if (!(u.beta > 0)) {
    throw std::domain_error("stringency coefficient must be positive");
  }
  if (!(u.target_sinr >= 0)) {
    throw std::domain_error("target SINR must be nonnegative");
  }
  return u.target_sinr / u.beta;
}

std::pair<double, double> oma_pair_power(const VirtualUser& a, const VirtualUser& b) {
  const auto one = [](const VirtualUser& u) {
    if (!(u.beta > 0)) {
      throw std::domain_error("stringency coefficient must be positive");
    }
    return (std::exp2(2.0 * u.per_sc_rate) - 1.0) / (2.0 * u.beta);
  };
  return {one(a), one(b)};
}

NomaGain noma_gain_over_oma(const VirtualUser& a, const VirtualUser& b) {
  check_user(a);
  check_user(b);
  NomaGain gain;
  gain.condition_met = a.per_sc_rate >= 1.0 && b.per_sc_rate >= 1.0;
  if (gain.condition_met) {
    // Saving of the optimal multiplexed pair over the bandwidth split, with
    // the non-demanding user (larger beta) cancelling.
    const VirtualUser& hi = a.beta >= b.beta ? a : b;
    const VirtualUser& lo = a.beta >= b.beta ? b : a;
    const double root_hi = std::sqrt(hi.beta);
    const double root_lo = std::sqrt(lo.beta);
    const double diff = lo.target_sinr / root_lo - hi.target_sinr / root_hi;
    gain.saving_watts = hi.target_sinr * lo.target_sinr / root_hi * (1.0 / root_lo - 1.0 / root_hi) +
                        0.5 * diff * diff;
  } else {
    const auto oma = oma_pair_power(a, b);
    gain.saving_watts = oma.first + oma.second - solve_pair(a, b).total;
  }
  return gain;
}

OracleResult oracle_min_power(const VirtualUser& a, const VirtualUser& b, PairMember sic_performer,
                              double rel_tolerance) {
  if (!(rel_tolerance > 0)) {
    throw std::invalid_argument("tolerance must be positive");
  }
  check_user(a);
  check_user(b);
  const VirtualUser& s = sic_performer == PairMember::A ? a : b;
  const VirtualUser& o = sic_performer == PairMember::A ? b : a;
  const double gs = s.target_sinr;
  const double go = o.target_sinr;
  const double bs = s.beta;
  const double bo = o.beta;
  const double b_min = std::min(bs, bo);

  // Outage feasibility in threshold form, written multiplicatively: the
  // canceller must stay under its stringency bound on both of its decode
  // thresholds, the other user on its single one.
  const auto feasible = [&](double ps, double po) {
    if (!(ps > 0)) {
      return false;
    }
    const double margin = po - ps * go;
    if (!(margin > kSicMarginToleranceWatts)) {
      return false;
    }
    if (ps - po * gs > kSicMarginToleranceWatts) {
      return false;
    }
    return gs <= bs * ps && go <= b_min * margin;
  };

  // Search box: a generous multiple of the closed form, used as a bound only.
  const PairSolution closed = solve_pair_fixed_sic(s, o);

  double best_ps = 0;
  double best_po = 0;
  double best_total = std::numeric_limits<double>::infinity();
  double step_s = 0;
  double step_o = 0;

  const auto scan = [&](double lo_s, double hi_s, double lo_o, double hi_o, int points) {
    step_s = (hi_s - lo_s) / (points - 1);
    step_o = (hi_o - lo_o) / (points - 1);
    for (int i = 0; i < points; ++i) {
      const double ps = lo_s + step_s * i;
      for (int j = 0; j < points; ++j) {
        const double po = lo_o + step_o * j;
        if (!feasible(ps, po)) {
          continue;
        }
        const double total = ps + po;
        if (total < best_total) {
          best_total = total;
          best_ps = ps;
          best_po = po;
        }
      }
    }
  };

  scan(0.0, 4.0 * closed.power_a, 0.0, 4.0 * closed.power_b, 512);
  if (!std::isfinite(best_total)) {
    return {};
  }
  for (int round = 0; round < 6; ++round) {
    if (step_s + step_o <= rel_tolerance * best_total) {
      break;
    }
    scan(std::max(0.0, best_ps - 2.0 * step_s), best_ps + 2.0 * step_s,
         std::max(0.0, best_po - 2.0 * step_o), best_po + 2.0 * step_o, 129);
  }

  OracleResult result;
  result.feasible = true;
  result.solution.sic_user = sic_performer;
  result.solution.power_a = sic_performer == PairMember::A ? best_ps : best_po;
  result.solution.power_b = sic_performer == PairMember::A ? best_po : best_ps;
  result.solution.total = best_total;
  return result;
}

}  // namespace mcnoma
