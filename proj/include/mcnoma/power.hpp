#pragma once

#include <utility>
#include <vector>

#include "mcnoma/channel.hpp"

namespace mcnoma {

// One per-subcarrier demand unit: a user replica carrying its per-subcarrier
// rate share and the SINR needed to sustain it.
struct VirtualUser {
  int user_id = 0;
  int replica_index = 0;
  double per_sc_rate = 0;  // bit/s/Hz on this subcarrier
  double target_sinr = 0;  // 2^per_sc_rate - 1
  double beta = 0;         // 1/W, copied from the profile
};

VirtualUser make_virtual_user(const UserProfile& profile, int subcarriers_per_user,
                              int replica_index);
std::vector<VirtualUser> make_virtual_users(const std::vector<UserProfile>& profiles,
                                            int subcarriers_per_user);
// Direct constructions for single-subcarrier analysis and tests.
VirtualUser virtual_user_from_rate(int user_id, double per_sc_rate, double beta);
VirtualUser virtual_user_from_sinr(int user_id, double target_sinr, double beta);

enum class PairMember { A, B };

// Strictness margin, in watts, for the cancellation power ordering.
inline constexpr double kSicMarginToleranceWatts = 1e-12;

// Two-user power pair for one subcarrier. Powers are stored in the order of
// the pair (a, b) they were solved for; sic_user identifies which member
// decodes and removes the other's signal before decoding its own.
struct PairSolution {
  double power_a = 0;
  double power_b = 0;
  PairMember sic_user = PairMember::A;
  double total = 0;
};

// Power ordering required when the cancelling user removes the other's
// signal: the other user's signal needs a strictly positive power margin at
// the canceller, while the reverse decode must not be possible.
bool sic_prerequisites_hold(double power_sic, double power_other, double sinr_sic,
                            double sinr_other);

// Minimum-power pair when the first user is forced to cancel. Returned
// powers are in argument order (power_a belongs to sic_performer).
PairSolution solve_pair_fixed_sic(const VirtualUser& sic_performer, const VirtualUser& other);

// Minimum-power pair over both cancellation assignments; ties select `a`.
PairSolution solve_pair(const VirtualUser& a, const VirtualUser& b);

// Shortcut decoding order, valid when both target SINRs are >= 1: the user
// with the larger stringency coefficient (the QoS non-demanding one)
// cancels. Refuses below that regime; use solve_pair's explicit comparison
// there.
PairMember sic_order_rule(const VirtualUser& a, const VirtualUser& b);

// Power for a user alone on a subcarrier: target_sinr / beta.
double solve_single(const VirtualUser& u);

// Orthogonal baseline for one subcarrier: each user gets half the bandwidth,
// so its rate density doubles.
std::pair<double, double> oma_pair_power(const VirtualUser& a, const VirtualUser& b);

// Power saved by multiplexing the pair instead of splitting the subcarrier.
struct NomaGain {
  double saving_watts = 0;
  bool condition_met = false;  // both per-subcarrier rates >= 1 bit/s/Hz
};

// Closed-form saving when both rates are at least 1 bit/s/Hz (guaranteed
// nonnegative there); otherwise the directly computed difference, flagged as
// outside the guarantee.
NomaGain noma_gain_over_oma(const VirtualUser& a, const VirtualUser& b);

struct OracleResult {
  bool feasible = false;
  PairSolution solution;  // meaningful only when feasible
};

// Independent numeric check of the closed forms: minimizes total power over
// the outage-feasible region for a fixed cancellation assignment by grid
// search with iterative refinement, down to the requested relative
// tolerance. Works from the constraint inequalities only; the closed form is
// used solely to bound the search box.
OracleResult oracle_min_power(const VirtualUser& a, const VirtualUser& b,
                              PairMember sic_performer, double rel_tolerance);

}  // namespace mcnoma
