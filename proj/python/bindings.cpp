#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <variant>

#include "mcnoma/experiments.hpp"
#include "mcnoma/montecarlo.hpp"
#include "mcnoma/power.hpp"
#include "mcnoma/scheduling.hpp"

namespace py = pybind11;
using namespace mcnoma;

namespace {

py::list schedule_rows(const Schedule& s) {
  py::list rows;
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    py::dict row;
    row["subcarrier"] = i + 1;
    if (const auto* pair = std::get_if<PairAssignment>(&s.entries[i])) {
      row["kind"] = "pair";
      row["user_a"] = pair->a.user_id;
      row["replica_a"] = pair->a.replica_index;
      row["user_b"] = pair->b.user_id;
      row["replica_b"] = pair->b.replica_index;
      row["power_a_watts"] = pair->solution.power_a;
      row["power_b_watts"] = pair->solution.power_b;
      row["sic_user"] = pair->solution.sic_user == PairMember::A ? "a" : "b";
      row["total_watts"] = pair->solution.total;
    } else {
      const auto& single = std::get<SingleAssignment>(s.entries[i]);
      row["kind"] = "single";
      row["user_a"] = single.user.user_id;
      row["replica_a"] = single.user.replica_index;
      row["power_a_watts"] = single.power_watts;
      row["total_watts"] = single.power_watts;
    }
    rows.append(std::move(row));
  }
  return rows;
}

py::list sweep_rows(const SweepResult& r) {
  py::list rows;
  const auto add = [&](std::size_t i, const char* method, const PointStats& stats) {
    if (!stats.present) {
      return;
    }
    py::dict row;
    row["x"] = r.x_values[i];
    row["method"] = method;
    row["mean_watts"] = stats.mean_watts;
    row["mean_dbm"] = watts_to_dbm(stats.mean_watts);
    row["std_error"] = stats.std_error_watts;
    row["realizations"] = stats.realizations;
    rows.append(std::move(row));
  };
  for (std::size_t i = 0; i < r.x_values.size(); ++i) {
    add(i, "proposed", r.proposed[i]);
    add(i, "exhaustive", r.exhaustive[i]);
    add(i, "random", r.random_baseline[i]);
    add(i, "oma", r.oma[i]);
  }
  return rows;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Power-efficient multicarrier NOMA downlink resource allocation under "
            "statistical channel knowledge";

  py::class_<Rng>(m, "Rng")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("split", &Rng::split, py::arg("a"), py::arg("b") = 0, py::arg("c") = 0)
      .def("next_u64", &Rng::next_u64)
      .def("next_double", &Rng::next_double)
      .def("uniform", &Rng::uniform, py::arg("lo"), py::arg("hi"))
      .def("exponential", &Rng::exponential, py::arg("rate"));

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<double, double>(), py::arg("noise_power_watts"),
           py::arg("path_loss_exponent"))
      .def_static("from_noise_dbm", &SystemParams::from_noise_dbm, py::arg("noise_dbm"),
                  py::arg("path_loss_exponent"))
      .def_readonly("noise_power_watts", &SystemParams::noise_power_watts)
      .def_readonly("path_loss_exponent", &SystemParams::path_loss_exponent);

  m.def("dbm_to_watts", &dbm_to_watts, py::arg("dbm"));
  m.def("watts_to_dbm", &watts_to_dbm, py::arg("watts"));
  m.def("path_attenuation", &path_attenuation, py::arg("distance_m"), py::arg("params"));
  m.def("channel_gain_cdf", &channel_gain_cdf, py::arg("x"), py::arg("distance_m"),
        py::arg("params"));
  m.def("compute_beta", &compute_beta, py::arg("distance_m"), py::arg("outage_req"),
        py::arg("params"));
  m.def("sample_channel_gain", &sample_channel_gain, py::arg("distance_m"), py::arg("params"),
        py::arg("rng"));

  py::class_<UserProfile>(m, "UserProfile")
      .def_readonly("id", &UserProfile::id)
      .def_readonly("distance_m", &UserProfile::distance_m)
      .def_readonly("total_rate", &UserProfile::total_rate)
      .def_readonly("outage_req", &UserProfile::outage_req)
      .def_readonly("beta", &UserProfile::beta)
      .def("__repr__", [](const UserProfile& u) {
        std::ostringstream out;
        out << "UserProfile(id=" << u.id << ", distance_m=" << u.distance_m
            << ", total_rate=" << u.total_rate << ", outage_req=" << u.outage_req
            << ", beta=" << u.beta << ")";
        return out.str();
      });
  m.def("make_user_profile", &make_user_profile, py::arg("id"), py::arg("distance_m"),
        py::arg("total_rate"), py::arg("outage_req"), py::arg("params"));

  py::class_<VirtualUser>(m, "VirtualUser")
      .def_readonly("user_id", &VirtualUser::user_id)
      .def_readonly("replica_index", &VirtualUser::replica_index)
      .def_readonly("per_sc_rate", &VirtualUser::per_sc_rate)
      .def_readonly("target_sinr", &VirtualUser::target_sinr)
      .def_readonly("beta", &VirtualUser::beta);
  m.def("make_virtual_user", &make_virtual_user, py::arg("profile"),
        py::arg("subcarriers_per_user"), py::arg("replica_index"));
  m.def("make_virtual_users", &make_virtual_users, py::arg("profiles"),
        py::arg("subcarriers_per_user"));
  m.def("virtual_user_from_rate", &virtual_user_from_rate, py::arg("user_id"),
        py::arg("per_sc_rate"), py::arg("beta"));
  m.def("virtual_user_from_sinr", &virtual_user_from_sinr, py::arg("user_id"),
        py::arg("target_sinr"), py::arg("beta"));

  py::enum_<PairMember>(m, "PairMember").value("A", PairMember::A).value("B", PairMember::B);

  py::class_<PairSolution>(m, "PairSolution")
      .def_readonly("power_a", &PairSolution::power_a)
      .def_readonly("power_b", &PairSolution::power_b)
      .def_readonly("sic_user", &PairSolution::sic_user)
      .def_readonly("total", &PairSolution::total)
      .def("__repr__", [](const PairSolution& s) {
        std::ostringstream out;
        out << "PairSolution(power_a=" << s.power_a << ", power_b=" << s.power_b
            << ", sic_user=" << (s.sic_user == PairMember::A ? "A" : "B")
            << ", total=" << s.total << ")";
        return out.str();
      });

  m.def("solve_pair_fixed_sic", &solve_pair_fixed_sic, py::arg("sic_performer"),
        py::arg("other"));
  m.def("solve_pair", &solve_pair, py::arg("a"), py::arg("b"));
  m.def("sic_order_rule", &sic_order_rule, py::arg("a"), py::arg("b"));
  m.def("solve_single", &solve_single, py::arg("u"));
  m.def("oma_pair_power", &oma_pair_power, py::arg("a"), py::arg("b"));

  py::class_<NomaGain>(m, "NomaGain")
      .def_readonly("saving_watts", &NomaGain::saving_watts)
      .def_readonly("condition_met", &NomaGain::condition_met);
  m.def("noma_gain_over_oma", &noma_gain_over_oma, py::arg("a"), py::arg("b"));

  py::class_<OracleResult>(m, "OracleResult")
      .def_readonly("feasible", &OracleResult::feasible)
      .def_readonly("solution", &OracleResult::solution);
  m.def("oracle_min_power", &oracle_min_power, py::arg("a"), py::arg("b"),
        py::arg("sic_performer"), py::arg("rel_tolerance"));

  py::class_<ChannelUser>(m, "ChannelUser")
      .def(py::init([](const VirtualUser& demand, double distance_m) {
             return ChannelUser{demand, distance_m};
           }),
           py::arg("demand"), py::arg("distance_m"))
      .def_readonly("demand", &ChannelUser::demand)
      .def_readonly("distance_m", &ChannelUser::distance_m);

  py::class_<OutageEstimate>(m, "OutageEstimate")
      .def_readonly("samples", &OutageEstimate::samples)
      .def_readonly("outage_rate", &OutageEstimate::outage_rate)
      .def_readonly("std_error", &OutageEstimate::std_error);

  py::class_<PairOutageEstimate>(m, "PairOutageEstimate")
      .def_readonly("a", &PairOutageEstimate::a)
      .def_readonly("b", &PairOutageEstimate::b);

  m.def("simulate_pair_outage", &simulate_pair_outage, py::arg("solution"), py::arg("a"),
        py::arg("b"), py::arg("params"), py::arg("samples"), py::arg("rng"));
  m.def("closed_form_outage", &closed_form_outage, py::arg("solution"), py::arg("a"),
        py::arg("b"), py::arg("params"));
  m.def("simulate_single_outage", &simulate_single_outage, py::arg("power_watts"), py::arg("u"),
        py::arg("params"), py::arg("samples"), py::arg("rng"));

  py::class_<CostMatrix>(m, "CostMatrix")
      .def_readonly("size", &CostMatrix::size)
      .def("at", &CostMatrix::at, py::arg("i"), py::arg("j"));
  m.def("build_cost_matrix", &build_cost_matrix, py::arg("users"));

  py::class_<DendrogramMerge>(m, "DendrogramMerge")
      .def_readonly("left", &DendrogramMerge::left)
      .def_readonly("right", &DendrogramMerge::right)
      .def_readonly("height", &DendrogramMerge::height);

  py::class_<Dendrogram>(m, "Dendrogram")
      .def_readonly("leaf_count", &Dendrogram::leaf_count)
      .def_readonly("merges", &Dendrogram::merges)
      .def_readonly("leaf_order", &Dendrogram::leaf_order);
  m.def("agglomerative_cluster", &agglomerative_cluster, py::arg("costs"));
  m.def("leaf_order", &leaf_order, py::arg("dendro"));

  py::class_<Schedule>(m, "Schedule")
      .def_readonly("total_power", &Schedule::total_power)
      .def_property_readonly("rows", &schedule_rows)
      .def("__repr__", [](const Schedule& s) {
        std::ostringstream out;
        out << "Schedule(entries=" << s.entries.size() << ", total_power=" << s.total_power
            << ")";
        return out.str();
      });

  m.def("schedule_proposed", &schedule_proposed, py::arg("profiles"), py::arg("num_subcarriers"),
        py::arg("subcarriers_per_user"));
  m.def("count_combinations", &count_combinations, py::arg("num_users"),
        py::arg("num_subcarriers"));
  m.def(
      "schedule_exhaustive",
      [](const std::vector<UserProfile>& profiles, int num_subcarriers, int subcarriers_per_user) {
        std::uint64_t visited = 0;
        Schedule s = schedule_exhaustive(profiles, num_subcarriers, subcarriers_per_user, &visited);
        return py::make_tuple(std::move(s), visited);
      },
      py::arg("profiles"), py::arg("num_subcarriers"), py::arg("subcarriers_per_user"),
      "returns (schedule, combinations_visited)");
  m.def("schedule_random", &schedule_random, py::arg("profiles"), py::arg("num_subcarriers"),
        py::arg("subcarriers_per_user"), py::arg("rng"));

  py::enum_<OutageCase>(m, "OutageCase")
      .value("FIXED", OutageCase::kFixed)
      .value("UNIFORM", OutageCase::kUniform);

  py::class_<ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("num_users", &ScenarioConfig::num_users)
      .def_readwrite("num_subcarriers", &ScenarioConfig::num_subcarriers)
      .def_readwrite("subcarriers_per_user", &ScenarioConfig::subcarriers_per_user)
      .def_readwrite("cell_size_m", &ScenarioConfig::cell_size_m)
      .def_readwrite("outage_case", &ScenarioConfig::outage_case)
      .def_readwrite("noise_dbm", &ScenarioConfig::noise_dbm)
      .def_readwrite("path_loss_exponent", &ScenarioConfig::path_loss_exponent)
      .def_readwrite("realizations", &ScenarioConfig::realizations)
      .def_readwrite("seed", &ScenarioConfig::seed)
      .def("system", &ScenarioConfig::system)
      .def("validate", &ScenarioConfig::validate);

  m.def("generate_scenario", &generate_scenario, py::arg("cfg"), py::arg("rng"));
  m.def("oma_system_power", &oma_system_power, py::arg("profiles"), py::arg("num_users"),
        py::arg("num_subcarriers"));

  py::class_<SweepResult>(m, "SweepResult")
      .def_readonly("x_name", &SweepResult::x_name)
      .def_readonly("x_values", &SweepResult::x_values)
      .def_readonly("seed", &SweepResult::seed)
      .def_property_readonly("rows", &sweep_rows);

  m.def("sweep_cell_size", &sweep_cell_size, py::arg("base"), py::arg("cell_sizes_m"));
  m.def("sweep_num_users", &sweep_num_users, py::arg("base"), py::arg("user_counts"));
}
