// Python bindings for the core operations: structures, imbalance states,
// designs, condition checks and the replication engine.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cadrand/presets.hpp"
#include "cadrand/report_io.hpp"
#include "cadrand/simulate.hpp"
#include "cadrand/theory.hpp"

namespace py = pybind11;
using namespace cadrand;

namespace {

PatientProfile as_profile(const std::vector<int>& levels) { return PatientProfile{levels}; }

py::dict conditional_to_dict(const OccupancyConditional& conditional) {
    py::dict dist;
    for (const auto& [value, prob] : conditional.distribution) {
        dist[py::int_(value)] = prob;
    }
    py::dict out;
    out["cells"] = conditional.cells;
    out["mean_abs"] = conditional.mean_abs;
    out["distribution"] = dist;
    return out;
}

py::dict report_to_dict(const ReplicationReport& report) {
    py::dict out;
    out["design"] = report.design;
    out["structure_levels"] = report.structure_levels;
    out["n_patients"] = report.n_patients;
    out["n_replicates"] = report.n_replicates;
    out["master_seed"] = report.master_seed;

    py::dict overall;
    overall["std"] = report.overall_std;
    overall["mean_signed"] = report.overall_mean_signed;
    overall["mean_abs"] = report.overall_mean_abs;
    overall["median_abs"] = report.overall_median_abs;
    overall["q95_abs"] = report.overall_q95_abs;
    out["overall"] = overall;

    py::list margins;
    for (const MarginStats& margin : report.margins) {
        py::dict entry;
        entry["covariate"] = margin.covariate;
        entry["level"] = margin.level;
        entry["std"] = margin.std_dev;
        entry["mean_signed"] = margin.mean_signed;
        entry["mean_abs"] = margin.mean_abs;
        margins.append(entry);
    }
    out["margins"] = margins;
    out["marginal_mean_abs"] = report.marginal_mean_abs;

    py::list strata;
    for (const StratumStats& stratum : report.strata) {
        py::dict entry;
        entry["index"] = stratum.index;
        entry["std"] = stratum.std_dev;
        entry["mean_signed"] = stratum.mean_signed;
        entry["mean_abs"] = stratum.mean_abs;
        strata.append(entry);
    }
    out["strata"] = strata;

    out["occupancy_share"] =
        std::vector<double>(report.occupancy_share.begin(), report.occupancy_share.end());
    out["occupancy_2"] = conditional_to_dict(report.occupancy2);
    out["occupancy_3"] = conditional_to_dict(report.occupancy3);
    return out;
}

py::dict condition_report_to_dict(const ConditionReport& report) {
    py::dict out;
    out["condition_a"] = report.condition_a;
    out["u_star"] = report.u_star;
    out["condition_c"] = report.condition_c;
    out["recurrence_certified"] = report.recurrence_certified;
    if (report.condition_b) {
        py::dict b;
        b["x"] = report.condition_b->solution;
        b["l1_norm"] = report.condition_b->l1_norm;
        b["satisfied"] = report.condition_b->satisfied;
        out["condition_b"] = b;
    }
    if (report.condition_b_prime) {
        py::dict bp;
        bp["c_of_wo"] = report.condition_b_prime->margin_bound;
        bp["satisfied"] = report.condition_b_prime->satisfied;
        out["condition_b_prime"] = bp;
    }
    return out;
}

DesignSpec spec_from_kwargs(const std::string& kind, py::object weights, double p_bias,
                            int block_size) {
    if (kind == "composite") {
        if (weights.is_none()) {
            throw py::value_error("composite design needs weights");
        }
        return DesignSpec::composite(weights.cast<WeightConfig>(), p_bias);
    }
    if (kind == "pocock_simon") {
        if (weights.is_none()) {
            throw py::value_error("pocock_simon design needs margin weights");
        }
        return DesignSpec::pocock_simon(weights.cast<std::vector<double>>(), p_bias);
    }
    if (kind == "stratified_block") return DesignSpec::stratified_block(block_size);
    if (kind == "complete") return DesignSpec::complete();
    throw py::value_error("unknown design kind '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Covariate-adaptive randomization: designs, theory checks and simulation";

    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::enum_<Arm>(m, "Arm")
        .value("TREATMENT1", Arm::Treatment1)
        .value("TREATMENT2", Arm::Treatment2);

    py::class_<CovariateStructure>(m, "CovariateStructure")
        .def(py::init<std::vector<int>>(), py::arg("levels"))
        .def_property_readonly("levels", &CovariateStructure::levels)
        .def_property_readonly("covariate_count", &CovariateStructure::covariate_count)
        .def_property_readonly("stratum_count", &CovariateStructure::stratum_count)
        .def("stratum_index",
             [](const CovariateStructure& self, const std::vector<int>& levels) {
                 return self.stratum_index(as_profile(levels));
             },
             py::arg("profile"))
        .def("stratum_profile",
             [](const CovariateStructure& self, int index) {
                 return self.stratum_profile(index).levels;
             },
             py::arg("index"))
        .def("__repr__", [](const CovariateStructure& self) {
            std::ostringstream out;
            out << "CovariateStructure(levels=" << to_string(PatientProfile{self.levels()}) << ")";
            return out.str();
        });

    py::class_<WeightConfig>(m, "WeightConfig")
        .def(py::init<double, double, std::vector<double>>(), py::arg("overall"),
             py::arg("stratum"), py::arg("margin"))
        .def_property_readonly("overall", &WeightConfig::overall)
        .def_property_readonly("stratum", &WeightConfig::stratum)
        .def_property_readonly("margin",
                               py::overload_cast<>(&WeightConfig::margin, py::const_));

    py::class_<ImbalanceState>(m, "ImbalanceState")
        .def(py::init<CovariateStructure>(), py::arg("structure"))
        .def_static("from_differences",
                    [](const CovariateStructure& structure, std::vector<int> d) {
                        return ImbalanceState::from_differences(structure, std::move(d));
                    },
                    py::arg("structure"), py::arg("differences"))
        .def_property_readonly("differences", &ImbalanceState::differences)
        .def_property_readonly("occupancy", &ImbalanceState::occupancy)
        .def_property_readonly("total_patients", &ImbalanceState::total_patients)
        .def("overall_imbalance", &ImbalanceState::overall_imbalance)
        .def("marginal_imbalance", &ImbalanceState::marginal_imbalance, py::arg("covariate"),
             py::arg("level"))
        .def("stratum_imbalance", &ImbalanceState::stratum_imbalance, py::arg("index"))
        .def("apply",
             [](ImbalanceState& self, const std::vector<int>& profile, Arm arm) {
                 self.apply(as_profile(profile), arm);
             },
             py::arg("profile"), py::arg("arm"));

    m.def("stratum_weight",
          [](const CovariateStructure& structure, const WeightConfig& weights,
             const std::vector<int>& target, const std::vector<int>& other) {
              return stratum_weight(structure, weights, as_profile(target), as_profile(other));
          },
          py::arg("structure"), py::arg("weights"), py::arg("target"), py::arg("other"));

    m.def("delta",
          [](const ImbalanceState& state, const WeightConfig& weights,
             const std::vector<int>& profile) {
              return delta(state, weights, as_profile(profile));
          },
          py::arg("state"), py::arg("weights"), py::arg("profile"));

    m.def("imbalance_pair",
          [](const ImbalanceState& state, const WeightConfig& weights,
             const std::vector<int>& profile) {
              return imbalance_pair(state, weights, as_profile(profile));
          },
          py::arg("state"), py::arg("weights"), py::arg("profile"));

    py::class_<Design>(m, "Design")
        .def("assignment_probability",
             [](const Design& self, const ImbalanceState& state,
                const std::vector<int>& profile) {
                 return self.assignment_probability(state, as_profile(profile));
             },
             py::arg("state"), py::arg("profile"))
        .def("next_assignment",
             [](Design& self, const ImbalanceState& state, const std::vector<int>& profile,
                double uniform_draw) {
                 return self.next_assignment(state, as_profile(profile), uniform_draw);
             },
             py::arg("state"), py::arg("profile"), py::arg("uniform_draw"))
        .def_property_readonly("name", &Design::name);

    m.def("make_design",
          [](const CovariateStructure& structure, const std::string& kind, py::object weights,
             double p_bias, int block_size) {
              return make_design(spec_from_kwargs(kind, weights, p_bias, block_size),
                                 structure);
          },
          py::arg("structure"), py::arg("kind"), py::arg("weights") = py::none(),
          py::arg("p_bias") = 0.85, py::arg("block_size") = 4);

    m.def("check_condition_b", [](const WeightConfig& weights) {
        const ConditionB result = check_condition_b(weights);
        py::dict out;
        out["x"] = result.solution;
        out["l1_norm"] = result.l1_norm;
        out["satisfied"] = result.satisfied;
        return out;
    });
    m.def("c_of_wo", &c_of_wo, py::arg("w_overall"));
    m.def("u_star", &u_star, py::arg("structure"), py::arg("weights"));
    m.def("check_all",
          [](const CovariateStructure& structure, const WeightConfig& weights) {
              return condition_report_to_dict(check_all(structure, weights));
          },
          py::arg("structure"), py::arg("weights"));

    m.def("drift_delta_v",
          [](const ImbalanceState& state, const WeightConfig& weights, double p_bias,
             const std::array<double, 4>& stratum_probs) {
              const DriftDiagnostic result = drift_delta_v(state, weights, p_bias, stratum_probs);
              return py::make_tuple(result.exact, result.closed_form);
          },
          py::arg("state"), py::arg("weights"), py::arg("p_bias"), py::arg("stratum_probs"));

    py::class_<CovariateDistribution>(m, "CovariateDistribution")
        .def_static("joint", &CovariateDistribution::joint, py::arg("probabilities"))
        .def_static("independent_uniform", &CovariateDistribution::independent_uniform)
        .def_static("product", &CovariateDistribution::product, py::arg("factor"),
                    py::arg("factor_marginal"), py::arg("rest_joint"))
        .def("stratum_probabilities", &CovariateDistribution::stratum_probabilities,
             py::arg("structure"))
        .def("sample",
             [](const CovariateDistribution& self, const CovariateStructure& structure,
                const std::vector<double>& draws) {
                 return self.sample(structure, draws).levels;
             },
             py::arg("structure"), py::arg("draws"));

    m.def("run_trial",
          [](const CovariateStructure& structure, const std::string& kind, py::object weights,
             double p_bias, int block_size, const CovariateDistribution& distribution,
             int n_patients, std::uint64_t seed, std::uint64_t stream,
             bool record_trajectory) {
              auto design = make_design(
                  spec_from_kwargs(kind, weights, p_bias, block_size), structure);
              RngStream rng(seed, stream);
              const TrialResult result = run_trial(*design, structure, distribution, n_patients,
                                                   rng, record_trajectory);
              py::dict out;
              out["differences"] = result.final_state.differences();
              out["occupancy"] = result.final_state.occupancy();
              out["overall_imbalance"] = result.final_state.overall_imbalance();
              py::list steps;
              for (const TrajectoryStep& step : result.trajectory) {
                  steps.append(py::make_tuple(step.patient, step.arm, step.stratum));
              }
              out["trajectory"] = steps;
              return out;
          },
          py::arg("structure"), py::arg("kind"), py::arg("weights") = py::none(),
          py::arg("p_bias") = 0.85, py::arg("block_size") = 4, py::arg("distribution"),
          py::arg("n_patients"), py::arg("seed") = 0, py::arg("stream") = 0,
          py::arg("record_trajectory") = false);

    m.def("replicate",
          [](const CovariateStructure& structure, const std::string& kind, py::object weights,
             double p_bias, int block_size, const CovariateDistribution& distribution,
             int n_patients, int n_replicates, std::uint64_t master_seed, int threads) {
              return report_to_dict(replicate(
                  spec_from_kwargs(kind, weights, p_bias, block_size), structure,
                  distribution, n_patients, n_replicates, master_seed, threads));
          },
          py::arg("structure"), py::arg("kind"), py::arg("weights") = py::none(),
          py::arg("p_bias") = 0.85, py::arg("block_size") = 4, py::arg("distribution"),
          py::arg("n_patients"), py::arg("n_replicates"), py::arg("master_seed") = 0,
          py::arg("threads") = 1);

    m.def("run_preset",
          [](const std::string& table_id, std::uint64_t seed, int n_replicates, int threads) {
              const PresetResult result = run_preset(table_id, seed, n_replicates, threads);
              py::list rows;
              for (const ComparisonRow& row : result.rows) {
                  py::dict entry;
                  entry["row"] = row.row;
                  entry["stat"] = row.stat;
                  entry["simulated"] = row.simulated;
                  if (row.reference) entry["reference"] = *row.reference;
                  rows.append(entry);
              }
              return rows;
          },
          py::arg("table_id"), py::arg("seed") = 20120408, py::arg("n_replicates") = 0,
          py::arg("threads") = 1);

    m.def("preset_table_ids", [] { return preset_table_ids(); });
}
