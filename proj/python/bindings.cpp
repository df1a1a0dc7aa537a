#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "mermin/bell.hpp"
#include "mermin/optimizer.hpp"
#include "mermin/qcore.hpp"
#include "mermin/shotsim.hpp"
#include "mermin/stateclasses.hpp"
#include "mermin/witness.hpp"

namespace py = pybind11;

namespace {

using namespace mermin;

Partition partition_arg(const std::string& name) {
  const auto p = partition_from_string(name);
  if (!p) throw std::invalid_argument("unknown partition '" + name + "'");
  return *p;
}

BellKind kind_arg(const std::string& name) {
  if (name == "mermin") return BellKind::mermin_fixed;
  if (name == "sigma") return BellKind::sigma_general;
  throw std::invalid_argument("functional must be 'mermin' or 'sigma'");
}

BellOperator operator_arg(const std::string& functional,
                          const std::optional<MeasurementSettings>& settings) {
  if (kind_arg(functional) == BellKind::mermin_fixed) return build_mermin();
  return build_sigma(settings.value_or(MeasurementSettings::mermin_axes()));
}

Observable observable_arg(const py::object& src) {
  if (py::isinstance<Observable>(src)) return src.cast<Observable>();
  if (py::isinstance<py::str>(src)) {
    const std::string name = src.cast<std::string>();
    if (name == "X") return Observable::x_axis();
    if (name == "Y") return Observable::y_axis();
    if (name == "Z") return Observable::z_axis();
    throw std::invalid_argument("axis must be 'X', 'Y' or 'Z'");
  }
  return Observable::from_bloch(src.cast<Eigen::Vector3d>());
}

std::array<Observable, 3> setting_arg(const py::sequence& seq) {
  if (py::len(seq) != 3)
    throw std::invalid_argument("a setting lists exactly 3 observables");
  return {observable_arg(seq[0]), observable_arg(seq[1]), observable_arg(seq[2])};
}

double value_of(const py::object& state, const BellOperator& op) {
  const py::array arr = py::array::ensure(state);
  if (arr.ndim() == 2) return bell_value(DensityMatrix(state.cast<Matrix>()), op);
  return bell_value(PureState(state.cast<Vector>()), op);
}

}  // namespace

PYBIND11_MODULE(_mermin, m) {
  m.doc() = "three-qubit Mermin inequality toolkit";
  m.attr("__version__") = "0.1.0";

  py::class_<Observable>(m, "Observable")
      .def(py::init([](const Eigen::Vector3d& bloch) {
             return Observable::from_bloch(bloch);
           }),
           py::arg("bloch"))
      .def_static("from_angles", &Observable::from_angles, py::arg("theta"),
                  py::arg("phi"))
      .def_property_readonly("bloch",
                             [](const Observable& o) { return o.bloch; })
      .def("matrix",
           [](const Observable& o) { return observable_matrix(o).entries(); })
      .def("__repr__", [](const Observable& o) {
        return "Observable([" + std::to_string(o.bloch.x()) + ", " +
               std::to_string(o.bloch.y()) + ", " + std::to_string(o.bloch.z()) +
               "])";
      });

  py::class_<MeasurementSettings>(m, "MeasurementSettings")
      .def(py::init([](const py::sequence& six) {
             if (py::len(six) != 6)
               throw std::invalid_argument(
                   "settings are [a, a_prime, b, b_prime, c, c_prime]");
             MeasurementSettings s;
             s.a = observable_arg(six[0]);
             s.a_prime = observable_arg(six[1]);
             s.b = observable_arg(six[2]);
             s.b_prime = observable_arg(six[3]);
             s.c = observable_arg(six[4]);
             s.c_prime = observable_arg(six[5]);
             return s;
           }),
           py::arg("observables"))
      .def_static("mermin_axes", &MeasurementSettings::mermin_axes)
      .def_readwrite("a", &MeasurementSettings::a)
      .def_readwrite("a_prime", &MeasurementSettings::a_prime)
      .def_readwrite("b", &MeasurementSettings::b)
      .def_readwrite("b_prime", &MeasurementSettings::b_prime)
      .def_readwrite("c", &MeasurementSettings::c)
      .def_readwrite("c_prime", &MeasurementSettings::c_prime);

  m.def("mermin_matrix",
        []() { return build_mermin().matrix.entries(); },
        "the 8x8 matrix of XXX - YYX - XYY - YXY");
  m.def(
      "sigma_matrix",
      [](const MeasurementSettings& s) { return build_sigma(s).matrix.entries(); },
      py::arg("settings"),
      "the Bell operator for arbitrary dichotomic settings");

  m.def("ghz", []() { return ghz().amplitudes(); });
  m.def("sharp_biseparable", []() { return sharp_biseparable().amplitudes(); });
  m.def("basis_state", [](int i) { return basis_state(i).amplitudes(); },
        py::arg("index"));
  m.def("noisy_ghz", [](double v) { return noisy_ghz(v).entries(); },
        py::arg("visibility"), "density matrix V|ghz><ghz| + (1-V) I/8");
  m.def("random_state",
        [](int dim, std::uint64_t seed) { return random_pure(dim, seed).amplitudes(); },
        py::arg("dim") = 8, py::arg("seed") = 1);
  m.def("sample_class_state",
        [](const std::string& partition, std::uint64_t seed) {
          return decode(sample(partition_arg(partition), seed)).amplitudes();
        },
        py::arg("partition"), py::arg("seed") = 1,
        "random pure state from a separability class");

  m.def(
      "bell_value",
      [](const py::object& state, const std::string& functional,
         const std::optional<MeasurementSettings>& settings) {
        return value_of(state, operator_arg(functional, settings));
      },
      py::arg("state"), py::arg("functional") = "mermin",
      py::arg("settings") = std::nullopt,
      "expectation of the Bell operator on a pure state (length-8 vector) or "
      "density matrix (8x8)");

  m.def(
      "correlation_vectors",
      [](const Vector& pair_state, const Vector& single_state) {
        const CorrelationVectorPair p =
            correlation_vectors(PureState(pair_state), PureState(single_state));
        return py::make_tuple(p.v1, p.v2);
      },
      py::arg("pair_state"), py::arg("single_state"),
      "(v1, v2) with v1 = (<XX> - <YY>, -<XY> - <YX>) and v2 = (<X>, <Y>)");

  py::class_<BoundSet>(m, "BoundSet")
      .def(py::init<>())
      .def_readonly("lhv", &BoundSet::lhv)
      .def_readonly("biseparable_orthogonal", &BoundSet::biseparable_orthogonal)
      .def_readonly("biseparable_free", &BoundSet::biseparable_free)
      .def_readonly("algebraic_max", &BoundSet::algebraic_max);

  py::class_<Verdict>(m, "Verdict")
      .def_readonly("estimate", &Verdict::estimate)
      .def_readonly("std_error", &Verdict::std_error)
      .def_readonly("sigma_above_2", &Verdict::sigma_above_2)
      .def_readonly("sigma_above_2sqrt2", &Verdict::sigma_above_2sqrt2)
      .def_readonly("confidence_k", &Verdict::confidence_k)
      .def_property_readonly("classification",
                             [](const Verdict& v) { return to_string(v.classification); })
      .def("summary", &Verdict::summary)
      .def("__repr__", [](const Verdict& v) {
        return "Verdict(" + std::to_string(v.estimate) + " +- " +
               std::to_string(v.std_error) + ", " + to_string(v.classification) + ")";
      });

  m.def(
      "classify",
      [](double value, double std_error, double k) {
        return classify(value, std_error, BoundSet{}, k);
      },
      py::arg("value"), py::arg("std_error"), py::arg("k") = 3.0,
      "separability-class verdict for a measured Bell value");

  py::class_<CorrelationEntry>(m, "CorrelationEntry")
      .def(py::init([](const py::sequence& setting, double value, double std_error) {
             CorrelationEntry e;
             e.setting = setting_arg(setting);
             e.value = value;
             e.std_error = std_error;
             return e;
           }),
           py::arg("setting"), py::arg("value"), py::arg("std_error") = 0.0)
      .def_property_readonly("setting",
                             [](const CorrelationEntry& e) {
                               return std::vector<Observable>(e.setting.begin(),
                                                              e.setting.end());
                             })
      .def_readonly("value", &CorrelationEntry::value)
      .def_readonly("std_error", &CorrelationEntry::std_error);

  py::class_<CorrelationRecord>(m, "CorrelationRecord")
      .def(py::init([](const std::vector<CorrelationEntry>& entries,
                       const std::string& metadata) {
             return CorrelationRecord(entries, metadata);
           }),
           py::arg("entries"), py::arg("metadata") = "")
      .def_property_readonly("entries",
                             [](const CorrelationRecord& r) { return r.entries(); })
      .def_property_readonly("metadata",
                             [](const CorrelationRecord& r) { return r.metadata(); });

  m.def("estimate_m3",
        [](const CorrelationRecord& r) {
          const auto [value, se] = estimate_m3(r);
          return py::make_tuple(value, se);
        },
        py::arg("record"), "(estimate, std_error) of M3 from measured correlations");

  m.def("load_correlations",
        [](const std::string& path) { return load_correlations(path); },
        py::arg("path"));
  m.def("save_correlations",
        [](const CorrelationRecord& r, const std::string& path) {
          save_correlations(r, path);
        },
        py::arg("record"), py::arg("path"));

  m.def(
      "simulate",
      [](const py::object& state, std::uint64_t shots, std::uint64_t seed,
         const py::object& settings, const std::string& description) {
        const py::array arr = py::array::ensure(state);
        std::variant<PureState, DensityMatrix> s =
            arr.ndim() == 2
                ? std::variant<PureState, DensityMatrix>(DensityMatrix(state.cast<Matrix>()))
                : std::variant<PureState, DensityMatrix>(PureState(state.cast<Vector>()));
        ShotPlan plan(std::move(s));
        plan.shots = shots;
        plan.seed = seed;
        plan.state_description = description;
        if (settings.is_none() ||
            (py::isinstance<py::str>(settings) &&
             settings.cast<std::string>() == "mermin")) {
          plan.settings = mermin_settings();
        } else {
          for (const py::handle& h : settings.cast<py::sequence>())
            plan.settings.push_back(setting_arg(h.cast<py::sequence>()));
        }
        return run_experiment(plan);
      },
      py::arg("state"), py::arg("shots"), py::arg("seed") = 0,
      py::arg("settings") = py::none(), py::arg("description") = "state",
      "sample shot outcomes per setting and return the estimated correlations");

  m.def(
      "maximize",
      [](const std::string& partition, const std::string& functional, int restarts,
         int budget, double tolerance, std::uint64_t seed, bool free_settings,
         int threads) {
        OptimizationConfig cfg;
        cfg.restarts = restarts;
        cfg.max_iterations = budget;
        cfg.tolerance = tolerance;
        cfg.seed = seed;
        cfg.optimize_settings = free_settings;
        cfg.threads = threads;
        OptimizationResult r;
        {
          py::gil_scoped_release release;
          r = maximize(partition_arg(partition), kind_arg(functional), cfg);
        }
        py::dict out;
        out["best_value"] = r.best_value;
        out["amplitudes"] = decode(r.best_params).amplitudes();
        out["params"] = r.best_params.params;
        out["settings"] = r.best_settings;
        out["restart_values"] = r.restart_values;
        out["best_restart"] = r.best_restart;
        out["evaluations"] = r.iterations_used;
        return out;
      },
      py::arg("partition"), py::arg("functional") = "mermin",
      py::arg("restarts") = 32, py::arg("budget") = 6000,
      py::arg("tolerance") = 1e-8, py::arg("seed") = 1,
      py::arg("free_settings") = false, py::arg("threads") = 0,
      "multi-start search for the maximal |Bell value| within a separability class");

  m.def("partitions", []() {
    return std::vector<std::string>{"full-separable", "bisep-12|3", "bisep-13|2",
                                    "bisep-1|23", "unrestricted"};
  });
}
