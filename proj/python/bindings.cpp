#include <fstream>
#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hnnwalk/experiment.hpp"
#include "hnnwalk/z_projection.hpp"

namespace py = pybind11;
using namespace hnnwalk;

namespace {

py::object json_to_py(const nlohmann::ordered_json& node) {
    using value_t = nlohmann::ordered_json::value_t;
    switch (node.type()) {
    case value_t::object: {
        py::dict d;
        for (const auto& [key, value] : node.items()) d[py::str(key)] = json_to_py(value);
        return d;
    }
    case value_t::array: {
        py::list l;
        for (const auto& value : node) l.append(json_to_py(value));
        return l;
    }
    case value_t::string: return py::str(node.get<std::string>());
    case value_t::boolean: return py::bool_(node.get<bool>());
    case value_t::number_integer: return py::int_(node.get<std::int64_t>());
    case value_t::number_unsigned: return py::int_(node.get<std::uint64_t>());
    case value_t::number_float: return py::float_(node.get<double>());
    default: return py::none();
    }
}

struct PyNormalForm {
    std::string text;
    std::int64_t t_length = 0;
    std::int64_t word_length = 0;
    std::vector<std::tuple<std::string, int>> syllables;
    std::string trailing;
};

// One loaded experiment: validated presentation, walk parameters and length
// function, with the estimation pipelines exposed as methods.
class Experiment {
public:
    explicit Experiment(const std::string& json_text)
        : config_(parse_config(nlohmann::ordered_json::parse(json_text))),
          inst_(instantiate(config_)) {}

    static Experiment from_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw IoError("cannot open config file: " + path);
        std::stringstream buffer;
        buffer << in.rdbuf();
        return Experiment(buffer.str());
    }

    PyNormalForm normalize_word(const std::string& word) const {
        const NormalForm w = normalize(inst_.pres, parse_word(inst_.pres, word));
        PyNormalForm out;
        out.text = to_string(inst_.pres, w);
        out.t_length = t_length(w);
        out.word_length = word_length(inst_.pres, w);
        for (const Syllable& s : w.syllables)
            out.syllables.emplace_back(inst_.pres.base().name_of(s.rep), s.sign);
        out.trailing = inst_.pres.base().name_of(w.trailing);
        return out;
    }

    std::string regime() const {
        return regime_name(classify_regime(inst_.pres, inst_.params).kind);
    }

    py::object drift(std::int64_t steps, std::int64_t replicas, std::uint64_t seed,
                     int threads) const {
        const DriftReport report = run_drift_pipeline(
            inst_.pres, inst_.params, inst_.ell, steps > 0 ? steps : config_.steps,
            replicas > 0 ? replicas : config_.replicas, seed != 0 ? seed : config_.seed,
            config_.safety_margin, threads > 0 ? threads : config_.threads);
        return json_to_py(drift_report_to_json(report));
    }

    py::object clt(std::int64_t n, std::int64_t replicas, double lambda_hat, double sigma2_hat,
                   std::uint64_t seed, int threads) const {
        const CltReport report = clt_check(inst_.pres, inst_.params, inst_.ell, n, replicas,
                                           seed != 0 ? seed : substream(config_.seed, 0xc17u),
                                           lambda_hat, sigma2_hat,
                                           threads > 0 ? threads : config_.threads);
        return json_to_py(clt_report_to_json(report));
    }

    py::object xi(const std::string& direction, const std::string& element, std::int64_t trials,
                  std::uint64_t seed) const {
        int sign = 0;
        if (direction == "t") sign = +1;
        else if (direction == "t^-1") sign = -1;
        else throw ConfigError("direction must be 't' or 't^-1'");
        const XiEstimate estimate = estimate_xi(
            inst_.pres, inst_.params, sign, inst_.pres.base().id_of(element), config_.horizon,
            trials > 0 ? trials : config_.xi_trials, seed != 0 ? seed : config_.seed);
        return json_to_py(xi_estimate_to_json(estimate));
    }

    py::object sweep(const std::string& param, double lo, double hi, double step) const {
        const SweepResult result = run_sweep(config_, param, lo, hi, step);
        py::list points;
        for (const auto& pt : result.points) {
            py::dict node;
            node["segment"] = pt.segment;
            node["value"] = pt.value;
            node["lambda"] = json_to_py(estimate_to_json(pt.lambda));
            node["sigma2"] = json_to_py(estimate_to_json(pt.sigma2));
            points.append(node);
        }
        return points;
    }

    py::object simulate(std::int64_t steps, std::uint64_t seed) const {
        const TrajectoryState traj =
            run_trajectory(inst_.pres, inst_.params, steps > 0 ? steps : config_.steps,
                           seed != 0 ? seed : config_.seed);
        py::dict out;
        out["final"] = to_string(inst_.pres, traj.current);
        out["t_length"] = t_length(traj.current);
        out["word_length"] = word_length(inst_.pres, traj.current);
        out["ell_value"] = eval_length(inst_.ell, traj.current);
        out["signed_depth"] = signed_depth(traj.current);
        return out;
    }

    std::string config_digest() const { return config_hash(config_); }

private:
    ExperimentConfig config_;
    Instance inst_;
};

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Random walks on HNN extensions: normal forms, drift, CLT and escape "
              "probabilities";

    py::class_<PyNormalForm>(m, "NormalForm")
        .def_readonly("text", &PyNormalForm::text)
        .def_readonly("t_length", &PyNormalForm::t_length)
        .def_readonly("word_length", &PyNormalForm::word_length)
        .def_readonly("syllables", &PyNormalForm::syllables)
        .def_readonly("trailing", &PyNormalForm::trailing)
        .def("__str__", [](const PyNormalForm& w) { return w.text; })
        .def("__repr__", [](const PyNormalForm& w) { return "NormalForm('" + w.text + "')"; });

    py::class_<Experiment>(m, "Experiment")
        .def(py::init<const std::string&>(), py::arg("config_json"))
        .def_static("from_file", &Experiment::from_file, py::arg("path"))
        .def("normalize", &Experiment::normalize_word, py::arg("word"))
        .def("regime", &Experiment::regime)
        .def("drift", &Experiment::drift, py::arg("steps") = 0, py::arg("replicas") = 0,
             py::arg("seed") = 0, py::arg("threads") = 0)
        .def("clt", &Experiment::clt, py::arg("n"), py::arg("replicas"), py::arg("lambda_hat"),
             py::arg("sigma2_hat"), py::arg("seed") = 0, py::arg("threads") = 0)
        .def("xi", &Experiment::xi, py::arg("direction"), py::arg("element"),
             py::arg("trials") = 0, py::arg("seed") = 0)
        .def("sweep", &Experiment::sweep, py::arg("param"), py::arg("lo"), py::arg("hi"),
             py::arg("step"))
        .def("simulate", &Experiment::simulate, py::arg("steps") = 0, py::arg("seed") = 0)
        .def("config_hash", &Experiment::config_digest);

    m.def("first_passage_gf",
          [](double p, double alpha, int direction, double z) {
              return first_passage_gf(ZWalkLaw(p, alpha), direction, z);
          },
          py::arg("p"), py::arg("alpha"), py::arg("direction"), py::arg("z") = 1.0);
    m.def("return_gf",
          [](double p, double alpha, double z) { return return_gf(ZWalkLaw(p, alpha), z); },
          py::arg("p"), py::arg("alpha"), py::arg("z") = 1.0);
    m.def("green_gf",
          [](double p, double alpha, double z) { return green_gf(ZWalkLaw(p, alpha), z); },
          py::arg("p"), py::arg("alpha"), py::arg("z") = 1.0);
    m.def("lazy_green_identity",
          [](double p, double alpha, double z) {
              return lazy_green_identity(ZWalkLaw(p, alpha), z);
          },
          py::arg("p"), py::arg("alpha"), py::arg("z") = 1.0);
    m.def("degenerate_drift", &degenerate_drift, py::arg("alpha"), py::arg("p"));

    m.attr("__version__") = "0.1.0";
}
