#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include "persuasion/benchmark.hpp"
#include "persuasion/cli.hpp"
#include "persuasion/costs.hpp"
#include "persuasion/crossing.hpp"
#include "persuasion/equilibria.hpp"
#include "persuasion/verifier.hpp"
#include "persuasion/wald.hpp"

namespace py = pybind11;
using namespace persuasion;

namespace {

GameConfig make_game(const CostModel& cost, double beta_bar, const std::vector<std::pair<double, double>>& types) {
    RawConfig raw;
    raw.cost = cost;
    raw.beta_bar = beta_bar;
    for (const auto& [mu, prob] : types) raw.types.push_back({mu, prob});
    return make_config(raw);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Costly persuasion with a partially informed sender";

    py::register_exception<RegimeError>(m, "RegimeError", PyExc_ValueError);
    py::register_exception<NoIntersection>(m, "NoIntersection", PyExc_ArithmeticError);

    py::class_<Experiment>(m, "Experiment")
        .def(py::init(&Experiment::make), py::arg("p"), py::arg("q"))
        .def_static("uninformative", &Experiment::uninformative)
        .def_property_readonly("p", &Experiment::p)
        .def_property_readonly("q", &Experiment::q)
        .def_property_readonly("is_uninformative", &Experiment::is_uninformative)
        .def(py::self == py::self)
        .def("__repr__", [](const Experiment& e) {
            return "Experiment(p=" + py::repr(py::float_(e.p())).cast<std::string>() +
                   ", q=" + py::repr(py::float_(e.q())).cast<std::string>() + ")";
        });

    py::class_<LlrCost>(m, "LlrCost")
        .def(py::init([](double cg, double cb) { return LlrCost{cg, cb}; }), py::arg("c_good"), py::arg("c_bad"))
        .def_readonly("c_good", &LlrCost::c_good)
        .def_readonly("c_bad", &LlrCost::c_bad);
    py::class_<ShannonCost>(m, "ShannonCost")
        .def(py::init([](double c) { return ShannonCost{c}; }), py::arg("c"))
        .def_readonly("c", &ShannonCost::c);

    py::class_<GameConfig>(m, "GameConfig")
        .def(py::init(&make_game), py::arg("cost"), py::arg("beta_bar"), py::arg("types"),
             "types: list of (mu, prob) with increasing mu")
        .def_readonly("beta_bar", &GameConfig::beta_bar)
        .def_readonly("mu0", &GameConfig::mu0)
        .def_property_readonly("mus", [](const GameConfig& c) {
            std::vector<double> out;
            for (const auto& t : c.types) out.push_back(t.mu);
            return out;
        })
        .def("__len__", &GameConfig::size);

    m.def("cost", &cost, py::arg("pi"), py::arg("mu"), py::arg("model"));
    m.def("sender_payoff", py::overload_cast<const Experiment&, double, const CostModel&>(&sender_payoff),
          py::arg("pi"), py::arg("mu"), py::arg("model"));
    m.def("q_ratio", &q_ratio, py::arg("beta"), py::arg("beta_bar"));

    py::class_<CrossingReport>(m, "CrossingReport")
        .def_property_readonly("regime", [](const CrossingReport& r) { return std::string(to_string(r.regime)); })
        .def_readonly("k_hat", &CrossingReport::k_hat)
        .def_readonly("x_hat", &CrossingReport::x_hat)
        .def_readonly("t_star", &CrossingReport::t_star)
        .def_readonly("t_hat", &CrossingReport::t_hat)
        .def_readonly("t_check", &CrossingReport::t_check);
    m.def("crossing_regime", &crossing_regime, py::arg("c_good"), py::arg("c_bad"));
    m.def("k_hat", &k_hat, py::arg("c_bad"));
    m.def("delta", &delta, py::arg("t"), py::arg("c_good"), py::arg("c_bad"));
    m.def("p_hat", &p_hat, py::arg("q"), py::arg("report"));
    m.def("p_check", &p_check, py::arg("q"), py::arg("report"));

    py::class_<BenchmarkSolution>(m, "BenchmarkSolution")
        .def_readonly("experiment", &BenchmarkSolution::experiment)
        .def_readonly("value", &BenchmarkSolution::value)
        .def_readonly("feasibility", &BenchmarkSolution::feasibility);
    m.def("solve_benchmark", py::overload_cast<double, double, const GameConfig&>(&solve_benchmark), py::arg("mu"),
          py::arg("beta"), py::arg("cfg"));

    py::class_<SeparatingType>(m, "SeparatingType")
        .def_readonly("experiment", &SeparatingType::experiment)
        .def_readonly("payoff", &SeparatingType::payoff)
        .def_readonly("binding", &SeparatingType::binding);
    m.def("separating", [](const GameConfig& cfg) { return separating(cfg).types; }, py::arg("cfg"));

    py::class_<PoolingSet>(m, "PoolingSet")
        .def_readonly("q_lo", &PoolingSet::q_lo)
        .def_readonly("q_hi", &PoolingSet::q_hi)
        .def_readonly("obedience_bound", &PoolingSet::obedience_bound)
        .def_readonly("participation_bound", &PoolingSet::participation_bound)
        .def_readonly("large_dev_bound", &PoolingSet::large_dev_bound)
        .def_property_readonly("nonempty", &PoolingSet::nonempty);
    m.def("pooling_set", &pooling_set, py::arg("cfg"));
    m.def("pooling_experiment", &pooling_experiment, py::arg("q"), py::arg("report"));

    py::class_<UninformativeReport>(m, "UninformativeReport")
        .def_readonly("exists", &UninformativeReport::exists)
        .def_readonly("pi_star", &UninformativeReport::pi_star)
        .def_readonly("mu_bar", &UninformativeReport::mu_bar)
        .def_readonly("no_guarantee", &UninformativeReport::no_guarantee);
    m.def("uninformative_report", &uninformative_report, py::arg("cfg"));

    py::class_<Violation>(m, "Violation")
        .def_property_readonly("kind", [](const Violation& v) { return std::string(to_string(v.kind)); })
        .def_readonly("theta", &Violation::theta)
        .def_readonly("witness", &Violation::witness)
        .def_readonly("belief", &Violation::belief)
        .def_readonly("margin", &Violation::margin);
    py::class_<VerifierReport>(m, "VerifierReport")
        .def_readonly("violations", &VerifierReport::violations)
        .def_readonly("on_path_payoffs", &VerifierReport::on_path_payoffs)
        .def_readonly("deviations_checked", &VerifierReport::deviations_checked)
        .def_property_readonly("ok", &VerifierReport::ok);
    m.def(
        "verify_d1",
        [](const std::vector<Experiment>& assignment, const GameConfig& cfg, int grid, double tol, unsigned threads) {
            GridSpec g;
            g.n_p = g.n_q = grid;
            g.tol = tol;
            g.threads = threads;
            py::gil_scoped_release release;
            return verify_d1(StrategyProfile{assignment, std::nullopt}, cfg, g);
        },
        py::arg("assignment"), py::arg("cfg"), py::arg("grid") = 201, py::arg("tol") = 1e-9, py::arg("threads") = 0);

    py::class_<SimStats>(m, "SimStats")
        .def_readonly("seed", &SimStats::seed)
        .def_readonly("n_paths", &SimStats::n_paths)
        .def_readonly("mean_cost", &SimStats::mean_cost)
        .def_readonly("se_cost", &SimStats::se_cost)
        .def_readonly("p_emp", &SimStats::p_emp)
        .def_readonly("q_emp", &SimStats::q_emp)
        .def_readonly("mean_draws", &SimStats::mean_draws)
        .def_readonly("mean_posterior", &SimStats::mean_posterior)
        .def_readonly("cap_hits", &SimStats::cap_hits);
    m.def("thresholds_to_experiment", &thresholds_to_experiment, py::arg("alpha"), py::arg("n_bar"), py::arg("n_low"));
    m.def("map_to_llr_constants", &map_to_llr_constants, py::arg("alpha"), py::arg("c_g"), py::arg("c_b"));
    auto wald_config = [](double alpha, double c_g, double c_b, int n_bar, int n_low, double mu0) {
        WaldConfig w;
        w.alpha = alpha;
        w.c_g = c_g;
        w.c_b = c_b;
        w.n_bar = n_bar;
        w.n_low = n_low;
        w.mu0 = mu0;
        return w;
    };
    m.def(
        "wald_cost",
        [=](double alpha, double c_g, double c_b, int n_bar, int n_low, double mu0) {
            return closed_form_cost(wald_config(alpha, c_g, c_b, n_bar, n_low, mu0));
        },
        py::arg("alpha"), py::arg("c_g"), py::arg("c_b"), py::arg("n_bar"), py::arg("n_low"), py::arg("mu0"));
    m.def(
        "wald_simulate",
        [=](double alpha, double c_g, double c_b, int n_bar, int n_low, double mu0, std::uint64_t seed,
            std::uint64_t paths) {
            auto w = wald_config(alpha, c_g, c_b, n_bar, n_low, mu0);
            w.seed = seed;
            w.n_paths = paths;
            py::gil_scoped_release release;
            return simulate(w);
        },
        py::arg("alpha"), py::arg("c_g"), py::arg("c_b"), py::arg("n_bar"), py::arg("n_low"), py::arg("mu0"),
        py::arg("seed") = 0, py::arg("paths") = 100000);

    m.def(
        "run_cli",
        [](const std::string& command, const std::string& config_text, int grid) {
            cli::Options o;
            const auto c = cli::parse_command(command);
            if (!c) throw py::value_error("unknown command " + command);
            o.command = *c;
            o.config_text = config_text;
            o.grid = grid;
            const auto r = cli::run(o);
            return py::make_tuple(r.status, r.output, r.error);
        },
        py::arg("command"), py::arg("config_text"), py::arg("grid") = 201,
        "Runs a CLI command on an inline config document; returns (status, output, error).");
}
