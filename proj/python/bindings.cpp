#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wasep/covariance.hpp"
#include "wasep/errors.hpp"
#include "wasep/field_theory.hpp"
#include "wasep/harness/config.hpp"
#include "wasep/harness/ensemble.hpp"
#include "wasep/harness/verify.hpp"
#include "wasep/grid_function.hpp"
#include "wasep/kernel.hpp"
#include "wasep/rates.hpp"
#include "wasep/rng.hpp"
#include "wasep/special.hpp"
#include "wasep/variance.hpp"

namespace py = pybind11;
using namespace wasep;

namespace {

VarianceSpec spec_of(double beta, double alpha, double rho) { return VarianceSpec::from_beta(beta, alpha, rho); }

// Ensemble columns as lists, one per observable, indexed [replica][time].
py::dict simulate(const std::string& config_json, py::object seed) {
    ExperimentConfig config = parse_config(nlohmann::json::parse(config_json));
    if (!seed.is_none()) config.master_seed = seed.cast<std::uint64_t>();
    EnsembleResult res;
    {
        py::gil_scoped_release release;
        res = run_ensemble(config);
    }
    py::dict out;
    for (const auto& name : res.observable_names()) {
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < config.sample_times.size(); ++i) rows.push_back(res.column(name, i));
        out[py::str(name)] = rows;
    }
    out["sample_times"] = config.sample_times;
    out["summary"] = summary_json(res).dump();
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Weakly asymmetric exclusion: Gaussian theory, rate functions and simulation";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<DegenerateRegime>(m, "DegenerateRegime", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<SingularMatrix>(m, "SingularMatrix", PyExc_ArithmeticError);

    m.def("variance_a", [](double t, double s, double beta, double alpha, double rho) {
        return variance_a(t, s, spec_of(beta, alpha, rho));
    }, py::arg("t"), py::arg("s"), py::arg("beta") = 2.0, py::arg("alpha") = 1.0, py::arg("rho") = 0.3);
    m.def("f_drift", &f_drift, py::arg("t"), py::arg("m"));
    m.def("fbm_cov", &fbm_cov, py::arg("t"), py::arg("s"));
    m.def("kernel_K", &kernel_K, py::arg("t"), py::arg("s"));
    m.def("kernel_cov_integral", &kernel_cov_integral, py::arg("t"), py::arg("s"));
    m.def("hypergeom_F", &hypergeom_F, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("z"));

    m.def("covariance_matrix", [](const std::vector<double>& times, double beta, double alpha, double rho) {
        return Eigen::MatrixXd(covariance_matrix(times, spec_of(beta, alpha, rho)).entries());
    }, py::arg("times"), py::arg("beta") = 2.0, py::arg("alpha") = 1.0, py::arg("rho") = 0.3);

    m.def("sample_paths", [](const std::vector<double>& times, int count, std::uint64_t seed, double beta, double alpha,
                             double rho) {
        const CovarianceMatrix A = covariance_matrix(times, spec_of(beta, alpha, rho));
        Eigen::MatrixXd out(count, static_cast<Eigen::Index>(times.size()));
        Rng rng(seed);
        for (int k = 0; k < count; ++k) {
            const GridPath p = sample_gaussian_path(A, rng);
            for (std::size_t i = 0; i < times.size(); ++i) out(k, static_cast<Eigen::Index>(i)) = p.values[i];
        }
        return out;
    }, py::arg("times"), py::arg("count"), py::arg("seed"), py::arg("beta") = 2.0, py::arg("alpha") = 1.0,
       py::arg("rho") = 0.3);

    m.def("rate_finite_dim", [](const std::vector<double>& times, const Eigen::VectorXd& r, double beta, double alpha,
                                double rho) {
        const VarianceSpec spec = spec_of(beta, alpha, rho);
        require_rate_regime(spec);
        return rate_finite_dim(r, covariance_matrix(times, spec));
    }, py::arg("times"), py::arg("r"), py::arg("beta") = 2.0, py::arg("alpha") = 1.0, py::arg("rho") = 0.3);
    m.def("rate_path_sub", [](const std::vector<double>& times, const std::vector<double>& values, double alpha,
                              double rho) {
        return rate_path_sub(GridPath(times, values), VarianceSpec(Regime::sub, alpha, rho));
    }, py::arg("times"), py::arg("values"), py::arg("alpha") = 1.0, py::arg("rho") = 0.3);
    m.def("rate_tagged", &rate_tagged, py::arg("rate_current"), py::arg("rho"));

    m.def("field_cov_increment", [](int l, double t, double s, double beta, double alpha, double rho) {
        return field_cov_increment(smooth_ramp_G(l), t, s, spec_of(beta, alpha, rho));
    }, py::arg("l"), py::arg("t"), py::arg("s"), py::arg("beta") = 2.0, py::arg("alpha") = 1.0, py::arg("rho") = 0.3,
       "Field covariance increment for the smoothed ramp of length l.");

    m.def("simulate", &simulate, py::arg("config_json"), py::arg("seed") = py::none());
    m.def("suite_names", &suite_names);
    m.def("verify_suite", [](const std::string& name, bool quick) {
        if (!is_suite(name)) throw py::value_error("unknown suite '" + name + "'");
        SuiteReport rep;
        {
            py::gil_scoped_release release;
            rep = verify_suite(name, quick);
        }
        return to_json(rep).dump();
    }, py::arg("name"), py::arg("quick") = true);
}
