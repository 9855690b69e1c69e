// Command-line front end: simulate, theory, verify.
//
// Exit codes: 0 success / all checks pass, 1 verification failure,
// 2 usage or configuration error.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "wasep/covariance.hpp"
#include "wasep/errors.hpp"
#include "wasep/harness/config.hpp"
#include "wasep/harness/ensemble.hpp"
#include "wasep/harness/verify.hpp"
#include "wasep/kernel.hpp"
#include "wasep/rates.hpp"
#include "wasep/variance.hpp"

using namespace wasep;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct ModelArgs {
    std::string params;
    std::optional<double> alpha, beta, rho;

    // --params takes a JSON object or a path to a JSON file; explicit flags win.
    VarianceSpec spec() const {
        double a = 1.0, b = 2.0, r = 0.3;
        if (!params.empty()) {
            json doc;
            try {
                if (std::filesystem::exists(params)) {
                    std::ifstream in(params);
                    doc = json::parse(in);
                } else {
                    doc = json::parse(params);
                }
            } catch (const json::exception& e) {
                throw ConfigError(std::string("--params: ") + e.what());
            }
            if (!doc.is_object()) throw ConfigError("--params must be a JSON object");
            for (const auto& item : doc.items()) {
                if (!item.value().is_number()) throw ConfigError("--params." + item.key() + ": expected a number");
                const double v = item.value().get<double>();
                if (item.key() == "alpha")
                    a = v;
                else if (item.key() == "beta")
                    b = v;
                else if (item.key() == "rho")
                    r = v;
                else
                    throw ConfigError("--params: unknown key '" + item.key() + "'");
            }
        }
        return VarianceSpec::from_beta(beta.value_or(b), alpha.value_or(a), rho.value_or(r));
    }
};

void add_model_options(CLI::App* cmd, ModelArgs& m) {
    cmd->add_option("--params", m.params, "JSON object (or file) with alpha, beta, rho");
    cmd->add_option("--alpha", m.alpha, "asymmetry strength (default 1)");
    cmd->add_option("--beta", m.beta, "weak-asymmetry exponent (default 2)");
    cmd->add_option("--rho", m.rho, "density (default 0.3)");
}

json spec_json(const VarianceSpec& s) {
    return {{"regime", std::string(to_string(s.regime))}, {"alpha", s.alpha}, {"rho", s.rho}};
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

int run_simulate(const std::string& config_path, std::optional<std::uint64_t> seed, const std::string& out) {
    ExperimentConfig config = load_config(config_path);
    if (seed) config.master_seed = *seed;
    const std::filesystem::path dir = !out.empty() ? out : !config.output_path.empty() ? config.output_path : "wasep_out";
    const unsigned workers = worker_count();
    std::cerr << "simulating " << config.replicas << " replicas on " << workers << " worker(s)\n";
    const EnsembleResult result = run_ensemble(config, workers);
    write_outputs(result, dir);
    std::cerr << "wrote " << dir.string() << " (" << result.breaches << " breached replicas)\n";
    if (result.ring_doubling && result.ring_doubling->contaminated)
        std::cerr << "warning: ring-doubling check flags finite-size contamination\n";
    print(summary_json(result));
    return kOk;
}

int run_verify(const std::string& suite, bool quick, const std::string& report_path) {
    if (!is_suite(suite)) {
        std::cerr << "unknown suite '" << suite << "'; expected one of:";
        for (const auto& s : suite_names()) std::cerr << ' ' << s;
        std::cerr << '\n';
        return kUsage;
    }
    const SuiteReport rep = verify_suite(suite, quick);
    for (const auto& c : rep.criteria) std::cerr << summary_line(c) << '\n';
    const json j = to_json(rep);
    if (!report_path.empty()) std::ofstream(report_path) << j.dump(2) << '\n';
    print(j);
    return rep.pass() ? kOk : kFailed;
}

std::vector<double> require_same_length(const std::vector<double>& times, const std::vector<double>& values) {
    if (times.size() != values.size()) throw ConfigError("--times and --values must have the same length");
    return values;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Weakly asymmetric exclusion: simulation, Gaussian theory and rate functions"};
    app.require_subcommand(1);

    // simulate
    std::string config_path, out_dir;
    std::optional<std::uint64_t> seed;
    auto* simulate = app.add_subcommand("simulate", "run an ensemble from a JSON config");
    simulate->add_option("--config", config_path, "experiment config (JSON)")->required();
    simulate->add_option("--seed", seed, "override master_seed");
    simulate->add_option("--out", out_dir, "output directory (default: config output_path)");

    // theory
    auto* theory = app.add_subcommand("theory", "evaluate closed-form quantities");
    theory->require_subcommand(1);

    ModelArgs a_model;
    double a_t = 1.0, a_s = 1.0;
    auto* th_a = theory->add_subcommand("a", "current covariance a(t, s)");
    th_a->add_option("--t", a_t, "first time")->required();
    th_a->add_option("--s", a_s, "second time")->required();
    add_model_options(th_a, a_model);

    double f_t = 1.0, f_m = 0.0;
    auto* th_f = theory->add_subcommand("f", "drift function f(t) for drift m");
    th_f->add_option("--t", f_t, "time")->required();
    th_f->add_option("--m", f_m, "drift magnitude")->required();

    double k_t = 1.0, k_s = 0.5;
    auto* th_k = theory->add_subcommand("kernel", "Volterra kernel K(t, s) and its covariance integral");
    th_k->add_option("--t", k_t, "outer time")->required();
    th_k->add_option("--s", k_s, "inner time, 0 < s <= t")->required();

    ModelArgs r_model;
    std::vector<double> r_times, r_values;
    std::string r_kind = "finite";
    bool r_tagged = false;
    auto* th_r = theory->add_subcommand("rate", "moderate-deviation rate of a current path");
    th_r->add_option("--times", r_times, "sample times (comma separated)")->required()->delimiter(',');
    th_r->add_option("--values", r_values, "path values at the sample times")->required()->delimiter(',');
    th_r->add_option("--kind", r_kind, "finite: (1/2) r^T A^-1 r; path: regime path functional")
        ->check(CLI::IsMember({"finite", "path"}));
    th_r->add_flag("--tagged", r_tagged, "rate for the tagged particle (times rho^2)");
    add_model_options(th_r, r_model);

    // verify
    std::string suite, report_path;
    bool quick = false;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "identities | kernel | covariance | rates | inequality")->required();
    verify->add_flag("--quick", quick, "divide replica counts by 10");
    verify->add_option("--report", report_path, "also write the JSON report to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        if (*simulate) return run_simulate(config_path, seed, out_dir);
        if (*verify) return run_verify(suite, quick, report_path);

        if (*th_a) {
            const VarianceSpec spec = a_model.spec();
            print({{"quantity", "a"}, {"t", a_t}, {"s", a_s}, {"spec", spec_json(spec)},
                   {"value", variance_a(a_t, a_s, spec)}});
        } else if (*th_f) {
            print({{"quantity", "f"}, {"t", f_t}, {"m", f_m}, {"value", f_drift(f_t, f_m)}});
        } else if (*th_k) {
            json j = {{"quantity", "kernel"}, {"t", k_t}, {"s", k_s}};
            if (k_s < k_t) j["K"] = kernel_K(k_t, k_s);
            if (!(k_s > 0.0 && k_s <= k_t)) throw DomainError("kernel: need 0 < s <= t");
            j["cov_integral"] = kernel_cov_integral(k_t, k_s);
            j["fbm_cov"] = fbm_cov(k_t, k_s);
            print(j);
        } else if (*th_r) {
            const VarianceSpec spec = r_model.spec();
            const auto values = require_same_length(r_times, r_values);
            double rate = 0.0;
            if (r_kind == "finite") {
                require_rate_regime(spec);
                Eigen::VectorXd r = Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
                rate = rate_finite_dim(r, covariance_matrix(r_times, spec));
            } else if (spec.regime == Regime::sub) {
                rate = rate_path_sub(GridPath(r_times, values), spec);
            } else if (spec.regime == Regime::super) {
                require_rate_regime(spec);
                rate = rate_path_super(kernel_invert(GridPath(r_times, values)), spec).rate;
            } else {
                throw DomainError("rate --kind path: the critical regime has no closed path functional; use --kind finite");
            }
            if (r_tagged) rate = rate_tagged(rate, spec.rho);
            print({{"quantity", r_tagged ? "tagged rate" : "current rate"}, {"kind", r_kind},
                   {"spec", spec_json(spec)}, {"value", rate}});
        }
        return kOk;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kUsage;
    } catch (const DegenerateRegime& e) {
        std::cerr << "degenerate parameters: " << e.what() << '\n';
        return kUsage;
    } catch (const DomainError& e) {
        std::cerr << "invalid arguments: " << e.what() << '\n';
        return kUsage;
    } catch (const SingularMatrix& e) {
        std::cerr << "singular covariance: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFailed;
    }
}
