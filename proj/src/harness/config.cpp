#include "wasep/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <initializer_list>
#include <thread>

#include "wasep/errors.hpp"

namespace wasep {

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& item : obj.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* k) { return item.key() == k; });
        if (!known) throw ConfigError(where + ": unknown key '" + item.key() + "'");
    }
}

double number(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(where + ": missing '" + key + "'");
    if (!it->is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return it->get<double>();
}

double number_or(const json& obj, const char* key, double fallback, const std::string& where) {
    return obj.contains(key) ? number(obj, key, where) : fallback;
}

std::int64_t integer(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw ConfigError(where + ": missing '" + key + "'");
    if (!it->is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
    return it->get<std::int64_t>();
}

bool flag_or(const json& obj, const char* key, bool fallback, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_boolean()) throw ConfigError(where + "." + key + ": expected true or false");
    return it->get<bool>();
}

std::string short_number(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

}  // namespace

TestFunction FieldTestSpec::make() const {
    if (kind == "ramp") return TestFunction::ramp(l);
    if (kind == "smooth_ramp") return TestFunction::smooth_ramp(l);
    if (kind == "gaussian_bump") return TestFunction::gaussian_bump(center, width);
    throw ConfigError("unknown test function kind '" + kind + "'");
}

std::string FieldTestSpec::label() const {
    if (kind == "gaussian_bump") return kind + "_c" + short_number(center) + "_w" + short_number(width);
    return kind + "_l" + short_number(l);
}

ProcessParams ExperimentConfig::process() const {
    try {
        return ProcessParams(n, alpha, beta, rho, horizon, ring_size);
    } catch (const DomainError& e) {
        throw ConfigError(std::string("process: ") + e.what());
    }
}

void ExperimentConfig::validate() const {
    const ProcessParams p = process();
    if (replicas < 1) throw ConfigError("replicas must be at least 1");
    if (sample_times.empty()) throw ConfigError("sample_times must not be empty");
    for (std::size_t i = 0; i < sample_times.size(); ++i) {
        const double t = sample_times[i];
        if (!(t > 0.0 && t <= horizon)) throw ConfigError("sample_times must lie in (0, horizon]");
        if (i > 0 && !(t > sample_times[i - 1])) throw ConfigError("sample_times must be strictly increasing");
    }
    if (!(a_n_exponent > 0.5 && a_n_exponent < 1.0)) throw ConfigError("a_n_rule.exponent must lie in (1/2, 1)");
    if (!observe_current && !observe_tagged && !observe_field) throw ConfigError("no observable selected");
    if (observe_field && field_test_functions.empty())
        throw ConfigError("field observable requested without field_test_functions");
    const double window = static_cast<double>(p.ring_size()) / (2.0 * n);
    for (const auto& spec : field_test_functions) {
        TestFunction H;
        try {
            H = spec.make();
        } catch (const DomainError& e) {
            throw ConfigError(std::string("field_test_functions: ") + e.what());
        }
        if (!(H.lo > -window && H.hi < window))
            throw ConfigError("field test function " + spec.label() + " leaves the ring window");
    }
}

ExperimentConfig parse_config(const json& doc) {
    reject_unknown(doc, "config",
                   {"process", "replicas", "master_seed", "sample_times", "observables", "field_test_functions",
                    "a_n_rule", "ring_doubling_check", "output_path"});
    ExperimentConfig c;

    if (!doc.contains("process")) throw ConfigError("config: missing 'process'");
    const json& proc = doc.at("process");
    reject_unknown(proc, "process", {"n", "alpha", "beta", "rho", "horizon", "ring_size"});
    const std::int64_t n = integer(proc, "n", "process");
    if (n < 1 || n > 1'000'000'000) throw ConfigError("process.n out of range");
    c.n = static_cast<int>(n);
    c.alpha = number(proc, "alpha", "process");
    c.beta = number(proc, "beta", "process");
    c.rho = number(proc, "rho", "process");
    c.horizon = number(proc, "horizon", "process");
    if (proc.contains("ring_size")) c.ring_size = integer(proc, "ring_size", "process");

    const std::int64_t replicas = integer(doc, "replicas", "config");
    if (replicas < 1 || replicas > 100'000'000) throw ConfigError("replicas out of range");
    c.replicas = static_cast<int>(replicas);

    const auto seed = doc.find("master_seed");
    if (seed == doc.end()) throw ConfigError("config: missing 'master_seed'");
    if (seed->is_number_unsigned())
        c.master_seed = seed->get<std::uint64_t>();
    else
        throw ConfigError("master_seed: expected a non-negative 64-bit integer");

    const auto times = doc.find("sample_times");
    if (times == doc.end() || !times->is_array()) throw ConfigError("sample_times: expected an array");
    for (const auto& t : *times) {
        if (!t.is_number()) throw ConfigError("sample_times: expected numbers");
        c.sample_times.push_back(t.get<double>());
    }

    if (doc.contains("observables")) {
        const json& obs = doc.at("observables");
        reject_unknown(obs, "observables", {"current", "tagged", "field"});
        c.observe_current = flag_or(obs, "current", true, "observables");
        c.observe_tagged = flag_or(obs, "tagged", false, "observables");
        c.observe_field = flag_or(obs, "field", false, "observables");
    }

    if (doc.contains("field_test_functions")) {
        const json& list = doc.at("field_test_functions");
        if (!list.is_array()) throw ConfigError("field_test_functions: expected an array");
        for (const auto& item : list) {
            reject_unknown(item, "field_test_functions", {"kind", "l", "center", "width"});
            if (!item.contains("kind") || !item.at("kind").is_string())
                throw ConfigError("field_test_functions: missing 'kind'");
            FieldTestSpec spec;
            spec.kind = item.at("kind").get<std::string>();
            if (spec.kind == "ramp" || spec.kind == "smooth_ramp") {
                spec.l = number(item, "l", "field_test_functions");
            } else if (spec.kind == "gaussian_bump") {
                spec.center = number_or(item, "center", 0.0, "field_test_functions");
                spec.width = number(item, "width", "field_test_functions");
            } else {
                throw ConfigError("field_test_functions: unknown kind '" + spec.kind + "'");
            }
            c.field_test_functions.push_back(spec);
        }
    }

    if (doc.contains("a_n_rule")) {
        const json& rule = doc.at("a_n_rule");
        reject_unknown(rule, "a_n_rule", {"exponent"});
        c.a_n_exponent = number_or(rule, "exponent", 0.75, "a_n_rule");
    }
    c.ring_doubling_check = flag_or(doc, "ring_doubling_check", false, "config");
    if (doc.contains("output_path")) {
        if (!doc.at("output_path").is_string()) throw ConfigError("output_path: expected a string");
        c.output_path = doc.at("output_path").get<std::string>();
    }

    c.validate();
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config " + path.string() + " is not valid JSON: " + e.what());
    }
    return parse_config(doc);
}

json to_json(const ExperimentConfig& c) {
    json proc = {{"n", c.n}, {"alpha", c.alpha}, {"beta", c.beta}, {"rho", c.rho}, {"horizon", c.horizon}};
    if (c.ring_size) proc["ring_size"] = *c.ring_size;
    json fields = json::array();
    for (const auto& f : c.field_test_functions) {
        if (f.kind == "gaussian_bump")
            fields.push_back({{"kind", f.kind}, {"center", f.center}, {"width", f.width}});
        else
            fields.push_back({{"kind", f.kind}, {"l", f.l}});
    }
    return {{"process", proc},
            {"replicas", c.replicas},
            {"master_seed", c.master_seed},
            {"sample_times", c.sample_times},
            {"observables", {{"current", c.observe_current}, {"tagged", c.observe_tagged}, {"field", c.observe_field}}},
            {"field_test_functions", fields},
            {"a_n_rule", {{"exponent", c.a_n_exponent}}},
            {"ring_doubling_check", c.ring_doubling_check},
            {"output_path", c.output_path}};
}

unsigned worker_count() {
    if (const char* env = std::getenv("WASEP_WORKERS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(std::min(v, 4096L));
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace wasep
