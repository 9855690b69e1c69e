#include "wasep/harness/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include "wasep/errors.hpp"
#include "wasep/variance.hpp"

namespace wasep {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kAgreementSE = 4.0;

const std::vector<double>* values_of(const ObservableSeries& s, const std::vector<std::string>& labels,
                                     const std::string& observable) {
    if (observable == "current") return s.current.empty() ? nullptr : &s.current;
    if (observable == "tagged") return s.tagged.empty() ? nullptr : &s.tagged;
    for (std::size_t k = 0; k < labels.size(); ++k) {
        if (observable == "field_" + labels[k]) return k < s.field.size() ? &s.field[k] : nullptr;
        if (observable == "rescaled_" + labels[k]) return k < s.rescaled.size() ? &s.rescaled[k] : nullptr;
    }
    return nullptr;
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

template <class T>
T parse_field(const std::string& text, const char* what) {
    T value{};
    const char* first = text.data();
    const char* last = first + text.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last) throw ConfigError(std::string("csv: bad ") + what + " '" + text + "'");
    return value;
}

std::vector<std::string> labels_of(const ExperimentConfig& config) {
    std::vector<std::string> labels;
    for (const auto& f : config.field_test_functions) {
        std::string label = f.label();
        // Keep labels unique so that every observable maps to one file.
        std::string unique = label;
        for (int k = 2; std::find(labels.begin(), labels.end(), unique) != labels.end(); ++k)
            unique = label + "_" + std::to_string(k);
        labels.push_back(unique);
    }
    return labels;
}

EnsembleResult run_plain(const ExperimentConfig& config, unsigned workers) {
    const ProcessParams params = config.process();
    EnsembleResult result;
    result.config = config;
    result.ring_size = params.ring_size();
    result.field_labels = config.observe_field ? labels_of(config) : std::vector<std::string>{};
    result.series.resize(static_cast<std::size_t>(config.replicas));
    parallel_for(result.series.size(), workers, [&](std::size_t r) {
        result.series[r] = run_replica(config, params, static_cast<std::uint64_t>(r));
    });
    for (const auto& s : result.series) result.breaches += s.breached ? 1 : 0;
    return result;
}

RingDoublingReport compare_rings(const EnsembleResult& base, const EnsembleResult& doubled) {
    RingDoublingReport report;
    report.base_ring = base.ring_size;
    report.doubled_ring = doubled.ring_size;
    for (const auto& name : base.observable_names()) {
        for (std::size_t i = 0; i < base.config.sample_times.size(); ++i) {
            const auto a = base.column(name, i);
            const auto b = doubled.column(name, i);
            if (a.size() < 2 || b.size() < 2) continue;
            const EstimateReport ma = estimate_mean(name, a), mb = estimate_mean(name, b);
            const EstimateReport va = estimate_covariance(name, a, a), vb = estimate_covariance(name, b, b);
            for (const auto& [stat, x, y] : {std::tuple{"mean", ma, mb}, std::tuple{"variance", va, vb}}) {
                RingDoublingEntry e;
                e.observable = name;
                e.time = base.config.sample_times[i];
                e.statistic = stat;
                e.base = x.estimate;
                e.doubled = y.estimate;
                e.combined_se = std::hypot(x.standard_error, y.standard_error);
                e.agrees = std::fabs(e.base - e.doubled) <= kAgreementSE * e.combined_se || e.base == e.doubled;
                report.contaminated = report.contaminated || !e.agrees;
                report.entries.push_back(e);
            }
        }
    }
    return report;
}

nlohmann::json nullable(double x) { return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(nullptr); }

}  // namespace

std::vector<std::string> EnsembleResult::observable_names() const {
    std::vector<std::string> names;
    if (config.observe_current) names.emplace_back("current");
    if (config.observe_tagged) names.emplace_back("tagged");
    for (const auto& l : field_labels) names.push_back("field_" + l);
    for (const auto& l : field_labels) names.push_back("rescaled_" + l);
    return names;
}

std::vector<double> EnsembleResult::column(const std::string& observable, std::size_t i) const {
    if (i >= config.sample_times.size()) throw DomainError("column: sample index out of range");
    std::vector<double> out;
    out.reserve(series.size());
    for (const auto& s : series) {
        if (s.breached) continue;
        const auto* v = values_of(s, field_labels, observable);
        if (!v) throw DomainError("column: observable '" + observable + "' was not recorded");
        out.push_back((*v)[i]);
    }
    return out;
}

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto work = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= count || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed = true;
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
}

ObservableSeries run_replica(const ExperimentConfig& config, const ProcessParams& params, std::uint64_t replica) {
    ObservableSeries out;
    out.replica = replica;
    out.seed = replica_seed(config.master_seed, replica);
    out.sample_times = config.sample_times;
    const std::size_t m = config.sample_times.size();

    std::vector<TestFunction> tests;
    if (config.observe_field)
        for (const auto& f : config.field_test_functions) tests.push_back(f.make());
    const double a_n = default_a_n(config.n, config.a_n_exponent);

    Rng rng(out.seed);
    Configuration init = sample_initial(params, rng, config.observe_tagged);
    SimState state(params, std::move(init), rng, config.observe_tagged);

    if (config.observe_current) out.current.assign(m, kNaN);
    if (config.observe_tagged) out.tagged.assign(m, kNaN);
    out.field.assign(tests.size(), std::vector<double>(m, kNaN));
    out.rescaled.assign(tests.size(), std::vector<double>(m, kNaN));

    for (std::size_t i = 0; i < m; ++i) {
        try {
            advance(state, params, config.sample_times[i]);
            for (std::size_t k = 0; k < tests.size(); ++k) {
                out.field[k][i] = fluctuation_field(state.config(), tests[k], params);
                out.rescaled[k][i] = rescaled_field(state.config(), tests[k], params, a_n);
            }
        } catch (const RingBreach& e) {
            out.breached = true;
            out.breach_message = e.what();
            for (auto& f : out.field) f[i] = kNaN;
            for (auto& f : out.rescaled) f[i] = kNaN;
            break;
        }
        if (config.observe_current) out.current[i] = centered_current(state, params);
        if (config.observe_tagged) out.tagged[i] = centered_tagged(state, params);
    }
    return out;
}

EnsembleResult run_ensemble(const ExperimentConfig& config, unsigned workers) {
    config.validate();
    EnsembleResult result = run_plain(config, workers);
    if (config.ring_doubling_check) {
        ExperimentConfig bigger = config;
        bigger.ring_size = 2 * result.ring_size;
        bigger.ring_doubling_check = false;
        result.ring_doubling = compare_rings(result, run_plain(bigger, workers));
    }
    return result;
}

EstimateReport estimate_covariance(const EnsembleResult& result, const std::string& observable, std::size_t i,
                                   std::size_t j) {
    const auto& c = result.config;
    const auto x = result.column(observable, i);
    const auto y = result.column(observable, j);
    const std::string name = "cov " + observable + " (" + format_double(c.sample_times[i]) + ", " +
                             format_double(c.sample_times[j]) + ")";
    EstimateReport rep = estimate_covariance(name, x, y, 1.0 / c.n);
    const VarianceSpec spec = VarianceSpec::from_beta(c.beta, c.alpha, c.rho);
    const double a = variance_a(c.sample_times[i], c.sample_times[j], spec);
    if (observable == "current") rep.against(a);
    if (observable == "tagged" && c.rho > 0.0) rep.against(a / (c.rho * c.rho));
    return rep;
}

void write_observable_csv(std::ostream& out, const EnsembleResult& result, const std::string& observable) {
    out << "replica,seed,time,value\n";
    for (const auto& s : result.series) {
        const auto* v = values_of(s, result.field_labels, observable);
        if (!v) throw DomainError("write_observable_csv: observable '" + observable + "' was not recorded");
        for (std::size_t i = 0; i < s.sample_times.size(); ++i)
            out << s.replica << ',' << s.seed << ',' << format_double(s.sample_times[i]) << ','
                << format_double((*v)[i]) << '\n';
    }
}

std::vector<CsvRow> read_observable_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != "replica,seed,time,value") throw ConfigError("csv: unexpected header");
    std::vector<CsvRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cells[4];
        for (auto& c : cells)
            if (!std::getline(ss, c, ',')) throw ConfigError("csv: short row '" + line + "'");
        std::string extra;
        if (std::getline(ss, extra)) throw ConfigError("csv: long row '" + line + "'");
        rows.push_back({parse_field<std::uint64_t>(cells[0], "replica"), parse_field<std::uint64_t>(cells[1], "seed"),
                        parse_field<double>(cells[2], "time"), parse_field<double>(cells[3], "value")});
    }
    return rows;
}

nlohmann::json summary_json(const EnsembleResult& result) {
    using nlohmann::json;
    const auto& c = result.config;
    json estimates = json::object();
    const std::size_t m = c.sample_times.size();
    for (const auto& name : result.observable_names()) {
        json means = json::array(), covs = json::array();
        if (result.series.size() - static_cast<std::size_t>(result.breaches) >= 2) {
            for (std::size_t i = 0; i < m; ++i) means.push_back(to_json(estimate_mean(name, result.column(name, i))));
            for (std::size_t i = 0; i < m; ++i)
                for (std::size_t j = i; j < m; ++j) covs.push_back(to_json(estimate_covariance(result, name, i, j)));
        }
        estimates[name] = {{"mean", means}, {"covariance", covs}};
    }
    json ring = nullptr;
    if (result.ring_doubling) {
        const auto& r = *result.ring_doubling;
        json entries = json::array();
        for (const auto& e : r.entries)
            entries.push_back({{"observable", e.observable},
                               {"time", e.time},
                               {"statistic", e.statistic},
                               {"base", nullable(e.base)},
                               {"doubled", nullable(e.doubled)},
                               {"combined_se", nullable(e.combined_se)},
                               {"agrees", e.agrees}});
        ring = {{"base_ring", r.base_ring},
                {"doubled_ring", r.doubled_ring},
                {"contaminated", r.contaminated},
                {"entries", entries}};
    }
    return {{"config", to_json(c)},
            {"ring_size", result.ring_size},
            {"replicas", result.series.size()},
            {"breaches", result.breaches},
            {"observables", result.observable_names()},
            {"estimates", estimates},
            {"ring_doubling", ring}};
}

void write_outputs(const EnsembleResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    for (const auto& name : result.observable_names()) {
        std::ofstream out(dir / (name + ".csv"));
        if (!out) throw ConfigError("cannot write " + (dir / (name + ".csv")).string());
        write_observable_csv(out, result, name);
    }
    std::ofstream summary(dir / "summary.json");
    if (!summary) throw ConfigError("cannot write " + (dir / "summary.json").string());
    summary << summary_json(result).dump(2) << '\n';
}

}  // namespace wasep
