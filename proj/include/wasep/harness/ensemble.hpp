#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wasep/harness/config.hpp"
#include "wasep/harness/estimate.hpp"

namespace wasep {

/// Sampled observables of one replica. Values after a ring breach are NaN.
struct ObservableSeries {
    std::uint64_t replica = 0;
    std::uint64_t seed = 0;
    std::vector<double> sample_times;
    std::vector<double> current;                // J-bar(t_i), empty when not observed
    std::vector<double> tagged;                 // X-bar(t_i), empty when not observed
    std::vector<std::vector<double>> field;     // Y_t(H_k) per test function
    std::vector<std::vector<double>> rescaled;  // <mu_t, H_k> per test function
    bool breached = false;
    std::string breach_message;
};

struct RingDoublingEntry {
    std::string observable;
    double time = 0.0;
    std::string statistic;  // mean or variance
    double base = 0.0;
    double doubled = 0.0;
    double combined_se = 0.0;
    bool agrees = true;
};

struct RingDoublingReport {
    std::int64_t base_ring = 0;
    std::int64_t doubled_ring = 0;
    std::vector<RingDoublingEntry> entries;
    bool contaminated = false;
};

struct EnsembleResult {
    ExperimentConfig config;
    std::int64_t ring_size = 0;
    std::vector<std::string> field_labels;
    std::vector<ObservableSeries> series;  // replica order
    std::int64_t breaches = 0;
    std::optional<RingDoublingReport> ring_doubling;

    /// "current", "tagged", "field_<label>", "rescaled_<label>" for the
    /// observables that were recorded.
    std::vector<std::string> observable_names() const;
    /// Values of one observable at sample index i, one per replica in
    /// replica order; breached replicas are skipped.
    std::vector<double> column(const std::string& observable, std::size_t i) const;
};

/// Runs fn(0) .. fn(count - 1) on `workers` threads. Results must be written
/// to per-index slots; the first exception is rethrown after all threads join.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& fn);

ObservableSeries run_replica(const ExperimentConfig& config, const ProcessParams& params, std::uint64_t replica);

/// Replica r uses seed replica_seed(master_seed, r), so results depend only
/// on the config, never on the worker count or scheduling. With
/// ring_doubling_check the ensemble is rerun on a ring of twice the size.
EnsembleResult run_ensemble(const ExperimentConfig& config, unsigned workers = worker_count());

/// Cov(O(t_i), O(t_j)) / n with the theory value attached for the current
/// (a(t_i, t_j)) and tagged position (a(t_i, t_j) / rho^2).
EstimateReport estimate_covariance(const EnsembleResult& result, const std::string& observable, std::size_t i,
                                   std::size_t j);

struct CsvRow {
    std::uint64_t replica = 0;
    std::uint64_t seed = 0;
    double time = 0.0;
    double value = 0.0;
};

/// Header replica,seed,time,value; doubles in shortest round-trip form.
void write_observable_csv(std::ostream& out, const EnsembleResult& result, const std::string& observable);
std::vector<CsvRow> read_observable_csv(std::istream& in);

nlohmann::json summary_json(const EnsembleResult& result);

/// One CSV per observable plus summary.json in `dir` (created if needed).
void write_outputs(const EnsembleResult& result, const std::filesystem::path& dir);

}  // namespace wasep
