#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "fpp/graph.hpp"

namespace fpp {

// Validated, provenance-carrying experiment description. Serialized verbatim
// into every output file header.
struct ExperimentConfig {
    std::string kind;  // variance-scan | circ-scan | tail | midpoint | influence-map
    int d = 2;
    double a = 1.0;
    double b = 2.0;
    std::vector<int> v_list = {16, 32, 64, 128};
    int m = 0;             // 0 = auto floor(|v|^{1/4}) where a shift is used
    bool use_shift = false;
    std::string h_spec = "square";  // circ-scan fiber: square | single | cycle:k | complete:k
    std::vector<int> n_list = {8, 16, 32};
    std::uint64_t samples = 10000;
    std::uint64_t seed = 1;
    int shard_index = 0;
    int shard_count = 1;
    double t_max = 3.0;  // tail grid upper end

    void validate() const;
    nlohmann::json to_json() const;
    static ExperimentConfig from_json(const nlohmann::json& j);
    std::uint64_t config_hash() const;  // shard fields excluded

    std::uint64_t shard_begin() const;
    std::uint64_t shard_end() const;
};

// key = value lines; '#' comments; keys match the JSON field names.
ExperimentConfig parse_config_text(const std::string& kind, const std::string& text);
ExperimentConfig load_config_file(const std::string& kind, const std::string& path);

struct ExperimentOutput {
    std::string csv;
    bool invariant_ok = true;
    std::string message;
};

ExperimentOutput run_variance_scan(const ExperimentConfig& cfg);
ExperimentOutput run_circumference_scan(const ExperimentConfig& cfg);
ExperimentOutput run_tail_estimate(const ExperimentConfig& cfg);
ExperimentOutput run_midpoint_probe(const ExperimentConfig& cfg);
ExperimentOutput run_influence_map(const ExperimentConfig& cfg);

// Exact accumulator-level merge of shard outputs; rejects configs whose
// shard-stripped hashes differ and empty input.
std::string merge_shards(const std::vector<std::string>& shard_csvs);

// Geometry shared by the box experiments: the box is padded so that no
// geodesic between the embedded endpoints can touch the boundary, which is
// verified at run time by a boundary-touch counter.
struct BoxSetup {
    WeightedGraph box;
    std::vector<int> origin;
    std::vector<int> v_offset;
};
BoxSetup make_scan_box(int d, int length, double a, double b, int shift_margin);

std::string format_float(double x);  // 17 significant digits

}  // namespace fpp
