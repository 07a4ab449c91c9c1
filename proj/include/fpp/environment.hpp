#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "fpp/graph.hpp"

namespace fpp {

// One realization of the two-point edge-weight assignment. Bits are a pure
// function of (graph, seed, sample_index) and are regenerated, never stored
// on disk.
class Environment {
  public:
    Environment(const WeightedGraph& g, double a, double b, std::uint64_t seed,
                std::uint64_t sample_index);

    const WeightedGraph& graph() const { return *graph_; }
    double a() const { return a_; }
    double b() const { return b_; }
    std::uint64_t seed() const { return seed_; }
    std::uint64_t sample_index() const { return sample_index_; }

    bool bit(EdgeId e) const { return (words_[e >> 6] >> (e & 63)) & 1u; }
    double weight(EdgeId e) const { return bit(e) ? b_ : a_; }

    Environment toggled(EdgeId e) const;
    const std::vector<std::uint64_t>& words() const { return words_; }

    nlohmann::json to_json() const;
    static Environment from_json(const nlohmann::json& j, const WeightedGraph& g);

  private:
    const WeightedGraph* graph_;
    double a_;
    double b_;
    std::vector<std::uint64_t> words_;
    std::uint64_t seed_;
    std::uint64_t sample_index_;
};

inline Environment sample_environment(const WeightedGraph& g, double a, double b,
                                      std::uint64_t seed, std::uint64_t sample_index) {
    return Environment(g, a, b, seed, sample_index);
}

inline Environment toggle_edge(const Environment& env, EdgeId e) { return env.toggled(e); }

}  // namespace fpp
