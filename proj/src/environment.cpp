#include "fpp/environment.hpp"

#include <stdexcept>

#include "fpp/rng.hpp"

namespace fpp {

Environment::Environment(const WeightedGraph& g, double a, double b, std::uint64_t seed,
                         std::uint64_t sample_index)
    : graph_(&g), a_(a), b_(b), seed_(seed), sample_index_(sample_index) {
    if (!(a > 0.0 && a < b))
        throw std::invalid_argument("sample_environment: need 0 < a < b");
    const std::size_t n_edges = g.edge_count();
    words_.assign((n_edges + 63) / 64, 0);
    // One Philox block yields bits for 128 consecutive edges.
    for (std::size_t blk = 0; blk * 128 < n_edges; ++blk) {
        const auto out = Philox4x32::bits128(seed_, sample_index_, blk);
        words_[2 * blk] =
            static_cast<std::uint64_t>(out[0]) | (static_cast<std::uint64_t>(out[1]) << 32);
        if (2 * blk + 1 < words_.size())
            words_[2 * blk + 1] =
                static_cast<std::uint64_t>(out[2]) | (static_cast<std::uint64_t>(out[3]) << 32);
    }
    // Mask tail bits so word-level comparisons see only real edges.
    const std::size_t tail = n_edges & 63;
    if (tail != 0 && !words_.empty()) words_.back() &= (~0ull) >> (64 - tail);
}

Environment Environment::toggled(EdgeId e) const {
    if (e >= graph_->edge_count()) throw std::out_of_range("toggle_edge: invalid edge id");
    Environment copy = *this;
    copy.words_[e >> 6] ^= 1ull << (e & 63);
    return copy;
}

nlohmann::json Environment::to_json() const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["graph_hash"] = graph_->content_hash();
    j["a"] = a_;
    j["b"] = b_;
    j["seed"] = seed_;
    j["sample_index"] = sample_index_;
    return j;
}

Environment Environment::from_json(const nlohmann::json& j, const WeightedGraph& g) {
    if (j.at("schema_version").get<int>() != 1)
        throw std::invalid_argument("unsupported environment schema version");
    if (j.at("graph_hash").get<std::uint64_t>() != g.content_hash())
        throw std::invalid_argument("environment graph hash does not match supplied graph");
    return Environment(g, j.at("a").get<double>(), j.at("b").get<double>(),
                       j.at("seed").get<std::uint64_t>(), j.at("sample_index").get<std::uint64_t>());
}

}  // namespace fpp
