#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "fpp/walsh.hpp"

namespace fpp {

// Seeded table corpus: random tables with |J| cycling 1..max_j (values
// i.i.d. uniform [-1,1]), every point indicator, and every dictator.
BooleanFunctionTable random_table(int j_count, std::uint64_t seed, std::uint64_t index);
void for_each_corpus_table(std::uint64_t n_random, int max_j, std::uint64_t seed,
                           const std::function<void(const BooleanFunctionTable&,
                                                    const std::string& label)>& fn);

struct CampaignResult {
    std::string name;
    std::uint64_t tables_checked = 0;
    std::uint64_t violations = 0;
    double min_slack = std::numeric_limits<double>::infinity();
    std::string worst_label;
    std::uint64_t seed = 0;

    bool ok() const { return violations == 0; }
    nlohmann::json to_json() const;
};

// var(f) <= talagrand_rhs(f) + tol over the corpus.
CampaignResult run_talagrand_campaign(std::uint64_t n_random, int max_j, std::uint64_t seed,
                                      double tol = 1e-9);

// Bonami-Beckner slack >= -tol over the corpus x p-grid.
CampaignResult run_bb_campaign(std::uint64_t n_random, int max_j, std::uint64_t seed,
                               const std::vector<double>& p_grid, double tol = 1e-9);

// var(f) <= 3 sum_j int_0^1 ||f_j||_{1+p^2}^2 dp <= talagrand_rhs(f), the
// middle term by adaptive quadrature at the given relative tolerance.
CampaignResult run_chain_campaign(std::uint64_t n_random, int max_j, std::uint64_t seed,
                                  double quad_rel_tol = 1e-6);

// Lemma audit: range, per-coordinate Lipschitz constant 1 (exhaustive for
// m <= 3, sampled beyond), and max_y P[g=y] <= 2/m exactly.
struct LemmaAuditResult {
    int m_lo = 2;
    int m_hi = 32;
    std::uint64_t violations = 0;
    double worst_level_ratio = 0.0;  // max over m of m * max_y P[g=y]
    bool ok() const { return violations == 0; }
    nlohmann::json to_json() const;
};
LemmaAuditResult run_lemma_audit(int m_lo, int m_hi, std::uint64_t seed,
                                 std::uint64_t random_flips = 100000);

}  // namespace fpp
