#include "fpp/campaigns.hpp"

#include <bit>
#include <cmath>

#include "fpp/rng.hpp"
#include "fpp/staircase.hpp"

namespace fpp {

namespace {
constexpr std::uint64_t kTableSalt = 0x626f6f6c5f746162ull;
constexpr std::uint64_t kFlipSalt = 0x666c69705f73616cull;
}  // namespace

BooleanFunctionTable random_table(int j_count, std::uint64_t seed, std::uint64_t index) {
    std::vector<double> v(std::size_t{1} << j_count);
    for (std::size_t blk = 0; blk * 4 < v.size(); ++blk) {
        const auto out = Philox4x32::bits128(seed ^ kTableSalt, index, blk);
        for (std::size_t k = 0; k < 4 && blk * 4 + k < v.size(); ++k)
            v[blk * 4 + k] = 2.0 * uniform01(out[k]) - 1.0;
    }
    return {j_count, std::move(v)};
}

void for_each_corpus_table(std::uint64_t n_random, int max_j, std::uint64_t seed,
                           const std::function<void(const BooleanFunctionTable&,
                                                    const std::string& label)>& fn) {
    for (std::uint64_t i = 0; i < n_random; ++i) {
        const int j = static_cast<int>(i % max_j) + 1;
        fn(random_table(j, seed, i), "random:" + std::to_string(i) + ":j" + std::to_string(j));
    }
    for (int j = 1; j <= max_j; ++j) {
        const std::size_t size = std::size_t{1} << j;
        for (std::uint32_t point = 0; point < size; ++point)
            fn(BooleanFunctionTable::indicator(j, point),
               "indicator:j" + std::to_string(j) + ":" + std::to_string(point));
        for (int k = 0; k < j; ++k)
            fn(BooleanFunctionTable::dictator(j, k),
               "dictator:j" + std::to_string(j) + ":" + std::to_string(k));
    }
}

nlohmann::json CampaignResult::to_json() const {
    nlohmann::json j;
    j["campaign"] = name;
    j["seed"] = seed;
    j["tables_checked"] = tables_checked;
    j["violations"] = violations;
    j["min_slack"] = min_slack;
    j["worst_label"] = worst_label;
    j["ok"] = ok();
    return j;
}

CampaignResult run_talagrand_campaign(std::uint64_t n_random, int max_j, std::uint64_t seed,
                                      double tol) {
    CampaignResult res;
    res.name = "talagrand";
    res.seed = seed;
    for_each_corpus_table(n_random, max_j, seed,
                          [&](const BooleanFunctionTable& t, const std::string& label) {
                              ++res.tables_checked;
                              const double slack = talagrand_rhs(t) - variance(t);
                              if (slack < res.min_slack) {
                                  res.min_slack = slack;
                                  res.worst_label = label;
                              }
                              if (slack < -tol) ++res.violations;
                          });
    return res;
}

CampaignResult run_bb_campaign(std::uint64_t n_random, int max_j, std::uint64_t seed,
                               const std::vector<double>& p_grid, double tol) {
    CampaignResult res;
    res.name = "bonami-beckner";
    res.seed = seed;
    for_each_corpus_table(
        n_random, max_j, seed, [&](const BooleanFunctionTable& t, const std::string& label) {
            ++res.tables_checked;
            // ||T_p f||_2 via Parseval: sqrt(sum_k W_k p^{2k}) with W_k the
            // level-k coefficient weight.
            const BooleanFunctionTable coef = walsh_transform(t);
            std::vector<double> level(t.j_count() + 1, 0.0);
            for (std::size_t s = 0; s < coef.size(); ++s)
                level[std::popcount(static_cast<std::uint32_t>(s))] += coef[s] * coef[s];
            for (double p : p_grid) {
                double norm2sq = 0.0, pw = 1.0;
                const double p2 = p * p;
                for (int k = 0; k <= t.j_count(); ++k) {
                    norm2sq += level[k] * pw;
                    pw *= p2;
                }
                const double slack = p_norm(t, 1.0 + p2) - std::sqrt(norm2sq);
                if (slack < res.min_slack) {
                    res.min_slack = slack;
                    res.worst_label = label + ":p" + std::to_string(p);
                }
                if (slack < -tol) ++res.violations;
            }
        });
    return res;
}

CampaignResult run_chain_campaign(std::uint64_t n_random, int max_j, std::uint64_t seed,
                                  double quad_rel_tol) {
    CampaignResult res;
    res.name = "holder-chain";
    res.seed = seed;
    for (std::uint64_t i = 0; i < n_random; ++i) {
        const int j_count = static_cast<int>(i % max_j) + 1;
        const BooleanFunctionTable t = random_table(j_count, seed, i);
        const std::string label = "random:" + std::to_string(i);
        ++res.tables_checked;

        double middle = 0.0;
        for (int j = 0; j < j_count; ++j) {
            const BooleanFunctionTable fj = rho_j(t, j);
            const double norm2 = p_norm(fj, 2.0);
            if (norm2 == 0.0) continue;
            const double term = integrate(
                [&](double p) {
                    const double q = p_norm(fj, 1.0 + p * p);
                    return q * q;
                },
                0.0, 1.0, quad_rel_tol * norm2 * norm2);
            middle += term;
        }
        middle *= 3.0;

        const double var = variance(t);
        const double rhs = talagrand_rhs(t);
        const double tol = quad_rel_tol * (1.0 + std::abs(middle)) * 3.0 + 1e-9;
        const double slack1 = middle - var;
        const double slack2 = rhs - middle;
        const double slack = std::min(slack1, slack2);
        if (slack < res.min_slack) {
            res.min_slack = slack;
            res.worst_label = label;
        }
        if (slack < -tol) ++res.violations;
    }
    return res;
}

nlohmann::json LemmaAuditResult::to_json() const {
    nlohmann::json j;
    j["campaign"] = "lemma-staircase";
    j["m_lo"] = m_lo;
    j["m_hi"] = m_hi;
    j["violations"] = violations;
    j["worst_level_ratio"] = worst_level_ratio;
    j["ok"] = ok();
    return j;
}

LemmaAuditResult run_lemma_audit(int m_lo, int m_hi, std::uint64_t seed,
                                 std::uint64_t random_flips) {
    LemmaAuditResult res;
    res.m_lo = m_lo;
    res.m_hi = m_hi;
    for (int m = m_lo; m <= m_hi; ++m) {
        const int n_bits = m * m;
        if (m <= 3) {
            // Exhaustive range and Lipschitz check over all 2^{m^2} inputs.
            for (std::uint32_t x = 0; x < (1u << n_bits); ++x) {
                std::vector<std::uint8_t> bits(n_bits);
                for (int k = 0; k < n_bits; ++k) bits[k] = (x >> k) & 1;
                const int g = staircase_g(bits, m);
                if (g < 0 || g > m) ++res.violations;
                for (int k = 0; k < n_bits; ++k) {
                    bits[k] ^= 1;
                    const int gk = staircase_g(bits, m);
                    bits[k] ^= 1;
                    if (std::abs(gk - g) > 1) ++res.violations;
                }
            }
        } else {
            const std::uint64_t key = seed ^ kFlipSalt ^ (static_cast<std::uint64_t>(m) << 32);
            for (std::uint64_t i = 0; i < random_flips; ++i) {
                std::vector<std::uint8_t> bits(n_bits);
                for (int blk = 0; blk * 128 < n_bits; ++blk) {
                    const auto out = Philox4x32::bits128(key, i, blk);
                    for (int k = 0; k < 128 && blk * 128 + k < n_bits; ++k)
                        bits[blk * 128 + k] = (out[k / 32] >> (k % 32)) & 1u;
                }
                const std::uint32_t coord =
                    Philox4x32::bits128(key, i, 0xffffffffull)[0] % n_bits;
                const int g = staircase_g(bits, m);
                if (g < 0 || g > m) ++res.violations;
                bits[coord] ^= 1;
                const int gk = staircase_g(bits, m);
                if (std::abs(gk - g) > 1) ++res.violations;
            }
        }
        const LevelDistribution dist = exact_level_distribution(m);
        if (!dist.exact) ++res.violations;
        double total = 0.0, peak = 0.0;
        for (double p : dist.p) {
            total += p;
            peak = std::max(peak, p);
        }
        if (std::abs(total - 1.0) > 1e-9) ++res.violations;
        if (!(peak <= 2.0 / m)) ++res.violations;
        res.worst_level_ratio = std::max(res.worst_level_ratio, peak * m);
    }
    return res;
}

}  // namespace fpp
