#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fpp/campaigns.hpp"
#include "fpp/experiments.hpp"

namespace {

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file: " + path);
    out << content;
}

struct CommonOpts {
    std::string config_path;
    std::string out;
    std::string shard;
    std::uint64_t seed = 0;
    std::uint64_t samples = 0;
    bool seed_set = false, samples_set = false;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--config", o.config_path, "key = value config file");
    cmd->add_option("--out", o.out, "output path (default stdout)");
    cmd->add_option("--shard", o.shard, "shard i/k");
    cmd->add_option("--seed", o.seed, "seed override")->each([&](const std::string&) {
        o.seed_set = true;
    });
    cmd->add_option("--samples", o.samples, "sample count override")
        ->each([&](const std::string&) { o.samples_set = true; });
}

fpp::ExperimentConfig build_config(const std::string& kind, const CommonOpts& o) {
    fpp::ExperimentConfig cfg;
    if (!o.config_path.empty()) {
        cfg = fpp::load_config_file(kind, o.config_path);
    } else {
        cfg.kind = kind;
    }
    if (o.seed_set) cfg.seed = o.seed;
    if (o.samples_set) cfg.samples = o.samples;
    if (!o.shard.empty()) {
        const auto slash = o.shard.find('/');
        if (slash == std::string::npos) throw std::invalid_argument("--shard must be i/k");
        cfg.shard_index = std::stoi(o.shard.substr(0, slash));
        cfg.shard_count = std::stoi(o.shard.substr(slash + 1));
    }
    cfg.validate();
    return cfg;
}

int run_experiment(const std::string& kind, const CommonOpts& o) {
    const fpp::ExperimentConfig cfg = build_config(kind, o);
    fpp::ExperimentOutput result;
    if (kind == "variance-scan") result = fpp::run_variance_scan(cfg);
    else if (kind == "circ-scan") result = fpp::run_circumference_scan(cfg);
    else if (kind == "tail") result = fpp::run_tail_estimate(cfg);
    else if (kind == "midpoint") result = fpp::run_midpoint_probe(cfg);
    else if (kind == "influence-map") result = fpp::run_influence_map(cfg);
    else throw std::logic_error("unhandled experiment kind");
    write_output(o.out, result.csv);
    if (!result.invariant_ok) {
        std::cerr << "invariant violation: " << result.message << "\n";
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"first passage percolation experiment driver"};
    app.require_subcommand(1);

    const std::vector<std::string> experiment_kinds = {"variance-scan", "circ-scan", "tail",
                                                       "midpoint", "influence-map"};
    std::vector<CommonOpts> opts(experiment_kinds.size());
    for (std::size_t i = 0; i < experiment_kinds.size(); ++i)
        add_common(app.add_subcommand(experiment_kinds[i]), opts[i]);

    auto* check_bool = app.add_subcommand("check-bool", "Fourier/hypercontractivity campaigns");
    std::uint64_t cb_tables = 10000, cb_chain_tables = 1000, cb_seed = 1;
    int cb_max_j = 12;
    std::string cb_out;
    check_bool->add_option("--tables", cb_tables, "random tables for talagrand/bb");
    check_bool->add_option("--chain-tables", cb_chain_tables, "tables for the quadrature chain");
    check_bool->add_option("--max-j", cb_max_j, "largest |J|");
    check_bool->add_option("--seed", cb_seed, "corpus seed");
    check_bool->add_option("--out", cb_out, "JSON report path (default stdout)");

    auto* check_lemma = app.add_subcommand("check-lemma", "staircase distribution audit");
    int cl_lo = 2, cl_hi = 32;
    std::uint64_t cl_seed = 1, cl_flips = 100000;
    std::string cl_out;
    check_lemma->add_option("--m-lo", cl_lo, "smallest m");
    check_lemma->add_option("--m-hi", cl_hi, "largest m");
    check_lemma->add_option("--seed", cl_seed, "flip-sample seed");
    check_lemma->add_option("--flips", cl_flips, "random flips per m > 3");
    check_lemma->add_option("--out", cl_out, "JSON report path (default stdout)");

    auto* merge = app.add_subcommand("merge", "merge shard CSV outputs");
    std::vector<std::string> merge_inputs;
    std::string merge_out;
    merge->add_option("shards", merge_inputs, "shard CSV files")->required();
    merge->add_option("--out", merge_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);

        for (std::size_t i = 0; i < experiment_kinds.size(); ++i)
            if (app.get_subcommand(experiment_kinds[i])->parsed())
                return run_experiment(experiment_kinds[i], opts[i]);

        if (check_bool->parsed()) {
            std::vector<double> p_grid;
            for (int k = 1; k <= 19; ++k) p_grid.push_back(0.05 * k);
            const auto tala = fpp::run_talagrand_campaign(cb_tables, cb_max_j, cb_seed);
            const auto bb = fpp::run_bb_campaign(cb_tables, cb_max_j, cb_seed, p_grid);
            const auto chain = fpp::run_chain_campaign(cb_chain_tables, cb_max_j, cb_seed);
            nlohmann::json report;
            report["campaigns"] = {tala.to_json(), bb.to_json(), chain.to_json()};
            const bool ok = tala.ok() && bb.ok() && chain.ok();
            report["ok"] = ok;
            write_output(cb_out, report.dump(2) + "\n");
            return ok ? 0 : 2;
        }

        if (check_lemma->parsed()) {
            const auto audit = fpp::run_lemma_audit(cl_lo, cl_hi, cl_seed, cl_flips);
            write_output(cl_out, audit.to_json().dump(2) + "\n");
            return audit.ok() ? 0 : 2;
        }

        if (merge->parsed()) {
            std::vector<std::string> contents;
            for (const auto& path : merge_inputs) {
                std::ifstream in(path, std::ios::binary);
                if (!in) throw std::invalid_argument("cannot open shard file: " + path);
                std::stringstream ss;
                ss << in.rdbuf();
                contents.push_back(ss.str());
            }
            write_output(merge_out, fpp::merge_shards(contents));
            return 0;
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
