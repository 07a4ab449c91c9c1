#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "fpp/experiments.hpp"

using namespace fpp;

namespace {

ExperimentConfig small_variance_config() {
    ExperimentConfig c;
    c.kind = "variance-scan";
    c.d = 2;
    c.v_list = {4, 6};
    c.samples = 40;
    c.seed = 11;
    return c;
}

}  // namespace

TEST_CASE("config text parsing") {
    const ExperimentConfig c = parse_config_text("variance-scan",
                                                 "# comment\n"
                                                 "d = 2\n"
                                                 "a = 1\n"
                                                 "b = 2\n"
                                                 "v_list = 8,16\n"
                                                 "samples = 100\n"
                                                 "seed = 42\n"
                                                 "shard = 1/4\n");
    CHECK(c.d == 2);
    CHECK(c.v_list == std::vector<int>{8, 16});
    CHECK(c.samples == 100);
    CHECK(c.seed == 42);
    CHECK(c.shard_index == 1);
    CHECK(c.shard_count == 4);
    CHECK_THROWS_AS(parse_config_text("tail", "nonsense\n"), std::invalid_argument);
    CHECK_THROWS_AS(parse_config_text("tail", "bogus_key = 3\n"), std::invalid_argument);
}

TEST_CASE("config validation rejects bad parameters") {
    ExperimentConfig c = small_variance_config();
    c.a = 3.0;  // a >= b
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = small_variance_config();
    c.samples = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = small_variance_config();
    c.shard_index = 4;
    c.shard_count = 4;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = small_variance_config();
    c.v_list.clear();
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = small_variance_config();
    c.n_list = {2};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("config json round trip preserves the hash") {
    const ExperimentConfig c = small_variance_config();
    const ExperimentConfig back = ExperimentConfig::from_json(c.to_json());
    CHECK(back.config_hash() == c.config_hash());
    ExperimentConfig sharded = c;
    sharded.shard_index = 2;
    sharded.shard_count = 5;
    CHECK(sharded.config_hash() == c.config_hash());  // shard fields excluded
    ExperimentConfig other = c;
    other.seed = 12;
    CHECK(other.config_hash() != c.config_hash());
}

TEST_CASE("shard ranges partition the sample set") {
    ExperimentConfig c = small_variance_config();
    c.samples = 103;
    c.shard_count = 4;
    std::uint64_t covered = 0;
    std::uint64_t prev_end = 0;
    for (int i = 0; i < 4; ++i) {
        c.shard_index = i;
        CHECK(c.shard_begin() == prev_end);
        covered += c.shard_end() - c.shard_begin();
        prev_end = c.shard_end();
    }
    CHECK(covered == 103);
    CHECK(prev_end == 103);
}

TEST_CASE("experiment reruns are byte identical") {
    const ExperimentConfig c = small_variance_config();
    CHECK(run_variance_scan(c).csv == run_variance_scan(c).csv);
    ExperimentConfig t = c;
    t.kind = "tail";
    t.v_list = {5};
    CHECK(run_tail_estimate(t).csv == run_tail_estimate(t).csv);
}

TEST_CASE("sharded runs merge to the unsharded output byte for byte") {
    for (const std::string& kind :
         {std::string("variance-scan"), std::string("midpoint"), std::string("tail"),
          std::string("influence-map"), std::string("circ-scan")}) {
        ExperimentConfig c = small_variance_config();
        c.kind = kind;
        if (kind == "tail" || kind == "influence-map") c.v_list = {4};
        if (kind == "circ-scan") {
            c.n_list = {3, 4};
            c.h_spec = "cycle:3";
        }
        const std::string whole = [&] {
            if (kind == "variance-scan") return run_variance_scan(c).csv;
            if (kind == "midpoint") return run_midpoint_probe(c).csv;
            if (kind == "tail") return run_tail_estimate(c).csv;
            if (kind == "influence-map") return run_influence_map(c).csv;
            return run_circumference_scan(c).csv;
        }();
        std::vector<std::string> shards;
        for (int i = 0; i < 3; ++i) {
            ExperimentConfig s = c;
            s.shard_index = i;
            s.shard_count = 3;
            if (kind == "variance-scan") shards.push_back(run_variance_scan(s).csv);
            else if (kind == "midpoint") shards.push_back(run_midpoint_probe(s).csv);
            else if (kind == "tail") shards.push_back(run_tail_estimate(s).csv);
            else if (kind == "influence-map") shards.push_back(run_influence_map(s).csv);
            else shards.push_back(run_circumference_scan(s).csv);
        }
        CHECK(merge_shards(shards) == whole);
        // Shuffled shard order gives the same bytes.
        std::swap(shards[0], shards[2]);
        CHECK(merge_shards(shards) == whole);
    }
}

TEST_CASE("merge input validation") {
    CHECK_THROWS_AS(merge_shards({}), std::invalid_argument);
    const ExperimentConfig c = small_variance_config();
    const std::string csv = run_variance_scan(c).csv;
    ExperimentConfig other = c;
    other.seed = 99;
    const std::string csv2 = run_variance_scan(other).csv;
    CHECK_THROWS_AS(merge_shards({csv, csv2}), std::invalid_argument);
    CHECK_THROWS_AS(merge_shards({"just,some,rows\n"}), std::invalid_argument);
}

TEST_CASE("output carries header, hashes and columns") {
    const std::string csv = run_variance_scan(small_variance_config()).csv;
    CHECK(csv.rfind("# fpp-experiment v1\n", 0) == 0);
    CHECK(csv.find("# config {") != std::string::npos);
    CHECK(csv.find("# config_hash ") != std::string::npos);
    CHECK(csv.find("# columns L,count,") != std::string::npos);
    CHECK(csv.find("# data_hash ") != std::string::npos);
}

TEST_CASE("boundary-touch invariant holds on the scan box") {
    ExperimentConfig c = small_variance_config();
    c.use_shift = true;
    const ExperimentOutput out = run_variance_scan(c);
    CHECK(out.invariant_ok);
    CHECK(out.csv.find(",0,") != std::string::npos);
}

TEST_CASE("midpoint probe in one dimension always passes the midpoint") {
    ExperimentConfig c;
    c.kind = "midpoint";
    c.d = 1;
    c.v_list = {6};
    c.samples = 30;
    c.seed = 3;
    const std::string csv = run_midpoint_probe(c).csv;
    // The unique geodesic in d=1 goes straight through the midpoint: phat = 1.
    std::stringstream ss(csv);
    std::string line;
    bool checked = false;
    while (std::getline(ss, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::stringstream ls(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() == 6);
        CHECK(std::stod(cells[4]) == 1.0);
        checked = true;
    }
    CHECK(checked);
}

TEST_CASE("tail histogram values are multiples of b - a above a L") {
    ExperimentConfig c;
    c.kind = "tail";
    c.d = 2;
    c.v_list = {5};
    c.samples = 60;
    c.seed = 17;
    const std::string csv = run_tail_estimate(c).csv;
    std::stringstream ss(csv);
    std::string line;
    bool saw_hist = false, saw_tail = false;
    while (std::getline(ss, line)) {
        if (line.rfind("hist,", 0) == 0) {
            saw_hist = true;
            const double v = std::stod(line.substr(5));
            CHECK(v >= 5.0);
            CHECK(v <= 10.0);
            CHECK(v == doctest::Approx(std::round(v)));  // integer lengths for a=1, b=2
        }
        if (line.rfind("tail,", 0) == 0) saw_tail = true;
    }
    CHECK(saw_hist);
    CHECK(saw_tail);
    CHECK(csv.find("# derived median ") != std::string::npos);
    CHECK(csv.find("# derived fit_slope ") != std::string::npos);
}

#ifdef FPP_CLI_PATH
TEST_CASE("command line smoke test") {
    const std::string cli = FPP_CLI_PATH;
    const std::string out1 = "cli_smoke_1.csv";
    // Default v_list is large; write a small config instead.
    {
        std::ofstream cfg("cli_smoke.cfg");
        cfg << "v_list = 4\nsamples = 20\nseed = 5\n";
    }
    const std::string cmd2 = cli + " variance-scan --config cli_smoke.cfg --out " + out1 +
                             " >/dev/null 2>&1";
    REQUIRE(std::system(cmd2.c_str()) == 0);
    std::ifstream in(out1);
    REQUIRE(in.good());
    std::string first;
    std::getline(in, first);
    CHECK(first == "# fpp-experiment v1");

    // Invalid arguments exit with status 1.
    const int bad = std::system((cli + " variance-scan --shard 9/2 >/dev/null 2>&1").c_str());
    CHECK(WEXITSTATUS(bad) == 1);
}
#endif
