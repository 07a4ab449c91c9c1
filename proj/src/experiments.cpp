#include "fpp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#include "fpp/averaging.hpp"
#include "fpp/environment.hpp"
#include "fpp/metric.hpp"
#include "fpp/circumference.hpp"
#include "fpp/stats.hpp"

namespace fpp {

std::string format_float(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void ExperimentConfig::validate() const {
    if (kind.empty()) throw std::invalid_argument("config: experiment kind missing");
    if (!(a > 0.0)) throw std::invalid_argument("config: a must be positive");
    if (!(a < b)) throw std::invalid_argument("config: need a < b");
    if (d < 1) throw std::invalid_argument("config: d must be >= 1");
    if (samples < 1) throw std::invalid_argument("config: samples must be >= 1");
    if (shard_count < 1 || shard_index < 0 || shard_index >= shard_count)
        throw std::invalid_argument("config: shard index/count invalid");
    if (m < 0) throw std::invalid_argument("config: m must be >= 0");
    if (v_list.empty()) throw std::invalid_argument("config: v_list empty");
    for (int L : v_list)
        if (L < 1) throw std::invalid_argument("config: |v| entries must be >= 1");
    for (int n : n_list)
        if (n < 3) throw std::invalid_argument("config: torus n entries must be >= 3");
    if (!(t_max > 0.0)) throw std::invalid_argument("config: t_max must be positive");
}

nlohmann::json ExperimentConfig::to_json() const {
    nlohmann::json j;
    j["kind"] = kind;
    j["d"] = d;
    j["a"] = a;
    j["b"] = b;
    j["v_list"] = v_list;
    j["m"] = m;
    j["use_shift"] = use_shift;
    j["h_spec"] = h_spec;
    j["n_list"] = n_list;
    j["samples"] = samples;
    j["seed"] = seed;
    j["shard_index"] = shard_index;
    j["shard_count"] = shard_count;
    j["t_max"] = t_max;
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
    ExperimentConfig c;
    c.kind = j.at("kind").get<std::string>();
    c.d = j.at("d").get<int>();
    c.a = j.at("a").get<double>();
    c.b = j.at("b").get<double>();
    c.v_list = j.at("v_list").get<std::vector<int>>();
    c.m = j.at("m").get<int>();
    c.use_shift = j.at("use_shift").get<bool>();
    c.h_spec = j.at("h_spec").get<std::string>();
    c.n_list = j.at("n_list").get<std::vector<int>>();
    c.samples = j.at("samples").get<std::uint64_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.shard_index = j.at("shard_index").get<int>();
    c.shard_count = j.at("shard_count").get<int>();
    c.t_max = j.at("t_max").get<double>();
    return c;
}

std::uint64_t ExperimentConfig::config_hash() const {
    nlohmann::json j = to_json();
    j.erase("shard_index");
    j.erase("shard_count");
    return fnv1a(j.dump());
}

std::uint64_t ExperimentConfig::shard_begin() const {
    return samples * static_cast<std::uint64_t>(shard_index) / shard_count;
}
std::uint64_t ExperimentConfig::shard_end() const {
    return samples * (static_cast<std::uint64_t>(shard_index) + 1) / shard_count;
}

namespace {

std::vector<int> parse_int_list(const std::string& s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stoi(item));
    }
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& kind, const std::string& text) {
    ExperimentConfig c;
    c.kind = kind;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: malformed line: " + line);
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key == "d") c.d = std::stoi(val);
        else if (key == "a") c.a = std::stod(val);
        else if (key == "b") c.b = std::stod(val);
        else if (key == "v_list") c.v_list = parse_int_list(val);
        else if (key == "m") c.m = std::stoi(val);
        else if (key == "use_shift") c.use_shift = std::stoi(val) != 0;
        else if (key == "h_spec") c.h_spec = val;
        else if (key == "n_list") c.n_list = parse_int_list(val);
        else if (key == "samples") c.samples = std::stoull(val);
        else if (key == "seed") c.seed = std::stoull(val);
        else if (key == "t_max") c.t_max = std::stod(val);
        else if (key == "shard") {
            const auto slash = val.find('/');
            if (slash == std::string::npos)
                throw std::invalid_argument("config: shard must be i/k");
            c.shard_index = std::stoi(val.substr(0, slash));
            c.shard_count = std::stoi(val.substr(slash + 1));
        } else {
            throw std::invalid_argument("config: unknown key: " + key);
        }
    }
    c.validate();
    return c;
}

ExperimentConfig load_config_file(const std::string& kind, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(kind, ss.str());
}

BoxSetup make_scan_box(int d, int length, double a, double b, int shift_margin) {
    // Any point u on a geodesic 0 -> v obeys a(|u| + |u-v|) <= b|v|, so its
    // L1 deviation from the segment is at most (b/a - 1)|v|/2; the extra
    // shift_margin + 1 covers the z-shift and keeps the boundary untouched.
    const int pad =
        static_cast<int>(std::ceil((b / a - 1.0) * length / 2.0)) + shift_margin + 1;
    std::vector<int> sides(d, 2 * pad + 1);
    sides[0] = length + 1 + 2 * pad;
    BoxSetup s{WeightedGraph::box(d, sides), std::vector<int>(d, pad),
               std::vector<int>(d, 0)};
    s.v_offset[0] = length;
    return s;
}

namespace {

std::uint64_t sub_seed(std::uint64_t seed, const std::string& tag) {
    return seed ^ fnv1a(tag);
}

// Walks the geodesic and counts vertices on the box boundary.
std::uint64_t boundary_touches(const WeightedGraph& g, const Geodesic& gamma) {
    std::uint64_t touches = g.on_boundary(gamma.source) ? 1 : 0;
    VertexId cur = gamma.source;
    for (EdgeId e : gamma.edges) {
        const Edge& ed = g.edge(e);
        cur = (ed.u == cur) ? ed.v : ed.u;
        if (g.on_boundary(cur)) ++touches;
    }
    return touches;
}

struct CsvDoc {
    ExperimentConfig config;
    std::vector<std::vector<std::string>> rows;
};

CsvDoc parse_csv(const std::string& text) {
    CsvDoc doc;
    bool have_config = false;
    std::stringstream ss(text);
    std::string line;
    while (std::getline(ss, line)) {
        if (line.empty()) continue;
        if (line.rfind("# config ", 0) == 0) {
            doc.config = ExperimentConfig::from_json(nlohmann::json::parse(line.substr(9)));
            have_config = true;
            continue;
        }
        if (line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        doc.rows.push_back(std::move(cells));
    }
    if (!have_config) throw std::invalid_argument("merge: shard file lacks a config header");
    return doc;
}

class CsvWriter {
  public:
    explicit CsvWriter(const ExperimentConfig& cfg, const std::string& columns) {
        header_ << "# fpp-experiment v1\n";
        header_ << "# config " << cfg.to_json().dump() << "\n";
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(cfg.config_hash()));
        header_ << "# config_hash " << buf << "\n";
        header_ << "# columns " << columns << "\n";
    }
    void row(const std::string& r) { data_ << r << "\n"; }
    void derived(const std::string& d) { derived_ << "# derived " << d << "\n"; }
    std::string str() const {
        std::string data = data_.str();
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%016llx",
                      static_cast<unsigned long long>(fnv1a(data)));
        return header_.str() + data + "# data_hash " + buf + "\n" + derived_.str();
    }

  private:
    std::ostringstream header_;
    std::ostringstream data_;
    std::ostringstream derived_;
};

std::string summary_cells(const EstimatorSummary& s) {
    std::ostringstream os;
    os << s.count() << "," << format_float(s.sum()) << "," << format_float(s.sum_squares())
       << "," << format_float(s.min()) << "," << format_float(s.max());
    return os.str();
}

EstimatorSummary summary_from_cells(const std::vector<std::string>& c, std::size_t at) {
    return EstimatorSummary::from_raw(std::stoull(c[at]), std::stod(c[at + 1]),
                                      std::stod(c[at + 2]), std::stod(c[at + 3]),
                                      std::stod(c[at + 4]), 0, 0);
}

// ---- variance-scan ---------------------------------------------------------

struct VarianceRow {
    int length;
    EstimatorSummary s;
    std::uint64_t boundary;
};

ExperimentOutput emit_variance(const ExperimentConfig& cfg,
                               const std::vector<VarianceRow>& rows) {
    CsvWriter w(cfg, "L,count,sum,sumsq,min,max,boundary_touches,mean,var,ci_half,ratio");
    ExperimentOutput out;
    for (const auto& r : rows) {
        const double var = r.s.variance();
        const double ratio = var * std::log(static_cast<double>(r.length)) / r.length;
        std::ostringstream os;
        os << r.length << "," << summary_cells(r.s) << "," << r.boundary << ","
           << format_float(r.s.mean()) << "," << format_float(var) << ","
           << format_float(r.s.half_width()) << "," << format_float(ratio);
        w.row(os.str());
        if (r.boundary != 0) {
            out.invariant_ok = false;
            out.message = "boundary-touch counter nonzero at |v|=" + std::to_string(r.length);
        }
    }
    out.csv = w.str();
    return out;
}

ExperimentOutput run_variance(const ExperimentConfig& cfg, bool midpoint_mode);

// ---- tail ------------------------------------------------------------------

struct TailState {
    std::map<double, std::uint64_t> hist;
    std::uint64_t boundary = 0;
};

ExperimentOutput emit_tail(const ExperimentConfig& cfg, const TailState& st) {
    const int length = cfg.v_list.front();
    std::uint64_t total = 0;
    for (const auto& [v, c] : st.hist) total += c;

    // Median: smallest value whose CDF reaches 1/2.
    double median = 0.0;
    {
        std::uint64_t cum = 0;
        for (const auto& [v, c] : st.hist) {
            cum += c;
            if (2 * cum >= total) {
                median = v;
                break;
            }
        }
    }

    const double root = std::sqrt(static_cast<double>(length));
    CsvWriter w(cfg, "row_type,key,... (hist,value,count | tail,t,exceed,total,phat)");
    for (const auto& [v, c] : st.hist) {
        std::ostringstream os;
        os << "hist," << format_float(v) << "," << c;
        w.row(os.str());
    }
    const int k_max = static_cast<int>(std::ceil(cfg.t_max * root));
    std::vector<double> fit_x, fit_y;
    for (int k = 0; k <= k_max; ++k) {
        const double t = k / root;
        std::uint64_t exceed = 0;
        for (const auto& [v, c] : st.hist)
            if (std::abs(v - median) >= t * root) exceed += c;
        const double phat = static_cast<double>(exceed) / static_cast<double>(total);
        std::ostringstream os;
        os << "tail," << format_float(t) << "," << exceed << "," << total << ","
           << format_float(phat);
        w.row(os.str());
        if (exceed > 0 && k > 0) {
            fit_x.push_back(t * t);
            fit_y.push_back(std::log(phat));
        }
    }

    // Least-squares of log phat against t^2 over the observable range.
    double slope = 0.0, r2 = 0.0;
    if (fit_x.size() >= 2) {
        const double n = static_cast<double>(fit_x.size());
        double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
        for (std::size_t i = 0; i < fit_x.size(); ++i) {
            sx += fit_x[i];
            sy += fit_y[i];
            sxx += fit_x[i] * fit_x[i];
            sxy += fit_x[i] * fit_y[i];
            syy += fit_y[i] * fit_y[i];
        }
        const double cov = sxy - sx * sy / n;
        const double vx = sxx - sx * sx / n;
        const double vy = syy - sy * sy / n;
        slope = cov / vx;
        r2 = (vx > 0 && vy > 0) ? (cov * cov) / (vx * vy) : 0.0;
    }
    w.derived("median " + format_float(median));
    w.derived("fit_points " + std::to_string(fit_x.size()));
    w.derived("fit_slope " + format_float(slope));
    w.derived("fit_r2 " + format_float(r2));
    w.derived("fit_C " + format_float(slope < 0.0 ? -1.0 / slope
                                                  : std::numeric_limits<double>::infinity()));
    ExperimentOutput out;
    if (st.boundary != 0) {
        out.invariant_ok = false;
        out.message = "boundary-touch counter nonzero";
    }
    out.csv = w.str();
    return out;
}

// ---- midpoint --------------------------------------------------------------

struct MidpointRow {
    int length;
    std::uint64_t count;
    std::uint64_t hits;
    std::uint64_t boundary;
};

ExperimentOutput emit_midpoint(const ExperimentConfig& cfg,
                               const std::vector<MidpointRow>& rows) {
    CsvWriter w(cfg, "L,count,hits,boundary_touches,phat,ci_half");
    ExperimentOutput out;
    for (const auto& r : rows) {
        const double p = static_cast<double>(r.hits) / static_cast<double>(r.count);
        const double ci =
            1.959963984540054 * std::sqrt(p * (1.0 - p) / static_cast<double>(r.count));
        std::ostringstream os;
        os << r.length << "," << r.count << "," << r.hits << "," << r.boundary << ","
           << format_float(p) << "," << format_float(ci);
        w.row(os.str());
        if (r.boundary != 0) {
            out.invariant_ok = false;
            out.message = "boundary-touch counter nonzero at |v|=" + std::to_string(r.length);
        }
    }
    out.csv = w.str();
    return out;
}

// ---- influence map ---------------------------------------------------------

struct InfluenceState {
    // per shifted flag (0/1)
    std::uint64_t n[2] = {0, 0};
    std::uint64_t gamma_len_sum[2] = {0, 0};
    std::uint64_t boundary[2] = {0, 0};
    std::map<std::pair<int, EdgeId>, std::uint64_t> counts;  // (shifted, edge) -> hits
    std::map<EdgeId, std::pair<VertexId, VertexId>> endpoints;
};

ExperimentOutput emit_influence(const ExperimentConfig& cfg, const InfluenceState& st) {
    CsvWriter w(cfg,
                "row_type,... (gamma,shifted,count,len_sum | edge,id,u,v,shifted,count,phat,ci_half)");
    ExperimentOutput out;
    for (int s = 0; s < 2; ++s) {
        if (st.n[s] == 0) continue;
        std::ostringstream os;
        os << "gamma," << s << "," << st.n[s] << "," << st.gamma_len_sum[s];
        w.row(os.str());
        if (st.boundary[s] != 0) {
            out.invariant_ok = false;
            out.message = "boundary-touch counter nonzero";
        }
    }
    for (const auto& [key, count] : st.counts) {
        const auto [s, e] = key;
        const auto [u, v] = st.endpoints.at(e);
        const double n = static_cast<double>(st.n[s]);
        const double p = static_cast<double>(count) / n;
        const double ci = 1.959963984540054 * std::sqrt(p * (1.0 - p) / n);
        std::ostringstream os;
        os << "edge," << e << "," << u << "," << v << "," << s << "," << count << ","
           << format_float(p) << "," << format_float(ci);
        w.row(os.str());
    }
    for (int s = 0; s < 2; ++s) {
        if (st.n[s] == 0) continue;
        const double mean_len =
            static_cast<double>(st.gamma_len_sum[s]) / static_cast<double>(st.n[s]);
        w.derived("mean_gamma_len_" + std::to_string(s) + " " + format_float(mean_len));
    }
    out.csv = w.str();
    return out;
}

// ---- circ-scan -------------------------------------------------------------

struct CircRow {
    int n;
    int vh;
    EstimatorSummary s;
};

ExperimentOutput emit_circ(const ExperimentConfig& cfg, const std::vector<CircRow>& rows) {
    CsvWriter w(cfg, "n,vh,count,sum,sumsq,min,max,mean,var,ci_half,ratio");
    for (const auto& r : rows) {
        const double var = r.s.variance();
        const double ratio = var * (1.0 + std::log(cfg.a * r.vh / cfg.b)) / r.n;
        std::ostringstream os;
        os << r.n << "," << r.vh << "," << summary_cells(r.s) << ","
           << format_float(r.s.mean()) << "," << format_float(var) << ","
           << format_float(r.s.half_width()) << "," << format_float(ratio);
        w.row(os.str());
    }
    ExperimentOutput out;
    out.csv = w.str();
    return out;
}

ExperimentOutput run_variance(const ExperimentConfig& cfg, bool midpoint_mode) {
    cfg.validate();
    std::vector<VarianceRow> vrows;
    std::vector<MidpointRow> mrows;
    for (int L : cfg.v_list) {
        const int m_eff = cfg.use_shift ? (cfg.m > 0 ? cfg.m : default_shift_m(L)) : 0;
        const BoxSetup setup = make_scan_box(cfg.d, L, cfg.a, cfg.b, m_eff);
        const std::uint64_t s = sub_seed(cfg.seed, "L=" + std::to_string(L));
        EstimatorSummary sum;
        std::uint64_t boundary = 0, hits = 0, count = 0;
        std::vector<int> mid(cfg.d);
        for (int i = 0; i < cfg.d; ++i) mid[i] = setup.origin[i] + setup.v_offset[i] / 2;
        std::vector<int> src(cfg.d), dst(cfg.d);
        for (std::uint64_t i = cfg.shard_begin(); i < cfg.shard_end(); ++i) {
            const Environment env = sample_environment(setup.box, cfg.a, cfg.b, s, i);
            for (int k = 0; k < cfg.d; ++k) {
                src[k] = setup.origin[k];
                dst[k] = setup.origin[k] + setup.v_offset[k];
            }
            if (cfg.use_shift) {
                const ShiftSample shift = sample_shift(cfg.d, m_eff, s, i);
                for (int k = 0; k < cfg.d; ++k) {
                    src[k] += shift.z[k];
                    dst[k] += shift.z[k];
                }
            }
            const Geodesic gamma =
                geodesic(env, setup.box.vertex_at(src), setup.box.vertex_at(dst));
            boundary += boundary_touches(setup.box, gamma);
            sum.add(gamma.length);
            sum.note_sample_index(i);
            ++count;
            if (midpoint_mode) {
                VertexId cur = gamma.source;
                bool hit = false;
                auto near_mid = [&](VertexId vx) {
                    const auto c = setup.box.coords(vx);
                    int dist1 = 0;
                    for (int k = 0; k < cfg.d; ++k) dist1 += std::abs(c[k] - mid[k]);
                    return dist1 <= 1;
                };
                hit = near_mid(cur);
                for (EdgeId e : gamma.edges) {
                    if (hit) break;
                    const Edge& ed = setup.box.edge(e);
                    cur = (ed.u == cur) ? ed.v : ed.u;
                    hit = near_mid(cur);
                }
                if (hit) ++hits;
            }
        }
        if (midpoint_mode)
            mrows.push_back({L, count, hits, boundary});
        else
            vrows.push_back({L, sum, boundary});
    }
    return midpoint_mode ? emit_midpoint(cfg, mrows) : emit_variance(cfg, vrows);
}

}  // namespace

ExperimentOutput run_variance_scan(const ExperimentConfig& cfg) {
    return run_variance(cfg, /*midpoint_mode=*/false);
}

ExperimentOutput run_midpoint_probe(const ExperimentConfig& cfg) {
    return run_variance(cfg, /*midpoint_mode=*/true);
}

ExperimentOutput run_tail_estimate(const ExperimentConfig& cfg) {
    cfg.validate();
    const int L = cfg.v_list.front();
    const BoxSetup setup = make_scan_box(cfg.d, L, cfg.a, cfg.b, 0);
    const std::uint64_t s = sub_seed(cfg.seed, "L=" + std::to_string(L));
    const VertexId src = setup.box.vertex_at(setup.origin);
    std::vector<int> dstc = setup.origin;
    dstc[0] += L;
    const VertexId dst = setup.box.vertex_at(dstc);
    TailState st;
    for (std::uint64_t i = cfg.shard_begin(); i < cfg.shard_end(); ++i) {
        const Environment env = sample_environment(setup.box, cfg.a, cfg.b, s, i);
        const Geodesic gamma = geodesic(env, src, dst);
        st.boundary += boundary_touches(setup.box, gamma);
        ++st.hist[gamma.length];
    }
    return emit_tail(cfg, st);
}

ExperimentOutput run_influence_map(const ExperimentConfig& cfg) {
    cfg.validate();
    const int L = cfg.v_list.front();
    const int m_eff = cfg.m > 0 ? cfg.m : default_shift_m(L);
    const BoxSetup setup = make_scan_box(cfg.d, L, cfg.a, cfg.b, m_eff);
    const std::uint64_t s = sub_seed(cfg.seed, "L=" + std::to_string(L));
    InfluenceState st;
    std::vector<int> src(cfg.d), dst(cfg.d);
    for (int shifted = 0; shifted < 2; ++shifted) {
        for (std::uint64_t i = cfg.shard_begin(); i < cfg.shard_end(); ++i) {
            const Environment env = sample_environment(setup.box, cfg.a, cfg.b, s, i);
            for (int k = 0; k < cfg.d; ++k) {
                src[k] = setup.origin[k];
                dst[k] = setup.origin[k] + setup.v_offset[k];
            }
            if (shifted) {
                const ShiftSample shift = sample_shift(cfg.d, m_eff, s, i);
                for (int k = 0; k < cfg.d; ++k) {
                    src[k] += shift.z[k];
                    dst[k] += shift.z[k];
                }
            }
            const Geodesic gamma =
                geodesic(env, setup.box.vertex_at(src), setup.box.vertex_at(dst));
            st.boundary[shifted] += boundary_touches(setup.box, gamma);
            ++st.n[shifted];
            st.gamma_len_sum[shifted] += gamma.edges.size();
            for (EdgeId e : gamma.edges) {
                ++st.counts[{shifted, e}];
                st.endpoints.emplace(e, std::make_pair(setup.box.edge(e).u,
                                                       setup.box.edge(e).v));
            }
        }
    }
    return emit_influence(cfg, st);
}

ExperimentOutput run_circumference_scan(const ExperimentConfig& cfg) {
    cfg.validate();
    std::vector<CircRow> rows;
    for (int n : cfg.n_list) {
        const FiberGraph h = cfg.h_spec == "square" ? FiberGraph::cycle(n)
                                                    : FiberGraph::from_spec(cfg.h_spec);
        const WeightedGraph g = WeightedGraph::torus_product(h, n);
        const std::uint64_t s = sub_seed(cfg.seed, "n=" + std::to_string(n));
        EstimatorSummary sum;
        for (std::uint64_t i = cfg.shard_begin(); i < cfg.shard_end(); ++i) {
            const Environment env = sample_environment(g, cfg.a, cfg.b, s, i);
            sum.add(circumference_length(env).first);
            sum.note_sample_index(i);
        }
        rows.push_back({n, h.vertex_count, sum});
    }
    return emit_circ(cfg, rows);
}

std::string merge_shards(const std::vector<std::string>& shard_csvs) {
    if (shard_csvs.empty()) throw std::invalid_argument("merge: no shards given");
    std::vector<CsvDoc> docs;
    docs.reserve(shard_csvs.size());
    for (const auto& s : shard_csvs) docs.push_back(parse_csv(s));
    const std::uint64_t hash = docs.front().config.config_hash();
    for (const auto& d : docs)
        if (d.config.config_hash() != hash)
            throw std::invalid_argument("merge: shard config hashes differ");

    ExperimentConfig merged = docs.front().config;
    merged.shard_index = 0;
    merged.shard_count = 1;
    const std::string& kind = merged.kind;

    if (kind == "variance-scan") {
        std::map<int, VarianceRow> acc;
        for (const auto& d : docs)
            for (const auto& r : d.rows) {
                const int L = std::stoi(r[0]);
                auto [it, fresh] = acc.try_emplace(L, VarianceRow{L, {}, 0});
                it->second.s.merge(summary_from_cells(r, 1));
                it->second.boundary += std::stoull(r[6]);
            }
        std::vector<VarianceRow> rows;
        for (auto& [L, r] : acc) rows.push_back(r);
        return emit_variance(merged, rows).csv;
    }
    if (kind == "midpoint") {
        std::map<int, MidpointRow> acc;
        for (const auto& d : docs)
            for (const auto& r : d.rows) {
                const int L = std::stoi(r[0]);
                auto [it, fresh] = acc.try_emplace(L, MidpointRow{L, 0, 0, 0});
                it->second.count += std::stoull(r[1]);
                it->second.hits += std::stoull(r[2]);
                it->second.boundary += std::stoull(r[3]);
            }
        std::vector<MidpointRow> rows;
        for (auto& [L, r] : acc) rows.push_back(r);
        return emit_midpoint(merged, rows).csv;
    }
    if (kind == "tail") {
        TailState st;
        for (const auto& d : docs)
            for (const auto& r : d.rows)
                if (r[0] == "hist") st.hist[std::stod(r[1])] += std::stoull(r[2]);
        return emit_tail(merged, st).csv;
    }
    if (kind == "influence-map") {
        InfluenceState st;
        for (const auto& d : docs)
            for (const auto& r : d.rows) {
                if (r[0] == "gamma") {
                    const int s = std::stoi(r[1]);
                    st.n[s] += std::stoull(r[2]);
                    st.gamma_len_sum[s] += std::stoull(r[3]);
                } else if (r[0] == "edge") {
                    const EdgeId e = static_cast<EdgeId>(std::stoul(r[1]));
                    const int s = std::stoi(r[4]);
                    st.counts[{s, e}] += std::stoull(r[5]);
                    st.endpoints.emplace(
                        e, std::make_pair(static_cast<VertexId>(std::stoul(r[2])),
                                          static_cast<VertexId>(std::stoul(r[3]))));
                }
            }
        return emit_influence(merged, st).csv;
    }
    if (kind == "circ-scan") {
        std::map<int, CircRow> acc;
        for (const auto& d : docs)
            for (const auto& r : d.rows) {
                const int n = std::stoi(r[0]);
                auto [it, fresh] = acc.try_emplace(n, CircRow{n, std::stoi(r[1]), {}});
                it->second.s.merge(summary_from_cells(r, 2));
            }
        std::vector<CircRow> rows;
        for (auto& [n, r] : acc) rows.push_back(r);
        return emit_circ(merged, rows).csv;
    }
    throw std::invalid_argument("merge: unsupported experiment kind: " + kind);
}

}  // namespace fpp
