#include "fpp/averaging.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "fpp/rng.hpp"
#include "fpp/staircase.hpp"

namespace fpp {

namespace {
// Separates the x-bit stream from the edge-bit stream under the same seed.
constexpr std::uint64_t kShiftSalt = 0x73686966745f7873ull;
}  // namespace

int default_shift_m(int v_l1) {
    if (v_l1 < 1) throw std::invalid_argument("default_shift_m: |v| must be >= 1");
    const int m = static_cast<int>(std::floor(std::pow(static_cast<double>(v_l1), 0.25)));
    return m < 1 ? 1 : m;
}

ShiftSample make_shift(int d, int m, std::vector<std::uint8_t> bits) {
    if (d < 1 || m < 1) throw std::invalid_argument("make_shift: d and m must be >= 1");
    if (bits.size() != static_cast<std::size_t>(d) * m * m)
        throw std::invalid_argument("make_shift: need d * m^2 bits");
    ShiftSample s{d, m, std::move(bits), {}};
    s.z.resize(d);
    for (int i = 0; i < d; ++i) s.z[i] = staircase_g(s.row(i), m);
    return s;
}

ShiftSample sample_shift(int d, int m, std::uint64_t seed, std::uint64_t sample_index) {
    if (d < 1 || m < 1) throw std::invalid_argument("sample_shift: d and m must be >= 1");
    const std::size_t count = static_cast<std::size_t>(d) * m * m;
    std::vector<std::uint8_t> bits(count);
    for (std::size_t blk = 0; blk * 128 < count; ++blk) {
        const auto out = Philox4x32::bits128(seed ^ kShiftSalt, sample_index, blk);
        for (std::size_t i = 0; i < 128 && blk * 128 + i < count; ++i)
            bits[blk * 128 + i] = (out[i / 32] >> (i % 32)) & 1u;
    }
    return make_shift(d, m, std::move(bits));
}

double shifted_distance(const ShiftSample& shift, const Environment& env,
                        const std::vector<int>& from, const std::vector<int>& to) {
    const WeightedGraph& g = env.graph();
    if (g.kind() != GraphKind::Box)
        throw std::invalid_argument("shifted_distance: environment must live on a box");
    if (static_cast<int>(from.size()) != shift.d || static_cast<int>(to.size()) != shift.d ||
        g.dimension() != shift.d)
        throw std::invalid_argument("shifted_distance: dimension mismatch");
    std::vector<int> a(shift.d), b(shift.d);
    for (int i = 0; i < shift.d; ++i) {
        a[i] = from[i] + shift.z[i];
        b[i] = to[i] + shift.z[i];
    }
    if (!g.contains(a) || !g.contains(b))
        throw std::out_of_range("shifted_distance: shifted endpoint outside the box");
    return distance(env, g.vertex_at(a), g.vertex_at(b));
}

InfluenceEstimate influence_estimate(EdgeId e, const WeightedGraph& box, double a, double b,
                                     const std::vector<int>& origin,
                                     const std::vector<int>& v_offset, int m,
                                     std::uint64_t seed, int n_samples) {
    if (n_samples < 1) throw std::invalid_argument("influence_estimate: n_samples must be >= 1");
    if (e >= box.edge_count()) throw std::out_of_range("influence_estimate: invalid edge id");
    const int d = box.dimension();
    InfluenceEstimate out;
    std::vector<int> src(d), dst(d);
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(n_samples); ++i) {
        const Environment env = sample_environment(box, a, b, seed, i);
        const ShiftSample shift = sample_shift(d, m, seed, i);
        for (int k = 0; k < d; ++k) {
            src[k] = origin[k] + shift.z[k];
            dst[k] = origin[k] + v_offset[k] + shift.z[k];
        }
        const Geodesic gamma = geodesic(env, box.vertex_at(src), box.vertex_at(dst));
        bool member = false;
        for (EdgeId ge : gamma.edges)
            if (ge == e) {
                member = true;
                break;
            }
        const double f_flip = distance(env.toggled(e), gamma.source, gamma.target);
        out.influence.add(f_flip != gamma.length ? 1.0 : 0.0);
        out.influence.note_sample_index(i);
        out.membership.add(member ? 1.0 : 0.0);
        out.membership.note_sample_index(i);
    }
    return out;
}

}  // namespace fpp
