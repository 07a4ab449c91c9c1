#include "fpp/walsh.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace fpp {

namespace {

void butterfly(std::vector<double>& v) {
    const std::size_t n = v.size();
    for (std::size_t len = 1; len < n; len <<= 1) {
        for (std::size_t i = 0; i < n; i += len << 1) {
            for (std::size_t j = i; j < i + len; ++j) {
                const double x = v[j];
                const double y = v[j + len];
                v[j] = x + y;
                v[j + len] = x - y;
            }
        }
    }
}

}  // namespace

BooleanFunctionTable::BooleanFunctionTable(int j_count, std::vector<double> values)
    : j_count_(j_count), values_(std::move(values)) {
    if (j_count < 0 || j_count > 24)
        throw std::invalid_argument("BooleanFunctionTable: |J| must be in [0, 24]");
    if (values_.size() != (std::size_t{1} << j_count))
        throw std::invalid_argument("BooleanFunctionTable: need exactly 2^|J| values");
}

BooleanFunctionTable BooleanFunctionTable::character(int j_count, std::uint32_t s) {
    std::vector<double> v(std::size_t{1} << j_count);
    for (std::size_t w = 0; w < v.size(); ++w)
        v[w] = (std::popcount(static_cast<std::uint32_t>(w) & s) & 1) ? -1.0 : 1.0;
    return {j_count, std::move(v)};
}

BooleanFunctionTable BooleanFunctionTable::constant(int j_count, double c) {
    return {j_count, std::vector<double>(std::size_t{1} << j_count, c)};
}

BooleanFunctionTable BooleanFunctionTable::dictator(int j_count, int j) {
    std::vector<double> v(std::size_t{1} << j_count);
    for (std::size_t w = 0; w < v.size(); ++w) v[w] = (w >> j) & 1 ? 1.0 : 0.0;
    return {j_count, std::move(v)};
}

BooleanFunctionTable BooleanFunctionTable::indicator(int j_count, std::uint32_t point) {
    std::vector<double> v(std::size_t{1} << j_count, 0.0);
    v[point] = 1.0;
    return {j_count, std::move(v)};
}

BooleanFunctionTable walsh_transform(const BooleanFunctionTable& t) {
    std::vector<double> v = t.values();
    butterfly(v);
    const double scale = 1.0 / static_cast<double>(v.size());
    for (double& x : v) x *= scale;
    return {t.j_count(), std::move(v)};
}

BooleanFunctionTable inverse_walsh_transform(const BooleanFunctionTable& coef) {
    std::vector<double> v = coef.values();
    butterfly(v);
    return {coef.j_count(), std::move(v)};
}

BooleanFunctionTable rho_j(const BooleanFunctionTable& t, int j) {
    if (j < 0 || j >= t.j_count()) throw std::invalid_argument("rho_j: coordinate out of range");
    const std::size_t bit = std::size_t{1} << j;
    std::vector<double> v(t.size());
    for (std::size_t w = 0; w < t.size(); ++w) v[w] = (t[w] - t[w ^ bit]) / 2.0;
    return {t.j_count(), std::move(v)};
}

BooleanFunctionTable noise_operator(const BooleanFunctionTable& t, double p) {
    if (!(p >= -1.0 && p <= 1.0))
        throw std::invalid_argument("noise_operator: p must lie in [-1, 1]");
    BooleanFunctionTable coef = walsh_transform(t);
    std::vector<double> pw(t.j_count() + 1, 1.0);
    for (int k = 1; k <= t.j_count(); ++k) pw[k] = pw[k - 1] * p;
    for (std::size_t s = 0; s < coef.size(); ++s)
        coef[s] *= pw[std::popcount(static_cast<std::uint32_t>(s))];
    return inverse_walsh_transform(coef);
}

double mean(const BooleanFunctionTable& t) {
    double s = 0.0;
    for (std::size_t w = 0; w < t.size(); ++w) s += t[w];
    return s / static_cast<double>(t.size());
}

double variance(const BooleanFunctionTable& t) {
    double s = 0.0, sq = 0.0;
    for (std::size_t w = 0; w < t.size(); ++w) {
        s += t[w];
        sq += t[w] * t[w];
    }
    const double n = static_cast<double>(t.size());
    return sq / n - (s / n) * (s / n);
}

double p_norm(const BooleanFunctionTable& t, double p) {
    if (p < 1.0) throw std::invalid_argument("p_norm: p must be >= 1");
    double s = 0.0;
    for (std::size_t w = 0; w < t.size(); ++w) s += std::pow(std::abs(t[w]), p);
    return std::pow(s / static_cast<double>(t.size()), 1.0 / p);
}

std::vector<double> check_bonami_beckner(const BooleanFunctionTable& t,
                                         const std::vector<double>& p_grid) {
    std::vector<double> slack;
    slack.reserve(p_grid.size());
    for (double p : p_grid) {
        const BooleanFunctionTable tp = noise_operator(t, p);
        slack.push_back(p_norm(t, 1.0 + p * p) - p_norm(tp, 2.0));
    }
    return slack;
}

double talagrand_rhs(const BooleanFunctionTable& t) {
    double rhs = 0.0;
    for (int j = 0; j < t.j_count(); ++j) {
        const std::size_t bit = std::size_t{1} << j;
        double n1 = 0.0, n2sq = 0.0;
        for (std::size_t w = 0; w < t.size(); ++w) {
            const double fj = (t[w] - t[w ^ bit]) / 2.0;
            n1 += std::abs(fj);
            n2sq += fj * fj;
        }
        const double n = static_cast<double>(t.size());
        n1 /= n;
        n2sq /= n;
        if (n2sq == 0.0) continue;
        double r = n1 / std::sqrt(n2sq);
        if (r > 1.0) r = 1.0;  // Cauchy-Schwarz; clamp rounding noise
        const double lam = 6.0 / 5.0;
        double factor;
        const double s = -std::log(r);  // log(1/r) >= 0
        if (s < 1e-9) {
            // Series of (1 - r^lam)/log(1/r) around r = 1.
            factor = lam * (1.0 - lam * s / 2.0 + lam * lam * s * s / 6.0);
        } else {
            factor = (1.0 - std::pow(r, lam)) / s;
        }
        rhs += n2sq * factor;
    }
    return 3.0 * rhs;
}

namespace {

double adaptive_simpson(double (*f)(double, const void*), const void* ctx, double lo, double hi,
                        double flo, double fmid, double fhi, double whole, double tol,
                        int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lmid = 0.5 * (lo + mid);
    const double rmid = 0.5 * (mid + hi);
    const double flm = f(lmid, ctx);
    const double frm = f(rmid, ctx);
    const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
    const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_simpson(f, ctx, lo, mid, flo, flm, fmid, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, ctx, mid, hi, fmid, frm, fhi, right, tol / 2.0, depth - 1);
}

}  // namespace

double integrate(double (*f)(double, const void*), const void* ctx, double lo, double hi,
                 double tol) {
    const double flo = f(lo, ctx);
    const double fhi = f(hi, ctx);
    const double fmid = f(0.5 * (lo + hi), ctx);
    const double whole = (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi);
    return adaptive_simpson(f, ctx, lo, hi, flo, fmid, fhi, whole, tol, 40);
}

}  // namespace fpp
