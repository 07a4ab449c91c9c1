#pragma once

#include <cstdint>
#include <vector>

namespace fpp {

// Real-valued function on {0,1}^J, |J| <= 24, stored as 2^|J| values indexed
// by bit masks. Characters are u_S(w) = (-1)^{popcount(S & w)}.
class BooleanFunctionTable {
  public:
    BooleanFunctionTable(int j_count, std::vector<double> values);

    int j_count() const { return j_count_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t w) const { return values_[w]; }
    double& operator[](std::size_t w) { return values_[w]; }
    const std::vector<double>& values() const { return values_; }

    static BooleanFunctionTable character(int j_count, std::uint32_t s);
    static BooleanFunctionTable constant(int j_count, double c);
    static BooleanFunctionTable dictator(int j_count, int j);   // f(w) = w_j
    static BooleanFunctionTable indicator(int j_count, std::uint32_t point);

  private:
    int j_count_;
    std::vector<double> values_;
};

// Normalized transform: result[S] = 2^{-|J|} sum_w f(w) u_S(w).
BooleanFunctionTable walsh_transform(const BooleanFunctionTable& t);
// Unnormalized butterfly: f(w) = sum_S coef[S] u_S(w).
BooleanFunctionTable inverse_walsh_transform(const BooleanFunctionTable& coef);

// (f(w) - f(sigma_j w)) / 2 pointwise.
BooleanFunctionTable rho_j(const BooleanFunctionTable& t, int j);

// T_p: coefficient-wise damping by p^{|S|}.
BooleanFunctionTable noise_operator(const BooleanFunctionTable& t, double p);

// (E |f|^p)^{1/p} under the uniform measure, p >= 1.
double p_norm(const BooleanFunctionTable& t, double p);

double mean(const BooleanFunctionTable& t);
double variance(const BooleanFunctionTable& t);

// Signed hypercontractivity slack ||f||_{1+p^2} - ||T_p f||_2 per grid point.
std::vector<double> check_bonami_beckner(const BooleanFunctionTable& t,
                                         const std::vector<double>& p_grid);

// 3 * sum_j ||f_j||_2^2 * (1 - r_j^{6/5}) / log(1/r_j), r_j = ||f_j||_1/||f_j||_2,
// with the limit value 6/5 at r_j = 1 and zero terms for vanishing f_j.
double talagrand_rhs(const BooleanFunctionTable& t);

// Adaptive Simpson quadrature on [lo, hi]; used by the inequality-chain checks.
double integrate(double (*f)(double, const void*), const void* ctx, double lo, double hi,
                 double tol);
template <class F>
double integrate(F&& fn, double lo, double hi, double tol) {
    struct Ctx {
        const F* f;
    } ctx{&fn};
    return integrate(
        [](double x, const void* c) { return (*static_cast<const Ctx*>(c)->f)(x); }, &ctx, lo,
        hi, tol);
}

}  // namespace fpp
