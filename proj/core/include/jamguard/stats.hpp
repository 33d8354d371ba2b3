#pragma once

#include <cstdint>

// Probability kernel: gamma CDF and inverse, noncentral chi-square CDF,
// Gaussian Q, hypergeometric PMF, and the CDF of a sum of exponentials with
// two distinct rates. Everything is a pure function of its arguments.

namespace jamguard::stats {

struct GammaParams {
    double shape;  // k > 0
    double scale;  // theta > 0, same units as the variate

    GammaParams(double shape, double scale);
};

struct NoncentralChi2Params {
    int dof;                // nu >= 1
    double noncentrality;   // delta >= 0

    NoncentralChi2Params(int dof, double noncentrality);
};

// Sum of count_hot i.i.d. Exp(scale_hot) plus count_cold i.i.d. Exp(scale_cold).
struct TwoRateErlangMix {
    int count_hot;      // alpha_1 >= 0
    int count_cold;     // alpha_2 >= 0, alpha_1 + alpha_2 >= 1
    double scale_hot;   // beta_1 >= beta_2
    double scale_cold;  // beta_2 > 0

    TwoRateErlangMix(int count_hot, int count_cold, double scale_hot, double scale_cold);
};

// Regularized lower incomplete gamma P(k, x/theta).
double gamma_cdf(double x, const GammaParams& params);

// Upper tail 1 - gamma_cdf, computed directly so small tails keep full
// relative precision.
double gamma_tail(double x, const GammaParams& params);

// Inverse of gamma_cdf; p in (0,1).
double gamma_inv_cdf(double p, const GammaParams& params);

// x such that gamma_tail(x) = q; q in (0,1).
double gamma_inv_tail(double q, const GammaParams& params);

// Poisson mixture of central chi-square CDFs, truncation error < 1e-10.
// delta = 0 reduces exactly to the central law.
double noncentral_chi2_cdf(double x, const NoncentralChi2Params& params);

// Upper-tail standard normal and its inverse.
double gaussian_q(double x);
double gaussian_q_inv(double p);

// log C(n, k) via lgamma; requires 0 <= k <= n.
double log_binomial(std::int64_t n, std::int64_t k);

// P[X = observed] for X ~ Hypergeometric(population, successes, draws),
// evaluated in log-gamma arithmetic. Zero outside the support.
double hypergeom_pmf(std::int64_t population, std::int64_t successes, std::int64_t draws,
                     std::int64_t observed);

// Exact evaluation threshold: above this total count the moment-matched
// gamma approximation is used instead of the exact series.
inline constexpr int kTwoRateExactMaxTotal = 60;

// CDF of the two-rate sum. Degenerate counts and coincident scales reduce to
// the plain Erlang CDF; otherwise dispatches on kTwoRateExactMaxTotal.
double two_rate_mix_cdf(double x, const TwoRateErlangMix& mix);

// Exact series evaluation (negative-binomial mixture of Erlang CDFs with the
// cold scale as base). Stable for any counts; cost grows with
// count_hot * (scale_hot/scale_cold - 1).
double two_rate_mix_cdf_exact(double x, const TwoRateErlangMix& mix);

// Gamma approximation matching the exact mean and variance of the sum.
double two_rate_mix_cdf_moment_matched(double x, const TwoRateErlangMix& mix);

}  // namespace jamguard::stats
