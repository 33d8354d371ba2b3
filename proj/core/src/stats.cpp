#include "jamguard/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace jamguard::stats {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();

// Regularized lower incomplete gamma by power series; valid for y < a + 1.
double gamma_p_series(double a, double y) {
    double ap = a;
    double del = 1.0 / a;
    double sum = del;
    for (int i = 0; i < 100000; ++i) {
        ap += 1.0;
        del *= y / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) {
            return sum * std::exp(-y + a * std::log(y) - std::lgamma(a));
        }
    }
    throw std::runtime_error("gamma_p_series did not converge");
}

// Regularized upper incomplete gamma by Lentz continued fraction; y >= a + 1.
double gamma_q_cf(double a, double y) {
    double b = y + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 100000; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) <= kEps) {
            return h * std::exp(-y + a * std::log(y) - std::lgamma(a));
        }
    }
    throw std::runtime_error("gamma_q_cf did not converge");
}

double reg_gamma_p(double a, double y) {
    if (y <= 0.0) return 0.0;
    if (y < a + 1.0) return gamma_p_series(a, y);
    return 1.0 - gamma_q_cf(a, y);
}

double reg_gamma_q(double a, double y) {
    if (y <= 0.0) return 1.0;
    if (y < a + 1.0) return 1.0 - gamma_p_series(a, y);
    return gamma_q_cf(a, y);
}

double gamma_log_pdf_std(double a, double y) {
    return (a - 1.0) * std::log(y) - y - std::lgamma(a);
}

// Solves reg_gamma_p(a, y) = p (lower=true) or reg_gamma_q(a, y) = p on the
// standard scale. Wilson-Hilferty start, safeguarded Newton.
double inv_reg_gamma(double a, double p, bool lower) {
    double z = gaussian_q_inv(lower ? 1.0 - p : p);
    double t = 1.0 - 1.0 / (9.0 * a) + z / (3.0 * std::sqrt(a));
    double y = a * t * t * t;
    if (!(y > 0.0) || !std::isfinite(y)) y = a;
    if (a <= 0.25) y = std::max(y, 1e-300);

    double lo = 0.0;
    double hi = std::numeric_limits<double>::infinity();
    for (int it = 0; it < 200; ++it) {
        double err = lower ? reg_gamma_p(a, y) - p : p - reg_gamma_q(a, y);
        if (err > 0.0) {
            hi = std::min(hi, y);
        } else if (err < 0.0) {
            lo = std::max(lo, y);
        } else {
            return y;
        }
        double pdf = std::exp(gamma_log_pdf_std(a, y));
        double step;
        if (pdf > 0.0 && std::isfinite(err / pdf)) {
            step = err / pdf;
            // Halley correction, as in the classic invgammp.
            double u = step * ((a - 1.0) / y - 1.0);
            step /= std::max(0.5, 1.0 - 0.5 * std::min(1.0, u));
        } else {
            step = 0.0;
        }
        double next = y - step;
        if (step == 0.0 || next <= lo || next >= hi) {
            // Bisect within the bracket when Newton stalls or escapes.
            if (!std::isfinite(hi)) {
                next = (lo == 0.0) ? 1.0 : lo * 2.0;
            } else {
                next = 0.5 * (lo + hi);
            }
        }
        if (std::fabs(next - y) <= 8.0 * kEps * next) {
            return next;
        }
        y = next;
    }
    return y;
}

}  // namespace

GammaParams::GammaParams(double shape_in, double scale_in) : shape(shape_in), scale(scale_in) {
    if (!(shape > 0.0) || !std::isfinite(shape)) {
        throw std::invalid_argument("GammaParams: shape must be positive");
    }
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw std::invalid_argument("GammaParams: scale must be positive");
    }
}

NoncentralChi2Params::NoncentralChi2Params(int dof_in, double nc_in)
    : dof(dof_in), noncentrality(nc_in) {
    if (dof < 1) throw std::invalid_argument("NoncentralChi2Params: dof must be >= 1");
    if (!(noncentrality >= 0.0) || !std::isfinite(noncentrality)) {
        throw std::invalid_argument("NoncentralChi2Params: noncentrality must be >= 0");
    }
}

TwoRateErlangMix::TwoRateErlangMix(int count_hot_in, int count_cold_in, double scale_hot_in,
                                   double scale_cold_in)
    : count_hot(count_hot_in),
      count_cold(count_cold_in),
      scale_hot(scale_hot_in),
      scale_cold(scale_cold_in) {
    if (count_hot < 0 || count_cold < 0) {
        throw std::invalid_argument("TwoRateErlangMix: counts must be nonnegative");
    }
    if (count_hot + count_cold < 1) {
        throw std::invalid_argument("TwoRateErlangMix: at least one component required");
    }
    if (!(scale_cold > 0.0) || !(scale_hot >= scale_cold)) {
        throw std::invalid_argument("TwoRateErlangMix: requires scale_hot >= scale_cold > 0");
    }
}

double gamma_cdf(double x, const GammaParams& params) {
    if (x < 0.0) throw std::domain_error("gamma_cdf: x must be >= 0");
    return reg_gamma_p(params.shape, x / params.scale);
}

double gamma_tail(double x, const GammaParams& params) {
    if (x < 0.0) throw std::domain_error("gamma_tail: x must be >= 0");
    return reg_gamma_q(params.shape, x / params.scale);
}

double gamma_inv_cdf(double p, const GammaParams& params) {
    if (!(p > 0.0) || !(p < 1.0)) throw std::domain_error("gamma_inv_cdf: p must be in (0,1)");
    // Invert against the smaller of the two tails to avoid cancellation.
    if (p > 0.5) return params.scale * inv_reg_gamma(params.shape, 1.0 - p, false);
    return params.scale * inv_reg_gamma(params.shape, p, true);
}

double gamma_inv_tail(double q, const GammaParams& params) {
    if (!(q > 0.0) || !(q < 1.0)) throw std::domain_error("gamma_inv_tail: q must be in (0,1)");
    if (q > 0.5) return params.scale * inv_reg_gamma(params.shape, 1.0 - q, true);
    return params.scale * inv_reg_gamma(params.shape, q, false);
}

double noncentral_chi2_cdf(double x, const NoncentralChi2Params& params) {
    if (x < 0.0) throw std::domain_error("noncentral_chi2_cdf: x must be >= 0");
    if (x == 0.0) return 0.0;
    const double a0 = 0.5 * params.dof;
    const double half_x = 0.5 * x;
    const double half_d = 0.5 * params.noncentrality;
    if (half_d == 0.0) return reg_gamma_p(a0, half_x);

    // Poisson-weighted mixture of central chi-square CDFs, summed outward
    // from the Poisson mode so the weights never underflow near the bulk.
    const auto i0 = static_cast<std::int64_t>(half_d);
    const double logw0 = -half_d + i0 * std::log(half_d) - std::lgamma(double(i0) + 1.0);
    const double w0 = std::exp(logw0);
    const double g0 = reg_gamma_p(a0 + double(i0), half_x);
    const double t0 = std::exp((a0 + double(i0)) * std::log(half_x) - half_x -
                               std::lgamma(a0 + double(i0) + 1.0));

    double sum = w0 * g0;
    double wsum = w0;

    // Below the mode the weights decay at least geometrically.
    {
        double w = w0, g = g0, t = t0;
        for (std::int64_t i = i0; i > 0; --i) {
            t *= (a0 + double(i)) / half_x;
            g = std::min(1.0, g + t);
            w *= double(i) / half_d;
            sum += w * g;
            wsum += w;
            if (w < 1e-18) break;
        }
    }
    // Above the mode, g is decreasing, so the residual is bounded by the
    // unaccounted Poisson mass times the current g.
    {
        double w = w0, g = g0, t = t0;
        for (std::int64_t i = i0; i < i0 + 100000000; ++i) {
            g = std::max(0.0, g - t);
            t *= half_x / (a0 + double(i) + 1.0);
            w *= half_d / (double(i) + 1.0);
            sum += w * g;
            wsum += w;
            if ((1.0 - wsum) * g <= 1e-14 || w < 1e-300) break;
        }
    }
    return std::clamp(sum, 0.0, 1.0);
}

double gaussian_q(double x) { return 0.5 * std::erfc(x * 0.7071067811865475244); }

namespace {

// Wichura's PPND16: standard normal quantile, |error| ~ 1e-16.
double norm_quantile(double p) {
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                   1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                 1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                   5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                 4.2313330701600911252e1) * r + 1.0);
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    if (!(r > 0.0)) return q < 0.0 ? -std::numeric_limits<double>::infinity()
                                   : std::numeric_limits<double>::infinity();
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                      2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                    3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
                  4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
                (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                      1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                    6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
                  2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                      1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                    2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
                  5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
                (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                      1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                    1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
                  5.99832206555887937690e-1) * r + 1.0);
    }
    return (q < 0.0) ? -value : value;
}

}  // namespace

double gaussian_q_inv(double p) {
    if (!(p > 0.0) || !(p < 1.0)) throw std::domain_error("gaussian_q_inv: p must be in (0,1)");
    double x = -norm_quantile(p);
    // One Newton polish against erfc to pin the round-trip accuracy.
    if (std::fabs(x) < 37.0) {
        const double inv_sqrt_2pi = 0.3989422804014326779;
        double pdf = inv_sqrt_2pi * std::exp(-0.5 * x * x);
        if (pdf > 0.0) x -= (p - gaussian_q(x)) / pdf;
    }
    return x;
}

double log_binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) throw std::invalid_argument("log_binomial: requires 0 <= k <= n");
    return std::lgamma(double(n) + 1.0) - std::lgamma(double(k) + 1.0) -
           std::lgamma(double(n - k) + 1.0);
}

double hypergeom_pmf(std::int64_t population, std::int64_t successes, std::int64_t draws,
                     std::int64_t observed) {
    if (population < 1) throw std::invalid_argument("hypergeom_pmf: population must be positive");
    if (successes < 0 || successes > population) {
        throw std::invalid_argument("hypergeom_pmf: successes out of range");
    }
    if (draws < 0 || draws > population) {
        throw std::invalid_argument("hypergeom_pmf: draws out of range");
    }
    const std::int64_t lo = std::max<std::int64_t>(0, draws - (population - successes));
    const std::int64_t hi = std::min(draws, successes);
    if (observed < lo || observed > hi) return 0.0;
    return std::exp(log_binomial(successes, observed) +
                    log_binomial(population - successes, draws - observed) -
                    log_binomial(population, draws));
}

double two_rate_mix_cdf_exact(double x, const TwoRateErlangMix& mix) {
    if (x < 0.0) throw std::domain_error("two_rate_mix_cdf_exact: x must be >= 0");
    if (x == 0.0) return 0.0;
    if (mix.count_hot == 0) return gamma_cdf(x, GammaParams(mix.count_cold, mix.scale_cold));
    if (mix.count_cold == 0) return gamma_cdf(x, GammaParams(mix.count_hot, mix.scale_hot));
    if (mix.scale_hot == mix.scale_cold) {
        return gamma_cdf(x, GammaParams(mix.count_hot + mix.count_cold, mix.scale_cold));
    }
    const double alpha1 = mix.count_hot;
    const double rho = double(mix.count_hot) + double(mix.count_cold);
    const double y = x / mix.scale_cold;
    const double h = 1.0 - mix.scale_cold / mix.scale_hot;

    // Gamma(a1, b1) equals Gamma(a1 + K, b2) with K negative-binomial, so the
    // whole sum is a positive mixture of Erlangs on the cold scale:
    //   F(x) = sum_k  NB(k; a1, h) * P(rho + k, x/b2).
    // All terms are positive, so the evaluation is stable for any counts.
    const auto k0 = static_cast<std::int64_t>(std::max(0.0, (alpha1 - 1.0) * h / (1.0 - h)));
    const double logw0 = alpha1 * std::log1p(-h) + double(k0) * std::log(h) +
                         std::lgamma(alpha1 + double(k0)) - std::lgamma(double(k0) + 1.0) -
                         std::lgamma(alpha1);
    const double w0 = std::exp(logw0);
    const double g0 = reg_gamma_p(rho + double(k0), y);
    const double t0 = std::exp((rho + double(k0)) * std::log(y) - y -
                               std::lgamma(rho + double(k0) + 1.0));

    double sum = w0 * g0;
    double wsum = w0;
    {
        double w = w0, g = g0, t = t0;
        for (std::int64_t k = k0; k > 0; --k) {
            t *= (rho + double(k)) / y;
            g = std::min(1.0, g + t);
            w *= double(k) / (h * (alpha1 + double(k) - 1.0));
            sum += w * g;
            wsum += w;
            if (w < 1e-18) break;
        }
    }
    {
        double w = w0, g = g0, t = t0;
        for (std::int64_t k = k0; k < k0 + 1000000000; ++k) {
            g = std::max(0.0, g - t);
            t *= y / (rho + double(k) + 1.0);
            w *= h * (alpha1 + double(k)) / (double(k) + 1.0);
            sum += w * g;
            wsum += w;
            if ((1.0 - wsum) * g <= 1e-14 || w < 1e-300) break;
        }
    }
    return std::clamp(sum, 0.0, 1.0);
}

double two_rate_mix_cdf_moment_matched(double x, const TwoRateErlangMix& mix) {
    if (x < 0.0) throw std::domain_error("two_rate_mix_cdf_moment_matched: x must be >= 0");
    const double mean = mix.count_hot * mix.scale_hot + mix.count_cold * mix.scale_cold;
    const double var = mix.count_hot * mix.scale_hot * mix.scale_hot +
                       mix.count_cold * mix.scale_cold * mix.scale_cold;
    return reg_gamma_p(mean * mean / var, x * mean / var);
}

double two_rate_mix_cdf(double x, const TwoRateErlangMix& mix) {
    if (x < 0.0) throw std::domain_error("two_rate_mix_cdf: x must be >= 0");
    if (x == 0.0) return 0.0;
    if (mix.count_hot == 0) {
        return gamma_cdf(x, GammaParams(mix.count_cold, mix.scale_cold));
    }
    if (mix.count_cold == 0) {
        return gamma_cdf(x, GammaParams(mix.count_hot, mix.scale_hot));
    }
    // Coincident rates collapse to a single Erlang; the mean-preserving scale
    // keeps the reduction continuous as scale_hot -> scale_cold.
    if (mix.scale_hot - mix.scale_cold < 1e-12 * mix.scale_hot) {
        const int total = mix.count_hot + mix.count_cold;
        const double scale =
            (mix.count_hot * mix.scale_hot + mix.count_cold * mix.scale_cold) / total;
        return gamma_cdf(x, GammaParams(total, scale));
    }
    if (mix.count_hot + mix.count_cold <= kTwoRateExactMaxTotal) {
        return two_rate_mix_cdf_exact(x, mix);
    }
    return two_rate_mix_cdf_moment_matched(x, mix);
}

}  // namespace jamguard::stats
