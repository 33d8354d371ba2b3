#pragma once

// Test-only oracles, kept independent of the library's evaluation paths:
// closed-form Erlang laws, adaptive quadrature, the alternating-sum
// hypoexponential CDF in its textbook form, and mt19937-based samplers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <vector>

namespace oracles {

inline double simpson(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    return (b - a) / 6.0 * (f(a) + 4.0 * f(c) + f(b));
}

inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double whole, double tol, int depth) {
    const double c = 0.5 * (a + b);
    const double left = simpson(f, a, c);
    const double right = simpson(f, c, b);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson_rec(f, a, c, left, tol * 0.5, depth - 1) +
           adaptive_simpson_rec(f, c, b, right, tol * 0.5, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
    if (a == b) return 0.0;
    return adaptive_simpson_rec(f, a, b, simpson(f, a, b), tol, 60);
}

// Erlang (integer-shape gamma) density and CDF in closed form.
inline double erlang_pdf(double x, int shape, double scale) {
    if (x < 0.0) return 0.0;
    if (x == 0.0) return shape == 1 ? 1.0 / scale : 0.0;
    double log_pdf = (shape - 1) * std::log(x / scale) - x / scale - std::lgamma(double(shape)) -
                     std::log(scale);
    return std::exp(log_pdf);
}

inline double erlang_cdf(double x, int shape, double scale) {
    if (x <= 0.0) return 0.0;
    const double y = x / scale;
    double term = 1.0;
    double sum = 1.0;
    for (int i = 1; i < shape; ++i) {
        term *= y / i;
        sum += term;
    }
    return 1.0 - std::exp(-y) * sum;
}

// CDF of Erlang(a1, b1) + Erlang(a2, b2) by numeric convolution.
inline double two_erlang_conv_cdf(double x, int a1, double b1, int a2, double b2) {
    if (x <= 0.0) return 0.0;
    return integrate([&](double t) { return erlang_pdf(t, a1, b1) * erlang_cdf(x - t, a2, b2); },
                     0.0, x, 1e-12);
}

// Textbook alternating-sum form of the two-rate hypoexponential CDF (sum over
// chi coefficients). Numerically usable only for small counts.
inline double two_rate_alternating_cdf(double x, int a1, int a2, double b1, double b2) {
    if (x <= 0.0) return 0.0;
    const int alpha[2] = {a1, a2};
    const double beta[2] = {b1, b2};
    double total = 0.0;
    for (int i = 0; i < 2; ++i) {
        const int b = 1 - i;
        for (int j = 1; j <= alpha[i]; ++j) {
            const int omega = alpha[i] - j;
            // chi_{i,j} = (-1/beta_i)^omega * C(alpha_b+omega-1, omega)
            //             * beta_b^omega / (1 - beta_b/beta_i)^(alpha_b+omega)
            double chi = std::pow(-1.0 / beta[i], omega) * std::pow(beta[b], omega) /
                         std::pow(1.0 - beta[b] / beta[i], alpha[b] + omega);
            {
                double binom = 1.0;
                for (int r = 1; r <= omega; ++r) {
                    binom *= double(alpha[b] + omega - r) / double(r);
                }
                chi *= binom;
            }
            for (int k = 0; k <= j - 1; ++k) {
                double term = chi * std::pow(x, k) /
                              (std::tgamma(double(k) + 1.0) * std::pow(beta[i], k)) *
                              std::exp(-x / beta[i]);
                total += term;
            }
        }
    }
    return 1.0 - total;
}

// Upper-tail standard normal by quadrature over the density.
inline double gaussian_q_quadrature(double x) {
    if (x < -12.0) return 1.0;
    const auto pdf = [](double t) {
        return 0.3989422804014326779 * std::exp(-0.5 * t * t);
    };
    if (x > 12.0) return integrate(pdf, x, x + 30.0, 1e-18);
    return integrate(pdf, x, 13.0, 1e-15) + integrate(pdf, 13.0, 43.0, 1e-18);
}

// Independent finite-blocklength error rate: quadrature Q and a separately
// written dispersion expression.
inline double bler_quadrature(double sinr, double rate, int channel_uses) {
    if (sinr <= 0.0) return 1.0;
    const double log2e = 1.4426950408889634074;
    const double v = log2e * log2e * (1.0 - std::pow(1.0 + sinr, -2.0));
    const double arg = (std::log2(1.0 + sinr) - rate) * std::sqrt(channel_uses / v);
    return gaussian_q_quadrature(arg);
}

// Kolmogorov-Smirnov distance between sorted samples and a CDF.
inline double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    const double n = double(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::fabs(f - double(i) / n));
        d = std::max(d, std::fabs(double(i + 1) / n - f));
    }
    return d;
}

}  // namespace oracles
