#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace silab {

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double ci_lo = 0.0; // bootstrap 95% CI for the slope
    double ci_hi = 0.0;
};

/// OLS of log(mean) on log(k) with a seeded bootstrap CI over grid points.
/// Requires >= 5 finite positive points.
SlopeFit fit_exponent(std::span<const double> ks, std::span<const double> means,
                      unsigned bootstrap = 1000, std::uint64_t seed = 0x5eedf17);

/// Plain OLS slope of y on x with its standard error.
struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_se = 0.0;
};
LinearFit linear_fit(std::span<const double> x, std::span<const double> y);

struct HillEstimate {
    double alpha_hat = 0.0;
    double se = 0.0; // jackknife
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::size_t k_used = 0;
};

/// Hill estimator of the tail index over the top order statistics.
/// Requires >= 1000 positive samples and top_fraction in (0, 0.1].
HillEstimate hill_tail_index(std::span<const double> samples, double top_fraction);

/// Goodness-of-fit chi-square p-value against fully specified expected
/// counts (dof = bins - 1).
double chi_square_pvalue(std::span<const double> observed, std::span<const double> expected);

/// Two-sample homogeneity chi-square p-value on per-bin counts.
double chi_square_two_sample_pvalue(std::span<const double> counts_a,
                                    std::span<const double> counts_b);

/// Kolmogorov-Smirnov distance of a sample against a CDF, and between two
/// samples. Inputs need not be sorted.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);
double ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Dvoretzky-Kiefer-Wolfowitz band half-width at confidence 1 - delta.
double dkw_epsilon(std::size_t n, double delta);

/// Total variation distance between two probability vectors on a shared
/// support (entries may be unnormalized counts; both are normalized first).
double tv_distance(std::span<const double> p, std::span<const double> q);

/// Interpolated q-quantile of a sample (sorted internally).
double quantile(std::vector<double> xs, double q);

} // namespace silab
