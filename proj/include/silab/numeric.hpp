#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace silab {

/// Adaptive Simpson quadrature on [a,b]. The integrand must be finite on the
/// closed interval; accuracy target is eps relative to the running estimate
/// (with an absolute floor for near-zero integrals).
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double eps = 1e-10, int max_depth = 60);

/// Compensated (Kahan) summation; used where test tolerances are ~1e-12.
double kahan_sum(std::span<const double> xs);

double mean(std::span<const double> xs);
double sample_sd(std::span<const double> xs); // ddof = 1

} // namespace silab
