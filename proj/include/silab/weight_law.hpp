#pragma once

#include <string>

#include "silab/rng.hpp"

namespace silab {

enum class LawKind { PowerLaw, ShiftedPowerLaw };

/// Passage-time law of an edge.
///
/// PowerLaw(alpha, t0):        P[X > t] = 1 ∧ (t/t0)^-alpha,  support [t0, inf)
/// ShiftedPowerLaw(alpha):     P[X > t] = (t+1)^-alpha,       support [0, inf)
///
/// The type admits any alpha > 0; operations whose backing results require
/// alpha in (1/2, 1) check their own preconditions.
struct WeightLaw {
    LawKind kind = LawKind::PowerLaw;
    double alpha = 0.8;
    double t0 = 1.0; // PowerLaw only

    static WeightLaw power(double alpha, double t0 = 1.0);
    static WeightLaw shifted(double alpha);

    void validate() const;

    /// One variate by inversion. U is drawn from the open interval (0,1).
    double sample(RngStream& rng) const;

    /// A variate distributed as (X - age | X > age).
    /// ShiftedPowerLaw uses the scaling identity X_age =d= (age+1) X'.
    /// PowerLaw with age < t0 reduces to a fresh draw minus age (X >= t0 a.s.);
    /// with age >= t0 it inverts the conditional CDF: age (U^{-1/alpha} - 1).
    double sample_residual(double age, RngStream& rng) const;

    /// Exact survival function P[X > t].
    double tail(double t) const;

    /// Exact conditional survival P[X - age > s | X > age].
    double residual_tail(double age, double s) const;

    /// Inverse survival: the t with tail(t) = p, p in (0,1). Used by tests
    /// to place survival-grid points.
    double tail_quantile(double p) const;

    std::string describe() const;
};

/// E[min{X, Y-t} | Y > t] for X,Y iid PowerLaw(alpha, 1), alpha in (1/2,1),
/// t > 1, by deterministic quadrature (relative accuracy ~1e-9, well inside
/// the 1e-6 contract). Serves as the oracle for Monte Carlo tests.
double residual_min_mean(const WeightLaw& law, double t);

/// Truncated version E[min{X, Y-t, c} | Y > t]; the truncated mean has
/// finite variance, which makes 3-sigma Monte Carlo comparisons sound even
/// though the untruncated variable has infinite variance.
double residual_min_mean_truncated(const WeightLaw& law, double t, double cap);

} // namespace silab
