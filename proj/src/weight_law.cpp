#include "silab/weight_law.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "silab/errors.hpp"
#include "silab/numeric.hpp"

namespace silab {

WeightLaw WeightLaw::power(double alpha, double t0) {
    WeightLaw w{LawKind::PowerLaw, alpha, t0};
    w.validate();
    return w;
}

WeightLaw WeightLaw::shifted(double alpha) {
    WeightLaw w{LawKind::ShiftedPowerLaw, alpha, 1.0};
    w.validate();
    return w;
}

void WeightLaw::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw ParameterError("WeightLaw: alpha must be positive and finite");
    if (kind == LawKind::PowerLaw && (!(t0 > 0.0) || !std::isfinite(t0)))
        throw ParameterError("WeightLaw: t0 must be positive and finite");
}

double WeightLaw::sample(RngStream& rng) const {
    const double u = rng.u01();
    if (kind == LawKind::PowerLaw) return t0 * std::pow(u, -1.0 / alpha);
    return std::pow(u, -1.0 / alpha) - 1.0;
}

double WeightLaw::sample_residual(double age, RngStream& rng) const {
    if (age < 0.0 || !std::isfinite(age)) throw ParameterError("sample_residual: age must be >= 0");
    if (kind == LawKind::ShiftedPowerLaw) return (age + 1.0) * sample(rng);
    if (age < t0) return sample(rng) - age; // X >= t0 > age a.s.; conditioning is vacuous
    return age * (std::pow(rng.u01(), -1.0 / alpha) - 1.0);
}

double WeightLaw::tail(double t) const {
    if (kind == LawKind::PowerLaw) {
        if (t <= t0) return 1.0;
        return std::pow(t / t0, -alpha);
    }
    if (t <= 0.0) return 1.0;
    return std::pow(t + 1.0, -alpha);
}

double WeightLaw::residual_tail(double age, double s) const {
    if (age < 0.0) throw ParameterError("residual_tail: age must be >= 0");
    if (s <= 0.0) return 1.0;
    if (kind == LawKind::ShiftedPowerLaw)
        return std::pow((age + s + 1.0) / (age + 1.0), -alpha);
    if (age < t0) return tail(age + s); // P[X > age] = 1
    return std::pow((age + s) / age, -alpha);
}

double WeightLaw::tail_quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw ParameterError("tail_quantile: p must be in (0,1)");
    if (kind == LawKind::PowerLaw) return t0 * std::pow(p, -1.0 / alpha);
    return std::pow(p, -1.0 / alpha) - 1.0;
}

std::string WeightLaw::describe() const {
    char buf[80];
    if (kind == LawKind::PowerLaw)
        std::snprintf(buf, sizeof buf, "pow(alpha=%g,t0=%g)", alpha, t0);
    else
        std::snprintf(buf, sizeof buf, "shiftpow(alpha=%g)", alpha);
    return buf;
}

namespace {

// E[min{X, Y-t} ∧ cap | Y > t] for pow(alpha, 1), t > 1, via the piecewise
// conditional tail  P[min > s | Y > t] = (1+s/t)^-a (s<1),  s^-a (1+s/t)^-a (s>1).
// Each piece is integrated after a substitution that removes the endpoint
// singularity, so the integrands below are smooth and bounded:
//   s in (0,1):   closed form.
//   s in (1,t):   s = y^{1/(1-a)}      -> (1/(1-a)) (1 + y^{1/(1-a)}/t)^-a dy
//   s in (t,inf): s = t z^{-1/(2a-1)}  -> t^{1-a}/(2a-1) (1 + z^{1/(2a-1)})^-a dz
double min_mean_normalized(double a, double t, double cap) {
    const double c0 = std::min(cap, 1.0);
    double total = t / (1.0 - a) * (std::pow(1.0 + c0 / t, 1.0 - a) - 1.0);
    if (cap <= 1.0) return total;

    const double c1 = std::min(cap, t);
    const double inv1 = 1.0 / (1.0 - a);
    total += inv1 * adaptive_simpson(
                        [a, t, inv1](double y) { return std::pow(1.0 + std::pow(y, inv1) / t, -a); },
                        1.0, std::pow(c1, 1.0 - a));
    if (cap <= t) return total;

    const double inv2 = 1.0 / (2.0 * a - 1.0);
    const double zlo = std::pow(t / cap, 2.0 * a - 1.0);
    total += std::pow(t, 1.0 - a) * inv2 *
             adaptive_simpson(
                 [a, inv2](double z) { return std::pow(1.0 + std::pow(z, inv2), -a); }, zlo, 1.0);
    return total;
}

void check_min_mean_args(const WeightLaw& law, double t) {
    if (law.kind != LawKind::PowerLaw)
        throw ParameterError("residual_min_mean: law must be PowerLaw");
    if (!(law.alpha > 0.5 && law.alpha < 1.0))
        throw ParameterError("residual_min_mean: alpha must be in (1/2,1)");
    if (!(t > law.t0)) throw ParameterError("residual_min_mean: t must exceed t0");
}

} // namespace

double residual_min_mean(const WeightLaw& law, double t) {
    check_min_mean_args(law, t);
    // Rescale to t0 = 1: min{X,Y-t} = t0 * min{X', Y'-t/t0}.
    return law.t0 * min_mean_normalized(law.alpha, t / law.t0,
                                        std::numeric_limits<double>::infinity());
}

double residual_min_mean_truncated(const WeightLaw& law, double t, double cap) {
    check_min_mean_args(law, t);
    if (!(cap > 0.0)) throw ParameterError("residual_min_mean_truncated: cap must be positive");
    return law.t0 * min_mean_normalized(law.alpha, t / law.t0, cap / law.t0);
}

} // namespace silab
