#include "silab/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>

#include "silab/errors.hpp"
#include "silab/numeric.hpp"
#include "silab/rng.hpp"

namespace silab {

namespace {

double ols_slope(std::span<const double> x, std::span<const double> y, double* intercept) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw DataError("ols: degenerate x grid");
    const double slope = sxy / sxx;
    if (intercept) *intercept = my - slope * mx;
    return slope;
}

} // namespace

SlopeFit fit_exponent(std::span<const double> ks, std::span<const double> means, unsigned bootstrap,
                      std::uint64_t seed) {
    if (ks.size() != means.size()) throw ParameterError("fit_exponent: size mismatch");
    if (ks.size() < 5) throw ParameterError("fit_exponent: need >= 5 grid points");
    std::vector<double> lx(ks.size()), ly(ks.size());
    for (std::size_t i = 0; i < ks.size(); ++i) {
        if (!(ks[i] > 0.0) || !(means[i] > 0.0) || !std::isfinite(means[i]))
            throw DataError("fit_exponent: nonfinite or nonpositive input");
        lx[i] = std::log(ks[i]);
        ly[i] = std::log(means[i]);
    }
    SlopeFit fit;
    fit.slope = ols_slope(lx, ly, &fit.intercept);

    std::vector<double> slopes;
    slopes.reserve(bootstrap);
    RngStream rng(seed, 0);
    std::vector<double> bx(lx.size()), by(lx.size());
    for (unsigned b = 0; b < bootstrap; ++b) {
        for (std::size_t i = 0; i < lx.size(); ++i) {
            const std::size_t j = rng.uniform_below(lx.size());
            bx[i] = lx[j];
            by[i] = ly[j];
        }
        try {
            slopes.push_back(ols_slope(bx, by, nullptr));
        } catch (const DataError&) {
            // all-equal resample; skip
        }
    }
    if (slopes.size() >= 100) {
        std::sort(slopes.begin(), slopes.end());
        fit.ci_lo = slopes[static_cast<std::size_t>(0.025 * slopes.size())];
        fit.ci_hi = slopes[static_cast<std::size_t>(0.975 * slopes.size())];
    } else {
        fit.ci_lo = fit.ci_hi = fit.slope;
    }
    return fit;
}

LinearFit linear_fit(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 3) throw ParameterError("linear_fit: bad input");
    LinearFit f;
    f.slope = ols_slope(x, y, &f.intercept);
    const std::size_t n = x.size();
    double mx = 0;
    for (double v : x) mx += v;
    mx /= n;
    double sxx = 0, rss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        rss += r * r;
    }
    f.slope_se = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
    return f;
}

HillEstimate hill_tail_index(std::span<const double> samples, double top_fraction) {
    if (samples.size() < 1000) throw ParameterError("hill_tail_index: need >= 1000 samples");
    if (!(top_fraction > 0.0 && top_fraction <= 0.1))
        throw ParameterError("hill_tail_index: top fraction in (0, 0.1]");
    std::vector<double> xs(samples.begin(), samples.end());
    for (double x : xs)
        if (!(x > 0.0) || !std::isfinite(x)) throw DataError("hill_tail_index: nonpositive sample");

    const std::size_t k = std::max<std::size_t>(10, static_cast<std::size_t>(
                                                        top_fraction * static_cast<double>(xs.size())));
    std::nth_element(xs.begin(), xs.begin() + static_cast<long>(k), xs.end(), std::greater<>());
    const double pivot = xs[k];

    std::vector<double> logs;
    logs.reserve(k);
    for (std::size_t i = 0; i < k; ++i) logs.push_back(std::log(xs[i] / pivot));

    const double h = mean(logs);
    if (!(h > 0.0)) throw DataError("hill_tail_index: degenerate top order statistics");
    HillEstimate est;
    est.k_used = k;
    est.alpha_hat = 1.0 / h;

    // delete-one jackknife over the k log-excesses
    const double sum = h * static_cast<double>(k);
    double acc = 0.0, accsq = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double hi = (sum - logs[i]) / static_cast<double>(k - 1);
        const double ai = 1.0 / hi;
        acc += ai;
        accsq += ai * ai;
    }
    const double jack_mean = acc / static_cast<double>(k);
    est.se = std::sqrt(std::max(0.0, (static_cast<double>(k) - 1.0) / static_cast<double>(k) *
                                         (accsq - static_cast<double>(k) * jack_mean * jack_mean)));
    est.ci_lo = est.alpha_hat - 1.96 * est.se;
    est.ci_hi = est.alpha_hat + 1.96 * est.se;
    return est;
}

double chi_square_pvalue(std::span<const double> observed, std::span<const double> expected) {
    if (observed.size() != expected.size() || observed.size() < 2)
        throw ParameterError("chi_square_pvalue: bad bins");
    double stat = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        if (!(expected[i] > 0.0)) throw ParameterError("chi_square_pvalue: expected count <= 0");
        const double d = observed[i] - expected[i];
        stat += d * d / expected[i];
    }
    boost::math::chi_squared dist(static_cast<double>(observed.size() - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

double chi_square_two_sample_pvalue(std::span<const double> counts_a,
                                    std::span<const double> counts_b) {
    if (counts_a.size() != counts_b.size() || counts_a.size() < 2)
        throw ParameterError("chi_square_two_sample: bad bins");
    double na = 0, nb = 0;
    for (std::size_t i = 0; i < counts_a.size(); ++i) {
        na += counts_a[i];
        nb += counts_b[i];
    }
    if (na <= 0 || nb <= 0) throw ParameterError("chi_square_two_sample: empty sample");
    double stat = 0.0;
    std::size_t used_bins = 0;
    for (std::size_t i = 0; i < counts_a.size(); ++i) {
        const double pooled = counts_a[i] + counts_b[i];
        if (pooled == 0.0) continue;
        ++used_bins;
        const double ea = pooled * na / (na + nb);
        const double eb = pooled * nb / (na + nb);
        stat += (counts_a[i] - ea) * (counts_a[i] - ea) / ea;
        stat += (counts_b[i] - eb) * (counts_b[i] - eb) / eb;
    }
    if (used_bins < 2) throw ParameterError("chi_square_two_sample: too few occupied bins");
    boost::math::chi_squared dist(static_cast<double>(used_bins - 1));
    return boost::math::cdf(boost::math::complement(dist, stat));
}

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw ParameterError("ks_distance: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double f = cdf(samples[i]);
        d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    }
    return d;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw ParameterError("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x) ++i;
        while (j < b.size() && b[j] <= x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return d;
}

double dkw_epsilon(std::size_t n, double delta) {
    if (n == 0 || !(delta > 0.0 && delta < 1.0)) throw ParameterError("dkw_epsilon: bad args");
    return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(n)));
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size() || p.empty()) throw ParameterError("tv_distance: size mismatch");
    double sp = 0, sq = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        sp += p[i];
        sq += q[i];
    }
    if (!(sp > 0.0) || !(sq > 0.0)) throw ParameterError("tv_distance: empty distribution");
    double acc = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) acc += std::abs(p[i] / sp - q[i] / sq);
    return 0.5 * acc;
}

double quantile(std::vector<double> xs, double q) {
    if (xs.empty()) throw ParameterError("quantile: empty sample");
    if (!(q >= 0.0 && q <= 1.0)) throw ParameterError("quantile: q in [0,1]");
    std::sort(xs.begin(), xs.end());
    const double pos = q * static_cast<double>(xs.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, xs.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return xs[lo] * (1.0 - frac) + xs[hi] * frac;
}

} // namespace silab
