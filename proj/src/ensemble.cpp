#include "silab/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <thread>

#include "silab/errors.hpp"
#include "silab/numeric.hpp"
#include "silab/stats.hpp"

namespace silab {

double CurveStats::inc_mean(std::uint32_t k) const {
    return (sum[k] - sum[k - 1]) / runs;
}

double CurveStats::inc_batch_cv(std::uint32_t k) const {
    std::vector<double> bm(batches);
    for (std::uint32_t b = 0; b < batches; ++b) {
        const double s = batch_sum[b * n + k] - batch_sum[b * n + (k - 1)];
        bm[b] = s / batch_count[b];
    }
    const double m = silab::mean(bm);
    if (!(m > 0.0)) return 0.0;
    return sample_sd(bm) / m;
}

double CurveStats::inc_max_share(std::uint32_t k) const {
    const double total = sum[k] - sum[k - 1];
    if (!(total > 0.0)) return 0.0;
    return inc_max[k - 1] / total;
}

std::vector<double> CurveStats::increment_column(std::uint32_t k) const {
    if (!has_increments()) throw ParameterError("CurveStats: increments not retained");
    std::vector<double> col(runs);
    for (std::uint32_t r = 0; r < runs; ++r) col[r] = increments[std::size_t(r) * (n - 1) + (k - 1)];
    return col;
}

namespace {

struct BatchAcc {
    std::uint32_t n = UINT32_MAX; // common prefix within the batch
    std::uint32_t count = 0;
    std::vector<double> sum;
    std::vector<double> inc_max;
    std::vector<std::uint32_t> front_min;
    std::vector<std::uint64_t> never;

    void add(const std::vector<double>& times, const std::vector<std::uint32_t>& fronts) {
        const std::uint32_t tn = static_cast<std::uint32_t>(times.size());
        if (tn < n) {
            n = tn;
            if (sum.size() > n) {
                sum.resize(n);
                inc_max.resize(n > 0 ? n - 1 : 0);
                front_min.resize(n);
                never.resize(n);
            }
        }
        if (sum.empty()) {
            sum.assign(n, 0.0);
            inc_max.assign(n > 0 ? n - 1 : 0, 0.0);
            front_min.assign(n, UINT32_MAX);
            never.assign(n, 0);
        }
        ++count;
        for (std::uint32_t k = 0; k < n; ++k) {
            sum[k] += times[k];
            front_min[k] = std::min(front_min[k], fronts[k]);
            if (!std::isfinite(times[k])) ++never[k];
            if (k > 0) inc_max[k - 1] = std::max(inc_max[k - 1], times[k] - times[k - 1]);
        }
    }
};

} // namespace

CurveStats run_ensemble(const EnsembleSpec& spec) {
    if (spec.runs < 2) throw ParameterError("run_ensemble: need at least 2 runs");
    if (spec.batches < 2 || spec.batches > spec.runs)
        throw ParameterError("run_ensemble: batches must be in [2, runs]");
    if (!spec.graph && !spec.generator)
        throw ParameterError("run_ensemble: no graph and no generator");

    std::shared_ptr<const RootedGraph> fixed = spec.graph;
    if (spec.mode == RegenMode::FixedGraph && !fixed) {
        RngStream gr(spec.master_seed, kGraphStreamBase);
        fixed = std::make_shared<const RootedGraph>(spec.generator(gr));
    }

    const std::uint32_t B = spec.batches;
    const std::uint32_t M = spec.runs;
    std::vector<BatchAcc> acc(B);

    // increments matrix is sized lazily once the global prefix is known;
    // store per-run raw times of the prefix instead when retention is on.
    std::vector<std::vector<double>> raw;
    if (spec.keep_increments) raw.resize(M);

    auto run_range = [&](std::uint32_t b) {
        const std::uint32_t lo = static_cast<std::uint32_t>(std::uint64_t(b) * M / B);
        const std::uint32_t hi = static_cast<std::uint32_t>(std::uint64_t(b + 1) * M / B);
        return std::pair<std::uint32_t, std::uint32_t>{lo, hi};
    };

    auto work_batch = [&](std::uint32_t b) {
        const auto [lo, hi] = run_range(b);
        for (std::uint32_t i = lo; i < hi; ++i) {
            const RootedGraph* g = fixed.get();
            RootedGraph local(1, {}, 0);
            if (spec.mode == RegenMode::FreshGraph) {
                RngStream gr(spec.master_seed, kGraphStreamBase + i);
                local = spec.generator(gr);
                g = &local;
            }
            RngStream wr(spec.master_seed, i);
            SpreadTrace tr = run_spread(*g, spec.law, wr);
            acc[b].add(tr.times, tr.front_sizes);
            if (spec.keep_increments) raw[i] = std::move(tr.times);
        }
    };

    unsigned workers = spec.workers ? spec.workers : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, B));
    if (workers == 1) {
        for (std::uint32_t b = 0; b < B; ++b) work_batch(b);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::uint32_t> next{0};
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const std::uint32_t b = next.fetch_add(1);
                    if (b >= B) return;
                    work_batch(b);
                }
            });
        for (auto& t : pool) t.join();
    }

    CurveStats st;
    st.runs = M;
    st.batches = B;
    st.n = UINT32_MAX;
    for (const auto& a : acc) st.n = std::min(st.n, a.n);
    if (st.n == UINT32_MAX || st.n == 0) throw DataError("run_ensemble: empty traces");

    st.sum.assign(st.n, 0.0);
    st.never.assign(st.n, 0);
    st.inc_max.assign(st.n - 1, 0.0);
    st.front_min.assign(st.n, UINT32_MAX);
    st.batch_sum.assign(std::size_t(B) * st.n, 0.0);
    st.batch_count.resize(B);
    for (std::uint32_t b = 0; b < B; ++b) {
        st.batch_count[b] = acc[b].count;
        for (std::uint32_t k = 0; k < st.n; ++k) {
            st.batch_sum[std::size_t(b) * st.n + k] = acc[b].sum[k];
            st.sum[k] += acc[b].sum[k];
            st.never[k] += acc[b].never[k];
            st.front_min[k] = std::min(st.front_min[k], acc[b].front_min[k]);
            if (k > 0) st.inc_max[k - 1] = std::max(st.inc_max[k - 1], acc[b].inc_max[k - 1]);
        }
    }

    if (spec.keep_increments) {
        st.increments.resize(std::size_t(M) * (st.n - 1));
        for (std::uint32_t i = 0; i < M; ++i)
            for (std::uint32_t k = 1; k < st.n; ++k)
                st.increments[std::size_t(i) * (st.n - 1) + (k - 1)] = raw[i][k] - raw[i][k - 1];
    }
    return st;
}

void write_curve_csv(std::ostream& out, const CurveStats& st) {
    out << "k,mean,batch_cv,max_share,n_runs\n";
    char buf[96];
    for (std::uint32_t k = 1; k <= st.n; ++k) {
        const double cv = k >= 2 ? st.inc_batch_cv(k - 1) : 0.0;
        const double share = k >= 2 ? st.inc_max_share(k - 1) : 0.0;
        std::snprintf(buf, sizeof buf, "%u,%.17g,%.17g,%.17g,%u", k, st.mean(k), cv, share,
                      st.runs);
        out << buf << '\n';
    }
}

PlateauThresholds default_plateau_thresholds() { return PlateauThresholds{}; }

std::optional<std::uint32_t> plateau_detect(const CurveStats& st,
                                            const PlateauThresholds& th) {
    if (st.batches < 10) throw ParameterError("plateau_detect: need >= 10 batches");
    if (st.runs < 1000) throw ParameterError("plateau_detect: need >= 1000 runs");

    for (std::uint32_t k = 1; k + 1 <= st.n; ++k) {
        // mechanism gate: a plateau at k needs a realization whose front at
        // the k-th infection has at most one active edge
        if (st.front_min[k - 1] > th.front_cap) continue;
        if (st.inc_max_share(k) <= th.max_share) continue;
        if (st.inc_batch_cv(k) <= th.cv) continue;
        return k;
    }
    return std::nullopt;
}

} // namespace silab
