#include "silab/wilson.hpp"

#include <algorithm>

#include "silab/errors.hpp"

namespace silab {

namespace {

// Loop-erased random walk state on K_n. The path keeps chronological order;
// pos[] marks membership for O(1) loop erasure. Arrays are epoch-stamped so
// repeated walks don't pay O(n) resets.
struct LerwScratch {
    std::uint32_t n;
    std::vector<std::uint32_t> pos_epoch;
    std::vector<std::uint32_t> pos;
    std::vector<Vertex> path;
    std::uint32_t epoch = 0;

    explicit LerwScratch(std::uint32_t n_) : n(n_), pos_epoch(n_, 0), pos(n_, 0) {}

    Vertex step_from(Vertex cur, RngStream& rng) const {
        const auto idx = static_cast<Vertex>(rng.uniform_below(n - 1));
        return idx < cur ? idx : idx + 1;
    }

    // Walk from start until hitting a vertex with in_target(v) true.
    // On return, path holds the loop-erased walk (start first, hit excluded);
    // returns the hit vertex.
    template <class Pred>
    Vertex run(Vertex start, RngStream& rng, Pred in_target) {
        ++epoch;
        path.clear();
        path.push_back(start);
        pos_epoch[start] = epoch;
        pos[start] = 0;
        Vertex cur = start;
        for (;;) {
            const Vertex nxt = step_from(cur, rng);
            if (in_target(nxt)) return nxt;
            if (pos_epoch[nxt] == epoch) {
                // chronological loop erasure: truncate back to nxt
                for (std::size_t i = pos[nxt] + 1; i < path.size(); ++i)
                    pos_epoch[path[i]] = 0;
                path.resize(pos[nxt] + 1);
                cur = nxt;
            } else {
                path.push_back(nxt);
                pos_epoch[nxt] = epoch;
                pos[nxt] = static_cast<std::uint32_t>(path.size() - 1);
                cur = nxt;
            }
        }
    }
};

} // namespace

std::uint32_t sample_first_path_length(std::uint32_t n, RngStream& rng) {
    if (n < 3) throw ParameterError("sample_first_path_length: n must be >= 3");
    LerwScratch scratch(n);
    scratch.run(1, rng, [](Vertex v) { return v == 0; });
    return static_cast<std::uint32_t>(scratch.path.size()); // edges = path vertices (hit excluded)
}

ColoredUstResult sample_ust_colored(std::uint32_t n, RngStream& rng) {
    if (n < 3) throw ParameterError("sample_ust_colored: n must be >= 3");

    LerwScratch scratch(n);
    std::vector<char> covered(n, 0);
    std::vector<UstColor> color(n, UstColor::Blue);
    std::vector<std::pair<Vertex, Vertex>> edges;
    edges.reserve(n);
    edges.emplace_back(0, 1); // the extra edge; tree edges follow

    auto in_covered = [&](Vertex v) { return covered[v] != 0; };

    // Step 2: LERW x1 -> x0, conditioned on >= 2 edges to keep the graph simple.
    Vertex hit;
    do {
        hit = scratch.run(1, rng, [](Vertex v) { return v == 0; });
    } while (scratch.path.size() < 2);
    const std::uint32_t L = static_cast<std::uint32_t>(scratch.path.size());

    covered[0] = 1;
    for (std::size_t i = 0; i < scratch.path.size(); ++i) {
        covered[scratch.path[i]] = 1;
        const Vertex next = (i + 1 < scratch.path.size()) ? scratch.path[i + 1] : hit;
        edges.emplace_back(scratch.path[i], next);
    }

    ColoredUstResult out{RootedGraph(1, {}, 0), {}, 0, 0, 0, 0, {}, 0}; // graph replaced below
    out.first_path_length = L;
    out.increment_sizes.push_back(L); // |Delta_-1| = |C_-1| - 1

    // Step 3: first colored walk defines the R/B split of C_-1.
    Vertex next_start = 2;
    auto advance = [&]() {
        while (next_start < n && covered[next_start]) ++next_start;
        return next_start < n;
    };
    std::uint64_t red = 0, blue = 0;
    if (advance()) {
        const Vertex h = scratch.run(next_start, rng, in_covered);
        for (std::size_t i = 0; i < scratch.path.size(); ++i) {
            const Vertex v = scratch.path[i];
            covered[v] = 1;
            color[v] = UstColor::Red;
            const Vertex nxt = (i + 1 < scratch.path.size()) ? scratch.path[i + 1] : h;
            edges.emplace_back(v, nxt);
        }
        color[h] = UstColor::Red; // R_0 includes its endpoint
        out.increment_sizes.push_back(static_cast<std::uint32_t>(scratch.path.size()));
        red = scratch.path.size() + 1;
        blue = (L + 1) - 1; // C_-1 minus the hit point
        out.r0 = static_cast<std::uint32_t>(red);
        out.b0 = static_cast<std::uint32_t>(blue);
    } else {
        // Everything was covered by the first path (tiny n): treat the whole
        // of C_-1 as blue with an empty red class.
        blue = L + 1;
        out.r0 = 0;
        out.b0 = static_cast<std::uint32_t>(blue);
    }

    // Steps 4-5: remaining walks inherit the color of their hit point.
    while (advance()) {
        const Vertex h = scratch.run(next_start, rng, in_covered);
        const UstColor c = color[h];
        for (std::size_t i = 0; i < scratch.path.size(); ++i) {
            const Vertex v = scratch.path[i];
            covered[v] = 1;
            color[v] = c;
            const Vertex nxt = (i + 1 < scratch.path.size()) ? scratch.path[i + 1] : h;
            edges.emplace_back(v, nxt);
        }
        out.increment_sizes.push_back(static_cast<std::uint32_t>(scratch.path.size()));
        (c == UstColor::Red ? red : blue) += scratch.path.size();
    }

    out.graph = RootedGraph(n, std::move(edges), 0);
    out.color = std::move(color);
    out.red_count = red;
    out.blue_count = blue;
    return out;
}

double delta_law(std::uint32_t n, std::uint32_t c, std::uint32_t k) {
    if (c < 1 || c >= n) throw ParameterError("delta_law: need 1 <= c < n");
    if (k < 1 || k > n - c) throw ParameterError("delta_law: need 1 <= k <= n-c");
    double prod = 1.0;
    for (std::uint32_t j = 1; j < k; ++j)
        prod *= 1.0 - static_cast<double>(j + c) / n;
    return prod * (static_cast<double>(k + c) / n);
}

double first_path_law(std::uint32_t n, std::uint32_t k) { return delta_law(n, 1, k); }

std::vector<std::uint32_t> observe_delta_at(std::uint32_t n, std::uint32_t c_target,
                                            std::uint32_t runs, std::uint64_t master_seed) {
    if (n < 3 || c_target < 2 || c_target >= n)
        throw ParameterError("observe_delta_at: need 3 <= n and 2 <= c_target < n");
    std::vector<std::uint32_t> observations;
    LerwScratch scratch(n);
    std::vector<char> covered(n);
    auto in_covered = [&](Vertex v) { return covered[v] != 0; };

    for (std::uint32_t run = 0; run < runs; ++run) {
        RngStream rng(master_seed, run);
        std::fill(covered.begin(), covered.end(), 0);

        do {
            scratch.run(1, rng, [](Vertex v) { return v == 0; });
        } while (scratch.path.size() < 2);
        covered[0] = 1;
        for (Vertex v : scratch.path) covered[v] = 1;
        std::uint32_t size = static_cast<std::uint32_t>(scratch.path.size()) + 1;

        Vertex next_start = 2;
        while (size < c_target) {
            while (next_start < n && covered[next_start]) ++next_start;
            if (next_start >= n) break;
            scratch.run(next_start, rng, in_covered);
            for (Vertex v : scratch.path) covered[v] = 1;
            size += static_cast<std::uint32_t>(scratch.path.size());
        }
        if (size != c_target) continue; // jumped over the target

        while (next_start < n && covered[next_start]) ++next_start;
        if (next_start >= n) continue;
        scratch.run(next_start, rng, in_covered);
        observations.push_back(static_cast<std::uint32_t>(scratch.path.size()));
    }
    return observations;
}

} // namespace silab
