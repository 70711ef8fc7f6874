#include "silab/thresholds.hpp"

#include <string>

#include "silab/errors.hpp"

namespace silab {

namespace {

// Versioned defaults. Provenance: Paper = the value appears in the source
// material; Derived = computed from a closed form; PilotCalibrated = fixed
// from pilot runs of this laboratory (noted alongside).
constexpr Threshold kTable[] = {
    // plateau detector: two statistical signals gated by an observed
    // single-edge front (the bottleneck mechanism itself)
    {"plateau.cv", 0.3, Provenance::PilotCalibrated,
     "batch-mean CV; pilot: raw pow(0.8) cells sit above 0.43 at the 0.1% quantile"},
    {"plateau.max_share", 0.05, Provenance::PilotCalibrated,
     "largest single-run share of the increment sum; pilot 0.1% quantile 0.054 at M=1e4"},
    {"plateau.front_cap", 1.0, Provenance::Derived,
     "fire only where some run reached k with at most one active edge"},

    // cycle scaling (slope target 1/alpha at alpha=0.8)
    {"cycle.slope.lo", 1.10, Provenance::PilotCalibrated, "target 1.25"},
    {"cycle.slope.hi", 1.40, Provenance::PilotCalibrated, "target 1.25"},

    // star scaling
    {"star.scaled_mean.max_ratio", 2.0, Provenance::PilotCalibrated,
     "max/min of mean(T_{n-1}) n^{-1/alpha} across the n grid"},

    // Q process
    {"q.slope.tolerance", 0.15, Provenance::PilotCalibrated, "1/alpha +- tol"},
    {"q.mc_sigma", 3.0, Provenance::Derived, "truncated-mean z-score bound"},

    // GW experiments
    {"gw.tightness.p95_ratio", 2.0, Provenance::PilotCalibrated,
     "95th percentile of kappa across the N grid: max/min"},
    {"gw.extra_edge.ratio", 0.01, Provenance::PilotCalibrated, "kappa over graph size"},
    {"gw.extra_edge.prob", 0.9, Provenance::PilotCalibrated, "P[ratio above cut]"},

    // UST experiments
    {"ust.kappa_ratio", 0.01, Provenance::PilotCalibrated, "kappa/n cut"},
    {"ust.kappa_prob", 0.9, Provenance::PilotCalibrated, "P[kappa/n above cut]"},
    {"ust.ratio_ks", 0.12, Provenance::PilotCalibrated,
     "two-sample KS between kappa/n laws at n=1000 and n=4000, M=500 each"},
    {"ust.color_prob", 0.9, Provenance::PilotCalibrated, "P[R/C inside (0.01,0.99)]"},

    // Wilson laws
    {"wilson.first_path_tv", 0.02, Provenance::PilotCalibrated, "TV at n=500, 1e5 runs"},
    {"wilson.delta_tv", 0.02, Provenance::PilotCalibrated, "TV conditioned on |C_i|=20"},
    {"wilson.rayleigh_ks", 0.03, Provenance::PilotCalibrated, "KS at n=1e4, 1e5 runs"},

    // urn
    {"urn.uniform_pvalue", 1e-3, Provenance::Derived, "classic urn exact uniformity"},
    {"urn.martingale_slope", 0.01, Provenance::Derived, "regression of step vs ratio"},
    {"urn.boundary_mass", 0.10, Provenance::PilotCalibrated,
     "final-ratio mass within 0.01 of either end, Wilson-fed at n=2000"},
    {"urn.symmetry_pvalue", 1e-3, Provenance::Derived, "ratio vs 1-ratio KS-free chi-square"},

    // ER experiments
    {"er.tree_ratio", 3.0, Provenance::PilotCalibrated,
     "tree-cluster frequency at lambda=0 over lambda=5"},
    {"er.kappa_p95_factor", 2.0, Provenance::PilotCalibrated,
     "stability of the kappa 95th percentile across n"},
    {"er.surplus_slope.lo", 2.3, Provenance::PilotCalibrated, "target 3"},
    {"er.surplus_slope.hi", 3.7, Provenance::PilotCalibrated, "target 3"},
    {"er.part3_prob", 0.7, Provenance::PilotCalibrated, "existence check at lambda=8, eps=0.2"},
    {"er.maxkappa_mass", 0.8, Provenance::PilotCalibrated,
     "mass of max_s kappa/|C| inside (0.01,0.99) at lambda=0"},

    // sampler laws
    {"laws.dkw_delta", 1e-3, Provenance::Derived, "DKW confidence level"},
    {"laws.mc_sigma", 3.0, Provenance::Derived, "std-error multiples for law checks"},
    {"hill.tolerance", 0.15, Provenance::PilotCalibrated, "bottleneck Hill index vs alpha"},
};

} // namespace

const Threshold& threshold(std::string_view key) {
    for (const auto& t : kTable)
        if (key == t.key) return t;
    throw ParameterError("unknown threshold key: " + std::string(key));
}

double threshold_value(std::string_view key) { return threshold(key).value; }

std::span<const Threshold> all_thresholds() { return kTable; }

const char* provenance_name(Provenance p) {
    switch (p) {
        case Provenance::Paper: return "paper";
        case Provenance::Derived: return "derived";
        case Provenance::PilotCalibrated: return "pilot-calibrated";
    }
    return "?";
}

} // namespace silab
