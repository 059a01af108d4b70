#pragma once

// Branch-and-prune over the reduced configuration space.  Two engines share
// the per-box step: a plain depth-first serial engine (the reference used
// for determinism tests) and an OpenMP engine processing the frontier in
// deterministic batches.

#include <cstdint>
#include <functional>
#include <vector>

#include "ccs/classify.hpp"
#include "ccs/interval.hpp"
#include "ccs/krawczyk.hpp"
#include "ccs/model.hpp"

namespace ccs {

struct SearchConfig {
    int n = 4;
    int dim = 3;
    double min_width = 1e-8;          // bisection floor, reduced coordinates
    double certify_rel_width = 0.1;   // Krawczyk attempted below this scaled width
    std::uint64_t max_boxes = 0;      // processing budget; 0 = unlimited
    int threads = 1;
    bool progress = false;
    // Test hook; receives every discarded box (serial merge path, in order).
    std::function<void(const Box&)> on_discard;
};

enum class DiscardReason { Constraint, EmptyTighten, Cluster, Residual, KrawczykNoZero };

struct SearchStats {
    std::uint64_t processed = 0;
    std::uint64_t discarded_constraint = 0;
    std::uint64_t discarded_empty_tighten = 0;
    std::uint64_t discarded_cluster = 0;
    std::uint64_t discarded_residual = 0;
    std::uint64_t discarded_krawczyk = 0;
    std::uint64_t krawczyk_calls = 0;
    std::uint64_t certified_raw = 0;
    std::uint64_t peak_queue = 0;
    double wall_seconds = 0.0;
    double cpu_seconds = 0.0;
};

struct CertifiedSolution {
    Box reduced_box;          // refined, Krawczyk-certified enclosure
    Configuration config;     // embedded interval positions
    CCInvariants inv;
    Geometry geometry = Geometry::Undetermined;
    A1A2 conds;
    SymmetryGroup symmetries; // filled by the classification pass
};

struct SearchOutcome {
    std::vector<CertifiedSolution> certified;  // unified classes, canonical order
    std::vector<Box> undecided;
    SearchStats stats;
    bool budget_exhausted = false;
    bool conclusive() const { return undecided.empty() && !budget_exhausted; }
};

Box initial_domain(const SearchConfig& cfg);

struct PruneResult {
    bool keep = false;
    Box box;                      // tightened when kept
    bool collision_free = false;  // pair distances all exclude zero
    bool newton_plausible = false; // every residual component is centered near zero
    DiscardReason reason = DiscardReason::Constraint;
};

PruneResult prune(const ReducedSystem& sys, const Box& box);

// Branch-and-prune, then per-solution geometry certification and
// unification into equivalence classes.
SearchOutcome run_search(const SearchConfig& cfg);

// Merges solutions that provably coincide up to the residual symmetries of
// the reduced system and body relabelings; one representative per class.
std::vector<CertifiedSolution> unify(std::vector<CertifiedSolution> sols, const ReducedSystem& sys);

} // namespace ccs
