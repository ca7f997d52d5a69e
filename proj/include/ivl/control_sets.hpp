// Reachable sets, control-set property probes, EIM_k / MEI_k membership and
// the dichotomy probes.
//
// Reach sets bucket states to a grid resolution to cap the |U|^n frontier;
// every bucket keeps one representative with a replayable witness word.

#pragma once

#include "ivl/classify.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ivl {

struct ReachEntry {
    StatePoint state;
    std::size_t steps = 0;  // m <= n with state = phi(m, source, word)
    Word witness;
};

struct ReachSet {
    StatePoint source;
    std::size_t horizon = 0;
    Rat resolution;
    std::vector<ReachEntry> entries;  // deterministic BFS order
};

ReachSet reachable_set(const ControlSystem& sys, const StatePoint& x, std::size_t n,
                       const Rat& resolution, std::size_t max_entries = 200000);

struct PointInvariance {
    StatePoint point;
    bool invariant = false;
    Word witness;  // keeping word, or empty when none found
};

struct InvarianceReport {
    std::vector<PointInvariance> points;
    bool all_pass = false;
};

// For every grid point: does some length-N word keep the orbit inside
// B_eps(Q)?  Failures witness non-invariance at this resolution.
InvarianceReport controlled_invariance_check(const ControlSystem& sys, const TargetSet& q,
                                             const TargetGrid& grid, std::size_t horizon,
                                             const Rat& eps,
                                             std::size_t node_budget = 2000000);

struct ReachabilityReport {
    struct PerSource {
        StatePoint source;
        Rat fraction;  // of target grid points within eps of the reach set
    };
    std::vector<PerSource> sources;
    Rat min_fraction;
};

// Approximate-reachability side of the control-set definition: fraction of
// the grid within eps of each source's reach set.
ReachabilityReport approx_reachability_check(const ControlSystem& sys, const TargetSet& q,
                                             const TargetGrid& grid, const Rat& eps,
                                             std::size_t horizon, const Rat& resolution);

struct NoReturnSample {
    StatePoint start;       // in Q
    Schedule schedule;
    std::size_t return_step;  // endpoint expected back in B_eps(Q)
};

struct NoReturnFinding {
    std::size_t sample_index;
    std::size_t excursion_step;
    Rat distance_lo;
};

struct NoReturnReport {
    std::vector<NoReturnFinding> flagged;
    std::size_t samples_checked = 0;
    bool all_pass() const { return flagged.empty(); }
};

// Flags sampled trajectories that leave B_eps(Q) strictly between start and
// return; such excursions contradict the no-return property at this
// resolution.
NoReturnReport no_return_check(const ControlSystem& sys, const TargetSet& q,
                               const std::vector<NoReturnSample>& samples, const Rat& eps);

// EIM_k / MEI_k membership: the single-omega mean criteria at eps = 1/k.
Verdict eimk_membership(const ControlSystem& sys, const TargetSet& q, const StatePoint& x,
                        long k, const SearchBudget& budget, const Rat& delta0,
                        std::size_t refute_horizon, const RefutationAids& aids = {});
Verdict meik_membership(const ControlSystem& sys, const TargetSet& q, const StatePoint& x,
                        long k, const SearchBudget& budget, const Rat& delta0,
                        std::size_t refute_horizon, const RefutationAids& aids = {});

struct DichotomyVerdict {
    enum class Kind {
        EquiInvariantInMeanEvidence,
        UnstableInMeanEvidence,
        MeanEquiInvariantEvidence,
        MeanUnstableEvidence,
        Inconclusive
    };
    Kind kind = Kind::Inconclusive;
    long witness_k = 0;  // level at which evidence was found
    bool hypothesis_ok = true;  // cl Int(Q) = cl Q, checked syntactically
    std::string note;
};

std::string dichotomy_kind_name(DichotomyVerdict::Kind kind);

enum class DichotomyMode { Mean, LimsupMean };

// Evidence for the control-set dichotomies: all points certified at every k
// in range, or some k with every point refuted (empty EIM_k / MEI_k).
DichotomyVerdict dichotomy_probe(const ControlSystem& sys, const TargetSet& q,
                                 const TargetGrid& grid, long k_min, long k_max,
                                 const SearchBudget& budget, const Rat& delta0,
                                 std::size_t refute_horizon, DichotomyMode mode,
                                 const RefutationAids& aids = {});

}  // namespace ivl
