// Kernels of control words over target grids, pruned word enumeration,
// exact minimal covers, and invariance-complexity profiles.
//
// The kernel of a length-n word collects the grid points whose first n
// orbit states stay eps-near Q (plain mode) or whose running means stay
// below eps at every k <= n (mean mode). Kernels are antitone under word
// extension, so empty rows prune their whole subtree. Covers of the grid by
// kernel rows estimate r_inv / r_inv-in-mean at each horizon; `exact`
// entries are exact minima over the enumerated table and additionally
// re-checked against a 2x refinement grid.

#pragma once

#include "ivl/bits.hpp"
#include "ivl/metrics.hpp"
#include "ivl/system.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ivl {

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NoSpanningSet : std::runtime_error {
    NoSpanningSet(std::string msg, std::size_t witness)
        : std::runtime_error(std::move(msg)), witness_index(witness) {}
    std::size_t witness_index;
};

struct IncompleteTable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class KernelMode { Plain, Mean };

std::string kernel_mode_name(KernelMode mode);

// Finite stand-in for the compact target set: every point lies in Q and
// interval grids carry both endpoints of each component.
struct TargetGrid {
    std::vector<StatePoint> points;
    Rat resolution;  // mesh h for interval grids, 1/depth for block grids

    static TargetGrid intervals(const IntervalUnion& q, const Rat& step);
    // Embeddings of all block words of length <= max_blocks, completed with
    // the given tail.
    static TargetGrid blocks(const BlockLanguage& q, std::size_t max_blocks,
                             const SymbolicPoint& tail);

    std::size_t size() const { return points.size(); }
};

struct KernelRow {
    Word word;
    Bits row;
    std::size_t multiplicity = 1;  // identical-row words collapsed at n_max
    bool pruned = false;           // empty-kernel frontier marker
    bool any_indeterminate = false;
};

struct EnumerationBudget {
    std::size_t max_live_words = 100000;
    std::size_t max_total_nodes = 4000000;
};

struct KernelTable {
    Rat epsilon;
    KernelMode mode = KernelMode::Plain;
    std::size_t n_max = 0;
    std::size_t grid_size = 0;
    bool complete = true;
    std::size_t pruned_count = 0;
    std::size_t dedup_collapsed = 0;
    std::vector<KernelRow> rows;  // lengths 1..n_max, lexicographic per length

    std::vector<const KernelRow*> rows_at(std::size_t n) const;
};

// Direct per-definition row of one word; also the replay target for the
// enumeration's incremental bookkeeping.
Bits kernel_row(const ControlSystem& sys, const TargetGrid& grid, const TargetSet& q,
                const Word& word, const Rat& eps, KernelMode mode,
                bool* any_indeterminate = nullptr);

KernelTable enumerate_words(const ControlSystem& sys, const TargetGrid& grid, const TargetSet& q,
                            const Rat& eps, std::size_t n_max, KernelMode mode,
                            const EnumerationBudget& budget = {}, unsigned jobs = 1);

enum class CoverTag { Exact, GreedyUpper, LowerBound };

std::string cover_tag_name(CoverTag tag);

struct CoverSolution {
    std::vector<Word> chosen;
    std::size_t size = 0;
    CoverTag tag = CoverTag::Exact;
    std::size_t lower_bound = 0;
    bool refinement_checked = false;
    bool refinement_ok = false;
};

// Exact branch-and-bound when the deduplicated row count is at most
// exact_threshold, else greedy with the popcount / disjoint-witness bound.
CoverSolution min_cover(const KernelTable& table, std::size_t n,
                        std::size_t exact_threshold = 10000);

// Cover solver over raw bitsets (ties broken by row index); reused for
// schedule-family selection during certification.
struct RawCover {
    std::vector<std::size_t> chosen;
    std::size_t size = 0;
    CoverTag tag = CoverTag::Exact;
    std::size_t lower_bound = 0;
};

RawCover solve_cover(const std::vector<Bits>& rows, std::size_t universe,
                     std::size_t exact_threshold);

struct ProfileEntry {
    std::size_t n = 0;
    std::size_t r = 0;
    CoverTag tag = CoverTag::Exact;
};

struct ComplexityProfile {
    Rat epsilon;
    KernelMode mode = KernelMode::Plain;
    std::vector<ProfileEntry> entries;
};

// Per-horizon cover sizes. `exact` entries have passed the refinement
// check: the chosen words also cover a 2x finer grid.
ComplexityProfile complexity_profile(const ControlSystem& sys, const TargetSet& q,
                                     const TargetGrid& grid, const Rat& eps, std::size_t n_max,
                                     KernelMode mode, const EnumerationBudget& budget = {},
                                     std::size_t exact_threshold = 10000, unsigned jobs = 1,
                                     KernelTable* table_out = nullptr);

struct EntropyEstimate {
    std::vector<double> log_r_over_n;  // log r(n) / n per entry
    double tail_slope = 0.0;           // least-squares slope of log r(n) vs n, tail half
    bool exact_only = true;            // false: some entries are bounds only
};

EntropyEstimate entropy_estimate(const ComplexityProfile& profile);

struct BoundedComplexityVerdict {
    enum class Kind { BoundedEvidence, GrowthEvidence, Inconclusive } kind;
    std::size_t bound = 0;  // eventual constant C for BoundedEvidence
};

std::string bounded_verdict_name(BoundedComplexityVerdict::Kind kind);

// BoundedEvidence when the exact entries are constant over the tail half;
// GrowthEvidence when the tail strictly increases at >= 3 horizons;
// Inconclusive below 8 exact entries or otherwise.
BoundedComplexityVerdict bounded_complexity_verdict(const ComplexityProfile& profile);

// 2x refinement of a grid (half mesh / one more block of depth).
TargetGrid refine_grid(const TargetGrid& grid, const TargetSet& q);

}  // namespace ivl
