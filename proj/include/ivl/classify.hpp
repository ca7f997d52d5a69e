// Certificate and refutation search for the six equi-invariance notions and
// finite mean L-stability, plus the implication and theorem audits.
//
// The quantifiers "for all delta", "for all controls" and "n to infinity"
// are replaced by resolution-stamped finite evidence:
//   - a Certificate fixes delta from a ladder, a finite schedule family, a
//     horizon and a ball grid, and records a replayable witness schedule per
//     ball point;
//   - a Refutation fixes delta0 and a word length N and defeats every
//     length-N word through a dead-prefix tree: each recorded prefix carries
//     an escape witness valid for all of its extensions (directly, or via a
//     certified trap interval / absorbing state whose future distance is
//     bounded below).
// Certified and RefutedAtResolution therefore never contradict each other at
// compatible parameters; asserting that is part of the test suite.

#pragma once

#include "ivl/metrics.hpp"
#include "ivl/spanning.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ivl {

enum class Notion { EI, EIM, MEI, FEI, FEIM, FMEI, FMLS };
enum class Criterion { Sup, AllNMean, LimsupMean, Density };

bool notion_single_omega(Notion n);
Criterion notion_criterion(Notion n);
std::string notion_name(Notion n);
std::optional<Notion> parse_notion(const std::string& name);

struct CriterionParams {
    std::size_t horizon = 64;          // Sup / AllNMean: states phi(0..N)
    std::size_t burn_in = 64;          // LimsupMean estimate window
    std::size_t window = 64;
    std::size_t density_horizon = 512; // Density (mean-L-stability)
};

struct CriterionOutcome {
    Tri pass = Tri::Ambiguous;
    std::size_t violated_index = 0;  // step (Sup), mean index k, or argmax k
    Rat violated_value_lo = 0;       // certified lower bound of the quantity
    bool trend_ok = true;            // limsup tail nonincreasing
};

CriterionOutcome evaluate_criterion(const ControlSystem& sys, const TargetSet& q,
                                    const StatePoint& y, const Schedule& w, Criterion crit,
                                    const Rat& eps, const CriterionParams& p);

// Constant schedules u^inf plus every splice u^m v u'^inf with m <= splice_max.
std::vector<Schedule> default_candidate_pool(std::size_t alphabet, std::size_t splice_max);

struct SearchBudget {
    std::vector<Rat> delta_ladder;        // tried in the given order
    std::vector<Schedule> candidates;
    CriterionParams params;
    Rat grid_h = Rat(1, 1024);
    std::vector<StatePoint> symbolic_base;  // ball sampling base on shift spaces
    std::size_t cover_threshold = 256;      // exact family selection bound
};

SearchBudget default_budget(const ControlSystem& sys);

// Sample of B(x, delta) cap Q: the center, the h-grid points inside the open
// ball, and quarter-delta offsets so tiny construction deltas still get
// two-sided coverage.
std::vector<StatePoint> ball_points(const TargetSet& q, const StatePoint& center,
                                    const Rat& delta, const Rat& grid_h,
                                    const std::vector<StatePoint>& symbolic_base);

struct Certificate {
    Notion notion;
    StatePoint x;
    Rat eps;
    Rat delta;
    std::vector<Schedule> family;  // singleton for EI/EIM/MEI
    CriterionParams params;
    Rat grid_h;
    std::vector<std::pair<StatePoint, std::size_t>> witnesses;  // ball point -> family idx
};

// Both step maps send [lo, hi] into itself and d(., Q) >= min_dist on it.
struct TrapInterval {
    Rat lo, hi;
    Rat min_dist;
};

struct EscapeWitness {
    enum class Via { Direct, TrapBound, AbsorbBound };
    StatePoint y;
    std::size_t index = 0;  // violated step / mean index
    Rat value_lo = 0;
    Via via = Via::Direct;
    std::size_t trap_index = 0;  // into Refutation::traps_used for TrapBound
    Word prefix;                 // dead prefix; covers every extension
};

struct Refutation {
    Notion notion;
    StatePoint x;
    Rat eps;
    Rat delta0;
    std::size_t horizon = 0;  // word length N
    Rat grid_h;
    bool finite_family_mode = false;  // all witnesses share one defeated point
    std::vector<EscapeWitness> dead_prefixes;
    std::vector<TrapInterval> traps_used;
};

struct Verdict {
    enum class Kind { Certified, RefutedAtResolution, Inconclusive };
    Kind kind = Kind::Inconclusive;
    std::optional<Certificate> certificate;
    std::optional<Refutation> refutation;
    std::string note;
};

std::string verdict_kind_name(Verdict::Kind kind);

Verdict certify_point(const ControlSystem& sys, const TargetSet& q, const StatePoint& x,
                      Notion notion, const Rat& eps, const SearchBudget& budget);

struct RefutationAids {
    bool auto_traps = true;       // scan breakpoint-bounded candidate intervals
    bool detect_absorbing = true; // exact states fixed by every map
    std::vector<TrapInterval> extra_traps;
    std::size_t node_budget = 2000000;
    std::size_t max_unresolved_reported = 16;
};

// Candidate traps: intervals with breakpoint endpoints invariant under every
// map and bounded away from Q.
std::vector<TrapInterval> detect_traps(const ControlSystem& sys, const TargetSet& q,
                                       const Rat& eps);

Verdict refute_point(const ControlSystem& sys, const TargetSet& q, const StatePoint& x,
                     Notion notion, const Rat& eps, const Rat& delta0, std::size_t horizon,
                     const Rat& grid_h, const RefutationAids& aids = {},
                     const std::vector<StatePoint>& symbolic_base = {});

bool replay_certificate(const ControlSystem& sys, const TargetSet& q, const Certificate& cert,
                        std::string* why = nullptr);
bool replay_refutation(const ControlSystem& sys, const TargetSet& q, const Refutation& ref,
                       std::string* why = nullptr);

// Dead prefixes must form an antichain covering the full length-N word tree.
bool refutation_covers_all_words(const Refutation& ref, std::size_t alphabet,
                                 std::string* why = nullptr);

struct SetClassification {
    std::vector<Verdict> verdicts;  // parallel to grid.points
    Verdict::Kind set_level = Verdict::Kind::Inconclusive;
};

SetClassification classify_set(const ControlSystem& sys, const TargetSet& q,
                               const TargetGrid& grid, Notion notion, const Rat& eps,
                               const SearchBudget& budget, const Rat& delta0,
                               std::size_t refute_horizon, const RefutationAids& aids = {});

Verdict mean_l_stability_check(const ControlSystem& sys, const TargetSet& q, const StatePoint& x,
                               const Rat& eps, const Rat& delta,
                               const std::vector<Schedule>& family, std::size_t horizon,
                               const Rat& grid_h,
                               const std::vector<StatePoint>& symbolic_base = {});

// ---- audits -------------------------------------------------------------

struct VerdictRecord {
    std::string system;
    std::string point;  // "set" records apply to every point of the system
    Notion notion;
    Verdict::Kind kind = Verdict::Kind::Inconclusive;
    Rat eps;
    Rat delta;            // certificate delta, or refutation delta0
    std::size_t horizon = 0;
    std::string source;   // "classify" | "complexity" | "density"
};

struct AuditReport {
    std::vector<std::string> violations;
    std::vector<std::string> realized_non_arrows;
    std::vector<std::string> skipped;
    bool consistent() const { return violations.empty(); }
};

// Figure-style arrows EI=>EIM=>MEI, EI=>FEI, EIM=>FEIM, MEI=>FMEI,
// FEI=>FEIM=>FMEI. Flags certificate/refutation pairs that violate an arrow
// at compatible parameters and lists realized non-arrows.
AuditReport implication_audit(const std::vector<VerdictRecord>& store);

struct TheoremAuditInputs {
    std::string system;
    Rat eps;
    std::optional<Verdict::Kind> fei_set;
    std::optional<Verdict::Kind> feim_set;
    std::optional<Verdict::Kind> fmei_set;
    std::optional<Verdict::Kind> fmls_set;
    std::optional<BoundedComplexityVerdict> plain_complexity;
    std::optional<BoundedComplexityVerdict> mean_complexity;
};

// Cross-checks the bounded-complexity characterizations (plain and mean) and
// the mean-L-stability equivalence against the classification verdicts.
AuditReport theorem_audit(const TheoremAuditInputs& in);

}  // namespace ivl
