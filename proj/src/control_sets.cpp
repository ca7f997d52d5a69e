#include "ivl/control_sets.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace ivl {

namespace {

// Bucket key: interval states by floor(midpoint / resolution), symbolic
// states by a fixed-depth prefix.
std::string bucket_key(const StatePoint& s, const Rat& resolution) {
    if (std::holds_alternative<Scalar>(s)) {
        const Scalar& sc = std::get<Scalar>(s);
        Rat scaled = sc.midpoint() / resolution;
        Int idx = rat_num(scaled) / rat_den(scaled);
        std::ostringstream os;
        os << idx;
        return os.str();
    }
    long depth = 1;
    if (resolution > 0 && resolution <= 1) {
        Rat inv = 1 / resolution;
        depth = static_cast<long>(rat_num(inv) / rat_den(inv)) + 1;
    }
    return std::get<SymbolicPoint>(s).unroll(static_cast<std::size_t>(depth));
}

}  // namespace

ReachSet reachable_set(const ControlSystem& sys, const StatePoint& x, std::size_t n,
                       const Rat& resolution, std::size_t max_entries) {
    if (resolution <= 0) throw std::invalid_argument("reachable_set: resolution > 0");
    ReachSet out;
    out.source = x;
    out.horizon = n;
    out.resolution = resolution;

    std::set<std::string> seen;
    std::deque<ReachEntry> frontier;
    ReachEntry root{x, 0, {}};
    seen.insert(bucket_key(x, resolution));
    out.entries.push_back(root);
    frontier.push_back(std::move(root));

    while (!frontier.empty()) {
        ReachEntry cur = std::move(frontier.front());
        frontier.pop_front();
        if (cur.steps == n) continue;
        for (std::size_t u = 0; u < sys.alphabet_size(); ++u) {
            ReachEntry next;
            next.state = sys.step(cur.state, static_cast<std::uint8_t>(u));
            next.steps = cur.steps + 1;
            next.witness = cur.witness;
            next.witness.push_back(static_cast<std::uint8_t>(u));
            std::string key = bucket_key(next.state, resolution);
            if (!seen.insert(std::move(key)).second) continue;
            if (out.entries.size() >= max_entries)
                throw BudgetExceeded("reachable_set: bucket budget exceeded");
            out.entries.push_back(next);
            frontier.push_back(std::move(next));
        }
    }
    return out;
}

namespace {

// Depth-first search for one word keeping `start` inside B_eps(Q) for
// `horizon` steps; prunes prefixes as soon as the orbit escapes.
std::optional<Word> keeping_word(const ControlSystem& sys, const TargetSet& q,
                                 const StatePoint& start, std::size_t horizon, const Rat& eps,
                                 std::size_t& nodes, std::size_t node_budget) {
    if (in_eps_tri(q, start, eps) != Tri::True) return std::nullopt;
    struct Frame {
        StatePoint state;
        Word word;
    };
    std::vector<Frame> stack{{start, {}}};
    while (!stack.empty()) {
        Frame cur = std::move(stack.back());
        stack.pop_back();
        if (cur.word.size() == horizon) return cur.word;
        // Push symbols in reverse so the lexicographically least extension
        // is explored first.
        for (std::size_t ui = sys.alphabet_size(); ui-- > 0;) {
            if (++nodes > node_budget)
                throw BudgetExceeded("controlled_invariance_check: node budget exceeded");
            Frame next;
            next.state = sys.step(cur.state, static_cast<std::uint8_t>(ui));
            if (in_eps_tri(q, next.state, eps) != Tri::True) continue;
            next.word = cur.word;
            next.word.push_back(static_cast<std::uint8_t>(ui));
            stack.push_back(std::move(next));
        }
    }
    return std::nullopt;
}

}  // namespace

InvarianceReport controlled_invariance_check(const ControlSystem& sys, const TargetSet& q,
                                             const TargetGrid& grid, std::size_t horizon,
                                             const Rat& eps, std::size_t node_budget) {
    InvarianceReport report;
    report.all_pass = true;
    std::size_t nodes = 0;
    for (const StatePoint& x : grid.points) {
        PointInvariance pi;
        pi.point = x;
        auto word = keeping_word(sys, q, x, horizon, eps, nodes, node_budget);
        pi.invariant = word.has_value();
        if (word) pi.witness = std::move(*word);
        report.all_pass = report.all_pass && pi.invariant;
        report.points.push_back(std::move(pi));
    }
    return report;
}

ReachabilityReport approx_reachability_check(const ControlSystem& sys, const TargetSet& q,
                                             const TargetGrid& grid, const Rat& eps,
                                             std::size_t horizon, const Rat& resolution) {
    ReachabilityReport report;
    bool first = true;
    for (const StatePoint& source : grid.points) {
        ReachSet reach = reachable_set(sys, source, horizon, resolution);
        std::size_t hit = 0;
        for (const StatePoint& target : grid.points) {
            bool near = false;
            for (const ReachEntry& e : reach.entries) {
                Scalar d;
                if (std::holds_alternative<Scalar>(target)) {
                    const Scalar& a = std::get<Scalar>(target);
                    const Scalar& b = std::get<Scalar>(e.state);
                    Rat lo = a.lo() - b.hi();
                    Rat hi = a.hi() - b.lo();
                    Rat dist_lo;
                    if (lo <= 0 && hi >= 0) dist_lo = 0;
                    else dist_lo = std::min(abs(lo), abs(hi));
                    near = dist_lo < eps;
                } else {
                    near = symbolic_distance(std::get<SymbolicPoint>(target),
                                             std::get<SymbolicPoint>(e.state)) < eps;
                }
                if (near) break;
            }
            if (near) ++hit;
        }
        Rat fraction(static_cast<long>(hit), static_cast<long>(grid.points.size()));
        if (first || fraction < report.min_fraction) report.min_fraction = fraction;
        first = false;
        report.sources.push_back({source, fraction});
    }
    return report;
}

NoReturnReport no_return_check(const ControlSystem& sys, const TargetSet& q,
                               const std::vector<NoReturnSample>& samples, const Rat& eps) {
    NoReturnReport report;
    for (std::size_t si = 0; si < samples.size(); ++si) {
        const NoReturnSample& sample = samples[si];
        if (!q.contains(sample.start))
            throw DomainError("no_return_check: sample start must lie in Q");
        auto states = sys.trajectory(sample.start, sample.schedule, sample.return_step);
        if (in_eps_tri(q, states.back(), eps) != Tri::True)
            throw DomainError("no_return_check: sample endpoint not back in B_eps(Q)");
        for (std::size_t k = 1; k + 1 <= sample.return_step; ++k) {
            Scalar d = q.distance(states[k]);
            if (d.ge(eps) == Tri::True) {
                report.flagged.push_back(NoReturnFinding{si, k, d.lo()});
                break;
            }
        }
        ++report.samples_checked;
    }
    return report;
}

Verdict eimk_membership(const ControlSystem& sys, const TargetSet& q, const StatePoint& x,
                        long k, const SearchBudget& budget, const Rat& delta0,
                        std::size_t refute_horizon, const RefutationAids& aids) {
    if (k < 1) throw std::invalid_argument("eimk_membership: k >= 1");
    Rat eps(1, k);
    Verdict v = certify_point(sys, q, x, Notion::EIM, eps, budget);
    if (v.kind == Verdict::Kind::Certified) return v;
    Verdict r = refute_point(sys, q, x, Notion::EIM, eps, delta0, refute_horizon, budget.grid_h,
                             aids, budget.symbolic_base);
    return r.kind == Verdict::Kind::Inconclusive ? v : r;
}

Verdict meik_membership(const ControlSystem& sys, const TargetSet& q, const StatePoint& x,
                        long k, const SearchBudget& budget, const Rat& delta0,
                        std::size_t refute_horizon, const RefutationAids& aids) {
    if (k < 1) throw std::invalid_argument("meik_membership: k >= 1");
    Rat eps(1, k);
    Verdict v = certify_point(sys, q, x, Notion::MEI, eps, budget);
    if (v.kind == Verdict::Kind::Certified) return v;
    Verdict r = refute_point(sys, q, x, Notion::MEI, eps, delta0, refute_horizon, budget.grid_h,
                             aids, budget.symbolic_base);
    return r.kind == Verdict::Kind::Inconclusive ? v : r;
}

std::string dichotomy_kind_name(DichotomyVerdict::Kind kind) {
    switch (kind) {
        case DichotomyVerdict::Kind::EquiInvariantInMeanEvidence:
            return "EquiInvariantInMeanEvidence";
        case DichotomyVerdict::Kind::UnstableInMeanEvidence: return "UnstableInMeanEvidence";
        case DichotomyVerdict::Kind::MeanEquiInvariantEvidence:
            return "MeanEquiInvariantEvidence";
        case DichotomyVerdict::Kind::MeanUnstableEvidence: return "MeanUnstableEvidence";
        case DichotomyVerdict::Kind::Inconclusive: return "Inconclusive";
    }
    throw std::logic_error("unreachable");
}

DichotomyVerdict dichotomy_probe(const ControlSystem& sys, const TargetSet& q,
                                 const TargetGrid& grid, long k_min, long k_max,
                                 const SearchBudget& budget, const Rat& delta0,
                                 std::size_t refute_horizon, DichotomyMode mode,
                                 const RefutationAids& aids) {
    if (k_min < 1 || k_max < k_min) throw std::invalid_argument("dichotomy_probe: bad k range");
    DichotomyVerdict out;
    if (q.is_interval() && !q.interval_union().dense_interior()) {
        out.hypothesis_ok = false;
        out.note = "cl Int(Q) = cl Q fails syntactically; probe ran anyway";
    }
    bool mean_mode = mode == DichotomyMode::Mean;

    bool all_certified = true;
    for (long k = k_min; k <= k_max; ++k) {
        bool every_point_refuted = true;
        for (const StatePoint& x : grid.points) {
            Verdict v = mean_mode
                            ? eimk_membership(sys, q, x, k, budget, delta0, refute_horizon, aids)
                            : meik_membership(sys, q, x, k, budget, delta0, refute_horizon, aids);
            if (v.kind != Verdict::Kind::Certified) all_certified = false;
            if (v.kind != Verdict::Kind::RefutedAtResolution) every_point_refuted = false;
            // Nothing left to learn at this k once both outcomes are mixed.
            if (!every_point_refuted && !all_certified) break;
        }
        if (every_point_refuted) {
            // Empty EIM_k (resp. MEI_k) level: the unstable-side witness.
            out.kind = mean_mode ? DichotomyVerdict::Kind::UnstableInMeanEvidence
                                 : DichotomyVerdict::Kind::MeanUnstableEvidence;
            out.witness_k = k;
            return out;
        }
    }
    if (all_certified) {
        out.kind = mean_mode ? DichotomyVerdict::Kind::EquiInvariantInMeanEvidence
                             : DichotomyVerdict::Kind::MeanEquiInvariantEvidence;
        out.witness_k = k_max;
        return out;
    }
    out.kind = DichotomyVerdict::Kind::Inconclusive;
    return out;
}

}  // namespace ivl
