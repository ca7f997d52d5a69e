// Distances to target sets, eps-neighborhood tests, running Birkhoff means
// and upper-density estimates along controlled orbits.
//
// Distances are Scalars: exact rationals on exact orbits, enclosures on
// approximate ones. Every comparison against a tolerance is three-valued;
// callers choose between throwing and conservative handling.

#pragma once

#include "ivl/scalar.hpp"
#include "ivl/symbolic.hpp"
#include "ivl/system.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace ivl {

// Finite list of disjoint closed rational intervals inside [0,1].
class IntervalUnion {
public:
    explicit IntervalUnion(std::vector<std::pair<Rat, Rat>> parts);

    const std::vector<std::pair<Rat, Rat>>& parts() const { return parts_; }

    bool contains(const Rat& v) const;
    Rat point_distance(const Rat& v) const;
    // Enclosure of d(x, Q) over the scalar's interval.
    Scalar distance(const Scalar& x) const;

    // cl Int(Q) = cl Q holds syntactically: no degenerate component.
    bool dense_interior() const;

    std::string to_string() const;

private:
    std::vector<std::pair<Rat, Rat>> parts_;
};

// Q is either an interval union in [0,1] or the closure of infinite
// concatenations of a finite block set in the shift space.
class TargetSet {
public:
    static TargetSet intervals(IntervalUnion q);
    static TargetSet blocks(BlockLanguage q);

    bool is_interval() const { return intervals_.has_value(); }
    const IntervalUnion& interval_union() const { return *intervals_; }
    const BlockLanguage& block_language() const { return *blocks_; }

    Scalar distance(const StatePoint& x) const;
    // Certain membership; approximate scalars must be enclosed by a component.
    bool contains(const StatePoint& x) const;

    std::string to_string() const;

private:
    std::optional<IntervalUnion> intervals_;
    std::optional<BlockLanguage> blocks_;
};

Scalar dist_to_set(const TargetSet& q, const StatePoint& x);

// d(x,Q) < eps as a three-valued answer.
Tri in_eps_tri(const TargetSet& q, const StatePoint& x, const Rat& eps);
// Throwing variant for callers that cannot tolerate ambiguity.
bool in_eps_neighborhood(const TargetSet& q, const StatePoint& x, const Rat& eps);

Scalar scalar_max(const Scalar& a, const Scalar& b);

// Running means (1/k) sum_{i<k} d(phi(i,x,w),Q) for k = 1..n and their
// prefix maxima; the maxima realize the mean-mode kernel criterion.
struct MeanProfile {
    std::vector<Scalar> dists;        // d_i for i = 0..n-1
    std::vector<Scalar> values;       // index k-1 holds the k-term mean
    std::vector<Scalar> running_max;  // prefix maxima of values
    bool exact = true;

    const Scalar& mean_at(std::size_t k) const { return values.at(k - 1); }
};

MeanProfile mean_profile(const ControlSystem& sys, const StatePoint& x, const Schedule& w,
                         const TargetSet& q, std::size_t n);

// Finite surrogate for the limsup of running means: their maximum over
// k in [burn_in, burn_in + window], with a tail-monotonicity trend flag.
struct LimsupEstimate {
    Scalar estimate;
    bool tail_nonincreasing = false;
};

LimsupEstimate limsup_mean_estimate(const ControlSystem& sys, const StatePoint& x,
                                    const Schedule& w, const TargetSet& q,
                                    std::size_t burn_in, std::size_t window);

// max over n in [ceil(N/2), N] of #(E cap [0,n-1]) / n. The second-half
// window discards transients, matching limsup semantics for the eventually
// periodic orbits handled here.
Rat upper_density_estimate(const std::vector<bool>& exceptional);

struct ExceptionDensity {
    Rat density;
    std::size_t exceptional_count = 0;
    bool had_ambiguous = false;  // straddling steps counted as exceptional
};

// Upper density of {k < N : d(phi(k,x,w),Q) >= eps}.
ExceptionDensity exception_density(const ControlSystem& sys, const StatePoint& x,
                                   const Schedule& w, const TargetSet& q, const Rat& eps,
                                   std::size_t horizon);

}  // namespace ivl
