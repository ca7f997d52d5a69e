#include "ivl/metrics.hpp"

#include <algorithm>
#include <sstream>

namespace ivl {

IntervalUnion::IntervalUnion(std::vector<std::pair<Rat, Rat>> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw DomainError("IntervalUnion: empty");
    for (const auto& [lo, hi] : parts_) {
        if (lo > hi) throw DomainError("IntervalUnion: inverted component");
    }
    for (std::size_t i = 0; i + 1 < parts_.size(); ++i) {
        if (parts_[i].second >= parts_[i + 1].first)
            throw DomainError("IntervalUnion: components must be sorted and disjoint");
    }
}

bool IntervalUnion::contains(const Rat& v) const {
    for (const auto& [lo, hi] : parts_) {
        if (lo <= v && v <= hi) return true;
    }
    return false;
}

Rat IntervalUnion::point_distance(const Rat& v) const {
    Rat best;
    bool have = false;
    for (const auto& [lo, hi] : parts_) {
        Rat d;
        if (v < lo) d = lo - v;
        else if (v > hi) d = v - hi;
        else return Rat(0);
        if (!have || d < best) {
            best = d;
            have = true;
        }
    }
    return best;
}

Scalar IntervalUnion::distance(const Scalar& x) const {
    if (x.is_exact()) return Scalar::exact(point_distance(x.lo()));
    Rat dlo = point_distance(x.lo());
    Rat dhi = point_distance(x.hi());
    // Minimum over [lo,hi]: zero when the interval meets Q, else attained at
    // an endpoint since d grows linearly away from each component.
    bool meets = false;
    for (const auto& [lo, hi] : parts_) {
        if (x.hi() >= lo && x.lo() <= hi) {
            meets = true;
            break;
        }
    }
    Rat mn = meets ? Rat(0) : std::min(dlo, dhi);
    // Maximum: at an endpoint or at a gap midpoint interior to [lo,hi].
    Rat mx = std::max(dlo, dhi);
    for (std::size_t i = 0; i + 1 < parts_.size(); ++i) {
        Rat mid = (parts_[i].second + parts_[i + 1].first) / 2;
        if (x.lo() < mid && mid < x.hi()) mx = std::max(mx, point_distance(mid));
    }
    return Scalar::interval(mn, mx);
}

bool IntervalUnion::dense_interior() const {
    for (const auto& [lo, hi] : parts_) {
        if (lo == hi) return false;
    }
    return true;
}

std::string IntervalUnion::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) os << " u ";
        os << "[" << rat_to_string(parts_[i].first) << "," << rat_to_string(parts_[i].second)
           << "]";
    }
    return os.str();
}

TargetSet TargetSet::intervals(IntervalUnion q) {
    TargetSet t;
    t.intervals_ = std::move(q);
    return t;
}

TargetSet TargetSet::blocks(BlockLanguage q) {
    TargetSet t;
    t.blocks_ = std::move(q);
    return t;
}

Scalar TargetSet::distance(const StatePoint& x) const {
    if (intervals_) {
        if (!std::holds_alternative<Scalar>(x))
            throw DomainError("interval target needs a scalar point");
        return intervals_->distance(std::get<Scalar>(x));
    }
    if (!std::holds_alternative<SymbolicPoint>(x))
        throw DomainError("block target needs a symbolic point");
    return Scalar::exact(blocks_->distance(std::get<SymbolicPoint>(x)));
}

bool TargetSet::contains(const StatePoint& x) const {
    if (intervals_) {
        const Scalar& s = std::get<Scalar>(x);
        for (const auto& [lo, hi] : intervals_->parts()) {
            if (lo <= s.lo() && s.hi() <= hi) return true;
        }
        return false;
    }
    return blocks_->contains(std::get<SymbolicPoint>(x));
}

std::string TargetSet::to_string() const {
    if (intervals_) return intervals_->to_string();
    std::string out = "blocks{";
    for (std::size_t i = 0; i < blocks_->blocks().size(); ++i) {
        if (i) out += ",";
        out += blocks_->blocks()[i];
    }
    return out + "}*";
}

Scalar dist_to_set(const TargetSet& q, const StatePoint& x) { return q.distance(x); }

Tri in_eps_tri(const TargetSet& q, const StatePoint& x, const Rat& eps) {
    return q.distance(x).lt(eps);
}

bool in_eps_neighborhood(const TargetSet& q, const StatePoint& x, const Rat& eps) {
    Tri t = in_eps_tri(q, x, eps);
    if (t == Tri::Ambiguous)
        throw AmbiguousComparison("distance enclosure straddles epsilon " + rat_to_string(eps));
    return t == Tri::True;
}

Scalar scalar_max(const Scalar& a, const Scalar& b) {
    return Scalar::interval(std::max(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

MeanProfile mean_profile(const ControlSystem& sys, const StatePoint& x, const Schedule& w,
                         const TargetSet& q, std::size_t n) {
    if (n == 0) throw std::invalid_argument("mean_profile: n >= 1");
    MeanProfile out;
    out.dists.reserve(n);
    out.values.reserve(n);
    out.running_max.reserve(n);
    StatePoint state = x;
    Scalar sum = Scalar::exact(Rat(0));
    for (std::size_t k = 1; k <= n; ++k) {
        Scalar d = q.distance(state);
        out.dists.push_back(d);
        sum = sum + d;
        Scalar mean = sum.div_int(static_cast<long>(k));
        out.exact = out.exact && mean.is_exact();
        out.values.push_back(mean);
        out.running_max.push_back(k == 1 ? mean : scalar_max(out.running_max.back(), mean));
        if (k < n) state = sys.step(state, w.at(k - 1));
    }
    return out;
}

LimsupEstimate limsup_mean_estimate(const ControlSystem& sys, const StatePoint& x,
                                    const Schedule& w, const TargetSet& q,
                                    std::size_t burn_in, std::size_t window) {
    if (window == 0) throw std::invalid_argument("limsup_mean_estimate: window >= 1");
    std::size_t lo = std::max<std::size_t>(burn_in, 1);
    std::size_t hi = burn_in + window;
    MeanProfile profile = mean_profile(sys, x, w, q, hi);
    LimsupEstimate out;
    out.estimate = profile.mean_at(lo);
    out.tail_nonincreasing = true;
    for (std::size_t k = lo; k <= hi; ++k) {
        const Scalar& v = profile.mean_at(k);
        out.estimate = scalar_max(out.estimate, v);
        if (k > lo && v.hi() > profile.mean_at(k - 1).hi()) out.tail_nonincreasing = false;
    }
    return out;
}

Rat upper_density_estimate(const std::vector<bool>& exceptional) {
    std::size_t n_total = exceptional.size();
    if (n_total == 0) throw std::invalid_argument("upper_density_estimate: empty window");
    std::size_t start = (n_total + 1) / 2;
    std::size_t count = 0;
    for (std::size_t i = 0; i < start; ++i) count += exceptional[i] ? 1 : 0;
    Rat best(static_cast<long>(count), static_cast<long>(start));
    for (std::size_t n = start + 1; n <= n_total; ++n) {
        count += exceptional[n - 1] ? 1 : 0;
        best = std::max(best, Rat(static_cast<long>(count), static_cast<long>(n)));
    }
    return best;
}

ExceptionDensity exception_density(const ControlSystem& sys, const StatePoint& x,
                                   const Schedule& w, const TargetSet& q, const Rat& eps,
                                   std::size_t horizon) {
    if (eps <= 0) throw std::invalid_argument("exception_density: eps > 0");
    if (horizon == 0) throw std::invalid_argument("exception_density: horizon >= 1");
    ExceptionDensity out;
    std::vector<bool> exceptional;
    exceptional.reserve(horizon);
    StatePoint state = x;
    for (std::size_t k = 0; k < horizon; ++k) {
        Tri inside = in_eps_tri(q, state, eps);
        bool exceptionally = (inside != Tri::True);
        if (inside == Tri::Ambiguous) out.had_ambiguous = true;
        exceptional.push_back(exceptionally);
        if (exceptionally) ++out.exceptional_count;
        if (k + 1 < horizon) state = sys.step(state, w.at(k));
    }
    out.density = upper_density_estimate(exceptional);
    return out;
}

}  // namespace ivl
