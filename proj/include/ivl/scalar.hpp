// Scalar: exact rational or tracked-precision enclosure of a real state value.
//
// The two modes form the tower required by the example systems: affine and
// polynomial branches keep exact orbits exact, the cube-root branch (and
// orbits whose exact representation grows past a bit budget) live in the
// approximate mode as a closed rational interval [lo, hi]. Error bounds only
// widen through arithmetic; they are never silently reset. Comparisons that
// cannot be decided at the current precision throw AmbiguousComparison
// instead of guessing a side.

#pragma once

#include "ivl/rational.hpp"

#include <stdexcept>
#include <string>

namespace ivl {

struct AmbiguousComparison : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Tri { True, False, Ambiguous };

class Scalar {
public:
    Scalar() : lo_(0), hi_(0) {}
    static Scalar exact(Rat v) { return Scalar(v, v); }
    static Scalar interval(Rat lo, Rat hi);

    bool is_exact() const { return lo_ == hi_; }
    const Rat& lo() const { return lo_; }
    const Rat& hi() const { return hi_; }
    // Exact value; throws unless is_exact().
    const Rat& exact_value() const;
    Rat midpoint() const { return (lo_ + hi_) / 2; }
    Rat error_bound() const { return (hi_ - lo_) / 2; }
    Rat width() const { return hi_ - lo_; }

    // a*x + b, exactness preserved.
    Scalar affine(const Rat& a, const Rat& b) const;
    Scalar operator+(const Scalar& o) const { return Scalar(lo_ + o.lo_, hi_ + o.hi_); }
    Scalar operator-() const { return Scalar(-hi_, -lo_); }
    Scalar div_int(long k) const;

    // Tri-state order against an exact rational bound.
    Tri lt(const Rat& r) const;   // x <  r
    Tri le(const Rat& r) const;   // x <= r
    Tri ge(const Rat& r) const;   // x >= r

    // Strict order demanded by a branch table; throws on ambiguity.
    bool require_lt(const Rat& r, const char* what) const;
    bool require_ge(const Rat& r, const char* what) const;

    // Rounds to a dyadic interval once the exact representation exceeds
    // max_bits. Deterministic: same input, same output.
    Scalar demoted(std::size_t max_bits, unsigned prec) const;

    bool same_bits(const Scalar& o) const { return lo_ == o.lo_ && hi_ == o.hi_; }

    std::string to_string() const;

private:
    Scalar(Rat lo, Rat hi) : lo_(std::move(lo)), hi_(std::move(hi)) {}
    Rat lo_, hi_;
};

}  // namespace ivl
