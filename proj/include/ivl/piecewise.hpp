// Piecewise maps on [0,1] built from the fixed constructor set the example
// systems need: constant, affine, quadratic and cube-root branches.
//
// Branch domains are half-open [lo, hi) exactly as printed in the case
// tables; the final branch closes at its right endpoint. Evaluation is exact
// on rational inputs except for non-perfect-cube arguments of the cube-root
// branch, which yield enclosures of configurable width. Interval inputs that
// straddle a breakpoint are evaluated branch-by-branch and hulled, which is a
// sound enclosure whether or not the map is continuous there.

#pragma once

#include "ivl/scalar.hpp"

#include <string>
#include <vector>

namespace ivl {

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Branch {
    enum class Kind { Const, Affine, Quad, Cbrt };

    Rat lo, hi;
    Kind kind;
    Rat a, b, c;  // Const: b | Affine: a*x+b | Quad: a*(x-c)^2+b | Cbrt: a*(x-c)^(1/3)+b

    static Branch constant(Rat lo, Rat hi, Rat value);
    static Branch affine(Rat lo, Rat hi, Rat a, Rat b);
    static Branch quad(Rat lo, Rat hi, Rat a, Rat c, Rat b);
    static Branch cbrt(Rat lo, Rat hi, Rat a, Rat c, Rat b);

    // Value at an exact point of the domain.
    Scalar eval_point(const Rat& x, unsigned cbrt_prec) const;
    // Hull of the branch image over [u, v] (subset of the domain).
    Scalar eval_range(const Rat& u, const Rat& v, unsigned cbrt_prec) const;

    std::string describe() const;
};

class PiecewiseMap {
public:
    PiecewiseMap() = default;
    explicit PiecewiseMap(std::vector<Branch> branches);

    const std::vector<Branch>& branches() const { return branches_; }

    // Branch index containing exact point x (half-open rule, last closed).
    std::size_t branch_index(const Rat& x) const;

    Scalar eval(const Scalar& x, unsigned cbrt_prec) const;
    // Hull of the image of [lo, hi]; also used for trap certification.
    Scalar image(const Rat& lo, const Rat& hi, unsigned cbrt_prec) const;

    // Interior breakpoints (branch boundaries strictly inside the domain).
    std::vector<Rat> breakpoints() const;
    const Rat& domain_lo() const { return branches_.front().lo; }
    const Rat& domain_hi() const { return branches_.back().hi; }

private:
    std::vector<Branch> branches_;
};

}  // namespace ivl
