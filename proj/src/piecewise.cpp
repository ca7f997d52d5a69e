#include "ivl/piecewise.hpp"

#include <algorithm>
#include <sstream>

namespace ivl {

Branch Branch::constant(Rat lo, Rat hi, Rat value) {
    return Branch{std::move(lo), std::move(hi), Kind::Const, Rat(0), std::move(value), Rat(0)};
}

Branch Branch::affine(Rat lo, Rat hi, Rat a, Rat b) {
    return Branch{std::move(lo), std::move(hi), Kind::Affine, std::move(a), std::move(b), Rat(0)};
}

Branch Branch::quad(Rat lo, Rat hi, Rat a, Rat c, Rat b) {
    return Branch{std::move(lo), std::move(hi), Kind::Quad, std::move(a), std::move(b), std::move(c)};
}

Branch Branch::cbrt(Rat lo, Rat hi, Rat a, Rat c, Rat b) {
    Branch br{std::move(lo), std::move(hi), Kind::Cbrt, std::move(a), std::move(b), std::move(c)};
    if (br.lo < br.c) throw DomainError("cbrt branch requires domain right of its root");
    return br;
}

Scalar Branch::eval_point(const Rat& x, unsigned cbrt_prec) const {
    switch (kind) {
        case Kind::Const:
            return Scalar::exact(b);
        case Kind::Affine:
            return Scalar::exact(a * x + b);
        case Kind::Quad: {
            Rat t = x - c;
            return Scalar::exact(a * t * t + b);
        }
        case Kind::Cbrt: {
            auto [rlo, rhi] = cbrt_bounds(x - c, cbrt_prec);
            if (a >= 0) return Scalar::interval(a * rlo + b, a * rhi + b);
            return Scalar::interval(a * rhi + b, a * rlo + b);
        }
    }
    throw std::logic_error("unreachable");
}

Scalar Branch::eval_range(const Rat& u, const Rat& v, unsigned cbrt_prec) const {
    switch (kind) {
        case Kind::Const:
            return Scalar::exact(b);
        case Kind::Affine: {
            Rat fu = a * u + b, fv = a * v + b;
            return a >= 0 ? Scalar::interval(fu, fv) : Scalar::interval(fv, fu);
        }
        case Kind::Quad: {
            Rat tu = u - c, tv = v - c;
            Rat fu = a * tu * tu + b, fv = a * tv * tv + b;
            Rat mn = std::min(fu, fv), mx = std::max(fu, fv);
            if (u <= c && c <= v) {
                mn = std::min(mn, b);  // vertex value (a>0); hull either way
                mx = std::max(mx, b);
            }
            return Scalar::interval(mn, mx);
        }
        case Kind::Cbrt: {
            // Monotone in x on the domain (x >= c).
            Scalar flo = eval_point(u, cbrt_prec);
            Scalar fhi = eval_point(v, cbrt_prec);
            if (a >= 0) return Scalar::interval(flo.lo(), fhi.hi());
            return Scalar::interval(fhi.lo(), flo.hi());
        }
    }
    throw std::logic_error("unreachable");
}

std::string Branch::describe() const {
    std::ostringstream os;
    os << "[" << rat_to_string(lo) << "," << rat_to_string(hi) << ") ";
    switch (kind) {
        case Kind::Const: os << rat_to_string(b); break;
        case Kind::Affine: os << rat_to_string(a) << "*x + " << rat_to_string(b); break;
        case Kind::Quad:
            os << rat_to_string(a) << "*(x - " << rat_to_string(c) << ")^2 + " << rat_to_string(b);
            break;
        case Kind::Cbrt:
            os << rat_to_string(a) << "*(x - " << rat_to_string(c) << ")^(1/3) + " << rat_to_string(b);
            break;
    }
    return os.str();
}

PiecewiseMap::PiecewiseMap(std::vector<Branch> branches) : branches_(std::move(branches)) {
    if (branches_.empty()) throw DomainError("piecewise map needs at least one branch");
    for (std::size_t i = 0; i + 1 < branches_.size(); ++i) {
        if (branches_[i].hi != branches_[i + 1].lo)
            throw DomainError("branch domains must be contiguous");
        if (branches_[i].lo >= branches_[i].hi)
            throw DomainError("empty branch domain");
    }
    if (branches_.back().lo >= branches_.back().hi) throw DomainError("empty branch domain");
}

std::size_t PiecewiseMap::branch_index(const Rat& x) const {
    if (x < domain_lo() || x > domain_hi())
        throw DomainError("point outside map domain: " + rat_to_string(x));
    for (std::size_t i = 0; i + 1 < branches_.size(); ++i) {
        if (x < branches_[i].hi) return i;
    }
    return branches_.size() - 1;
}

Scalar PiecewiseMap::eval(const Scalar& x, unsigned cbrt_prec) const {
    if (x.lo() < domain_lo() || x.hi() > domain_hi())
        throw DomainError("scalar outside map domain: " + x.to_string());
    std::size_t first = branch_index(x.lo());
    std::size_t last = branch_index(x.hi());
    if (first == last) {
        if (x.is_exact()) return branches_[first].eval_point(x.lo(), cbrt_prec);
        return branches_[first].eval_range(x.lo(), x.hi(), cbrt_prec);
    }
    Rat mn, mx;
    bool have = false;
    for (std::size_t i = first; i <= last; ++i) {
        const Branch& br = branches_[i];
        Rat u = std::max(x.lo(), br.lo);
        Rat v = std::min(x.hi(), br.hi);
        Scalar part = br.eval_range(u, v, cbrt_prec);
        if (!have) {
            mn = part.lo();
            mx = part.hi();
            have = true;
        } else {
            mn = std::min(mn, part.lo());
            mx = std::max(mx, part.hi());
        }
    }
    return Scalar::interval(mn, mx);
}

Scalar PiecewiseMap::image(const Rat& lo, const Rat& hi, unsigned cbrt_prec) const {
    return eval(Scalar::interval(lo, hi), cbrt_prec);
}

std::vector<Rat> PiecewiseMap::breakpoints() const {
    std::vector<Rat> pts;
    for (std::size_t i = 0; i + 1 < branches_.size(); ++i) pts.push_back(branches_[i].hi);
    return pts;
}

}  // namespace ivl
