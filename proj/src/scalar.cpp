#include "ivl/scalar.hpp"

#include <sstream>

namespace ivl {

std::size_t rat_bits(const Rat& r) {
    Int n = rat_num(r);
    if (n < 0) n = -n;
    Int d = rat_den(r);
    std::size_t bn = (n == 0) ? 1 : boost::multiprecision::msb(n) + 1;
    std::size_t bd = boost::multiprecision::msb(d) + 1;
    return bn + bd;
}

Rat dyadic_floor(const Rat& r, unsigned prec) {
    Int scale = Int(1) << prec;
    Int num = rat_num(r) * scale;
    Int den = rat_den(r);
    Int q = num / den;
    if (num < 0 && q * den != num) --q;  // toward -inf
    return Rat(q, scale);
}

Rat dyadic_ceil(const Rat& r, unsigned prec) {
    return -dyadic_floor(-r, prec);
}

Int icbrt(const Int& n) {
    if (n < 0) throw std::invalid_argument("icbrt: negative");
    if (n == 0) return 0;
    // Newton iteration with a high initial guess; converges in a few steps.
    std::size_t bits = boost::multiprecision::msb(n) + 1;
    Int x = Int(1) << (bits / 3 + 2);
    while (true) {
        Int x2 = x * x;
        Int next = (2 * x + n / x2) / 3;
        if (next >= x) break;
        x = next;
    }
    while (x * x * x > n) --x;
    while ((x + 1) * (x + 1) * (x + 1) <= n) ++x;
    return x;
}

std::optional<Rat> exact_cbrt(const Rat& r) {
    if (r < 0) {
        auto pos = exact_cbrt(-r);
        if (pos) return -*pos;
        return std::nullopt;
    }
    Int cn = icbrt(rat_num(r));
    Int cd = icbrt(rat_den(r));
    if (cn * cn * cn == rat_num(r) && cd * cd * cd == rat_den(r)) return Rat(cn, cd);
    return std::nullopt;
}

std::pair<Rat, Rat> cbrt_bounds(const Rat& r, unsigned prec) {
    if (r < 0) throw std::invalid_argument("cbrt_bounds: negative");
    if (auto e = exact_cbrt(r)) return {*e, *e};
    // cbrt(p/q) = cbrt(p*q^2)/q; scale by 2^(3*prec) for prec fractional bits.
    Int p = rat_num(r), q = rat_den(r);
    Int scaled = p * q * q << (3 * prec);
    Int root = icbrt(scaled);
    Rat lo(root, q << prec);
    Rat hi(root + 1, q << prec);
    return {lo, hi};
}

double rat_to_double(const Rat& r) { return r.convert_to<double>(); }

namespace {

// Strict decimal integer; avoids cpp_int's octal reading of leading zeros.
Int int_from_decimal(const std::string& text) {
    std::string digits = text;
    bool negative = false;
    if (!digits.empty() && (digits[0] == '+' || digits[0] == '-')) {
        negative = digits[0] == '-';
        digits.erase(digits.begin());
    }
    if (digits.empty()) throw ParseError("bad integer: " + text);
    Int value = 0;
    for (char c : digits) {
        if (c < '0' || c > '9') throw ParseError("bad integer: " + text);
        value = value * 10 + (c - '0');
    }
    return negative ? -value : value;
}

}  // namespace

Rat parse_rat(const std::string& text) {
    if (text.empty()) throw ParseError("empty rational");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Int num = int_from_decimal(text.substr(0, slash));
        Int den = int_from_decimal(text.substr(slash + 1));
        if (den == 0) throw ParseError("zero denominator: " + text);
        return Rat(num, den);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        std::size_t frac = text.size() - dot - 1;
        Int num = int_from_decimal(digits);
        Int den = 1;
        for (std::size_t i = 0; i < frac; ++i) den *= 10;
        return Rat(num, den);
    }
    return Rat(int_from_decimal(text));
}

std::string rat_to_string(const Rat& r) {
    std::ostringstream os;
    os << rat_num(r);
    if (rat_den(r) != 1) os << '/' << rat_den(r);
    return os.str();
}

Scalar Scalar::interval(Rat lo, Rat hi) {
    if (lo > hi) throw std::invalid_argument("Scalar::interval: lo > hi");
    return Scalar(std::move(lo), std::move(hi));
}

const Rat& Scalar::exact_value() const {
    if (!is_exact()) throw AmbiguousComparison("exact_value on approximate scalar");
    return lo_;
}

Scalar Scalar::affine(const Rat& a, const Rat& b) const {
    Rat x = a * lo_ + b;
    Rat y = a * hi_ + b;
    if (a >= 0) return Scalar(std::move(x), std::move(y));
    return Scalar(std::move(y), std::move(x));
}

Scalar Scalar::div_int(long k) const {
    if (k <= 0) throw std::invalid_argument("div_int: k <= 0");
    return Scalar(lo_ / k, hi_ / k);
}

Tri Scalar::lt(const Rat& r) const {
    if (hi_ < r) return Tri::True;
    if (lo_ >= r) return Tri::False;
    return Tri::Ambiguous;
}

Tri Scalar::le(const Rat& r) const {
    if (hi_ <= r) return Tri::True;
    if (lo_ > r) return Tri::False;
    return Tri::Ambiguous;
}

Tri Scalar::ge(const Rat& r) const {
    if (lo_ >= r) return Tri::True;
    if (hi_ < r) return Tri::False;
    return Tri::Ambiguous;
}

bool Scalar::require_lt(const Rat& r, const char* what) const {
    Tri t = lt(r);
    if (t == Tri::Ambiguous)
        throw AmbiguousComparison(std::string(what) + ": interval straddles " + rat_to_string(r));
    return t == Tri::True;
}

bool Scalar::require_ge(const Rat& r, const char* what) const {
    Tri t = ge(r);
    if (t == Tri::Ambiguous)
        throw AmbiguousComparison(std::string(what) + ": interval straddles " + rat_to_string(r));
    return t == Tri::True;
}

Scalar Scalar::demoted(std::size_t max_bits, unsigned prec) const {
    if (rat_bits(lo_) <= max_bits && rat_bits(hi_) <= max_bits) return *this;
    return Scalar(dyadic_floor(lo_, prec), dyadic_ceil(hi_, prec));
}

std::string Scalar::to_string() const {
    if (is_exact()) return rat_to_string(lo_);
    return "[" + rat_to_string(lo_) + "," + rat_to_string(hi_) + "]";
}

}  // namespace ivl
