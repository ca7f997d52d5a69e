// Exact rational arithmetic helpers shared by every module.
//
// All state values, distances and running means are computed over
// boost::multiprecision rationals so that breakpoint membership and
// certificate replay are bit-reproducible. Dyadic rounding and integer
// cube roots support the tracked-precision approximate mode.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace ivl {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline Rat rat(long num, long den = 1) { return Rat(num, den); }

// Combined bit size of numerator and denominator; drives demotion to
// the approximate mode once orbits leave the small-denominator regime.
std::size_t rat_bits(const Rat& r);

// Largest multiple of 2^-prec that is <= r (resp. smallest >= r).
Rat dyadic_floor(const Rat& r, unsigned prec);
Rat dyadic_ceil(const Rat& r, unsigned prec);

// floor(cbrt(n)) for n >= 0.
Int icbrt(const Int& n);

// Exact rational cube root when one exists (num and den both perfect cubes).
std::optional<Rat> exact_cbrt(const Rat& r);

// Enclosure of cbrt(r) for r >= 0 with width <= 2^-prec.
// first <= cbrt(r) <= second.
std::pair<Rat, Rat> cbrt_bounds(const Rat& r, unsigned prec);

double rat_to_double(const Rat& r);

// "p/q", "p", or a plain decimal like "0.25".
Rat parse_rat(const std::string& text);

// Canonical "p/q" (or "p" when integral) used in CSV and reports.
std::string rat_to_string(const Rat& r);

}  // namespace ivl
