#include <doctest.h>

#include "ivl/scalar.hpp"

using namespace ivl;

TEST_CASE("rational parsing and printing") {
    CHECK(parse_rat("3/8") == Rat(3, 8));
    CHECK(parse_rat("-5/16") == Rat(-5, 16));
    CHECK(parse_rat("7") == Rat(7));
    CHECK(parse_rat("0.25") == Rat(1, 4));
    CHECK(rat_to_string(Rat(3, 8)) == "3/8");
    CHECK(rat_to_string(Rat(4)) == "4");
    CHECK_THROWS_AS(parse_rat("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rat("abc"), ParseError);
    CHECK_THROWS_AS(parse_rat(""), ParseError);
}

TEST_CASE("dyadic rounding brackets the value") {
    Rat x(7, 3);
    for (unsigned prec : {4u, 16u, 60u}) {
        Rat lo = dyadic_floor(x, prec);
        Rat hi = dyadic_ceil(x, prec);
        CHECK(lo <= x);
        CHECK(hi >= x);
        CHECK(hi - lo <= Rat(2, Int(1) << prec));
    }
    CHECK(dyadic_floor(Rat(-7, 3), 4) <= Rat(-7, 3));
    CHECK(dyadic_floor(Rat(1, 2), 4) == Rat(1, 2));
}

TEST_CASE("integer and rational cube roots") {
    CHECK(icbrt(Int(0)) == 0);
    CHECK(icbrt(Int(1)) == 1);
    CHECK(icbrt(Int(7)) == 1);
    CHECK(icbrt(Int(8)) == 2);
    Int big = Int(12345);
    CHECK(icbrt(big * big * big) == big);
    CHECK(icbrt(big * big * big + 1) == big);
    CHECK(icbrt(big * big * big - 1) == big - 1);

    CHECK(exact_cbrt(Rat(1, 8)) == Rat(1, 2));
    CHECK(exact_cbrt(Rat(27, 64)) == Rat(3, 4));
    CHECK(!exact_cbrt(Rat(1, 2)).has_value());

    auto [lo, hi] = cbrt_bounds(Rat(1, 2), 64);
    CHECK(lo <= hi);
    CHECK(hi - lo <= Rat(1, Int(1) << 64));
    CHECK(lo * lo * lo <= Rat(1, 2));
    CHECK(hi * hi * hi >= Rat(1, 2));
    // Perfect cubes come back exact.
    auto [elo, ehi] = cbrt_bounds(Rat(1, 8), 64);
    CHECK(elo == ehi);
    CHECK(elo == Rat(1, 2));
}

TEST_CASE("scalar modes and arithmetic") {
    Scalar e = Scalar::exact(Rat(3, 8));
    CHECK(e.is_exact());
    CHECK(e.error_bound() == 0);
    Scalar a = Scalar::interval(Rat(1, 4), Rat(5, 16));
    CHECK(!a.is_exact());
    CHECK(a.error_bound() == Rat(1, 32));
    CHECK_THROWS_AS(a.exact_value(), AmbiguousComparison);

    Scalar t = e.affine(Rat(-4), Rat(2));  // -4x + 2
    CHECK(t.exact_value() == Rat(1, 2));
    Scalar u = a.affine(Rat(-4), Rat(2));
    CHECK(u.lo() == Rat(3, 4));
    CHECK(u.hi() == Rat(1));

    Scalar s = e + a;
    CHECK(s.lo() == Rat(5, 8));
    CHECK(s.hi() == Rat(11, 16));
    CHECK(s.div_int(2).lo() == Rat(5, 16));
}

TEST_CASE("comparisons are three-valued and ambiguity throws") {
    Scalar a = Scalar::interval(Rat(1, 4), Rat(3, 8));
    CHECK(a.lt(Rat(1, 2)) == Tri::True);
    CHECK(a.lt(Rat(1, 8)) == Tri::False);
    CHECK(a.lt(Rat(5, 16)) == Tri::Ambiguous);
    CHECK(a.ge(Rat(1, 8)) == Tri::True);
    CHECK(a.ge(Rat(5, 16)) == Tri::Ambiguous);
    CHECK_THROWS_AS(a.require_lt(Rat(5, 16), "test"), AmbiguousComparison);
    CHECK(Scalar::exact(Rat(1, 4)).lt(Rat(1, 4)) == Tri::False);
    CHECK(Scalar::exact(Rat(1, 4)).ge(Rat(1, 4)) == Tri::True);
}

TEST_CASE("demotion rounds outward, is deterministic, and keeps small values exact") {
    Scalar small = Scalar::exact(Rat(3, 8));
    CHECK(small.demoted(256, 120).same_bits(small));

    Rat huge_num = Rat(Int(1) << 300, (Int(1) << 301) + 7);
    Scalar big = Scalar::exact(huge_num);
    Scalar d1 = big.demoted(256, 120);
    Scalar d2 = big.demoted(256, 120);
    CHECK(!d1.is_exact());
    CHECK(d1.same_bits(d2));
    CHECK(d1.lo() <= huge_num);
    CHECK(d1.hi() >= huge_num);
    CHECK(d1.width() <= Rat(2, Int(1) << 120));
}
