#include <doctest.h>

#include "ivl/examples.hpp"
#include "ivl/metrics.hpp"

#include <cstdint>

using namespace ivl;

namespace {

Scalar sc(long n, long d = 1) { return Scalar::exact(Rat(n, d)); }

struct Rng {
    std::uint64_t s;
    explicit Rng(std::uint64_t seed) : s(seed) {}
    std::uint64_t next() {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        return s;
    }
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(next() % n); }
};

}  // namespace

TEST_CASE("interval-union distances, exact and enclosed") {
    IntervalUnion q({{Rat(0), Rat(1, 4)}});
    CHECK(q.point_distance(Rat(1, 2)) == Rat(1, 4));
    CHECK(q.point_distance(Rat(1, 8)) == 0);

    IntervalUnion two({{Rat(0), Rat(1, 8)}, {Rat(1, 2), Rat(5, 8)}});
    CHECK(two.point_distance(Rat(5, 16)) == Rat(3, 16));
    CHECK(two.point_distance(Rat(7, 16)) == Rat(1, 16));
    // Enclosure across a gap: min at the touching side, max at the midpoint.
    Scalar spread = two.distance(Scalar::interval(Rat(1, 8), Rat(1, 2)));
    CHECK(spread.lo() == 0);
    CHECK(spread.hi() == Rat(3, 16));

    CHECK_THROWS_AS(IntervalUnion({{Rat(1, 2), Rat(1, 4)}}), DomainError);
    CHECK_THROWS_AS(IntervalUnion({{Rat(0), Rat(1, 2)}, {Rat(1, 4), Rat(3, 4)}}), DomainError);
}

TEST_CASE("dist_to_set on both space kinds") {
    ExampleBundle a1 = build_example(ExampleId::A1_FEI_not_EI);
    CHECK(dist_to_set(a1.q, sc(1, 2)).exact_value() == 0);        // member
    CHECK(dist_to_set(a1.q, sc(1)).exact_value() == Rat(1, 2));   // right of Q
    ExampleBundle a4 = build_example(ExampleId::A4_FMEI_not_FEIM_MEI);
    CHECK(dist_to_set(a4.q, sc(1, 2)).exact_value() == Rat(1, 4));

    ExampleBundle a3 = build_example(ExampleId::A3_FEIM_not_FEI);
    CHECK(dist_to_set(a3.q, SymbolicPoint("", "b")).exact_value() == 1);
    CHECK(dist_to_set(a3.q, SymbolicPoint("", "ab")).exact_value() == 0);
    CHECK_THROWS_AS(dist_to_set(a3.q, sc(1, 2)), DomainError);
}

TEST_CASE("eps-neighborhood membership") {
    ExampleBundle a1 = build_example(ExampleId::A1_FEI_not_EI);
    CHECK(in_eps_neighborhood(a1.q, sc(3, 8), Rat(1, 100)));          // member
    CHECK(!in_eps_neighborhood(a1.q, sc(1), Rat(1, 8)));              // distance 1/2
    CHECK(in_eps_neighborhood(a1.q, sc(1), Rat(3, 5)));               // 1/2 < 3/5
    Scalar straddle = Scalar::interval(Rat(9, 16), Rat(11, 16));      // d in [1/16, 3/16]
    CHECK(in_eps_tri(a1.q, straddle, Rat(1, 8)) == Tri::Ambiguous);
    CHECK_THROWS_AS(in_eps_neighborhood(a1.q, straddle, Rat(1, 8)), AmbiguousComparison);
}

TEST_CASE("mean profile: zeros inside Q, excursion value pinned exactly") {
    ExampleBundle a2 = build_example(ExampleId::A2_EIM_not_EI);

    // Orbit entirely inside Q: every mean is zero.
    MeanProfile still = mean_profile(a2.system, sc(5, 16), Schedule::constant(0), a2.q, 12);
    for (const Scalar& v : still.values) CHECK(v.exact_value() == 0);
    CHECK(still.exact);

    // Excursion construction with the bump at orbit index N: the first
    // nonzero mean appears at k = N+1 and equals 1/(2(N+1)) exactly, and
    // every later mean is smaller.
    const std::size_t N = 8;
    Schedule omega = excursion_splice_schedule(N - 1);
    Rat delta = excursion_splice_delta(N - 1);
    StatePoint y = Scalar::exact(Rat(3, 8) + delta / 2);
    MeanProfile prof = mean_profile(a2.system, y, omega, a2.q, 24);
    for (std::size_t k = 1; k <= N; ++k) CHECK(prof.mean_at(k).exact_value() == 0);
    CHECK(prof.mean_at(N + 1).exact_value() == Rat(1, 2 * (N + 1)));
    for (std::size_t k = N + 2; k <= 24; ++k) {
        CHECK(prof.mean_at(k).exact_value() == Rat(1, 2 * k));
        CHECK(prof.mean_at(k).exact_value() < prof.mean_at(N + 1).exact_value());
    }
    CHECK(prof.running_max.back().exact_value() == Rat(1, 2 * (N + 1)));

    // Two-step hand computation at 0 for the quadratic system: the printed
    // claim's constant is 1/2 but direct evaluation gives d(1/2,Q)=1/4 and
    // a k=2 mean of 1/8.
    ExampleBundle a4 = build_example(ExampleId::A4_FMEI_not_FEIM_MEI);
    MeanProfile two = mean_profile(a4.system, sc(0), Schedule::constant(0), a4.q, 2);
    CHECK(two.mean_at(2).exact_value() == Rat(1, 8));
}

TEST_CASE("mean profile satisfies its recurrence exactly in exact mode") {
    ExampleBundle a1 = build_example(ExampleId::A1_FEI_not_EI);
    Rng rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        StatePoint x = sc(static_cast<long>(128 + rng.below(129)), 512);
        Word cyc{static_cast<std::uint8_t>(rng.below(2)),
                 static_cast<std::uint8_t>(rng.below(2))};
        Schedule omega = Schedule::periodic({}, cyc);
        MeanProfile prof = mean_profile(a1.system, x, omega, a1.q, 32);
        REQUIRE(prof.exact);
        for (std::size_t k = 1; k < 32; ++k) {
            Rat expected = (prof.mean_at(k).exact_value() * static_cast<long>(k) +
                            prof.dists[k].exact_value()) /
                           static_cast<long>(k + 1);
            CHECK(prof.mean_at(k + 1).exact_value() == expected);
        }
    }
}

TEST_CASE("limsup estimate: convergent orbits certify, parked orbits do not") {
    ExampleBundle a4 = build_example(ExampleId::A4_FMEI_not_FEIM_MEI);
    LimsupEstimate est =
        limsup_mean_estimate(a4.system, sc(1, 8), Schedule::constant(1), a4.q, 512, 64);
    CHECK(est.estimate.hi() < Rat(1, 100));
    CHECK(est.tail_nonincreasing);

    ExampleBundle a5 = build_example(ExampleId::A5_FMEI_not_MEI);
    LimsupEstimate stuck =
        limsup_mean_estimate(a5.system, sc(5, 16), Schedule::constant(0), a5.q, 512, 64);
    CHECK(stuck.estimate.lo() >= Rat(1, 16));
}

TEST_CASE("upper density estimate") {
    CHECK(upper_density_estimate(std::vector<bool>(64, false)) == 0);
    std::vector<bool> evens(100);
    for (std::size_t i = 0; i < evens.size(); i += 2) evens[i] = true;
    Rat d = upper_density_estimate(evens);
    CHECK(d >= Rat(1, 2));
    CHECK(d <= Rat(1, 2) + Rat(1, 50));
    CHECK(upper_density_estimate({true}) == 1);
}

TEST_CASE("exception density along orbits") {
    ExampleBundle a2 = build_example(ExampleId::A2_EIM_not_EI);
    // Always inside the neighborhood: zero density.
    ExceptionDensity zero =
        exception_density(a2.system, sc(5, 16), Schedule::constant(0), a2.q, Rat(1, 10), 64);
    CHECK(zero.density == 0);

    // One excursion to 1 within 256 steps: density at most 1/128.
    ExceptionDensity one = exception_density(a2.system, sc(3, 8), excursion_splice_schedule(4),
                                             a2.q, Rat(1, 10), 256);
    CHECK(one.exceptional_count == 1);
    CHECK(one.density <= Rat(1, 128));

    // Decaying orbit parked far from Q: density approaches 1.
    ExampleBundle a5 = build_example(ExampleId::A5_FMEI_not_MEI);
    ExceptionDensity stuck = exception_density(
        a5.system, Scalar::exact(Rat(3, 8) + Rat(1, 64)), Schedule::constant(1), a5.q,
        Rat(1, 16), 256);
    CHECK(stuck.density >= Rat(1, 2));
}

TEST_CASE("finite-scale density bounds in both directions") {
    // Mean bound implies density bound: if every running mean is < eps^2
    // then the exceptional fraction at level eps stays < eps at every n.
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 16 + rng.below(48);
        std::vector<Rat> dist;
        Rat sum = 0;
        for (std::size_t i = 0; i < n; ++i) {
            dist.push_back(Rat(static_cast<long>(rng.below(64)), 256));
            sum += dist.back();
        }
        Rat eps(1, 2);
        // Scale so all running means sit below eps^2.
        Rat max_mean = 0;
        Rat acc = 0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += dist[i];
            max_mean = std::max(max_mean, Rat(acc / static_cast<long>(i + 1)));
        }
        if (max_mean > 0) {
            Rat scale = (eps * eps) / (2 * max_mean);
            for (Rat& d : dist) d *= scale;
        }
        acc = 0;
        std::size_t exceptional = 0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += dist[i];
            CHECK(acc / static_cast<long>(i + 1) < eps * eps);
            if (dist[i] >= eps) ++exceptional;
            CHECK(Rat(static_cast<long>(exceptional), static_cast<long>(i + 1)) < eps);
        }
    }

    // Density bound implies mean bound: exceptions of density < eta with
    // small off-exception distances keep means at or below diam*eta + eta.
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 16 + rng.below(48);
        Rat eps(1, 4);
        Rat eta = eps / 4;  // eps / (2 (diam X + 1)) with diam = 1
        std::vector<Rat> dist;
        std::size_t budget = 0;
        for (std::size_t i = 0; i < n; ++i) {
            bool exceptional =
                (16 * (budget + 1) <= i + 1) && rng.below(8) == 0;  // keep density <= eta
            if (exceptional) {
                ++budget;
                dist.push_back(1);
            } else {
                dist.push_back(Rat(static_cast<long>(rng.below(16)), 16) * eta);
            }
        }
        Rat acc = 0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < n; ++i) {
            acc += dist[i];
            if (dist[i] >= eta) ++count;
            CHECK(Rat(static_cast<long>(count), static_cast<long>(i + 1)) <= eta);
            CHECK(acc / static_cast<long>(i + 1) <= eta + eta);  // diam * eta + eta = eps/2
        }
    }
}
