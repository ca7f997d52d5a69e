#include <doctest.h>

#include "ivl/examples.hpp"
#include "ivl/system.hpp"

#include <cstdint>

using namespace ivl;

namespace {

Scalar sc(long n, long d = 1) { return Scalar::exact(Rat(n, d)); }

const Scalar& as_scalar(const StatePoint& s) { return std::get<Scalar>(s); }

// xorshift64 for deterministic case generation
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

TEST_CASE("step matches the printed case tables") {
    ExampleBundle a1 = build_example(ExampleId::A1_FEI_not_EI);
    // Fixed on [0,3/8)
    CHECK(as_scalar(a1.system.step(sc(5, 16), 0)).exact_value() == Rat(5, 16));
    // Middle branch of the second map sends [3/8,1/2) to 1/2
    CHECK(as_scalar(a1.system.step(sc(7, 16), 1)).exact_value() == Rat(1, 2));
    // Expansion branch: 5(x-1/2)+1 at 7/16
    CHECK(as_scalar(a1.system.step(sc(7, 16), 0)).exact_value() == Rat(11, 16));

    ExampleBundle a4 = build_example(ExampleId::A4_FMEI_not_FEIM_MEI);
    CHECK(as_scalar(a4.system.step(sc(0), 1)).exact_value() == Rat(1));    // 12/16 + 1/4
    CHECK(as_scalar(a4.system.step(sc(0), 0)).exact_value() == Rat(1, 2));
}

TEST_CASE("step errors: bad symbol, out-of-space state") {
    ExampleBundle a1 = build_example(ExampleId::A1_FEI_not_EI);
    CHECK_THROWS_AS(a1.system.step(sc(1, 2), 2), DomainError);
    CHECK_THROWS_AS(a1.system.step(sc(9, 8), 0), DomainError);
    CHECK_THROWS_AS(a1.system.step(sc(-1, 8), 1), DomainError);
    ExampleBundle a3 = build_example(ExampleId::A3_FEIM_not_FEI);
    CHECK_THROWS_AS(a3.system.step(sc(1, 2), 0), DomainError);
    CHECK_THROWS_AS(a3.system.step(SymbolicPoint("", "xz"), 0), DomainError);
}

TEST_CASE("trajectory composes the step maps") {
    ExampleBundle a1 = build_example(ExampleId::A1_FEI_not_EI);
    auto constant = a1.system.trajectory(sc(5, 16), Schedule::constant(0), 10);
    REQUIRE(constant.size() == 11);
    for (const StatePoint& s : constant) CHECK(as_scalar(s).exact_value() == Rat(5, 16));

    auto single = a1.system.trajectory(sc(5, 16), Schedule::constant(1), 0);
    REQUIRE(single.size() == 1);
    CHECK(as_scalar(single[0]).exact_value() == Rat(5, 16));

    CHECK_THROWS_AS(a1.system.trajectory(sc(5, 16), Schedule::finite({0, 1}), 3),
                    std::out_of_range);
}

TEST_CASE("shift composition on the block system") {
    ExampleBundle a3 = build_example(ExampleId::A3_FEIM_not_FEI);
    SymbolicPoint x = example_blocks().embed({0, 1, 0}, example_block_tail());
    // Unrolled-string oracle for sigma^2 then sigma^3.
    std::string raw = x.unroll(32);
    auto traj = a3.system.trajectory(x, Schedule::finite({0, 1}), 2);
    CHECK(std::get<SymbolicPoint>(traj[1]).unroll(30) == raw.substr(2, 30));
    CHECK(std::get<SymbolicPoint>(traj[2]).unroll(27) == raw.substr(5, 27));
}

TEST_CASE("splice semantics") {
    Schedule omega = Schedule::constant(1);
    Schedule spliced = splice({}, omega);
    CHECK(spliced == omega);

    Schedule head = splice({0, 1}, Schedule::constant(1));
    CHECK(head.at(0) == 0);
    CHECK(head.at(1) == 1);
    CHECK(head.at(5) == 1);

    // The excursion construction: zeros, one 2, zeros forever.
    Schedule exc = excursion_splice_schedule(3);
    CHECK(exc.at(0) == 0);
    CHECK(exc.at(2) == 0);
    CHECK(exc.at(3) == 2);
    CHECK(exc.at(4) == 0);
    CHECK(exc.at(100) == 0);

    // splice(w, omega) agrees with omega shifted by |w|.
    for (std::size_t k = 0; k < 16; ++k) {
        Word w{1, 0, 2};
        Schedule tail = Schedule::periodic({2}, {0, 1});
        Schedule s = splice(w, tail);
        if (k < w.size()) CHECK(s.at(k) == w[k]);
        else CHECK(s.at(k) == tail.at(k - w.size()));
    }
}

TEST_CASE("trajectory prefix consistency and cocycle property") {
    ExampleBundle a1 = build_example(ExampleId::A1_FEI_not_EI);
    ExampleBundle a2 = build_example(ExampleId::A2_EIM_not_EI);
    Rng rng(0x9e3779b97f4a7c15ull);
    for (int trial = 0; trial < 200; ++trial) {
        const ControlSystem& sys = (trial % 2 == 0) ? a1.system : a2.system;
        StatePoint x = sc(static_cast<long>(rng.below(513)), 512);
        Word prefix;
        for (std::size_t i = 0, len = rng.below(6); i < len; ++i)
            prefix.push_back(static_cast<std::uint8_t>(rng.below(sys.alphabet_size())));
        Word cycle{static_cast<std::uint8_t>(rng.below(sys.alphabet_size()))};
        Schedule omega = Schedule::periodic(prefix, cycle);

        std::size_t n = rng.below(32);
        std::size_t m = rng.below(32);
        auto longer = sys.trajectory(x, omega, n + m);
        auto shorter = sys.trajectory(x, omega, n);
        for (std::size_t k = 0; k <= n; ++k)
            CHECK(as_scalar(longer[k]).same_bits(as_scalar(shorter[k])));

        // Cocycle: continuing after a spliced head equals restarting from
        // the head's endpoint.
        Word head;
        for (std::size_t i = 0, len = 1 + rng.below(5); i < len; ++i)
            head.push_back(static_cast<std::uint8_t>(rng.below(sys.alphabet_size())));
        Schedule spliced = splice(head, omega);
        std::size_t k = rng.below(16);
        auto through = sys.trajectory(x, spliced, head.size() + k);
        auto head_only = sys.trajectory(x, Schedule::finite(head), head.size());
        auto restarted = sys.trajectory(head_only.back(), omega, k);
        CHECK(as_scalar(through[head.size() + k]).same_bits(as_scalar(restarted[k])));
    }
}

TEST_CASE("exact orbits are bit-reproducible across runs") {
    for (ExampleId id : {ExampleId::A1_FEI_not_EI, ExampleId::A2_EIM_not_EI,
                         ExampleId::A4_FMEI_not_FEIM_MEI}) {
        ExampleBundle b = build_example(id);
        Schedule omega = Schedule::periodic({0, 1}, {1, 0});
        auto run1 = b.system.trajectory(sc(19, 64), omega, 600);
        auto run2 = b.system.trajectory(sc(19, 64), omega, 600);
        REQUIRE(run1.size() == run2.size());
        for (std::size_t k = 0; k < run1.size(); ++k)
            CHECK(as_scalar(run1[k]).same_bits(as_scalar(run2[k])));
    }
}

TEST_CASE("deep quadratic orbits demote to narrow enclosures") {
    ExampleBundle a4 = build_example(ExampleId::A4_FMEI_not_FEIM_MEI);
    auto traj = a4.system.trajectory(sc(19, 1024), Schedule::constant(1), 600);
    const Scalar& last = as_scalar(traj.back());
    // Superattracting convergence to 1/4 with a tiny tracked error.
    CHECK(last.width() <= Rat(1, Int(1) << 100));
    CHECK(last.lo() <= Rat(1, 4));
    CHECK(last.hi() >= Rat(1, 4) - Rat(1, Int(1) << 100));
}
