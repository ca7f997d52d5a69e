#include <doctest.h>

#include "ivl/examples.hpp"

using namespace ivl;

namespace {

Scalar sc(long n, long d = 1) { return Scalar::exact(Rat(n, d)); }

const Scalar& as_scalar(const StatePoint& s) { return std::get<Scalar>(s); }

Rat branch_formula(const Branch& br, const Rat& x) {
    switch (br.kind) {
        case Branch::Kind::Const: return br.b;
        case Branch::Kind::Affine: return br.a * x + br.b;
        case Branch::Kind::Quad: return br.a * (x - br.c) * (x - br.c) + br.b;
        case Branch::Kind::Cbrt: {
            auto root = exact_cbrt(x - br.c);
            REQUIRE(root.has_value());  // checked only at perfect-cube breakpoints
            return br.a * *root + br.b;
        }
    }
    throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("ids, names, lookup") {
    CHECK(all_examples().size() == 5);
    for (ExampleId id : all_examples()) {
        CHECK(parse_example(example_name(id)) == id);
        ExampleBundle b = build_example(id);
        CHECK(!b.claims.rows.empty());
    }
    CHECK(!parse_example("A9").has_value());
}

TEST_CASE("printed branch values") {
    ExampleBundle a1 = build_example(ExampleId::A1_FEI_not_EI);
    CHECK(as_scalar(a1.system.step(sc(7, 16), 0)).exact_value() == Rat(11, 16));
    ExampleBundle a4 = build_example(ExampleId::A4_FMEI_not_FEIM_MEI);
    CHECK(as_scalar(a4.system.step(sc(0), 0)).exact_value() == Rat(1, 2));
    ExampleBundle a3 = build_example(ExampleId::A3_FEIM_not_FEI);
    SymbolicPoint x = example_blocks().embed({0, 1}, example_block_tail());
    CHECK(std::get<SymbolicPoint>(a3.system.step(x, 1)) == shift(x, 3));
    // The reset maps.
    CHECK(std::get<SymbolicPoint>(a3.system.step(x, 2)) == SymbolicPoint("", "b"));
    CHECK(std::get<SymbolicPoint>(a3.system.step(x, 3)) == SymbolicPoint("", "b"));
    CHECK(std::get<SymbolicPoint>(a3.system.step(SymbolicPoint("", "b"), 3)) ==
          SymbolicPoint("", "ab"));
}

TEST_CASE("every interval map is continuous at interior breakpoints") {
    for (ExampleId id : {ExampleId::A1_FEI_not_EI, ExampleId::A2_EIM_not_EI,
                         ExampleId::A4_FMEI_not_FEIM_MEI, ExampleId::A5_FMEI_not_MEI}) {
        ExampleBundle b = build_example(id);
        for (std::size_t u = 0; u < b.system.alphabet_size(); ++u) {
            const PiecewiseMap& map = b.system.interval_map(static_cast<std::uint8_t>(u));
            const auto& branches = map.branches();
            for (std::size_t i = 0; i + 1 < branches.size(); ++i) {
                Rat bp = branches[i].hi;
                INFO(example_name(id), " F_", u, " at ", rat_to_string(bp));
                CHECK(branch_formula(branches[i], bp) == branch_formula(branches[i + 1], bp));
            }
        }
    }
}

TEST_CASE("cube-root branch is exact at its perfect-cube breakpoints") {
    ExampleBundle a5 = build_example(ExampleId::A5_FMEI_not_MEI);
    const PiecewiseMap& f1 = a5.system.interval_map(1);
    Scalar at_eighth = f1.eval(sc(1, 8), 64);
    CHECK(at_eighth.is_exact());
    CHECK(at_eighth.exact_value() == Rat(1, 8));
    // The cbrt branch formula at the right breakpoint 1/4 gives exactly 1/4.
    const Branch& cbrt_branch = f1.branches()[2];
    CHECK(cbrt_branch.eval_point(Rat(1, 4), 64).exact_value() == Rat(1, 4));
}

TEST_CASE("monotone and fixed-point facts used by the proofs") {
    // Quadratic system: iterates of the second map decrease to 1/4 from
    // anywhere in [0,1/4) after the first step.
    ExampleBundle a4 = build_example(ExampleId::A4_FMEI_not_FEIM_MEI);
    for (Rat x0 : {Rat(0), Rat(1, 8), Rat(3, 16)}) {
        auto traj = a4.system.trajectory(Scalar::exact(x0), Schedule::constant(1), 200);
        for (std::size_t k = 1; k + 1 < traj.size(); ++k) {
            const Scalar& cur = as_scalar(traj[k]);
            const Scalar& nxt = as_scalar(traj[k + 1]);
            CHECK(nxt.hi() <= cur.hi());
            CHECK(nxt.lo() >= Rat(1, 4) - Rat(1, Int(1) << 100));
        }
        const Scalar& last = as_scalar(traj.back());
        CHECK(last.hi() - Rat(1, 4) <= Rat(1, Int(1) << 64));
        CHECK(Rat(1, 4) - last.lo() <= Rat(1, Int(1) << 64));
    }

    ExampleBundle a5 = build_example(ExampleId::A5_FMEI_not_MEI);
    // (d): cube-root iterates climb to 1/4 on (1/8, 1/4).
    {
        auto traj = a5.system.trajectory(sc(9, 64), Schedule::constant(1), 200);
        for (std::size_t k = 0; k + 1 < traj.size(); ++k)
            CHECK(as_scalar(traj[k + 1]).lo() >= as_scalar(traj[k]).lo() - Rat(1, Int(1) << 50));
        CHECK(Rat(1, 4) - as_scalar(traj.back()).lo() <= Rat(1, Int(1) << 40));
        CHECK(as_scalar(traj.back()).hi() <= Rat(1, 4));
    }
    // (b): zeros park the left side at 1/8 and the right side at 3/8.
    {
        auto left = a5.system.trajectory(sc(5, 16), Schedule::constant(0), 64);
        CHECK(as_scalar(left.back()).exact_value() == Rat(1, 8));
        auto right = a5.system.trajectory(sc(7, 16), Schedule::constant(0), 64);
        CHECK(as_scalar(right.back()).hi() - Rat(3, 8) <= Rat(1, Int(1) << 64));
        CHECK(as_scalar(right.back()).lo() >= Rat(3, 8));
    }
    // (e): ones send the right side into decay toward 0.
    {
        auto traj = a5.system.trajectory(sc(7, 16), Schedule::constant(1), 64);
        CHECK(as_scalar(traj.back()).exact_value() == 0);
        for (std::size_t k = 1; k + 1 < traj.size(); ++k)
            CHECK(as_scalar(traj[k + 1]).hi() <= as_scalar(traj[k]).hi());
    }
    // (f): [0,1/8] is invariant under both maps, exactly.
    for (std::uint8_t u : {0, 1}) {
        Scalar img = a5.system.interval_image(u, Rat(0), Rat(1, 8));
        CHECK(img.lo() >= 0);
        CHECK(img.hi() <= Rat(1, 8));
    }
}

TEST_CASE("claims matrices match the stated headlines") {
    ClaimsMatrix a1 = claims_matrix(ExampleId::A1_FEI_not_EI);
    bool fei_set = false, ei_except = false;
    for (const ExpectedClaim& row : a1.rows) {
        if (row.notion == Notion::FEI && row.kind == ClaimKind::SetCertified) fei_set = true;
        if (row.notion == Notion::EI && row.kind == ClaimKind::CertifiedExceptAt) {
            ei_except = true;
            CHECK(as_scalar(*row.point).exact_value() == Rat(3, 8));
        }
    }
    CHECK(fei_set);
    CHECK(ei_except);

    ClaimsMatrix a3 = claims_matrix(ExampleId::A3_FEIM_not_FEI);
    bool feim_set = false, fei_refuted = false;
    for (const ExpectedClaim& row : a3.rows) {
        if (row.notion == Notion::FEIM && row.kind == ClaimKind::SetCertified) feim_set = true;
        if (row.notion == Notion::FEI && row.kind == ClaimKind::RefutedAt) fei_refuted = true;
    }
    CHECK(feim_set);
    CHECK(fei_refuted);

    ClaimsMatrix a5 = claims_matrix(ExampleId::A5_FMEI_not_MEI);
    bool fmei_set = false, mei_at = false;
    for (const ExpectedClaim& row : a5.rows) {
        if (row.notion == Notion::FMEI && row.kind == ClaimKind::SetCertified) fmei_set = true;
        if (row.notion == Notion::MEI && row.kind == ClaimKind::CertifiedExceptAt) mei_at = true;
    }
    CHECK(fmei_set);
    CHECK(mei_at);
}

TEST_CASE("coding schedules and the excursion splice") {
    Schedule coding = block_coding_schedule({0, 1, 0});
    CHECK(coding.at(0) == 0);
    CHECK(coding.at(1) == 1);
    CHECK(coding.at(2) == 0);
    CHECK(coding.at(3) == 2);
    CHECK(coding.at(4) == 3);
    CHECK(coding.at(5) == 0);
    CHECK(coding.at(50) == 0);

    CHECK(excursion_splice_delta(2) == Rat(1, 200));
    CHECK(excursion_splice_delta(0) == Rat(1, 8));
}
