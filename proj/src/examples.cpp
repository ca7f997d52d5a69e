#include "ivl/examples.hpp"

namespace ivl {

namespace {

Rat r(long n, long d = 1) { return Rat(n, d); }

// F_1 shared by the first two systems.
PiecewiseMap a1_f1() {
    return PiecewiseMap({
        Branch::constant(r(0), r(1, 4), r(1)),
        Branch::affine(r(1, 4), r(3, 8), r(-4), r(2)),       // -4(x-1/4)+1
        Branch::constant(r(3, 8), r(1, 2), r(1, 2)),
        Branch::affine(r(1, 2), r(5, 8), r(4), r(-3, 2)),    // 4(x-5/8)+1
        Branch::constant(r(5, 8), r(1), r(1)),
    });
}

ControlSystem build_a1() {
    PiecewiseMap f0({
        Branch::affine(r(0), r(3, 8), r(1), r(0)),           // x
        Branch::affine(r(3, 8), r(1, 2), r(5), r(-3, 2)),    // 5(x-1/2)+1
        Branch::constant(r(1, 2), r(1), r(1)),
    });
    return ControlSystem("A1", {std::move(f0), a1_f1()});
}

ControlSystem build_a2() {
    PiecewiseMap f0({
        Branch::affine(r(0), r(3, 8), r(1), r(0)),
        Branch::affine(r(3, 8), r(1, 2), r(5), r(-3, 2)),
        Branch::constant(r(1, 2), r(5, 8), r(1)),
        Branch::affine(r(5, 8), r(3, 4), r(-5), r(33, 8)),   // -5(x-3/4)+3/8
        Branch::constant(r(3, 4), r(1), r(3, 8)),
    });
    PiecewiseMap f2({Branch::constant(r(0), r(1), r(1))});
    return ControlSystem("A2", {std::move(f0), a1_f1(), std::move(f2)});
}

ControlSystem build_a3() {
    SymbolicPoint b_inf = SymbolicPoint::constant('b');
    SymbolicPoint ab_inf("", "ab");
    std::vector<SymbolicMap> maps{
        SymbolicMap::shift_power(2),
        SymbolicMap::shift_power(3),
        SymbolicMap::const_point(b_inf),
        SymbolicMap::first_symbol_select('b', ab_inf, b_inf),
    };
    return ControlSystem("A3", "abcde", std::move(maps));
}

ControlSystem build_a4() {
    PiecewiseMap f0({
        Branch::constant(r(0), r(1, 4), r(1, 2)),
        Branch::affine(r(1, 4), r(1, 2), r(2), r(0)),        // 2(x-1/2)+1
        Branch::constant(r(1, 2), r(1), r(1)),
    });
    PiecewiseMap f1({
        Branch::quad(r(0), r(1, 4), r(12), r(1, 4), r(1, 4)),
        Branch::quad(r(1, 4), r(1), r(1), r(1, 4), r(1, 4)),
    });
    return ControlSystem("A4", {std::move(f0), std::move(f1)});
}

ControlSystem build_a5() {
    PiecewiseMap f0({
        Branch::constant(r(0), r(1, 4), r(1, 8)),
        Branch::affine(r(1, 4), r(3, 8), r(2), r(-3, 8)),
        Branch::quad(r(3, 8), r(1), r(1), r(3, 8), r(3, 8)),
    });
    PiecewiseMap f1({
        Branch::constant(r(0), r(1, 16), r(0)),
        Branch::affine(r(1, 16), r(1, 8), r(2), r(-1, 8)),
        Branch::cbrt(r(1, 8), r(1, 4), r(1, 4), r(1, 8), r(1, 8)),
        Branch::affine(r(1, 4), r(1, 2), r(-1), r(1, 2)),
        Branch::constant(r(1, 2), r(1), r(0)),
    });
    NumericPolicy policy;  // cube-root enclosures at 2^-64
    return ControlSystem("A5", {std::move(f0), std::move(f1)}, policy);
}

TargetSet quarter_half() {
    return TargetSet::intervals(IntervalUnion({{Rat(1, 4), Rat(1, 2)}}));
}

StatePoint pt(long n, long d) { return Scalar::exact(Rat(n, d)); }

}  // namespace

std::string example_name(ExampleId id) {
    switch (id) {
        case ExampleId::A1_FEI_not_EI: return "A1";
        case ExampleId::A2_EIM_not_EI: return "A2";
        case ExampleId::A3_FEIM_not_FEI: return "A3";
        case ExampleId::A4_FMEI_not_FEIM_MEI: return "A4";
        case ExampleId::A5_FMEI_not_MEI: return "A5";
    }
    throw std::logic_error("unreachable");
}

std::optional<ExampleId> parse_example(const std::string& name) {
    for (ExampleId id : all_examples())
        if (example_name(id) == name) return id;
    return std::nullopt;
}

std::vector<ExampleId> all_examples() {
    return {ExampleId::A1_FEI_not_EI, ExampleId::A2_EIM_not_EI, ExampleId::A3_FEIM_not_FEI,
            ExampleId::A4_FMEI_not_FEIM_MEI, ExampleId::A5_FMEI_not_MEI};
}

ClaimsMatrix claims_matrix(ExampleId id) {
    ClaimsMatrix m;
    switch (id) {
        case ExampleId::A1_FEI_not_EI:
            m.headline = "FEI but not EI; FEIM but not EIM";
            m.rows = {
                {Notion::FEI, ClaimKind::SetCertified, std::nullopt},
                {Notion::EI, ClaimKind::CertifiedExceptAt, pt(3, 8)},
                {Notion::FEIM, ClaimKind::SetCertified, std::nullopt},
                {Notion::EIM, ClaimKind::RefutedAt, pt(3, 8)},
            };
            break;
        case ExampleId::A2_EIM_not_EI:
            m.headline = "EIM but not EI";
            m.rows = {
                {Notion::EIM, ClaimKind::SetCertified, std::nullopt},
                {Notion::EI, ClaimKind::CertifiedExceptAt, pt(3, 8)},
            };
            break;
        case ExampleId::A3_FEIM_not_FEI:
            // The body proves equi-invariance in the mean; the claims follow
            // the body, not the header's abbreviation.
            m.headline = "EIM (hence FEIM) but not FEI";
            m.rows = {
                {Notion::EIM, ClaimKind::SetCertified, std::nullopt},
                {Notion::FEIM, ClaimKind::SetCertified, std::nullopt},
                {Notion::FEI, ClaimKind::RefutedAt, SymbolicPoint("", "ab")},
            };
            break;
        case ExampleId::A4_FMEI_not_FEIM_MEI:
            m.headline = "MEI but not EIM; FMEI but not FEIM";
            m.rows = {
                {Notion::MEI, ClaimKind::SetCertified, std::nullopt},
                {Notion::FMEI, ClaimKind::SetCertified, std::nullopt},
                {Notion::FEIM, ClaimKind::RefutedAt, pt(0, 1)},
                // Single-omega proof certifies MEI pointwise; the EIM row is
                // settled by the refutation run at 0.
                {Notion::EIM, ClaimKind::Unspecified, pt(0, 1)},
            };
            break;
        case ExampleId::A5_FMEI_not_MEI:
            m.headline = "FMEI but not MEI";
            m.rows = {
                {Notion::FMEI, ClaimKind::SetCertified, std::nullopt},
                {Notion::MEI, ClaimKind::CertifiedExceptAt, pt(3, 8)},
            };
            break;
    }
    return m;
}

ExampleBundle build_example(ExampleId id) {
    switch (id) {
        case ExampleId::A1_FEI_not_EI:
            return {id, build_a1(), quarter_half(), claims_matrix(id)};
        case ExampleId::A2_EIM_not_EI:
            return {id, build_a2(), quarter_half(), claims_matrix(id)};
        case ExampleId::A3_FEIM_not_FEI:
            return {id, build_a3(), TargetSet::blocks(example_blocks()), claims_matrix(id)};
        case ExampleId::A4_FMEI_not_FEIM_MEI:
            return {id, build_a4(),
                    TargetSet::intervals(IntervalUnion({{Rat(0), Rat(1, 4)}})),
                    claims_matrix(id)};
        case ExampleId::A5_FMEI_not_MEI:
            return {id, build_a5(), quarter_half(), claims_matrix(id)};
    }
    throw std::logic_error("unreachable");
}

SymbolicPoint shift(const SymbolicPoint& x, std::size_t p) { return x.shifted(p); }

const BlockLanguage& example_blocks() {
    static const BlockLanguage blocks({"ab", "cde"});
    return blocks;
}

SymbolicPoint example_block_tail() { return SymbolicPoint("", "ab"); }

BlockParse block_parse(const std::string& word) { return example_blocks().parse(word); }

Rat dist_to_block_language(const SymbolicPoint& x) { return example_blocks().distance(x); }

Schedule block_coding_schedule(const std::vector<std::size_t>& block_word) {
    Word head;
    for (std::size_t b : block_word) {
        if (b > 1) throw std::invalid_argument("block_coding_schedule: block index out of range");
        head.push_back(static_cast<std::uint8_t>(b));  // 0 ~ ab, 1 ~ cde
    }
    head.push_back(2);
    head.push_back(3);
    return splice(head, Schedule::constant(0));
}

std::vector<Schedule> block_candidate_pool(std::size_t depth) {
    std::vector<Schedule> pool;
    for (std::size_t u = 0; u < 4; ++u) pool.push_back(Schedule::constant(static_cast<std::uint8_t>(u)));
    std::vector<std::vector<std::size_t>> frontier{{}};
    for (std::size_t d = 0; d <= depth; ++d) {
        for (const auto& word : frontier) pool.push_back(block_coding_schedule(word));
        if (d == depth) break;
        std::vector<std::vector<std::size_t>> next;
        for (const auto& word : frontier) {
            for (std::size_t b = 0; b < 2; ++b) {
                auto w = word;
                w.push_back(b);
                next.push_back(std::move(w));
            }
        }
        frontier = std::move(next);
    }
    return pool;
}

Schedule excursion_splice_schedule(std::size_t n_zeros) {
    Word head = repeated(0, n_zeros);
    head.push_back(2);
    return splice(head, Schedule::constant(0));
}

Rat excursion_splice_delta(std::size_t n_zeros) {
    Rat pow5(1);
    for (std::size_t i = 0; i < n_zeros; ++i) pow5 *= 5;
    return 1 / (8 * pow5);
}

}  // namespace ivl
