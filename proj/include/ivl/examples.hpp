// The five benchmark systems: four piecewise interval systems on [0,1] and
// one shift system over {a,b,c,d,e} with the {ab, cde} block target, each
// bundled with its target set and the classification claims it realizes.

#pragma once

#include "ivl/classify.hpp"
#include "ivl/metrics.hpp"
#include "ivl/system.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ivl {

enum class ExampleId {
    A1_FEI_not_EI,
    A2_EIM_not_EI,
    A3_FEIM_not_FEI,
    A4_FMEI_not_FEIM_MEI,
    A5_FMEI_not_MEI,
};

std::string example_name(ExampleId id);  // "A1".."A5"
std::optional<ExampleId> parse_example(const std::string& name);
std::vector<ExampleId> all_examples();

enum class ClaimKind {
    SetCertified,        // the notion holds at every point
    RefutedAt,           // the notion fails at the given point
    CertifiedExceptAt,   // holds everywhere except the given point
    Unspecified,         // left open; resolved by the classification run
};

struct ExpectedClaim {
    Notion notion;
    ClaimKind kind = ClaimKind::Unspecified;
    std::optional<StatePoint> point;
};

struct ClaimsMatrix {
    std::string headline;  // e.g. "FEI but not EI"
    std::vector<ExpectedClaim> rows;
};

struct ExampleBundle {
    ExampleId id;
    ControlSystem system;
    TargetSet q;
    ClaimsMatrix claims;
};

ExampleBundle build_example(ExampleId id);

ClaimsMatrix claims_matrix(ExampleId id);

// sigma^p in canonical form.
SymbolicPoint shift(const SymbolicPoint& x, std::size_t p);

// Block machinery of the shift example.
const BlockLanguage& example_blocks();          // {ab, cde}
SymbolicPoint example_block_tail();             // (ab)^inf
BlockParse block_parse(const std::string& word);
Rat dist_to_block_language(const SymbolicPoint& x);

// Coding schedule that walks a block word inside Q and then parks on
// (ab)^inf via the reset maps: one control per block, then 2, 3, 0^inf.
Schedule block_coding_schedule(const std::vector<std::size_t>& block_word);

// Candidate pool for classifying the shift example: coding schedules for
// every block word of length <= depth, plus the constants.
std::vector<Schedule> block_candidate_pool(std::size_t depth);

// The splice used to certify the mean criterion at 3/8 in the three-symbol
// system: zeros steering toward 1/2, one excursion symbol, zeros after.
// The excursion to 1 lands at orbit index n_zeros + 1.
Schedule excursion_splice_schedule(std::size_t n_zeros);
// Ball radius for which that splice keeps the whole ball inside Q until the
// excursion: 1/(8 * 5^n_zeros).
Rat excursion_splice_delta(std::size_t n_zeros);

}  // namespace ivl
