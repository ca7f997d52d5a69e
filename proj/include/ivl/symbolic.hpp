// One-sided symbolic space: eventually periodic points, the shift, and the
// prefix automaton of a finite block language.
//
// A point is prefix . cycle^inf in canonical form (primitive cycle, prefix
// not absorbable into the cycle), so representation equality coincides with
// sequence equality and shift/equality cost O(|prefix| + |cycle|).
// The metric is 1/(i+1) at the first mismatch index i.

#pragma once

#include "ivl/rational.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ivl {

class SymbolicPoint {
public:
    SymbolicPoint() : cycle_("?") {}
    // Canonicalizes; cycle must be nonempty.
    SymbolicPoint(std::string prefix, std::string cycle);

    static SymbolicPoint constant(char symbol) { return SymbolicPoint("", std::string(1, symbol)); }

    const std::string& prefix() const { return prefix_; }
    const std::string& cycle() const { return cycle_; }

    char at(std::size_t k) const;
    std::string unroll(std::size_t n) const;

    SymbolicPoint shifted(std::size_t p) const;

    bool operator==(const SymbolicPoint& o) const = default;
    // Lexicographic on (prefix, cycle); deterministic container ordering only.
    bool operator<(const SymbolicPoint& o) const;

    std::string to_string() const;  // prefix(cycle)

private:
    std::string prefix_;
    std::string cycle_;
};

// First index where the sequences differ; nullopt when equal.
std::optional<std::size_t> first_mismatch(const SymbolicPoint& a, const SymbolicPoint& b);

// rho(a, b) = 0 when equal, else 1/(i+1).
Rat symbolic_distance(const SymbolicPoint& a, const SymbolicPoint& b);

struct BlockParse {
    std::vector<std::size_t> blocks;          // indices of completed blocks
    std::optional<std::size_t> failure_index; // first index off every concatenation
};

// Finite block set whose infinite concatenations form the target language.
// Blocks must begin with pairwise distinct symbols so the greedy parse is
// the unique one.
class BlockLanguage {
public:
    explicit BlockLanguage(std::vector<std::string> blocks);

    const std::vector<std::string>& blocks() const { return blocks_; }

    BlockParse parse(const std::string& word) const;

    // Length of the longest prefix of x extendable to a member point;
    // nullopt means every prefix extends (x is in the closed language).
    std::optional<std::size_t> longest_viable_prefix(const SymbolicPoint& x) const;

    bool contains(const SymbolicPoint& x) const;

    // 1/(L+1), or 0 for members.
    Rat distance(const SymbolicPoint& x) const;

    // Concatenation of blocks[indices] continued with tail.
    SymbolicPoint embed(const std::vector<std::size_t>& indices, const SymbolicPoint& tail) const;

private:
    // DFA state: 0 = block boundary, 1+ packed (block, offset); -1 dead.
    int step_state(int state, char symbol) const;

    std::vector<std::string> blocks_;
};

}  // namespace ivl
