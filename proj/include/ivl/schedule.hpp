// Control words and eventually periodic schedules over a finite alphabet.
//
// Infinite schedules are restricted to prefix . cycle^inf, which covers every
// control the classification search needs (constants, splices, block codings)
// while keeping indexing total.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ivl {

using Word = std::vector<std::uint8_t>;

std::string word_to_string(const Word& w);
Word repeated(std::uint8_t u, std::size_t n);

class Schedule {
public:
    Schedule() = default;

    static Schedule finite(Word w);
    static Schedule constant(std::uint8_t u);
    static Schedule periodic(Word prefix, Word cycle);

    bool is_infinite() const { return !cycle_.empty(); }
    // Number of indexable symbols for finite schedules.
    std::size_t finite_length() const { return prefix_.size(); }

    std::uint8_t at(std::size_t k) const;
    bool indexable(std::size_t k) const { return is_infinite() || k < prefix_.size(); }

    Word first(std::size_t n) const;

    const Word& prefix() const { return prefix_; }
    const Word& cycle() const { return cycle_; }

    bool operator==(const Schedule& o) const = default;
    bool operator<(const Schedule& o) const;

    std::string to_string() const;  // prefix(cycle)

private:
    Word prefix_;
    Word cycle_;
};

// head . tail: first |head| symbols are head, then tail from its start.
Schedule splice(const Word& head, const Schedule& tail);

}  // namespace ivl
