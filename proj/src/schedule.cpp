#include "ivl/schedule.hpp"

#include <stdexcept>

namespace ivl {

std::string word_to_string(const Word& w) {
    std::string out;
    out.reserve(w.size());
    for (std::uint8_t u : w) out.push_back(static_cast<char>('0' + u));
    return out;
}

Word repeated(std::uint8_t u, std::size_t n) { return Word(n, u); }

Schedule Schedule::finite(Word w) {
    Schedule s;
    s.prefix_ = std::move(w);
    return s;
}

Schedule Schedule::constant(std::uint8_t u) {
    Schedule s;
    s.cycle_ = {u};
    return s;
}

Schedule Schedule::periodic(Word prefix, Word cycle) {
    if (cycle.empty()) throw std::invalid_argument("Schedule::periodic: empty cycle");
    Schedule s;
    s.prefix_ = std::move(prefix);
    s.cycle_ = std::move(cycle);
    return s;
}

std::uint8_t Schedule::at(std::size_t k) const {
    if (k < prefix_.size()) return prefix_[k];
    if (cycle_.empty())
        throw std::out_of_range("Schedule::at: index past end of finite schedule");
    return cycle_[(k - prefix_.size()) % cycle_.size()];
}

Word Schedule::first(std::size_t n) const {
    Word out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) out.push_back(at(k));
    return out;
}

bool Schedule::operator<(const Schedule& o) const {
    if (prefix_ != o.prefix_) return prefix_ < o.prefix_;
    return cycle_ < o.cycle_;
}

std::string Schedule::to_string() const {
    std::string out = word_to_string(prefix_);
    if (!cycle_.empty()) out += "(" + word_to_string(cycle_) + ")";
    return out;
}

Schedule splice(const Word& head, const Schedule& tail) {
    Word prefix = head;
    prefix.insert(prefix.end(), tail.prefix().begin(), tail.prefix().end());
    if (tail.is_infinite()) return Schedule::periodic(std::move(prefix), tail.cycle());
    return Schedule::finite(std::move(prefix));
}

}  // namespace ivl
