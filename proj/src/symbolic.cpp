#include "ivl/symbolic.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace ivl {

namespace {

// Smallest d dividing n with w = root^(n/d).
std::string primitive_root(const std::string& w) {
    std::size_t n = w.size();
    for (std::size_t d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        bool ok = true;
        for (std::size_t i = d; i < n && ok; ++i) ok = (w[i] == w[i - d]);
        if (ok) return w.substr(0, d);
    }
    return w;
}

}  // namespace

SymbolicPoint::SymbolicPoint(std::string prefix, std::string cycle)
    : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
    if (cycle_.empty()) throw std::invalid_argument("SymbolicPoint: empty cycle");
    cycle_ = primitive_root(cycle_);
    // Absorb the prefix tail into the cycle: popping the last prefix symbol
    // while it matches the cycle's last symbol rotates the cycle right.
    while (!prefix_.empty() && prefix_.back() == cycle_.back()) {
        prefix_.pop_back();
        cycle_.insert(cycle_.begin(), cycle_.back());
        cycle_.pop_back();
    }
}

char SymbolicPoint::at(std::size_t k) const {
    if (k < prefix_.size()) return prefix_[k];
    return cycle_[(k - prefix_.size()) % cycle_.size()];
}

std::string SymbolicPoint::unroll(std::size_t n) const {
    std::string out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) out.push_back(at(k));
    return out;
}

SymbolicPoint SymbolicPoint::shifted(std::size_t p) const {
    if (p == 0) return *this;
    if (p < prefix_.size()) return SymbolicPoint(prefix_.substr(p), cycle_);
    std::size_t r = (p - prefix_.size()) % cycle_.size();
    return SymbolicPoint("", cycle_.substr(r) + cycle_.substr(0, r));
}

bool SymbolicPoint::operator<(const SymbolicPoint& o) const {
    if (prefix_ != o.prefix_) return prefix_ < o.prefix_;
    return cycle_ < o.cycle_;
}

std::string SymbolicPoint::to_string() const { return prefix_ + "(" + cycle_ + ")"; }

std::optional<std::size_t> first_mismatch(const SymbolicPoint& a, const SymbolicPoint& b) {
    // Eventually periodic sequences agreeing through the joint preperiod plus
    // one lcm of the periods agree everywhere.
    std::size_t pre = std::max(a.prefix().size(), b.prefix().size());
    std::size_t l = std::lcm(a.cycle().size(), b.cycle().size());
    std::size_t n = pre + l;
    for (std::size_t k = 0; k < n; ++k) {
        if (a.at(k) != b.at(k)) return k;
    }
    return std::nullopt;
}

Rat symbolic_distance(const SymbolicPoint& a, const SymbolicPoint& b) {
    auto i = first_mismatch(a, b);
    if (!i) return Rat(0);
    return Rat(1, static_cast<long>(*i) + 1);
}

BlockLanguage::BlockLanguage(std::vector<std::string> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw std::invalid_argument("BlockLanguage: no blocks");
    std::set<char> heads;
    for (const auto& blk : blocks_) {
        if (blk.empty()) throw std::invalid_argument("BlockLanguage: empty block");
        if (!heads.insert(blk[0]).second)
            throw std::invalid_argument("BlockLanguage: blocks must start with distinct symbols");
    }
}

int BlockLanguage::step_state(int state, char symbol) const {
    if (state == 0) {
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            if (blocks_[b][0] == symbol)
                return blocks_[b].size() == 1 ? 0 : static_cast<int>(b * 16 + 1);
        }
        return -1;
    }
    std::size_t b = static_cast<std::size_t>(state) / 16;
    std::size_t off = static_cast<std::size_t>(state) % 16;
    if (blocks_[b][off] != symbol) return -1;
    return off + 1 == blocks_[b].size() ? 0 : static_cast<int>(b * 16 + off + 1);
}

BlockParse BlockLanguage::parse(const std::string& word) const {
    BlockParse out;
    int state = 0;
    for (std::size_t i = 0; i < word.size(); ++i) {
        int next = step_state(state, word[i]);
        if (next < 0) {
            out.failure_index = i;
            return out;
        }
        state = next;
        if (state == 0) {
            // A block just completed; recover which from the symbol window.
            for (std::size_t b = 0; b < blocks_.size(); ++b) {
                std::size_t len = blocks_[b].size();
                if (len <= i + 1 && word.compare(i + 1 - len, len, blocks_[b]) == 0) {
                    out.blocks.push_back(b);
                    break;
                }
            }
        }
    }
    return out;
}

std::optional<std::size_t> BlockLanguage::longest_viable_prefix(const SymbolicPoint& x) const {
    int state = 0;
    std::size_t consumed = 0;
    for (char ch : x.prefix()) {
        int next = step_state(state, ch);
        if (next < 0) return consumed;
        state = next;
        ++consumed;
    }
    // On the cycle, a repeated (dfa state, cycle position) pair proves the
    // run survives forever.
    std::set<std::pair<int, std::size_t>> seen;
    std::size_t pos = 0;
    while (seen.insert({state, pos}).second) {
        int next = step_state(state, x.cycle()[pos]);
        if (next < 0) return consumed;
        state = next;
        ++consumed;
        pos = (pos + 1) % x.cycle().size();
    }
    return std::nullopt;
}

bool BlockLanguage::contains(const SymbolicPoint& x) const {
    return !longest_viable_prefix(x).has_value();
}

Rat BlockLanguage::distance(const SymbolicPoint& x) const {
    auto viable = longest_viable_prefix(x);
    if (!viable) return Rat(0);
    return Rat(1, static_cast<long>(*viable) + 1);
}

SymbolicPoint BlockLanguage::embed(const std::vector<std::size_t>& indices,
                                   const SymbolicPoint& tail) const {
    std::string head;
    for (std::size_t b : indices) head += blocks_.at(b);
    return SymbolicPoint(head + tail.prefix(), tail.cycle());
}

}  // namespace ivl
