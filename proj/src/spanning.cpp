#include "ivl/spanning.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace ivl {

namespace {

// Contiguous-chunk parallel loop with deterministic output slots.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& body) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    unsigned workers = std::min<std::size_t>(jobs, n);
    std::vector<std::thread> threads;
    std::exception_ptr first_error = nullptr;
    std::mutex error_mutex;
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned t = 0; t < workers; ++t) {
        std::size_t lo = t * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        threads.emplace_back([&, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                std::lock_guard<std::mutex> guard(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : threads) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

struct TrackedPoint {
    std::size_t index;
    StatePoint state;
    Scalar sum;  // running distance sum (mean mode)
};

struct Node {
    Word applied;  // symbols actually consumed; checks cover phi(0..|applied|)
    std::vector<TrackedPoint> pts;
    Bits row;
    bool any_indeterminate = false;
    std::size_t multiplicity = 1;  // merged word-class size
};

// Criterion check for the state reached at step k (0-based).
// Returns Tri::True when the point stays in the kernel.
Tri kernel_check(const TargetSet& q, const StatePoint& state, Scalar& sum, std::size_t k,
                 const Rat& eps, KernelMode mode) {
    Scalar d = q.distance(state);
    if (mode == KernelMode::Plain) return d.lt(eps);
    sum = sum + d;
    return sum.div_int(static_cast<long>(k) + 1).lt(eps);
}

std::string state_key(const StatePoint& s) {
    if (std::holds_alternative<Scalar>(s)) {
        const Scalar& sc = std::get<Scalar>(s);
        return rat_to_string(sc.lo()) + "|" + rat_to_string(sc.hi());
    }
    const SymbolicPoint& p = std::get<SymbolicPoint>(s);
    return p.prefix() + "(" + p.cycle() + ")";
}

std::string node_merge_key(const Node& node, KernelMode mode) {
    std::ostringstream os;
    for (const TrackedPoint& tp : node.pts) {
        os << tp.index << '=' << state_key(tp.state);
        if (mode == KernelMode::Mean)
            os << '+' << rat_to_string(tp.sum.lo()) << '~' << rat_to_string(tp.sum.hi());
        os << ';';
    }
    return os.str();
}

Word padded_representative(const Word& applied) {
    Word w = applied;
    w.push_back(0);
    return w;
}

}  // namespace

std::string kernel_mode_name(KernelMode mode) {
    return mode == KernelMode::Plain ? "plain" : "mean";
}

std::string cover_tag_name(CoverTag tag) {
    switch (tag) {
        case CoverTag::Exact: return "exact";
        case CoverTag::GreedyUpper: return "greedy-upper";
        case CoverTag::LowerBound: return "lower-bound";
    }
    return "?";
}

TargetGrid TargetGrid::intervals(const IntervalUnion& q, const Rat& step) {
    if (step <= 0) throw std::invalid_argument("TargetGrid: step > 0");
    TargetGrid grid;
    grid.resolution = step;
    for (const auto& [lo, hi] : q.parts()) {
        Rat v = lo;
        while (v < hi) {
            grid.points.push_back(Scalar::exact(v));
            v += step;
        }
        grid.points.push_back(Scalar::exact(hi));
    }
    return grid;
}

TargetGrid TargetGrid::blocks(const BlockLanguage& q, std::size_t max_blocks,
                              const SymbolicPoint& tail) {
    TargetGrid grid;
    grid.resolution = Rat(static_cast<long>(max_blocks));
    std::vector<SymbolicPoint> points;
    std::vector<std::vector<std::size_t>> frontier{{}};
    for (std::size_t depth = 0; depth <= max_blocks; ++depth) {
        for (const auto& seq : frontier) points.push_back(q.embed(seq, tail));
        if (depth == max_blocks) break;
        std::vector<std::vector<std::size_t>> next;
        next.reserve(frontier.size() * q.blocks().size());
        for (const auto& seq : frontier) {
            for (std::size_t b = 0; b < q.blocks().size(); ++b) {
                auto extended = seq;
                extended.push_back(b);
                next.push_back(std::move(extended));
            }
        }
        frontier = std::move(next);
    }
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    for (auto& p : points) grid.points.push_back(std::move(p));
    return grid;
}

std::vector<const KernelRow*> KernelTable::rows_at(std::size_t n) const {
    std::vector<const KernelRow*> out;
    for (const KernelRow& r : rows) {
        if (r.word.size() == n) out.push_back(&r);
    }
    return out;
}

Bits kernel_row(const ControlSystem& sys, const TargetGrid& grid, const TargetSet& q,
                const Word& word, const Rat& eps, KernelMode mode, bool* any_indeterminate) {
    if (word.empty()) throw std::invalid_argument("kernel_row: |w| >= 1");
    if (eps <= 0) throw std::invalid_argument("kernel_row: eps > 0");
    std::size_t n = word.size();
    Bits bits(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        StatePoint state = grid.points[i];
        Scalar sum = Scalar::exact(Rat(0));
        bool ok = true;
        for (std::size_t k = 0; k < n; ++k) {
            Tri t = kernel_check(q, state, sum, k, eps, mode);
            if (t != Tri::True) {
                ok = false;
                if (t == Tri::Ambiguous && any_indeterminate) *any_indeterminate = true;
                break;
            }
            if (k + 1 < n) state = sys.step(state, word[k]);
        }
        if (ok) bits.set(i);
    }
    return bits;
}

namespace {

// Shared driver: materializes one row class per live node and level,
// invoking sink(level, rows) as each horizon completes. Nodes whose rows
// coincide and whose tracked futures coincide are merged with multiplicity,
// which is sound because equal (state, running-sum) profiles have equal
// kernels at every later horizon.
struct LevelRows {
    std::vector<KernelRow> rows;
    bool complete_so_far = true;
};

void enumerate_levels(const ControlSystem& sys, const TargetGrid& grid, const TargetSet& q,
                      const Rat& eps, std::size_t n_max, KernelMode mode,
                      const EnumerationBudget& budget, unsigned jobs, KernelTable& table,
                      const std::function<void(std::size_t, const std::vector<KernelRow>&, bool)>& sink) {
    if (n_max == 0) throw std::invalid_argument("enumerate_words: n_max >= 1");
    if (eps <= 0) throw std::invalid_argument("enumerate_words: eps > 0");
    std::size_t alphabet = sys.alphabet_size();

    table.epsilon = eps;
    table.mode = mode;
    table.n_max = n_max;
    table.grid_size = grid.size();
    table.complete = true;
    table.pruned_count = 0;
    table.dedup_collapsed = 0;

    // Root: empty applied word, phi(0) checked.
    Node root;
    root.row = Bits(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        TrackedPoint tp{i, grid.points[i], Scalar::exact(Rat(0))};
        Tri t = kernel_check(q, tp.state, tp.sum, 0, eps, mode);
        if (t == Tri::True) {
            root.row.set(i);
            root.pts.push_back(std::move(tp));
        } else if (t == Tri::Ambiguous) {
            root.any_indeterminate = true;
        }
    }
    std::vector<Node> level;
    level.push_back(std::move(root));

    std::size_t total_nodes = 1;
    for (std::size_t n = 1; n <= n_max; ++n) {
        // Emit rows for horizon n from nodes with |applied| = n-1.
        std::vector<KernelRow> rows;
        rows.reserve(level.size());
        for (const Node& node : level) {
            KernelRow r;
            r.word = padded_representative(node.applied);
            r.row = node.row;
            r.multiplicity = node.multiplicity * alphabet;
            r.any_indeterminate = node.any_indeterminate;
            rows.push_back(std::move(r));
        }
        if (n == n_max) {
            // Final-horizon dedup by identical rows, lex-least representative.
            std::map<Bits, std::size_t> seen;
            std::vector<KernelRow> merged;
            for (KernelRow& r : rows) {
                auto [it, fresh] = seen.try_emplace(r.row, merged.size());
                if (fresh) {
                    merged.push_back(std::move(r));
                } else {
                    merged[it->second].multiplicity += r.multiplicity;
                    merged[it->second].any_indeterminate |= r.any_indeterminate;
                    ++table.dedup_collapsed;
                }
            }
            rows = std::move(merged);
        }
        sink(n, rows, table.complete);
        for (KernelRow& r : rows) table.rows.push_back(std::move(r));
        if (n == n_max || level.empty()) break;

        // Extend each node by every symbol; check the newly reached state.
        std::vector<std::vector<Node>> children(level.size());
        parallel_for(level.size(), jobs, [&](std::size_t idx) {
            const Node& parent = level[idx];
            for (std::size_t u = 0; u < alphabet; ++u) {
                Node child;
                child.applied = parent.applied;
                child.applied.push_back(static_cast<std::uint8_t>(u));
                child.multiplicity = parent.multiplicity;
                child.row = Bits(grid.size());
                child.any_indeterminate = parent.any_indeterminate;
                for (const TrackedPoint& tp : parent.pts) {
                    TrackedPoint next{tp.index, sys.step(tp.state, static_cast<std::uint8_t>(u)),
                                      tp.sum};
                    Tri t = kernel_check(q, next.state, next.sum, child.applied.size(), eps, mode);
                    if (t == Tri::True) {
                        child.row.set(tp.index);
                        child.pts.push_back(std::move(next));
                    } else if (t == Tri::Ambiguous) {
                        child.any_indeterminate = true;
                    }
                }
                children[idx].push_back(std::move(child));
            }
        });

        std::vector<Node> next_level;
        std::map<std::string, std::size_t> merge_index;
        for (auto& group : children) {
            for (Node& child : group) {
                ++total_nodes;
                if (!child.row.any()) {
                    table.pruned_count += child.multiplicity;
                    continue;
                }
                std::string key = node_merge_key(child, mode);
                auto [it, fresh] = merge_index.try_emplace(std::move(key), next_level.size());
                if (fresh) {
                    next_level.push_back(std::move(child));
                } else {
                    next_level[it->second].multiplicity += child.multiplicity;
                }
            }
        }
        if (next_level.size() > budget.max_live_words || total_nodes > budget.max_total_nodes) {
            table.complete = false;
            break;
        }
        level = std::move(next_level);
    }
}

}  // namespace

KernelTable enumerate_words(const ControlSystem& sys, const TargetGrid& grid, const TargetSet& q,
                            const Rat& eps, std::size_t n_max, KernelMode mode,
                            const EnumerationBudget& budget, unsigned jobs) {
    KernelTable table;
    enumerate_levels(sys, grid, q, eps, n_max, mode, budget, jobs, table,
                     [](std::size_t, const std::vector<KernelRow>&, bool) {});
    return table;
}

namespace {

std::size_t cover_lower_bound(const std::vector<Bits>& rows, std::size_t universe,
                              const Bits& covered) {
    std::size_t remaining = 0;
    std::size_t max_pop = 1;
    for (std::size_t e = 0; e < universe; ++e)
        if (!covered.test(e)) ++remaining;
    if (remaining == 0) return 0;
    for (const Bits& r : rows)
        max_pop = std::max(max_pop, std::max<std::size_t>(r.count_uncovered_in(covered), 1));
    std::size_t lb_pop = (remaining + max_pop - 1) / max_pop;

    // Pairwise-disjoint witnesses: elements whose candidate-row sets share
    // no row each demand a distinct row.
    std::vector<std::vector<std::size_t>> covering(universe);
    for (std::size_t ri = 0; ri < rows.size(); ++ri) {
        for (std::size_t e = 0; e < universe; ++e)
            if (!covered.test(e) && rows[ri].test(e)) covering[e].push_back(ri);
    }
    std::vector<std::size_t> order;
    for (std::size_t e = 0; e < universe; ++e)
        if (!covered.test(e)) order.push_back(e);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (covering[a].size() != covering[b].size())
            return covering[a].size() < covering[b].size();
        return a < b;
    });
    std::vector<bool> row_used(rows.size(), false);
    std::size_t lb_disjoint = 0;
    for (std::size_t e : order) {
        bool clash = false;
        for (std::size_t ri : covering[e])
            if (row_used[ri]) { clash = true; break; }
        if (clash) continue;
        ++lb_disjoint;
        for (std::size_t ri : covering[e]) row_used[ri] = true;
    }
    return std::max(lb_pop, lb_disjoint);
}

std::vector<std::size_t> greedy_cover(const std::vector<Bits>& rows, std::size_t universe) {
    Bits covered(universe);
    std::vector<std::size_t> chosen;
    std::size_t remaining = universe;
    while (remaining > 0) {
        std::size_t best = rows.size();
        std::size_t best_gain = 0;
        for (std::size_t ri = 0; ri < rows.size(); ++ri) {
            std::size_t gain = rows[ri].count_uncovered_in(covered);
            if (gain > best_gain) {
                best = ri;
                best_gain = gain;
            }
        }
        if (best_gain == 0) throw std::logic_error("greedy_cover: coverage lost");
        chosen.push_back(best);
        covered.or_with(rows[best]);
        remaining -= best_gain;
    }
    return chosen;
}

struct BnB {
    const std::vector<Bits>& rows;
    std::size_t universe;
    std::vector<std::size_t> best;
    std::vector<std::size_t> current;

    BnB(const std::vector<Bits>& r, std::size_t u) : rows(r), universe(u) {}

    void run() {
        best = greedy_cover(rows, universe);
        Bits covered(universe);
        descend(covered, universe);
    }

    void descend(const Bits& covered, std::size_t remaining) {
        if (remaining == 0) {
            if (current.size() < best.size()) best = current;
            return;
        }
        if (current.size() + 1 >= best.size()) {
            // One more row can only help if it finishes the cover.
            if (current.size() + 1 == best.size()) {
                for (std::size_t ri = 0; ri < rows.size(); ++ri) {
                    if (rows[ri].count_uncovered_in(covered) == remaining) {
                        current.push_back(ri);
                        best = current;
                        current.pop_back();
                        return;
                    }
                }
            }
            return;
        }
        if (current.size() + cover_lower_bound(rows, universe, covered) >= best.size()) return;

        // Branch on the uncovered element with the fewest candidate rows.
        std::size_t pivot = universe;
        std::size_t pivot_count = SIZE_MAX;
        for (std::size_t e = 0; e < universe; ++e) {
            if (covered.test(e)) continue;
            std::size_t c = 0;
            for (const Bits& r : rows)
                if (r.test(e)) ++c;
            if (c < pivot_count) {
                pivot_count = c;
                pivot = e;
            }
        }
        std::vector<std::size_t> candidates;
        for (std::size_t ri = 0; ri < rows.size(); ++ri)
            if (rows[ri].test(pivot)) candidates.push_back(ri);
        std::sort(candidates.begin(), candidates.end(), [&](std::size_t a, std::size_t b) {
            std::size_t ga = rows[a].count_uncovered_in(covered);
            std::size_t gb = rows[b].count_uncovered_in(covered);
            if (ga != gb) return ga > gb;
            return a < b;
        });
        for (std::size_t ri : candidates) {
            Bits next = covered;
            next.or_with(rows[ri]);
            current.push_back(ri);
            descend(next, universe - next.count());
            current.pop_back();
        }
    }
};

}  // namespace

RawCover solve_cover(const std::vector<Bits>& rows, std::size_t universe,
                     std::size_t exact_threshold) {
    Bits all(universe);
    for (const Bits& r : rows) all.or_with(r);
    for (std::size_t e = 0; e < universe; ++e) {
        if (!all.test(e))
            throw NoSpanningSet("element " + std::to_string(e) + " is covered by no row", e);
    }
    RawCover out;
    out.lower_bound = cover_lower_bound(rows, universe, Bits(universe));
    if (rows.size() <= exact_threshold) {
        BnB solver(rows, universe);
        solver.run();
        out.chosen = solver.best;
        out.size = solver.best.size();
        out.tag = CoverTag::Exact;
    } else {
        out.chosen = greedy_cover(rows, universe);
        out.size = out.chosen.size();
        out.tag = CoverTag::GreedyUpper;
    }
    std::sort(out.chosen.begin(), out.chosen.end());
    return out;
}

CoverSolution min_cover(const KernelTable& table, std::size_t n, std::size_t exact_threshold) {
    auto row_ptrs = table.rows_at(n);
    std::vector<Bits> rows;
    std::vector<Word> words;
    {
        std::map<Bits, std::size_t> seen;
        for (const KernelRow* r : row_ptrs) {
            if (!r->row.any()) continue;
            auto [it, fresh] = seen.try_emplace(r->row, rows.size());
            if (fresh) {
                rows.push_back(r->row);
                words.push_back(r->word);
            } else if (r->word < words[it->second]) {
                words[it->second] = r->word;
            }
        }
    }
    Bits all(table.grid_size);
    for (const Bits& r : rows) all.or_with(r);
    for (std::size_t e = 0; e < table.grid_size; ++e) {
        if (!all.test(e))
            throw NoSpanningSet("grid point " + std::to_string(e) +
                                    " is covered by no enumerated word at horizon " +
                                    std::to_string(n),
                                e);
    }
    if (rows.size() <= exact_threshold && !table.complete)
        throw IncompleteTable("exact cover refused: kernel table is budget-truncated");

    RawCover raw = solve_cover(rows, table.grid_size, exact_threshold);
    CoverSolution out;
    for (std::size_t ri : raw.chosen) out.chosen.push_back(words[ri]);
    out.size = raw.size;
    out.tag = raw.tag;
    out.lower_bound = raw.lower_bound;
    std::sort(out.chosen.begin(), out.chosen.end());
    return out;
}

TargetGrid refine_grid(const TargetGrid& grid, const TargetSet& q) {
    if (q.is_interval()) return TargetGrid::intervals(q.interval_union(), grid.resolution / 2);
    long depth = static_cast<long>(rat_num(grid.resolution));
    const BlockLanguage& blocks = q.block_language();
    SymbolicPoint tail("", blocks.blocks().front());
    return TargetGrid::blocks(blocks, static_cast<std::size_t>(depth) + 1, tail);
}

ComplexityProfile complexity_profile(const ControlSystem& sys, const TargetSet& q,
                                     const TargetGrid& grid, const Rat& eps, std::size_t n_max,
                                     KernelMode mode, const EnumerationBudget& budget,
                                     std::size_t exact_threshold, unsigned jobs,
                                     KernelTable* table_out) {
    KernelTable table;
    ComplexityProfile profile;
    profile.epsilon = eps;
    profile.mode = mode;
    TargetGrid refined = refine_grid(grid, q);

    enumerate_levels(sys, grid, q, eps, n_max, mode, budget, jobs, table,
                     [&](std::size_t n, const std::vector<KernelRow>& rows, bool complete) {
                         KernelTable slice;
                         slice.epsilon = eps;
                         slice.mode = mode;
                         slice.n_max = n;
                         slice.grid_size = grid.size();
                         slice.complete = complete;
                         slice.rows.assign(rows.begin(), rows.end());
                         CoverSolution cover = min_cover(slice, n, exact_threshold);
                         if (cover.tag == CoverTag::Exact) {
                             cover.refinement_checked = true;
                             Bits covered(refined.size());
                             for (const Word& w : cover.chosen)
                                 covered.or_with(kernel_row(sys, refined, q, w, eps, mode));
                             cover.refinement_ok = covered.count() == refined.size();
                             if (!cover.refinement_ok) cover.tag = CoverTag::GreedyUpper;
                         }
                         profile.entries.push_back(ProfileEntry{n, cover.size, cover.tag});
                     });
    if (table_out) *table_out = std::move(table);
    return profile;
}

EntropyEstimate entropy_estimate(const ComplexityProfile& profile) {
    std::size_t exact_count = 0;
    for (const auto& e : profile.entries)
        if (e.tag == CoverTag::Exact) ++exact_count;
    if (exact_count < 4)
        throw std::invalid_argument("entropy_estimate: needs >= 4 exact entries");
    EntropyEstimate out;
    out.exact_only = exact_count == profile.entries.size();
    for (const auto& e : profile.entries)
        out.log_r_over_n.push_back(std::log(static_cast<double>(e.r)) / static_cast<double>(e.n));
    // Least-squares slope of log r(n) against n over the tail half.
    std::size_t start = profile.entries.size() / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (std::size_t i = start; i < profile.entries.size(); ++i) {
        double x = static_cast<double>(profile.entries[i].n);
        double y = std::log(static_cast<double>(profile.entries[i].r));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    double denom = m * sxx - sx * sx;
    out.tail_slope = denom == 0 ? 0.0 : (m * sxy - sx * sy) / denom;
    return out;
}

std::string bounded_verdict_name(BoundedComplexityVerdict::Kind kind) {
    switch (kind) {
        case BoundedComplexityVerdict::Kind::BoundedEvidence: return "BoundedEvidence";
        case BoundedComplexityVerdict::Kind::GrowthEvidence: return "GrowthEvidence";
        case BoundedComplexityVerdict::Kind::Inconclusive: return "Inconclusive";
    }
    return "?";
}

BoundedComplexityVerdict bounded_complexity_verdict(const ComplexityProfile& profile) {
    std::vector<ProfileEntry> exact;
    for (const auto& e : profile.entries)
        if (e.tag == CoverTag::Exact) exact.push_back(e);
    if (exact.size() < 8)
        return {BoundedComplexityVerdict::Kind::Inconclusive, 0};
    std::size_t start = exact.size() / 2;
    bool constant_tail = true;
    for (std::size_t i = start + 1; i < exact.size(); ++i)
        if (exact[i].r != exact[start].r) constant_tail = false;
    if (constant_tail)
        return {BoundedComplexityVerdict::Kind::BoundedEvidence, exact[start].r};
    std::size_t strict_rises = 0;
    for (std::size_t i = std::max<std::size_t>(start, 1); i < exact.size(); ++i)
        if (exact[i].r > exact[i - 1].r) ++strict_rises;
    if (strict_rises >= 3)
        return {BoundedComplexityVerdict::Kind::GrowthEvidence, 0};
    return {BoundedComplexityVerdict::Kind::Inconclusive, 0};
}

}  // namespace ivl
