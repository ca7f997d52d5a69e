#include "ivl/classify.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace ivl {

bool notion_single_omega(Notion n) {
    return n == Notion::EI || n == Notion::EIM || n == Notion::MEI;
}

Criterion notion_criterion(Notion n) {
    switch (n) {
        case Notion::EI:
        case Notion::FEI: return Criterion::Sup;
        case Notion::EIM:
        case Notion::FEIM: return Criterion::AllNMean;
        case Notion::MEI:
        case Notion::FMEI: return Criterion::LimsupMean;
        case Notion::FMLS: return Criterion::Density;
    }
    throw std::logic_error("unreachable");
}

std::string notion_name(Notion n) {
    switch (n) {
        case Notion::EI: return "EI";
        case Notion::EIM: return "EIM";
        case Notion::MEI: return "MEI";
        case Notion::FEI: return "FEI";
        case Notion::FEIM: return "FEIM";
        case Notion::FMEI: return "FMEI";
        case Notion::FMLS: return "FMLS";
    }
    throw std::logic_error("unreachable");
}

std::optional<Notion> parse_notion(const std::string& name) {
    for (Notion n : {Notion::EI, Notion::EIM, Notion::MEI, Notion::FEI, Notion::FEIM,
                     Notion::FMEI, Notion::FMLS}) {
        if (notion_name(n) == name) return n;
    }
    return std::nullopt;
}

std::string verdict_kind_name(Verdict::Kind kind) {
    switch (kind) {
        case Verdict::Kind::Certified: return "Certified";
        case Verdict::Kind::RefutedAtResolution: return "RefutedAtResolution";
        case Verdict::Kind::Inconclusive: return "Inconclusive";
    }
    throw std::logic_error("unreachable");
}

CriterionOutcome evaluate_criterion(const ControlSystem& sys, const TargetSet& q,
                                    const StatePoint& y, const Schedule& w, Criterion crit,
                                    const Rat& eps, const CriterionParams& p) {
    CriterionOutcome out;
    switch (crit) {
        case Criterion::Sup: {
            StatePoint state = y;
            for (std::size_t k = 0; k <= p.horizon; ++k) {
                Scalar d = q.distance(state);
                Tri t = d.lt(eps);
                if (t != Tri::True) {
                    out.pass = t;
                    out.violated_index = k;
                    out.violated_value_lo = d.lo();
                    return out;
                }
                if (k < p.horizon) state = sys.step(state, w.at(k));
            }
            out.pass = Tri::True;
            return out;
        }
        case Criterion::AllNMean: {
            StatePoint state = y;
            Scalar sum = Scalar::exact(Rat(0));
            for (std::size_t k = 1; k <= p.horizon + 1; ++k) {
                sum = sum + q.distance(state);
                Scalar mean = sum.div_int(static_cast<long>(k));
                Tri t = mean.lt(eps);
                if (t != Tri::True) {
                    out.pass = t;
                    out.violated_index = k;
                    out.violated_value_lo = mean.lo();
                    return out;
                }
                if (k <= p.horizon) state = sys.step(state, w.at(k - 1));
            }
            out.pass = Tri::True;
            return out;
        }
        case Criterion::LimsupMean: {
            LimsupEstimate est = limsup_mean_estimate(sys, y, w, q, p.burn_in, p.window);
            out.trend_ok = est.tail_nonincreasing;
            out.violated_index = p.burn_in + p.window;
            out.violated_value_lo = est.estimate.lo();
            out.pass = est.estimate.lt(eps);
            return out;
        }
        case Criterion::Density: {
            ExceptionDensity ed = exception_density(sys, y, w, q, eps, p.density_horizon);
            out.violated_index = ed.exceptional_count;
            out.violated_value_lo = ed.density;
            if (ed.density < eps) {
                out.pass = Tri::True;
            } else if (ed.had_ambiguous) {
                out.pass = Tri::Ambiguous;  // over-counted; not certain evidence
            } else {
                out.pass = Tri::False;
            }
            return out;
        }
    }
    throw std::logic_error("unreachable");
}

std::vector<Schedule> default_candidate_pool(std::size_t alphabet, std::size_t splice_max) {
    std::vector<Schedule> pool;
    for (std::size_t u = 0; u < alphabet; ++u)
        pool.push_back(Schedule::constant(static_cast<std::uint8_t>(u)));
    for (std::size_t u = 0; u < alphabet; ++u) {
        for (std::size_t v = 0; v < alphabet; ++v) {
            for (std::size_t t = 0; t < alphabet; ++t) {
                for (std::size_t m = 1; m <= splice_max; ++m) {
                    Word head = repeated(static_cast<std::uint8_t>(u), m);
                    head.push_back(static_cast<std::uint8_t>(v));
                    Schedule s = splice(head, Schedule::constant(static_cast<std::uint8_t>(t)));
                    if (std::find(pool.begin(), pool.end(), s) == pool.end())
                        pool.push_back(std::move(s));
                }
            }
        }
    }
    return pool;
}

SearchBudget default_budget(const ControlSystem& sys) {
    SearchBudget b;
    for (int k = 4; k <= 10; ++k) b.delta_ladder.push_back(Rat(1, 1 << k));
    b.candidates = default_candidate_pool(sys.alphabet_size(), 12);
    return b;
}

std::vector<StatePoint> ball_points(const TargetSet& q, const StatePoint& center,
                                    const Rat& delta, const Rat& grid_h,
                                    const std::vector<StatePoint>& symbolic_base) {
    if (delta <= 0) throw std::invalid_argument("ball_points: delta > 0");
    std::vector<StatePoint> out;
    if (q.is_interval()) {
        const Scalar& c = std::get<Scalar>(center);
        Rat cx = c.exact_value();
        std::set<Rat> vals;
        if (q.contains(center)) vals.insert(cx);
        // h-grid offsets inside the open ball, strided to at most 16 per side.
        Rat stride = grid_h;
        while (delta / stride > 16) stride *= 2;
        for (int sign : {1, -1}) {
            for (long j = 1;; ++j) {
                Rat off = stride * j;
                if (off >= delta) break;
                Rat v = cx + off * sign;
                if (v < 0 || v > 1) continue;
                if (q.contains(Scalar::exact(v))) vals.insert(v);
            }
        }
        // Quarter-delta offsets keep tiny construction balls two-sided.
        for (int num : {1, 2, 3}) {
            for (int sign : {1, -1}) {
                Rat v = cx + delta * Rat(num, 4) * sign;
                if (v < 0 || v > 1) continue;
                if (q.contains(Scalar::exact(v))) vals.insert(v);
            }
        }
        for (const Rat& v : vals) out.push_back(Scalar::exact(v));
        return out;
    }
    const SymbolicPoint& c = std::get<SymbolicPoint>(center);
    out.push_back(center);
    for (const StatePoint& y : symbolic_base) {
        const SymbolicPoint& p = std::get<SymbolicPoint>(y);
        if (p == c) continue;
        if (symbolic_distance(c, p) < delta) out.push_back(y);
    }
    return out;
}

namespace {

bool schedule_long_enough(const Schedule& w, Criterion crit, const CriterionParams& p) {
    std::size_t need = 0;
    switch (crit) {
        case Criterion::Sup:
        case Criterion::AllNMean: need = p.horizon; break;
        case Criterion::LimsupMean: need = p.burn_in + p.window; break;
        case Criterion::Density: need = p.density_horizon; break;
    }
    return need == 0 || w.indexable(need - 1);
}

bool criterion_pass(const CriterionOutcome& o, Criterion crit) {
    if (o.pass != Tri::True) return false;
    if (crit == Criterion::LimsupMean && !o.trend_ok) return false;
    return true;
}

}  // namespace

Verdict certify_point(const ControlSystem& sys, const TargetSet& q, const StatePoint& x,
                      Notion notion, const Rat& eps, const SearchBudget& budget) {
    if (eps <= 0) throw std::invalid_argument("certify_point: eps > 0");
    if (!q.contains(x)) throw DomainError("certify_point: x must lie in Q");
    if (budget.candidates.empty()) throw std::invalid_argument("certify_point: empty candidate set");
    if (budget.delta_ladder.empty()) throw std::invalid_argument("certify_point: empty delta ladder");
    Criterion crit = notion_criterion(notion);
    bool single = notion_single_omega(notion);

    std::vector<const Schedule*> usable;
    for (const Schedule& w : budget.candidates)
        if (schedule_long_enough(w, crit, budget.params)) usable.push_back(&w);
    if (usable.empty())
        throw std::invalid_argument("certify_point: no candidate indexable to the horizon");

    for (const Rat& delta : budget.delta_ladder) {
        std::vector<StatePoint> ball =
            ball_points(q, x, delta, budget.grid_h, budget.symbolic_base);
        if (ball.empty()) continue;

        if (single) {
            for (std::size_t ci = 0; ci < usable.size(); ++ci) {
                bool all_ok = true;
                for (const StatePoint& y : ball) {
                    CriterionOutcome o =
                        evaluate_criterion(sys, q, y, *usable[ci], crit, eps, budget.params);
                    if (!criterion_pass(o, crit)) {
                        all_ok = false;
                        break;
                    }
                }
                if (!all_ok) continue;
                Certificate cert;
                cert.notion = notion;
                cert.x = x;
                cert.eps = eps;
                cert.delta = delta;
                cert.family = {*usable[ci]};
                cert.params = budget.params;
                cert.grid_h = budget.grid_h;
                for (const StatePoint& y : ball) cert.witnesses.emplace_back(y, 0);
                Verdict v;
                v.kind = Verdict::Kind::Certified;
                v.certificate = std::move(cert);
                return v;
            }
            continue;
        }

        // Finite family: per-candidate pass rows over the ball, then a
        // minimal cover picks F.
        std::vector<Bits> rows(usable.size(), Bits(ball.size()));
        std::vector<bool> point_covered(ball.size(), false);
        for (std::size_t ci = 0; ci < usable.size(); ++ci) {
            for (std::size_t pi = 0; pi < ball.size(); ++pi) {
                CriterionOutcome o =
                    evaluate_criterion(sys, q, ball[pi], *usable[ci], crit, eps, budget.params);
                if (criterion_pass(o, crit)) {
                    rows[ci].set(pi);
                    point_covered[pi] = true;
                }
            }
        }
        if (!std::all_of(point_covered.begin(), point_covered.end(), [](bool b) { return b; }))
            continue;
        RawCover cover = solve_cover(rows, ball.size(), budget.cover_threshold);
        Certificate cert;
        cert.notion = notion;
        cert.x = x;
        cert.eps = eps;
        cert.delta = delta;
        cert.params = budget.params;
        cert.grid_h = budget.grid_h;
        for (std::size_t ri : cover.chosen) cert.family.push_back(*usable[ri]);
        for (std::size_t pi = 0; pi < ball.size(); ++pi) {
            for (std::size_t fi = 0; fi < cover.chosen.size(); ++fi) {
                if (rows[cover.chosen[fi]].test(pi)) {
                    cert.witnesses.emplace_back(ball[pi], fi);
                    break;
                }
            }
        }
        Verdict v;
        v.kind = Verdict::Kind::Certified;
        v.certificate = std::move(cert);
        return v;
    }
    Verdict v;
    v.kind = Verdict::Kind::Inconclusive;
    v.note = "no (delta, family) within the search budget certified " + notion_name(notion) +
             " at eps=" + rat_to_string(eps);
    return v;
}

std::vector<TrapInterval> detect_traps(const ControlSystem& sys, const TargetSet& q,
                                       const Rat& eps) {
    std::vector<TrapInterval> traps;
    if (!sys.is_interval() || !q.is_interval()) return traps;
    std::set<Rat> cuts{Rat(0), Rat(1)};
    for (std::size_t u = 0; u < sys.alphabet_size(); ++u)
        for (const Rat& bp : sys.interval_map(static_cast<std::uint8_t>(u)).breakpoints())
            cuts.insert(bp);
    std::vector<Rat> pts(cuts.begin(), cuts.end());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            bool invariant = true;
            for (std::size_t u = 0; u < sys.alphabet_size() && invariant; ++u) {
                Scalar img = sys.interval_image(static_cast<std::uint8_t>(u), pts[i], pts[j]);
                invariant = img.lo() >= pts[i] && img.hi() <= pts[j];
            }
            if (!invariant) continue;
            Rat min_dist = q.interval_union().distance(Scalar::interval(pts[i], pts[j])).lo();
            if (min_dist <= 0) continue;
            traps.push_back(TrapInterval{pts[i], pts[j], min_dist});
        }
    }
    (void)eps;
    return traps;
}

namespace {

struct RefTrack {
    std::size_t ball_index;
    StatePoint state;  // phi(depth)
    Scalar sum;        // sum of d(phi(0..depth))
    std::size_t certain_exceptions = 0;  // steps with d >= eps for sure
};

struct RefNode {
    Word prefix;
    std::vector<RefTrack> pts;
};

struct RefContext {
    const ControlSystem& sys;
    const TargetSet& q;
    Criterion crit;
    Rat eps;
    std::size_t horizon;  // word length N; states phi(0..N)
    const std::vector<TrapInterval>& traps;
    bool detect_absorbing;
    std::map<std::string, bool> absorbing_memo;
    std::size_t nodes_created = 0;
    std::size_t node_budget;
    bool hit_budget = false;

    bool is_absorbing(const StatePoint& s) {
        if (!detect_absorbing) return false;
        if (std::holds_alternative<Scalar>(s) && !std::get<Scalar>(s).is_exact()) return false;
        std::string key = state_key(s);
        auto it = absorbing_memo.find(key);
        if (it != absorbing_memo.end()) return it->second;
        bool fixed = true;
        for (std::size_t u = 0; u < sys.alphabet_size() && fixed; ++u) {
            StatePoint next = sys.step(s, static_cast<std::uint8_t>(u));
            if (std::holds_alternative<Scalar>(s)) {
                fixed = std::get<Scalar>(next).same_bits(std::get<Scalar>(s));
            } else {
                fixed = std::get<SymbolicPoint>(next) == std::get<SymbolicPoint>(s);
            }
        }
        absorbing_memo.emplace(std::move(key), fixed);
        return fixed;
    }

    static std::string state_key(const StatePoint& s) {
        if (std::holds_alternative<Scalar>(s)) return std::get<Scalar>(s).to_string();
        return std::get<SymbolicPoint>(s).to_string();
    }

    // Kill tests for the point state at depth m (state = phi(m), sum through
    // phi(m)). A kill defeats every extension of the current prefix.
    std::optional<EscapeWitness> try_kill(const RefTrack& tp, std::size_t depth,
                                          const Scalar& d, std::size_t trap_hint,
                                          std::size_t* trap_used) {
        EscapeWitness w;
        w.index = depth;
        switch (crit) {
            case Criterion::Sup: {
                if (d.ge(eps) == Tri::True) {
                    w.value_lo = d.lo();
                    w.via = EscapeWitness::Via::Direct;
                    return w;
                }
                break;
            }
            case Criterion::AllNMean: {
                Scalar mean = tp.sum.div_int(static_cast<long>(depth) + 1);
                if (mean.ge(eps) == Tri::True) {
                    w.index = depth + 1;  // mean index k
                    w.value_lo = mean.lo();
                    w.via = EscapeWitness::Via::Direct;
                    return w;
                }
                break;
            }
            case Criterion::LimsupMean: {
                if (depth == horizon) {
                    Scalar mean = tp.sum.div_int(static_cast<long>(horizon) + 1);
                    if (mean.ge(eps) == Tri::True) {
                        w.index = horizon + 1;
                        w.value_lo = mean.lo();
                        w.via = EscapeWitness::Via::Direct;
                        return w;
                    }
                }
                break;
            }
            case Criterion::Density: {
                if (depth == horizon) {
                    Rat density(static_cast<long>(tp.certain_exceptions),
                                static_cast<long>(horizon) + 1);
                    if (density >= eps) {
                        w.index = tp.certain_exceptions;
                        w.value_lo = density;
                        w.via = EscapeWitness::Via::Direct;
                        return w;
                    }
                }
                break;
            }
        }
        if (crit != Criterion::AllNMean && crit != Criterion::LimsupMean) return std::nullopt;

        // Trapped or absorbed states pin every later distance from below,
        // so the horizon-end mean is bounded regardless of the remaining
        // symbols.
        std::size_t rest = horizon - depth;
        if (std::holds_alternative<Scalar>(tp.state)) {
            const Scalar& s = std::get<Scalar>(tp.state);
            for (std::size_t ti = trap_hint; ti < traps.size(); ++ti) {
                const TrapInterval& trap = traps[ti];
                if (s.lo() >= trap.lo && s.hi() <= trap.hi) {
                    Rat bound =
                        (tp.sum.lo() + trap.min_dist * static_cast<long>(rest)) /
                        (static_cast<long>(horizon) + 1);
                    if (bound >= eps) {
                        w.index = horizon + 1;
                        w.value_lo = bound;
                        w.via = EscapeWitness::Via::TrapBound;
                        if (trap_used) *trap_used = ti;
                        return w;
                    }
                }
            }
        }
        if (is_absorbing(tp.state)) {
            Rat da = q.distance(tp.state).lo();
            Rat bound = (tp.sum.lo() + da * static_cast<long>(rest)) /
                        (static_cast<long>(horizon) + 1);
            if (bound >= eps) {
                w.index = horizon + 1;
                w.value_lo = bound;
                w.via = EscapeWitness::Via::AbsorbBound;
                return w;
            }
        }
        return std::nullopt;
    }
};

// Breadth-first dead-prefix search. `pts` carries exactly the ball points a
// word must keep (all of them for single-omega refutations, one for the
// finite-family per-point search). Returns the dead prefixes; survivors at
// full depth are appended to `survivors` (capped).
std::vector<EscapeWitness> dead_prefix_search(RefContext& ctx,
                                              const std::vector<StatePoint>& ball,
                                              std::vector<Word>& survivors,
                                              std::size_t survivor_cap,
                                              std::vector<std::size_t>& traps_touched) {
    std::vector<EscapeWitness> dead;
    std::deque<RefNode> queue;

    RefNode root;
    bool root_killed = false;
    for (std::size_t i = 0; i < ball.size(); ++i) {
        RefTrack tp{i, ball[i], Scalar::exact(Rat(0)), 0};
        Scalar d = ctx.q.distance(tp.state);
        tp.sum = tp.sum + d;
        if (d.ge(ctx.eps) == Tri::True) ++tp.certain_exceptions;
        std::size_t trap_used = 0;
        if (auto w = ctx.try_kill(tp, 0, d, 0, &trap_used)) {
            w->y = ball[i];
            w->prefix = {};
            dead.push_back(*w);
            if (w->via == EscapeWitness::Via::TrapBound) traps_touched.push_back(trap_used);
            root_killed = true;
            break;
        }
        root.pts.push_back(std::move(tp));
    }
    if (!root_killed) queue.push_back(std::move(root));

    while (!queue.empty()) {
        RefNode node = std::move(queue.front());
        queue.pop_front();
        if (node.prefix.size() == ctx.horizon) {
            if (survivors.size() < survivor_cap) survivors.push_back(node.prefix);
            else survivors.push_back(Word{});  // count-only marker
            continue;
        }
        for (std::size_t u = 0; u < ctx.sys.alphabet_size(); ++u) {
            if (++ctx.nodes_created > ctx.node_budget) {
                ctx.hit_budget = true;
                return dead;
            }
            RefNode child;
            child.prefix = node.prefix;
            child.prefix.push_back(static_cast<std::uint8_t>(u));
            std::size_t depth = child.prefix.size();
            std::optional<EscapeWitness> kill;
            std::size_t trap_used = 0;
            for (const RefTrack& tp : node.pts) {
                RefTrack next{tp.ball_index, ctx.sys.step(tp.state, static_cast<std::uint8_t>(u)),
                              tp.sum, tp.certain_exceptions};
                Scalar d = ctx.q.distance(next.state);
                next.sum = next.sum + d;
                if (d.ge(ctx.eps) == Tri::True) ++next.certain_exceptions;
                kill = ctx.try_kill(next, depth, d, 0, &trap_used);
                if (kill) {
                    kill->y = ball[tp.ball_index];
                    kill->prefix = child.prefix;
                    break;
                }
                child.pts.push_back(std::move(next));
            }
            if (kill) {
                if (kill->via == EscapeWitness::Via::TrapBound) traps_touched.push_back(trap_used);
                dead.push_back(std::move(*kill));
                continue;
            }
            if (depth == ctx.horizon) {
                if (survivors.size() < survivor_cap) survivors.push_back(child.prefix);
                else survivors.push_back(Word{});
                continue;
            }
            queue.push_back(std::move(child));
        }
    }
    return dead;
}

}  // namespace

Verdict refute_point(const ControlSystem& sys, const TargetSet& q, const StatePoint& x,
                     Notion notion, const Rat& eps, const Rat& delta0, std::size_t horizon,
                     const Rat& grid_h, const RefutationAids& aids,
                     const std::vector<StatePoint>& symbolic_base) {
    if (eps <= 0 || delta0 <= 0) throw std::invalid_argument("refute_point: eps, delta0 > 0");
    if (horizon == 0) throw std::invalid_argument("refute_point: horizon >= 1");
    Criterion crit = notion_criterion(notion);

    std::vector<TrapInterval> traps = aids.extra_traps;
    if (aids.auto_traps && (crit == Criterion::AllNMean || crit == Criterion::LimsupMean ||
                            crit == Criterion::Density)) {
        for (const TrapInterval& t : detect_traps(sys, q, eps)) traps.push_back(t);
    }

    std::vector<StatePoint> ball = ball_points(q, x, delta0, grid_h, symbolic_base);

    RefContext ctx{sys, q,      crit,  eps,   horizon, traps, aids.detect_absorbing,
                   {},  0,      aids.node_budget, false};

    Verdict v;
    auto finish_refuted = [&](std::vector<EscapeWitness> dead, bool finite_mode,
                              const std::vector<std::size_t>& traps_touched) {
        Refutation ref;
        ref.notion = notion;
        ref.x = x;
        ref.eps = eps;
        ref.delta0 = delta0;
        ref.horizon = horizon;
        ref.grid_h = grid_h;
        ref.finite_family_mode = finite_mode;
        // Remap trap indices to the compact traps_used list.
        std::map<std::size_t, std::size_t> remap;
        std::size_t di = 0;
        for (EscapeWitness& w : dead) {
            if (w.via == EscapeWitness::Via::TrapBound) {
                std::size_t global = traps_touched.at(di++);
                auto [it, fresh] = remap.try_emplace(global, ref.traps_used.size());
                if (fresh) ref.traps_used.push_back(traps[global]);
                w.trap_index = it->second;
            }
        }
        ref.dead_prefixes = std::move(dead);
        v.kind = Verdict::Kind::RefutedAtResolution;
        v.refutation = std::move(ref);
        return v;
    };

    if (notion_single_omega(notion)) {
        std::vector<Word> survivors;
        std::vector<std::size_t> traps_touched;
        auto dead = dead_prefix_search(ctx, ball, survivors, aids.max_unresolved_reported,
                                       traps_touched);
        if (ctx.hit_budget) {
            v.kind = Verdict::Kind::Inconclusive;
            v.note = "refutation search exceeded the node budget";
            return v;
        }
        if (survivors.empty()) return finish_refuted(std::move(dead), false, traps_touched);
        std::ostringstream os;
        os << survivors.size() << " length-" << horizon << " words unresolved (e.g.";
        for (std::size_t i = 0; i < survivors.size() && i < 4; ++i)
            os << " " << word_to_string(survivors[i]);
        os << ")";
        v.kind = Verdict::Kind::Inconclusive;
        v.note = os.str();
        return v;
    }

    // Finite-family notion: refuted when some ball point is defeated by
    // every length-N word.
    for (std::size_t pi = 0; pi < ball.size(); ++pi) {
        std::vector<Word> survivors;
        std::vector<std::size_t> traps_touched;
        RefContext point_ctx{sys, q, crit, eps, horizon, traps, aids.detect_absorbing,
                             {}, 0, aids.node_budget, false};
        std::vector<StatePoint> single{ball[pi]};
        auto dead = dead_prefix_search(point_ctx, single, survivors,
                                       aids.max_unresolved_reported, traps_touched);
        if (point_ctx.hit_budget) {
            v.kind = Verdict::Kind::Inconclusive;
            v.note = "refutation search exceeded the node budget";
            return v;
        }
        if (survivors.empty()) return finish_refuted(std::move(dead), true, traps_touched);
    }
    v.kind = Verdict::Kind::Inconclusive;
    v.note = "every ball point keeps some length-" + std::to_string(horizon) + " word";
    return v;
}

bool replay_certificate(const ControlSystem& sys, const TargetSet& q, const Certificate& cert,
                        std::string* why) {
    Criterion crit = notion_criterion(cert.notion);
    if (notion_single_omega(cert.notion) && cert.family.size() != 1) {
        if (why) *why = "single-omega certificate with |F| != 1";
        return false;
    }
    for (const auto& [y, fi] : cert.witnesses) {
        if (fi >= cert.family.size()) {
            if (why) *why = "witness references a missing family member";
            return false;
        }
        CriterionOutcome o =
            evaluate_criterion(sys, q, y, cert.family[fi], crit, cert.eps, cert.params);
        if (!criterion_pass(o, crit)) {
            if (why) *why = "witness failed replay at " + state_to_string(y);
            return false;
        }
    }
    return true;
}

bool replay_refutation(const ControlSystem& sys, const TargetSet& q, const Refutation& ref,
                       std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    for (const EscapeWitness& w : ref.dead_prefixes) {
        std::size_t m = w.prefix.size();
        // Recompute the orbit of the witness under the dead prefix.
        StatePoint state = w.y;
        Scalar sum = Scalar::exact(Rat(0));
        std::size_t certain = 0;
        {
            Scalar d = q.distance(state);
            sum = sum + d;
            if (d.ge(ref.eps) == Tri::True) ++certain;
        }
        for (std::size_t k = 0; k < m; ++k) {
            state = sys.step(state, w.prefix[k]);
            Scalar d = q.distance(state);
            sum = sum + d;
            if (d.ge(ref.eps) == Tri::True) ++certain;
        }
        Criterion crit = notion_criterion(ref.notion);
        switch (w.via) {
            case EscapeWitness::Via::Direct: {
                if (crit == Criterion::Sup) {
                    Scalar d = q.distance(state);
                    if (d.lo() != w.value_lo || !(d.lo() >= ref.eps))
                        return fail("sup escape value mismatch");
                } else if (crit == Criterion::AllNMean || crit == Criterion::LimsupMean) {
                    Scalar mean = sum.div_int(static_cast<long>(m) + 1);
                    if (mean.lo() != w.value_lo || !(mean.lo() >= ref.eps))
                        return fail("mean escape value mismatch");
                } else {
                    Rat density(static_cast<long>(certain), static_cast<long>(m) + 1);
                    if (density != w.value_lo || !(density >= ref.eps))
                        return fail("density escape value mismatch");
                }
                break;
            }
            case EscapeWitness::Via::TrapBound: {
                if (w.trap_index >= ref.traps_used.size()) return fail("missing trap record");
                const TrapInterval& trap = ref.traps_used[w.trap_index];
                const Scalar& s = std::get<Scalar>(state);
                if (!(s.lo() >= trap.lo && s.hi() <= trap.hi))
                    return fail("trapped state left the trap on replay");
                for (std::size_t u = 0; u < sys.alphabet_size(); ++u) {
                    Scalar img = sys.interval_image(static_cast<std::uint8_t>(u), trap.lo, trap.hi);
                    if (!(img.lo() >= trap.lo && img.hi() <= trap.hi))
                        return fail("trap interval is not invariant");
                }
                Rat dmin = q.interval_union().distance(Scalar::interval(trap.lo, trap.hi)).lo();
                if (dmin < trap.min_dist) return fail("trap distance bound too optimistic");
                Rat bound = (sum.lo() + trap.min_dist * static_cast<long>(ref.horizon - m)) /
                            (static_cast<long>(ref.horizon) + 1);
                if (bound != w.value_lo || !(bound >= ref.eps))
                    return fail("trap bound mismatch");
                break;
            }
            case EscapeWitness::Via::AbsorbBound: {
                for (std::size_t u = 0; u < sys.alphabet_size(); ++u) {
                    StatePoint next = sys.step(state, static_cast<std::uint8_t>(u));
                    bool same = std::holds_alternative<Scalar>(state)
                                    ? std::get<Scalar>(next).same_bits(std::get<Scalar>(state))
                                    : std::get<SymbolicPoint>(next) ==
                                          std::get<SymbolicPoint>(state);
                    if (!same) return fail("absorbing state is not fixed by every map");
                }
                Rat da = q.distance(state).lo();
                Rat bound = (sum.lo() + da * static_cast<long>(ref.horizon - m)) /
                            (static_cast<long>(ref.horizon) + 1);
                if (bound != w.value_lo || !(bound >= ref.eps))
                    return fail("absorb bound mismatch");
                break;
            }
        }
    }
    return true;
}

bool refutation_covers_all_words(const Refutation& ref, std::size_t alphabet, std::string* why) {
    // Antichain check plus exact leaf count.
    for (std::size_t i = 0; i < ref.dead_prefixes.size(); ++i) {
        for (std::size_t j = i + 1; j < ref.dead_prefixes.size(); ++j) {
            const Word& a = ref.dead_prefixes[i].prefix;
            const Word& b = ref.dead_prefixes[j].prefix;
            const Word& shorter = a.size() <= b.size() ? a : b;
            const Word& longer = a.size() <= b.size() ? b : a;
            if (std::equal(shorter.begin(), shorter.end(), longer.begin())) {
                if (why) *why = "dead prefixes are not an antichain";
                return false;
            }
        }
    }
    Int covered = 0;
    Int base = static_cast<long>(alphabet);
    for (const EscapeWitness& w : ref.dead_prefixes) {
        Int leaves = 1;
        for (std::size_t k = w.prefix.size(); k < ref.horizon; ++k) leaves *= base;
        covered += leaves;
    }
    Int all = 1;
    for (std::size_t k = 0; k < ref.horizon; ++k) all *= base;
    if (covered != all) {
        if (why) {
            std::ostringstream os;
            os << "dead prefixes cover " << covered << " of " << all << " words";
            *why = os.str();
        }
        return false;
    }
    return true;
}

SetClassification classify_set(const ControlSystem& sys, const TargetSet& q,
                               const TargetGrid& grid, Notion notion, const Rat& eps,
                               const SearchBudget& budget, const Rat& delta0,
                               std::size_t refute_horizon, const RefutationAids& aids) {
    SetClassification out;
    bool all_certified = true;
    bool any_refuted = false;
    for (const StatePoint& x : grid.points) {
        Verdict v = certify_point(sys, q, x, notion, eps, budget);
        if (v.kind != Verdict::Kind::Certified) {
            Verdict r = refute_point(sys, q, x, notion, eps, delta0, refute_horizon,
                                     budget.grid_h, aids, budget.symbolic_base);
            if (r.kind != Verdict::Kind::Inconclusive) v = std::move(r);
        }
        all_certified = all_certified && v.kind == Verdict::Kind::Certified;
        any_refuted = any_refuted || v.kind == Verdict::Kind::RefutedAtResolution;
        out.verdicts.push_back(std::move(v));
    }
    out.set_level = all_certified ? Verdict::Kind::Certified
                    : any_refuted ? Verdict::Kind::RefutedAtResolution
                                  : Verdict::Kind::Inconclusive;
    return out;
}

Verdict mean_l_stability_check(const ControlSystem& sys, const TargetSet& q, const StatePoint& x,
                               const Rat& eps, const Rat& delta,
                               const std::vector<Schedule>& family, std::size_t horizon,
                               const Rat& grid_h, const std::vector<StatePoint>& symbolic_base) {
    if (family.empty()) throw std::invalid_argument("mean_l_stability_check: empty family");
    CriterionParams params;
    params.density_horizon = horizon;
    std::vector<StatePoint> ball = ball_points(q, x, delta, grid_h, symbolic_base);
    Certificate cert;
    cert.notion = Notion::FMLS;
    cert.x = x;
    cert.eps = eps;
    cert.delta = delta;
    cert.family = family;
    cert.params = params;
    cert.grid_h = grid_h;
    for (const StatePoint& y : ball) {
        bool ok = false;
        for (std::size_t fi = 0; fi < family.size(); ++fi) {
            CriterionOutcome o =
                evaluate_criterion(sys, q, y, family[fi], Criterion::Density, eps, params);
            if (o.pass == Tri::True) {
                cert.witnesses.emplace_back(y, fi);
                ok = true;
                break;
            }
        }
        if (!ok) {
            Verdict v;
            v.kind = Verdict::Kind::Inconclusive;
            v.note = "no family member keeps exception density below eps at " +
                     state_to_string(y);
            return v;
        }
    }
    Verdict v;
    v.kind = Verdict::Kind::Certified;
    v.certificate = std::move(cert);
    return v;
}

namespace {

const std::vector<std::pair<Notion, Notion>>& implication_arrows() {
    static const std::vector<std::pair<Notion, Notion>> arrows{
        {Notion::EI, Notion::EIM},   {Notion::EIM, Notion::MEI},
        {Notion::EI, Notion::FEI},   {Notion::EIM, Notion::FEIM},
        {Notion::MEI, Notion::FMEI}, {Notion::FEI, Notion::FEIM},
        {Notion::FEIM, Notion::FMEI}};
    return arrows;
}

bool points_compatible(const VerdictRecord& cert, const VerdictRecord& refut) {
    return cert.point == refut.point || cert.point == "set";
}

bool params_compatible(const VerdictRecord& cert, const VerdictRecord& refut) {
    // A certificate at eps_c spawns certificates at every larger eps, so it
    // clashes with a refutation whenever eps_c <= eps_r, the certified ball
    // is at least as large, and its horizon at least as long.
    return cert.eps <= refut.eps && cert.delta >= refut.delta &&
           cert.horizon >= refut.horizon;
}

std::string record_label(const VerdictRecord& r) {
    return r.system + "@" + r.point + ":" + notion_name(r.notion) +
           "(eps=" + rat_to_string(r.eps) + ",delta=" + rat_to_string(r.delta) +
           ",N=" + std::to_string(r.horizon) + "," + r.source + ")";
}

}  // namespace

AuditReport implication_audit(const std::vector<VerdictRecord>& store) {
    AuditReport report;
    std::set<std::string> non_arrows_seen;
    for (const VerdictRecord& cert : store) {
        if (cert.kind != Verdict::Kind::Certified) continue;
        for (const VerdictRecord& refut : store) {
            if (refut.kind != Verdict::Kind::RefutedAtResolution) continue;
            if (cert.system != refut.system) continue;
            if (!points_compatible(cert, refut)) continue;

            bool same_notion = cert.notion == refut.notion;
            bool arrow_violated = false;
            for (const auto& [strong, weak] : implication_arrows()) {
                if (cert.notion == strong && refut.notion == weak) arrow_violated = true;
            }
            if (same_notion || arrow_violated) {
                if (params_compatible(cert, refut)) {
                    report.violations.push_back(
                        (same_notion ? "contradiction: " : "arrow violation: ") +
                        record_label(cert) + " vs " + record_label(refut));
                } else {
                    report.skipped.push_back("parameters incompatible: " + record_label(cert) +
                                             " vs " + record_label(refut));
                }
                continue;
            }
            for (const auto& [strong, weak] : implication_arrows()) {
                if (cert.notion == weak && refut.notion == strong) {
                    std::string key = refut.system + ":" + notion_name(weak) +
                                      "-not-" + notion_name(strong);
                    if (non_arrows_seen.insert(key).second) {
                        report.realized_non_arrows.push_back(
                            notion_name(weak) + " without " + notion_name(strong) + " (" +
                            refut.system + " @ " + refut.point + ")");
                    }
                }
            }
        }
    }
    return report;
}

AuditReport theorem_audit(const TheoremAuditInputs& in) {
    AuditReport report;
    auto verdict_vs_complexity = [&](const char* theorem, std::optional<Verdict::Kind> side,
                                     const std::optional<BoundedComplexityVerdict>& cx) {
        if (!side || !cx) {
            report.skipped.push_back(std::string(theorem) + ": inputs missing for " + in.system);
            return;
        }
        bool certified = *side == Verdict::Kind::Certified;
        bool refuted = *side == Verdict::Kind::RefutedAtResolution;
        if (certified && cx->kind == BoundedComplexityVerdict::Kind::GrowthEvidence)
            report.violations.push_back(std::string(theorem) + ": " + in.system +
                                        " certified but complexity grows");
        if (refuted && cx->kind == BoundedComplexityVerdict::Kind::BoundedEvidence)
            report.violations.push_back(std::string(theorem) + ": " + in.system +
                                        " refuted but complexity bounded");
    };
    verdict_vs_complexity("bounded-complexity/plain", in.fei_set, in.plain_complexity);
    verdict_vs_complexity("bounded-complexity/mean", in.feim_set, in.mean_complexity);
    if (in.fmei_set && in.fmls_set) {
        bool a = *in.fmei_set == Verdict::Kind::Certified;
        bool b = *in.fmls_set == Verdict::Kind::Certified;
        bool ar = *in.fmei_set == Verdict::Kind::RefutedAtResolution;
        bool br = *in.fmls_set == Verdict::Kind::RefutedAtResolution;
        if ((a && br) || (ar && b))
            report.violations.push_back("mean-L-stability: " + in.system +
                                        " FMEI and FMLS verdicts disagree");
    } else {
        report.skipped.push_back("mean-L-stability: inputs missing for " + in.system);
    }
    return report;
}

}  // namespace ivl
