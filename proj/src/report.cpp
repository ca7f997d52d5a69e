#include "ivl/report.hpp"

#include "ivl/io.hpp"

#include <sstream>

namespace ivl {

std::string render_example_dump(const ExampleBundle& bundle) {
    std::ostringstream os;
    os << "example " << example_name(bundle.id) << ": " << bundle.claims.headline << "\n";
    os << "Q = " << bundle.q.to_string() << "\n";
    const ControlSystem& sys = bundle.system;
    if (sys.is_interval()) {
        for (std::size_t u = 0; u < sys.alphabet_size(); ++u) {
            os << "F_" << u << ":\n";
            for (const Branch& br : sys.interval_map(static_cast<std::uint8_t>(u)).branches())
                os << "  " << br.describe() << "\n";
            os << "  breakpoints:";
            for (const Rat& bp : sys.interval_map(static_cast<std::uint8_t>(u)).breakpoints())
                os << " " << rat_to_string(bp);
            os << "\n";
        }
    } else {
        os << "alphabet I = {";
        for (std::size_t i = 0; i < sys.symbol_alphabet().size(); ++i) {
            if (i) os << ",";
            os << sys.symbol_alphabet()[i];
        }
        os << "}\n";
        for (std::size_t u = 0; u < sys.alphabet_size(); ++u)
            os << "F_" << u << ": " << sys.symbolic_map(static_cast<std::uint8_t>(u)).describe()
               << "\n";
    }
    os << "claims:\n";
    for (const ExpectedClaim& row : bundle.claims.rows) {
        os << "  " << notion_name(row.notion) << ": ";
        switch (row.kind) {
            case ClaimKind::SetCertified: os << "holds at every point"; break;
            case ClaimKind::RefutedAt:
                os << "fails at " << state_to_string(*row.point);
                break;
            case ClaimKind::CertifiedExceptAt:
                os << "holds everywhere except " << state_to_string(*row.point);
                break;
            case ClaimKind::Unspecified: os << "left to the classification run"; break;
        }
        os << "\n";
    }
    return os.str();
}

std::string render_profile(const ComplexityProfile& profile,
                           const BoundedComplexityVerdict& verdict) {
    std::ostringstream os;
    os << "complexity profile (eps=" << rat_to_string(profile.epsilon)
       << ", mode=" << kernel_mode_name(profile.mode) << ")\n";
    for (const ProfileEntry& e : profile.entries)
        os << "  n=" << e.n << " r=" << e.r << " [" << cover_tag_name(e.tag) << "]\n";
    os << "verdict: " << bounded_verdict_name(verdict.kind);
    if (verdict.kind == BoundedComplexityVerdict::Kind::BoundedEvidence)
        os << " (C=" << verdict.bound << ")";
    os << "\n";
    return os.str();
}

std::string render_verdict(const Verdict& v) {
    std::ostringstream os;
    os << verdict_kind_name(v.kind);
    if (v.kind == Verdict::Kind::Certified && v.certificate) {
        const Certificate& c = *v.certificate;
        os << " " << notion_name(c.notion) << " at " << state_to_string(c.x)
           << " eps=" << rat_to_string(c.eps) << " delta=" << rat_to_string(c.delta) << " F={";
        for (std::size_t i = 0; i < c.family.size(); ++i) {
            if (i) os << ",";
            os << c.family[i].to_string();
        }
        os << "} over " << c.witnesses.size() << " ball points";
    } else if (v.kind == Verdict::Kind::RefutedAtResolution && v.refutation) {
        const Refutation& r = *v.refutation;
        os << " " << notion_name(r.notion) << " at " << state_to_string(r.x)
           << " eps=" << rat_to_string(r.eps) << " delta0=" << rat_to_string(r.delta0)
           << " N=" << r.horizon << " (" << r.dead_prefixes.size() << " dead prefixes"
           << (r.finite_family_mode ? ", one point defeats all words" : "") << ")";
    } else if (!v.note.empty()) {
        os << " (" << v.note << ")";
    }
    return os.str();
}

std::string render_set_classification(const TargetGrid& grid, const SetClassification& sc,
                                      Notion notion, const Rat& eps) {
    std::ostringstream os;
    os << notion_name(notion) << " at eps=" << rat_to_string(eps) << ": set-level "
       << verdict_kind_name(sc.set_level) << "\n";
    for (std::size_t i = 0; i < grid.points.size(); ++i) {
        if (sc.verdicts[i].kind == Verdict::Kind::Certified) continue;
        os << "  " << state_to_string(grid.points[i]) << ": "
           << render_verdict(sc.verdicts[i]) << "\n";
    }
    std::size_t certified = 0;
    for (const Verdict& v : sc.verdicts)
        if (v.kind == Verdict::Kind::Certified) ++certified;
    os << "  (" << certified << "/" << sc.verdicts.size() << " grid points certified)\n";
    return os.str();
}

std::string render_audit(const AuditReport& report, const std::string& title) {
    std::ostringstream os;
    os << title << ": " << (report.consistent() ? "consistent" : "INCONSISTENT") << "\n";
    for (const std::string& v : report.violations) os << "  violation: " << v << "\n";
    for (const std::string& n : report.realized_non_arrows) os << "  realized: " << n << "\n";
    for (const std::string& s : report.skipped) os << "  skipped: " << s << "\n";
    return os.str();
}

std::string render_dichotomy(const DichotomyVerdict& verdict, DichotomyMode mode) {
    std::ostringstream os;
    os << "dichotomy probe (" << (mode == DichotomyMode::Mean ? "mean" : "limsup-mean")
       << "): " << dichotomy_kind_name(verdict.kind);
    if (verdict.kind != DichotomyVerdict::Kind::Inconclusive)
        os << " at k=" << verdict.witness_k;
    os << "\n";
    if (!verdict.hypothesis_ok) os << "  warning: " << verdict.note << "\n";
    return os.str();
}

std::string render_reach_csv(const ReachSet& reach) {
    std::ostringstream os;
    os << csv_row({"state", "m", "witness"});
    for (const ReachEntry& e : reach.entries)
        os << csv_row({state_to_string(e.state), std::to_string(e.steps),
                       word_to_string(e.witness)});
    return os.str();
}

std::string render_profile_csv(const ComplexityProfile& profile) {
    std::ostringstream os;
    os << csv_row({"n", "epsilon", "mode", "r", "tag"});
    for (const ProfileEntry& e : profile.entries)
        os << csv_row({std::to_string(e.n), rat_to_string(profile.epsilon),
                       kernel_mode_name(profile.mode), std::to_string(e.r),
                       cover_tag_name(e.tag)});
    return os.str();
}

std::string render_mean_profile_csv(const MeanProfile& profile) {
    std::ostringstream os;
    os << csv_row({"k", "mean_k", "runmax_k"});
    for (std::size_t k = 1; k <= profile.values.size(); ++k)
        os << csv_row({std::to_string(k), scalar_csv(profile.values[k - 1]),
                       scalar_csv(profile.running_max[k - 1])});
    return os.str();
}

}  // namespace ivl
