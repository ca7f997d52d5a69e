// Structured text rendering for CLI reports.

#pragma once

#include "ivl/classify.hpp"
#include "ivl/control_sets.hpp"
#include "ivl/examples.hpp"
#include "ivl/spanning.hpp"

#include <string>

namespace ivl {

std::string render_example_dump(const ExampleBundle& bundle);
std::string render_profile(const ComplexityProfile& profile,
                           const BoundedComplexityVerdict& verdict);
std::string render_verdict(const Verdict& v);
std::string render_set_classification(const TargetGrid& grid, const SetClassification& sc,
                                      Notion notion, const Rat& eps);
std::string render_audit(const AuditReport& report, const std::string& title);
std::string render_dichotomy(const DichotomyVerdict& verdict, DichotomyMode mode);
std::string render_reach_csv(const ReachSet& reach);
std::string render_profile_csv(const ComplexityProfile& profile);
std::string render_mean_profile_csv(const MeanProfile& profile);

}  // namespace ivl
