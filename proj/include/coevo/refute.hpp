#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coevo/stability.hpp"

namespace coevo {

/// Replays the constructive mutant recipes against `config` and reports the
/// first focal post-entry configuration in which the mutants strictly
/// outperform, judged in the ε → 0 limit: y·Bx − x·Bx > 0, or = 0 with
/// y·By − x·By > 0. Recipes, in order:
///   internal-stability       μ is not an NSS of its own type game
///   efficient-rotation       three indifferent mutants at the top level
///   fitness-maximizing-deceiver
///   mimic-lower-type
///   efficient-self-play      û mutant (generic games)
///   indifferent-deceiver     constant utility at levels 2..budget
///   maxmin-dominant          when Π < M̲
/// Refuted with the scenario as witness, otherwise inconclusive.
StabilityVerdict refute_nsc(const Configuration& config, const RefuteOptions& opt = {});

/// Opponent-only utilities used as mutant preferences: first the
/// pro-generous family (1 on a generous action, r on a second-best generous
/// one, 0 elsewhere) for several r, then the remaining indicator vectors.
std::vector<UtilityFunction> indifferent_candidates(const SymmetricGame& game);

/// Lexicographic ε → 0 comparison of a post-entry configuration whose first
/// `incumbents` types are the incumbents (weighted by `incumbent_shares`)
/// and the rest mutants (weighted by `mutant_shares`).
std::optional<InvasionScenario> evaluate_invasion(const Configuration& post_entry,
                                                  size_t incumbents, const Vec& incumbent_shares,
                                                  const Vec& mutant_shares,
                                                  const std::string& recipe,
                                                  const std::string& description);

}  // namespace coevo
