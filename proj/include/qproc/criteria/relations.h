#pragma once

#include "qproc/criteria/lts.h"

namespace qproc::criteria {

enum class CorrMode {
    /// As defined: a step of the left side is answered by one right step with the same label; a
    /// step of the right side is answered by silent steps and then that label on the left, after
    /// which the right may continue silently. A silent step on the right may be answered by no
    /// left step at all.
    Literal,
    /// Both clauses answered by weak transitions, silent steps allowed around the label.
    Weak,
};

struct CorrOptions {
    CorrMode mode = CorrMode::Literal;
    /// Related states must have registers of the same size.
    bool size_sensitive = false;
};

/// Largest correspondence simulation between the two transition systems, computed as a greatest
/// fixpoint that starts from the pairs agreeing on reachable success. Holds when it relates the
/// initial states; Inconclusive when either system is truncated.
Verdict corr_sim_check(const Lts &left, const Lts &right, const CorrOptions &options = {});

enum class BisimMode { Strong, Weak };

/// Diagnostic only: bisimilarity of the initial states, with agreement on reachable success.
Verdict bisimulation_check(const Lts &left, const Lts &right, BisimMode mode = BisimMode::Strong);

}  // namespace qproc::criteria
