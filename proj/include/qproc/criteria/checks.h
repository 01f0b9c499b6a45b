#pragma once

#include <map>
#include <string>
#include <vector>

#include "qproc/criteria/lts.h"
#include "qproc/criteria/relations.h"

namespace qproc::criteria {

struct CheckOptions {
    Budget budget;
    double tolerance = quantum::kDefaultTolerance;
    cqp::PermMode perm_mode = cqp::PermMode::OnDemand;
    /// Relation used when a translated derivative is not congruent to its emulation.
    CorrOptions corr;
};

struct Stats {
    size_t states = 0;
    size_t edges = 0;
    size_t depth = 0;
    bool truncated = false;
};

Stats stats_of(const Lts &lts);
/// Sums counts, keeps the larger depth.
Stats combine(const Stats &a, const Stats &b);

struct CheckResult {
    Verdict verdict;
    Stats stats;
    /// Most target steps used to emulate a single source step (completeness only).
    size_t longest_emulation = 0;
};

/// Every source step S -> S' of the explored source system is emulated from [[S]] by at most one
/// target step reaching a configuration congruent to [[S']], or correspondence similar to it.
/// Register permutations are emulated by no step.
CheckResult check_completeness(const cqp::Config &source, const CheckOptions &options = {});

/// Every target configuration reachable from [[S]] completes, by resolving outcome choices
/// only, to the translation of some source configuration reachable from S.
CheckResult check_soundness(const cqp::Config &source, const CheckOptions &options = {});

/// [[S gamma]] and [[S]] gamma are structurally equal, gamma also renaming the declared channels
/// and so the restriction they turn into. Integer channels are excluded from gamma because they
/// also arise as measurement outcomes; targets must not be bound in the term.
CheckResult check_name_invariance(const cqp::Config &source, const std::map<std::string, std::string> &gamma);

/// As check_name_invariance for an injective renaming of register qubits. Throws
/// NoCloningViolation when gamma identifies two qubits.
CheckResult check_qubit_invariance(const cqp::Config &source, const std::map<std::string, std::string> &gamma);

/// [[S]] has as many qubits as S, for every explored source configuration and every target
/// configuration that emulates a source step.
CheckResult check_register_size(const cqp::Config &source, const CheckOptions &options = {});

/// A random congruent variant of the source (components swapped, nil added, binders renamed)
/// translates to a configuration congruent to the translation of the source.
CheckResult check_congruence_preservation(const cqp::Config &source, uint64_t seed);

/// A cycle in the target system implies a cycle in the source system.
CheckResult check_divergence_reflection(const cqp::Config &source, const CheckOptions &options = {});

/// Source and translation agree on may and must success.
CheckResult check_success_sensitiveness(const cqp::Config &source, const CheckOptions &options = {});

/// Random renaming of declared and free symbolic channels to fresh names.
std::map<std::string, std::string> random_channel_renaming(const cqp::Config &source, uint64_t seed);
/// Random permutation of register qubits, sometimes also moving one to a fresh name.
std::map<std::string, std::string> random_qubit_renaming(const cqp::Config &source, uint64_t seed);

cqp::Config rename_channels(const cqp::Config &c, const std::map<std::string, std::string> &gamma);
cqp::Config rename_qubits(const cqp::Config &c, const std::map<std::string, std::string> &gamma);

struct CampaignOptions {
    uint64_t seed = 0;
    size_t instances = 500;
    size_t max_qubits = 4;
    size_t max_depth = 6;
    CheckOptions check;
};

struct Tally {
    size_t holds = 0;
    size_t fails = 0;
    size_t inconclusive = 0;
};

struct CampaignResult {
    size_t instances = 0;
    /// Per check name.
    std::map<std::string, Tally> tallies;
    size_t longest_emulation = 0;
    /// "seed check: reason" for every failing instance.
    std::vector<std::string> failures;

    size_t total_fails() const;
    size_t total_inconclusive() const;
    size_t total_runs() const;
};

/// Generates configurations and runs every check on each of them.
CampaignResult run_campaign(const CampaignOptions &options);

}  // namespace qproc::criteria
