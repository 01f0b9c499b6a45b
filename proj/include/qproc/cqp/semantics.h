#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qproc/cqp/config.h"

namespace qproc::cqp {

enum class Rule { Measure, Trans, Perm, Prob, New, Qbit, Comm };

const char *rule_name(Rule rule);

enum class PermMode {
    /// A permutation step is offered only to bring the operands of an enabled gate or
    /// measurement to the front of the register, in operand order.
    OnDemand,
    /// Only the permutations listed in StepOptions::explicit_perms are offered.
    Explicit,
};

struct StepOptions {
    PermMode perm_mode = PermMode::OnDemand;
    /// Each entry maps new position j to old position perm[j].
    std::vector<std::vector<size_t>> explicit_perms;
    double tolerance = quantum::kDefaultTolerance;
};

struct Step {
    Rule rule;
    Config next;
    std::string description;
    /// R-Perm: new position j holds the qubit formerly at position perm[j].
    std::vector<size_t> perm;
    /// R-Prob: the chosen case.
    int branch = -1;
};

/// All reductions of a configuration in a fixed order: the steps of each parallel component from
/// left to right, then communications between components. A distribution has exactly one R-Prob
/// step per case with nonzero probability.
std::vector<Step> enumerate_steps(const Config &c, const StepOptions &options = {});

/// Success not guarded by a prefix; channel and qubit binders do not guard.
bool has_success_barb(const TermPtr &p);
bool has_success_barb(const Config &c);

using quantum::fresh_qubit_name;
/// The binder itself when it is an integer literal not yet in use, else the first unused `#chN`.
std::string fresh_channel_name(const std::string &binder, const std::vector<std::string> &channels,
                               const TermPtr &term);

struct RunResult {
    std::vector<Step> trace;
    Config final_config;
    /// Stopped by max_steps while steps remained.
    bool truncated = false;
};

/// Executes from `start`. Where several steps are enabled, the next unused entry of `script`
/// picks one by index; without script entries a generator seeded with `seed` picks uniformly.
RunResult run(const Config &start, uint64_t seed, size_t max_steps, const std::vector<size_t> &script = {},
              const StepOptions &options = {});

}  // namespace qproc::cqp
