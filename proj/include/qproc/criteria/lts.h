#pragma once

#include <string>
#include <vector>

#include "qproc/cqp/semantics.h"
#include "qproc/qccs/semantics.h"

namespace qproc::criteria {

struct Budget {
    size_t max_depth = 64;
    size_t max_states = 100000;
};

enum class VerdictKind { Holds, Fails, Inconclusive };
const char *verdict_name(VerdictKind kind);

/// One step of a path: `choice` indexes the stepper's output at that state, out of `options`.
struct TraceStep {
    size_t choice = 0;
    size_t options = 0;
    std::string description;
};

struct Verdict {
    VerdictKind kind = VerdictKind::Holds;
    /// For Fails, a path from the initial state that exhibits the failure.
    std::vector<TraceStep> witness;
    std::string reason;

    static Verdict holds(std::string reason = {}, std::vector<TraceStep> witness = {});
    static Verdict fails(std::string reason, std::vector<TraceStep> witness = {});
    static Verdict inconclusive(std::string reason);

    bool is(VerdictKind k) const {
        return kind == k;
    }
};

/// The choices a `--script` replay needs: one entry per step taken where several were enabled.
std::vector<size_t> script_of(const std::vector<TraceStep> &trace);

struct Edge {
    size_t target = 0;
    std::string label;
    std::string rule;
    /// Index of this transition in the stepper's output, and the number of transitions there.
    size_t choice = 0;
    size_t options = 0;
    bool silent = true;
    /// A register permutation; such edges are ignored when looking for divergence.
    bool permutation = false;
};

struct Lts {
    std::vector<std::vector<Edge>> edges;
    std::vector<bool> barb;
    /// Set when the budget stopped the exploration of some successor of the state.
    std::vector<bool> truncated;
    std::vector<size_t> depth;
    std::vector<size_t> register_size;
    /// Breadth-first tree: the predecessor and the edge index there; the initial state is its own parent.
    std::vector<std::pair<size_t, size_t>> parent;
    size_t initial = 0;

    size_t size() const {
        return edges.size();
    }
    size_t edge_count() const;
    size_t max_depth() const;
    bool any_truncated() const;
    std::vector<TraceStep> trace_to(size_t state) const;
};

struct CqpLts {
    Lts lts;
    std::vector<cqp::Config> configs;
};

struct QccsLts {
    Lts lts;
    std::vector<qccs::Config> configs;
};

/// Breadth-first exploration; states are identified modulo structural congruence with equal
/// registers (rounded hash, exact confirmation).
CqpLts build_lts(const cqp::Config &initial, const Budget &budget, const cqp::StepOptions &options = {});

enum class QccsSteps { Reductions, Labelled };
QccsLts build_lts(const qccs::Config &initial, const qccs::Definitions &defs, const Budget &budget,
                  QccsSteps steps = QccsSteps::Reductions, const qccs::StepOptions &options = {});

/// Some reachable state shows a success barb.
Verdict may_reach_success(const Lts &lts);
/// Every maximal finite path passes a success barb. Infinite paths are not considered; a path
/// that runs into a truncated state gives Inconclusive.
Verdict must_reach_success(const Lts &lts);
/// Holds when a cycle of non-permutation edges is reachable.
Verdict detect_divergence(const Lts &lts);

}  // namespace qproc::criteria
