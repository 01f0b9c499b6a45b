#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qproc/error.h"
#include "qproc/quantum/state.h"
#include "qproc/quantum/superop.h"

namespace qproc::qccs {

enum class BoolKind { True, False, TraceNonzero, Not, And };

struct BoolExpr;
using BoolPtr = std::shared_ptr<const BoolExpr>;

/// TraceNonzero(op, qubits) holds when the raw operator applied to the current state has
/// nonzero trace.
struct BoolExpr {
    BoolKind kind = BoolKind::True;
    std::string op;
    std::vector<std::string> qubits;
    BoolPtr left;
    BoolPtr right;
};

BoolPtr bool_true();
BoolPtr bool_false();
BoolPtr trace_nonzero(std::string op, std::vector<std::string> qubits);
BoolPtr bool_not(BoolPtr b);
BoolPtr bool_and(BoolPtr a, BoolPtr b);

enum class Kind { Nil, Success, Tau, Oper, In, Out, Choice, Par, Restrict, IfThen, Call };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// Immutable syntax node. Prefixes keep their continuation in `body`.
///   Oper      op[qubits].body       (op "new" binds its single qubit in body)
///   In        chan?var.body         (var is a qubit binder)
///   Out       chan!qubit.body
///   Choice    body + right
///   Par       body | right
///   Restrict  body \ restricted
///   IfThen    if cond then body
///   Call      op(qubits)            (process constant)
struct Term {
    Kind kind = Kind::Nil;
    std::string chan;
    std::string var;
    std::string qubit;
    std::string op;
    std::vector<std::string> qubits;
    std::set<std::string> restricted;
    BoolPtr cond;
    TermPtr body;
    TermPtr right;
    SourceLoc loc;
};

inline constexpr const char *kNewQubitOp = "new";
inline constexpr const char *kMeasureOp = "M";

TermPtr nil();
TermPtr success();
TermPtr tau(TermPtr body);
TermPtr oper(std::string op, std::vector<std::string> qubits, TermPtr body);
/// new[var].body: appends a fresh qubit in |0> and names it var in body.
TermPtr new_qubit(std::string var, TermPtr body);
TermPtr input(std::string chan, std::string var, TermPtr body);
TermPtr output(std::string chan, std::string qubit, TermPtr body);
TermPtr choice(TermPtr left, TermPtr right);
TermPtr par(TermPtr left, TermPtr right);
TermPtr restrict(TermPtr body, std::set<std::string> names);
TermPtr if_then(BoolPtr cond, TermPtr body);
TermPtr call(std::string name, std::vector<std::string> args);

/// Right-nested; nil for an empty list.
TermPtr par_all(const std::vector<TermPtr> &components);
/// Right-nested; requires a non-empty list.
TermPtr choice_all(const std::vector<TermPtr> &branches);

/// Name of the operator measuring the expected outcome i ("E<i>").
std::string expected_outcome_op(uint64_t i);
/// Outcome index of an "E<i>" name, if it is one.
std::optional<uint64_t> parse_expected_outcome_op(const std::string &name);

struct ConstDef {
    std::vector<std::string> params;
    TermPtr body;
    SourceLoc loc;
};

/// Process constants and user-defined operators. Built-in operators (gate names, M, E<i>,
/// new) are resolved without entries here.
struct Definitions {
    std::map<std::string, ConstDef> consts;
    std::map<std::string, quantum::SuperOperator> ops;
};

/// Operator for a reference applied to `arity` qubits. Throws UnresolvedName or ArityMismatch.
quantum::SuperOperator resolve_op(const Definitions &defs, const std::string &name, size_t arity,
                                  const SourceLoc &loc = {});
bool is_builtin_op(const std::string &name);

std::set<std::string> free_qubits(const TermPtr &p);
std::set<std::string> free_qubits(const BoolPtr &b);
std::set<std::string> free_channels(const TermPtr &p);
/// Every name anywhere in the term, bound or free, channels and qubits alike.
std::set<std::string> all_names(const TermPtr &p);

/// Capture-avoiding; restricted names are renamed away from `to`.
TermPtr subst_channel(const TermPtr &p, const std::string &from, const std::string &to);
/// Simultaneous renaming of free channels; restricted names are renamed away from the targets.
TermPtr subst_channels(const TermPtr &p, const std::map<std::string, std::string> &gamma);
/// Simultaneous capture-avoiding renaming of free qubits. Throws NoCloningViolation when two
/// free qubits would be identified.
TermPtr subst_qubits(const TermPtr &p, const std::map<std::string, std::string> &gamma);
TermPtr subst_qubit(const TermPtr &p, const std::string &from, const std::string &to);

/// Structural equality including binder names; ignores locations.
bool same_term(const TermPtr &a, const TermPtr &b);
bool same_bool(const BoolPtr &a, const BoolPtr &b);

size_t term_size(const TermPtr &p);

/// A term with its state. `mixture`, when present, is the weighted list of kets the state was
/// written as; the printer prefers it so emitted files read back identically.
struct MixtureTerm {
    quantum::Complex weight;
    quantum::Vector ket;
};

struct Config {
    TermPtr term;
    quantum::DensityMatrix rho;
    std::optional<std::vector<MixtureTerm>> mixture;
};

quantum::DensityMatrix mixture_matrix(const std::vector<std::string> &names, const std::vector<MixtureTerm> &mixture);

}  // namespace qproc::qccs
