#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "qproc/error.h"
#include "qproc/text/lexer.h"

namespace qproc::cqp {

enum class TermKind { Nil, Success, Par, In, Out, Trans, Measure, NewChan, NewQbit };

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// Immutable syntax node. Prefix forms keep their continuation in `body`.
///   In       chan ? [var] . body          (var is a qubit binder)
///   Out      chan ! [qubit] . body
///   Trans    {qubits *= gate} . body
///   Measure  (var := measure qubits) . body   (var is a channel binder holding an integer)
///   NewChan  (new var) body
///   NewQbit  (qbit var) body
struct Term {
    TermKind kind = TermKind::Nil;
    std::string chan;
    std::string var;
    std::string qubit;
    std::string gate;
    std::vector<std::string> qubits;
    TermPtr body;
    TermPtr right;  // second component of Par; `body` holds the first
    SourceLoc loc;
};

TermPtr nil();
TermPtr success();
TermPtr par(TermPtr left, TermPtr right);
TermPtr input(std::string chan, std::string var, TermPtr body);
TermPtr output(std::string chan, std::string qubit, TermPtr body);
TermPtr trans(std::vector<std::string> qubits, std::string gate, TermPtr body);
TermPtr measure(std::vector<std::string> qubits, std::string var, TermPtr body);
TermPtr new_chan(std::string var, TermPtr body);
TermPtr new_qbit(std::string var, TermPtr body);

/// Right-nested parallel composition; nil for an empty list.
TermPtr par_all(const std::vector<TermPtr> &components);

bool is_prefix(TermKind kind);

std::set<std::string> free_channels(const TermPtr &p);
std::set<std::string> free_qubits(const TermPtr &p);
/// Every name occurring anywhere in the term, bound or free, in either namespace.
std::set<std::string> all_names(const TermPtr &p);

/// Capture-avoiding replacement of free channel `from` by `to`.
TermPtr subst_channel(const TermPtr &p, const std::string &from, const std::string &to);
/// Simultaneous capture-avoiding renaming of free qubits. Throws NoCloningViolation when two
/// qubits would be identified.
TermPtr subst_qubits(const TermPtr &p, const std::map<std::string, std::string> &gamma);
TermPtr subst_qubit(const TermPtr &p, const std::string &from, const std::string &to);

using text::fresh_variant;

/// Structural equality, binder names included.
bool same_term(const TermPtr &a, const TermPtr &b);

size_t term_size(const TermPtr &p);
size_t term_depth(const TermPtr &p);

}  // namespace qproc::cqp
