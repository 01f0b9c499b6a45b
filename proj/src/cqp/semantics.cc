#include "qproc/cqp/semantics.h"

#include <algorithm>
#include <random>
#include <set>

#include "qproc/quantum/unitary.h"
#include "qproc/text/lexer.h"

namespace qproc::cqp {

const char *rule_name(Rule rule) {
    switch (rule) {
        case Rule::Measure:
            return "R-Measure";
        case Rule::Trans:
            return "R-Trans";
        case Rule::Perm:
            return "R-Perm";
        case Rule::Prob:
            return "R-Prob";
        case Rule::New:
            return "R-New";
        case Rule::Qbit:
            return "R-Qbit";
        case Rule::Comm:
            return "R-Comm";
    }
    return "?";
}

namespace {

using Path = std::vector<bool>;  // false = left component, true = right component

struct Leaf {
    Path path;
    TermPtr term;
};

void collect_leaves(const TermPtr &p, Path &path, std::vector<Leaf> &out) {
    if (p->kind == TermKind::Par) {
        path.push_back(false);
        collect_leaves(p->body, path, out);
        path.back() = true;
        collect_leaves(p->right, path, out);
        path.pop_back();
    } else {
        out.push_back({path, p});
    }
}

TermPtr replace_at(const TermPtr &p, const Path &path, size_t depth, const TermPtr &with) {
    if (depth == path.size()) {
        return with;
    }
    if (path[depth]) {
        return par(p->body, replace_at(p->right, path, depth + 1, with));
    }
    return par(replace_at(p->body, path, depth + 1, with), p->right);
}

std::string join(const std::vector<std::string> &items) {
    std::string out;
    for (size_t k = 0; k < items.size(); ++k) {
        out += (k ? "," : "") + items[k];
    }
    return out;
}

// Operands first (in operand order), the rest in their current relative order.
std::vector<size_t> fronting_perm(const std::vector<std::string> &names, const std::vector<std::string> &operands) {
    std::vector<size_t> perm;
    std::vector<bool> used(names.size(), false);
    for (const auto &q : operands) {
        auto it = std::find(names.begin(), names.end(), q);
        size_t pos = static_cast<size_t>(it - names.begin());
        perm.push_back(pos);
        used[pos] = true;
    }
    for (size_t k = 0; k < names.size(); ++k) {
        if (!used[k]) {
            perm.push_back(k);
        }
    }
    return perm;
}

bool is_identity(const std::vector<size_t> &perm) {
    for (size_t k = 0; k < perm.size(); ++k) {
        if (perm[k] != k) {
            return false;
        }
    }
    return true;
}

Step perm_step(const Config &c, const std::vector<size_t> &perm) {
    std::vector<std::string> order;
    for (size_t j : perm) {
        order.push_back(c.state().names().at(j));
    }
    Step s{Rule::Perm, Config::pure(c.state().reordered(order), c.channels(), c.term()),
           std::string("R-Perm ") + join(order), perm};
    return s;
}

class Stepper {
   public:
    Stepper(const Config &c, const StepOptions &options) : c_(c), options_(options) {}

    std::vector<Step> run() {
        if (c_.is_dist()) {
            for (size_t i = 0; i < c_.cases().size(); ++i) {
                if (c_.cases()[i].probability > options_.tolerance) {
                    Step s{Rule::Prob, c_.resolve(i), "R-Prob " + std::to_string(i), {}, static_cast<int>(i)};
                    steps_.push_back(std::move(s));
                }
            }
            return std::move(steps_);
        }
        Path path;
        collect_leaves(c_.term(), path, leaves_);
        for (const auto &leaf : leaves_) {
            local_steps(leaf);
        }
        for (const auto &sender : leaves_) {
            if (sender.term->kind != TermKind::Out) {
                continue;
            }
            for (const auto &receiver : leaves_) {
                if (receiver.term->kind == TermKind::In && receiver.term->chan == sender.term->chan) {
                    communicate(sender, receiver);
                }
            }
        }
        if (options_.perm_mode == PermMode::Explicit) {
            for (const auto &perm : options_.explicit_perms) {
                if (perm.size() != c_.register_size()) {
                    throw Error(ErrorKind::InvalidPermutation, "permutation size differs from the register size");
                }
                quantum::check_permutation(perm);
                steps_.push_back(perm_step(c_, perm));
            }
        }
        return std::move(steps_);
    }

   private:
    TermPtr with_leaf(const Leaf &leaf, const TermPtr &replacement) const {
        return replace_at(c_.term(), leaf.path, 0, replacement);
    }

    // True when the operands already lead the register; otherwise offers the fronting permutation.
    bool operands_in_front(const std::vector<std::string> &operands) {
        const auto &names = c_.state().names();
        auto perm = fronting_perm(names, operands);
        if (is_identity(perm)) {
            return true;
        }
        if (options_.perm_mode == PermMode::OnDemand && !offered_perms_.count(perm)) {
            offered_perms_.insert(perm);
            steps_.push_back(perm_step(c_, perm));
        }
        return false;
    }

    void local_steps(const Leaf &leaf) {
        const TermPtr &p = leaf.term;
        const auto &names = c_.state().names();
        switch (p->kind) {
            case TermKind::Trans: {
                if (!operands_in_front(p->qubits)) {
                    return;
                }
                auto gate = quantum::builtin_gate(p->gate);
                if (!gate) {
                    throw Error(ErrorKind::UnknownGate, "unknown gate '" + p->gate + "'", p->loc);
                }
                auto next = quantum::apply_unitary_prefix(*gate, c_.state());
                add_step(Rule::Trans, Config::pure(next, c_.channels(), with_leaf(leaf, p->body)),
                                  "R-Trans {" + join(p->qubits) + " *= " + p->gate + "}");
                return;
            }
            case TermKind::Measure: {
                if (!operands_in_front(p->qubits)) {
                    return;
                }
                std::string var = p->var;
                TermPtr body = p->body;
                TermPtr context = with_leaf(leaf, nil());
                if (free_channels(context).count(var)) {
                    std::set<std::string> taken = all_names(c_.term());
                    taken.insert(c_.channels().begin(), c_.channels().end());
                    var = fresh_variant(var, taken);
                    body = subst_channel(body, p->var, var);
                }
                std::vector<DistCase> cases;
                for (auto &o : quantum::measure_prefix(c_.state(), p->qubits.size(), options_.tolerance)) {
                    cases.push_back({o.probability, std::move(o.post_state)});
                }
                add_step(Rule::Measure,
                                  Config::dist(c_.channels(), with_leaf(leaf, body), var, p->qubits.size(),
                                               std::move(cases)),
                                  "R-Measure " + join(p->qubits));
                return;
            }
            case TermKind::NewChan: {
                std::string fresh = fresh_channel_name(p->var, c_.channels(), c_.term());
                auto channels = c_.channels();
                channels.push_back(fresh);
                add_step(Rule::New,
                                  Config::pure(c_.state(), channels, with_leaf(leaf, subst_channel(p->body, p->var, fresh))),
                                  "R-New " + fresh);
                return;
            }
            case TermKind::NewQbit: {
                std::string fresh = fresh_qubit_name(names);
                auto next = quantum::tensor(c_.state(), quantum::StateVector::basis({fresh}, 0));
                add_step(Rule::Qbit,
                                  Config::pure(next, c_.channels(), with_leaf(leaf, subst_qubit(p->body, p->var, fresh))),
                                  "R-Qbit " + fresh);
                return;
            }
            default:
                return;
        }
    }

    void communicate(const Leaf &sender, const Leaf &receiver) {
        TermPtr term = replace_at(c_.term(), sender.path, 0, sender.term->body);
        TermPtr received = subst_qubit(receiver.term->body, receiver.term->var, sender.term->qubit);
        term = replace_at(term, receiver.path, 0, received);
        add_step(Rule::Comm, Config::pure(c_.state(), c_.channels(), term),
                          "R-Comm " + sender.term->chan + " " + sender.term->qubit);
    }

    void add_step(Rule rule, Config next, std::string description) {
        steps_.push_back({rule, std::move(next), std::move(description), {}, -1});
    }

    const Config &c_;
    const StepOptions &options_;
    std::vector<Leaf> leaves_;
    std::vector<Step> steps_;
    std::set<std::vector<size_t>> offered_perms_;
};

}  // namespace

std::vector<Step> enumerate_steps(const Config &c, const StepOptions &options) {
    return Stepper(c, options).run();
}

bool has_success_barb(const TermPtr &p) {
    switch (p->kind) {
        case TermKind::Success:
            return true;
        case TermKind::Par:
            return has_success_barb(p->body) || has_success_barb(p->right);
        case TermKind::NewChan:
        case TermKind::NewQbit:
            return has_success_barb(p->body);
        default:
            return false;
    }
}

bool has_success_barb(const Config &c) {
    // Substituting the measured value never changes where success sits, so every case agrees.
    return has_success_barb(c.term());
}

std::string fresh_channel_name(const std::string &binder, const std::vector<std::string> &channels,
                               const TermPtr &term) {
    std::set<std::string> taken = all_names(term);
    taken.erase(binder);
    taken.insert(channels.begin(), channels.end());
    if (text::is_integer_literal(binder) && !taken.count(binder) && !free_channels(term).count(binder)) {
        return binder;
    }
    taken.insert(binder);
    for (size_t n = 0;; ++n) {
        std::string cand = "#ch" + std::to_string(n);
        if (!taken.count(cand)) {
            return cand;
        }
    }
}

RunResult run(const Config &start, uint64_t seed, size_t max_steps, const std::vector<size_t> &script,
              const StepOptions &options) {
    RunResult result;
    result.final_config = start;
    std::mt19937_64 rng(seed);
    size_t next_choice = 0;
    for (size_t count = 0;; ++count) {
        auto steps = enumerate_steps(result.final_config, options);
        if (steps.empty()) {
            return result;
        }
        if (count == max_steps) {
            result.truncated = true;
            return result;
        }
        size_t pick = 0;
        if (steps.size() > 1) {
            if (next_choice < script.size()) {
                pick = script[next_choice++];
                if (pick >= steps.size()) {
                    throw Error(ErrorKind::InvalidOutcome, "script choice " + std::to_string(pick) +
                                                              " is out of range: " + std::to_string(steps.size()) +
                                                              " steps are enabled");
                }
            } else {
                pick = static_cast<size_t>(rng() % steps.size());
            }
        }
        result.final_config = steps[pick].next;
        result.trace.push_back(std::move(steps[pick]));
    }
}

}  // namespace qproc::cqp
