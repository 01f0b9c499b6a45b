#include "qproc/qccs/congruence.h"

#include <algorithm>
#include <atomic>

#include "qproc/qccs/printer.h"

namespace qproc::qccs {

namespace {

TermPtr with_body(const TermPtr &p, TermPtr body, TermPtr right = nullptr) {
    Term t = *p;
    t.body = std::move(body);
    t.right = std::move(right);
    t.loc = {};
    return std::make_shared<const Term>(std::move(t));
}

void channel_occurrences(const TermPtr &p, std::vector<std::string> &out) {
    if (!p) {
        return;
    }
    if (p->kind == Kind::In || p->kind == Kind::Out) {
        out.push_back(p->chan);
    }
    channel_occurrences(p->body, out);
    channel_occurrences(p->right, out);
}

// Unique across normalizers, so a nested computation never reuses a placeholder that is free in
// the component it works on. Zero padding keeps string order equal to allocation order. The
// numbers never reach a normal form.
std::string placeholder() {
    static std::atomic<uint64_t> next{0};
    std::string digits = std::to_string(next++);
    return "%r" + std::string(digits.size() < 12 ? 12 - digits.size() : 0, '0') + digits;
}

// Top-down: qubit binders and restricted names get prefix + counter before their scope is
// visited, so names bound outside a parallel group are canonical when the group is sorted.
// Restrictions inside a group are renamed apart and merged at the group.
class Normalizer {
   public:
    explicit Normalizer(std::string prefix) : prefix_(std::move(prefix)) {}

    TermPtr run(const TermPtr &p) {
        switch (p->kind) {
            case Kind::Nil:
            case Kind::Success:
            case Kind::Call:
                return p;
            case Kind::Par:
            case Kind::Restrict:
                return group(p);
            case Kind::Choice: {
                auto left = run(p->body);
                return with_body(p, left, run(p->right));
            }
            case Kind::In: {
                std::string fresh = next();
                Term t = *p;
                t.var = fresh;
                t.body = run(subst_qubit(p->body, p->var, fresh));
                t.loc = {};
                return std::make_shared<const Term>(std::move(t));
            }
            case Kind::Oper:
                if (p->op == kNewQubitOp) {
                    std::string fresh = next();
                    Term t = *p;
                    t.qubits = {fresh};
                    t.body = run(subst_qubit(p->body, p->qubits.front(), fresh));
                    t.loc = {};
                    return std::make_shared<const Term>(std::move(t));
                }
                return with_body(p, run(p->body));
            default:
                return with_body(p, run(p->body));
        }
    }

   private:
    std::string next() {
        return prefix_ + std::to_string(counter_++);
    }

    void gather(const TermPtr &p, std::vector<TermPtr> &components, std::vector<std::string> &names) {
        if (p->kind == Kind::Par) {
            gather(p->body, components, names);
            gather(p->right, components, names);
            return;
        }
        if (p->kind == Kind::Restrict) {
            std::map<std::string, std::string> gamma;
            for (const auto &c : p->restricted) {
                std::string name = placeholder();
                gamma[c] = name;
                names.push_back(name);
            }
            gather(subst_channels(p->body, gamma), components, names);
            return;
        }
        if (p->kind != Kind::Nil) {
            components.push_back(p);
        }
    }

    // One arrangement of a group: restricted names taken in the given order get the next
    // numbers after the components' own binders.
    TermPtr arrange(const std::vector<TermPtr> &components, const std::vector<std::string> &names) {
        std::map<std::string, std::string> temps;
        for (const auto &n : names) {
            temps[n] = placeholder();
        }
        std::vector<std::pair<std::string, TermPtr>> keyed;
        for (const auto &c : components) {
            auto renamed = subst_channels(c, temps);
            keyed.emplace_back(print_term(Normalizer("%l").run(renamed)), renamed);
        }
        std::stable_sort(keyed.begin(), keyed.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
        std::vector<TermPtr> sorted;
        for (auto &[key, c] : keyed) {
            sorted.push_back(run(c));
        }
        TermPtr body = par_all(sorted);
        if (names.empty()) {
            return body;
        }
        std::map<std::string, std::string> gamma;
        std::set<std::string> renamed;
        for (const auto &n : names) {
            gamma[temps[n]] = next();
            renamed.insert(gamma[temps[n]]);
        }
        return restrict(subst_channels(body, gamma), std::move(renamed));
    }

    // Restricted names are interchangeable, so the group's form is the least arrangement over
    // their orders. Large groups fall back to the order of first occurrence.
    TermPtr group(const TermPtr &p) {
        std::vector<TermPtr> components;
        std::vector<std::string> names;
        gather(p, components, names);
        std::sort(names.begin(), names.end());
        if (names.size() > 5) {
            std::vector<std::string> seen;
            channel_occurrences(par_all(components), seen);
            std::vector<std::string> order;
            for (const auto &c : seen) {
                if (std::find(names.begin(), names.end(), c) != names.end() &&
                    std::find(order.begin(), order.end(), c) == order.end()) {
                    order.push_back(c);
                }
            }
            for (const auto &c : names) {
                if (std::find(order.begin(), order.end(), c) == order.end()) {
                    order.push_back(c);
                }
            }
            return arrange(components, order);
        }
        int start = counter_;
        TermPtr best;
        std::string best_text;
        int best_end = start;
        do {
            counter_ = start;
            TermPtr candidate = arrange(components, names);
            std::string text = print_term(candidate);
            if (!best || text < best_text) {
                best = candidate;
                best_text = std::move(text);
                best_end = counter_;
            }
        } while (std::next_permutation(names.begin(), names.end()));
        counter_ = best_end;
        return best;
    }

    std::string prefix_;
    int counter_ = 0;
};

}  // namespace

TermPtr normal_form(const TermPtr &p) {
    return Normalizer("%").run(p);
}

bool congruent_terms(const TermPtr &a, const TermPtr &b) {
    return print_term(normal_form(a)) == print_term(normal_form(b));
}

std::string config_key(const Config &c) {
    auto rho = c.rho.canonical();
    std::string key;
    for (const auto &n : rho.names()) {
        key += n + ",";
    }
    key += "=";
    quantum::append_rounded(key, rho.entries());
    key += "|" + print_term(normal_form(c.term));
    return key;
}

bool congruent(const Config &a, const Config &b, double tol) {
    const auto &an = a.rho.names();
    const auto &bn = b.rho.names();
    if (an.size() != bn.size()) {
        return false;
    }
    TermPtr bterm = b.term;
    quantum::DensityMatrix brho = b.rho;
    if (std::set<std::string>(an.begin(), an.end()) != std::set<std::string>(bn.begin(), bn.end())) {
        std::map<std::string, std::string> gamma;
        for (size_t k = 0; k < an.size(); ++k) {
            gamma[bn[k]] = an[k];
        }
        bterm = subst_qubits(bterm, gamma);
        brho = brho.renamed(gamma);
    }
    return congruent_terms(a.term, bterm) && quantum::approx_eq_unordered(a.rho, brho, tol);
}

}  // namespace qproc::qccs
