#include "qproc/cqp/congruence.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "qproc/cqp/printer.h"
#include "qproc/text/lexer.h"

namespace qproc::cqp {

namespace {

void flatten(const TermPtr &p, std::vector<TermPtr> &out) {
    if (p->kind == TermKind::Par) {
        flatten(p->body, out);
        flatten(p->right, out);
    } else {
        out.push_back(p);
    }
}

bool renames_channel_binder(const TermPtr &p) {
    return p->kind == TermKind::Measure || (p->kind == TermKind::NewChan && !text::is_integer_literal(p->var));
}

bool binds_qubit(const TermPtr &p) {
    return p->kind == TermKind::In || p->kind == TermKind::NewQbit;
}

// Top-down: a binder is renamed to prefix + counter before its scope is visited, so names
// bound outside a parallel group are already canonical when the group is sorted.
class Normalizer {
   public:
    explicit Normalizer(std::string prefix) : prefix_(std::move(prefix)) {}

    TermPtr run(const TermPtr &p) {
        switch (p->kind) {
            case TermKind::Nil:
            case TermKind::Success:
                return p;
            case TermKind::Par:
                return group(p);
            default:
                break;
        }
        Term t = *p;
        TermPtr body = p->body;
        if (renames_channel_binder(p) || binds_qubit(p)) {
            std::string fresh = prefix_ + std::to_string(counter_++);
            body = binds_qubit(p) ? subst_qubit(body, p->var, fresh) : subst_channel(body, p->var, fresh);
            t.var = fresh;
        }
        t.body = run(body);
        t.loc = {};
        return std::make_shared<const Term>(std::move(t));
    }

   private:
    // Components sorted by their own normal form under local binder names.
    TermPtr group(const TermPtr &p) {
        std::vector<TermPtr> parts;
        flatten(p, parts);
        std::vector<std::pair<std::string, TermPtr>> keyed;
        for (const auto &part : parts) {
            if (part->kind == TermKind::Nil) {
                continue;
            }
            keyed.emplace_back(print_term(Normalizer("%l").run(part)), part);
        }
        std::stable_sort(keyed.begin(), keyed.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
        std::vector<TermPtr> out;
        for (auto &[key, part] : keyed) {
            out.push_back(run(part));
        }
        return par_all(out);
    }

    std::string prefix_;
    int counter_ = 0;
};

}  // namespace

TermPtr normal_form(const TermPtr &p) {
    return Normalizer("%").run(p);
}

namespace {

std::string rounded(double v) {
    long long r = std::llround(v * 1e9);
    return std::to_string(r == 0 ? 0 : r);
}

void append_state(std::string &key, const quantum::StateVector &s) {
    for (const auto &n : s.names()) {
        key += n + ",";
    }
    key += "=";
    quantum::append_rounded(key, s.amplitudes());
}

std::set<std::string> as_set(const std::vector<std::string> &v) {
    return {v.begin(), v.end()};
}

}  // namespace

std::string config_key(const Config &c) {
    std::string key;
    TermPtr term = c.term();
    if (c.is_dist()) {
        key += "D" + std::to_string(c.measured_count()) + "|";
        for (const auto &k : c.cases()) {
            key += rounded(k.probability) + ":";
            append_state(key, k.state);
            key += ";";
        }
        term = subst_channel(term, c.measured_var(), "%m");
    } else {
        key += "P|";
        append_state(key, c.state());
    }
    key += "|";
    for (const auto &ch : as_set(c.channels())) {
        key += ch + ",";
    }
    key += "|" + print_term(normal_form(term));
    return key;
}

bool congruent_terms(const TermPtr &a, const TermPtr &b) {
    return same_term(normal_form(a), normal_form(b));
}

bool congruent(const Config &a, const Config &b, double tol) {
    if (a.is_dist() != b.is_dist() || as_set(a.channels()) != as_set(b.channels()) ||
        a.register_size() != b.register_size()) {
        return false;
    }
    if (a.is_dist() && (a.measured_count() != b.measured_count() || a.cases().size() != b.cases().size())) {
        return false;
    }
    // Rename b's register onto a's, position by position.
    std::map<std::string, std::string> gamma;
    for (size_t k = 0; k < a.register_size(); ++k) {
        gamma[b.state().names()[k]] = a.state().names()[k];
    }
    TermPtr ta = a.term();
    TermPtr tb;
    try {
        tb = subst_qubits(b.term(), gamma);
    } catch (const Error &) {
        return false;
    }
    if (a.is_dist()) {
        ta = subst_channel(ta, a.measured_var(), "%m");
        tb = subst_channel(tb, b.measured_var(), "%m");
    }
    if (!congruent_terms(ta, tb)) {
        return false;
    }
    auto same_amplitudes = [&](const quantum::StateVector &x, const quantum::StateVector &y) {
        return quantum::max_abs_diff(x.amplitudes(), y.amplitudes()) <= tol;
    };
    if (!a.is_dist()) {
        return same_amplitudes(a.state(), b.state());
    }
    for (size_t i = 0; i < a.cases().size(); ++i) {
        if (std::abs(a.cases()[i].probability - b.cases()[i].probability) > tol ||
            !same_amplitudes(a.cases()[i].state, b.cases()[i].state)) {
            return false;
        }
    }
    return true;
}

}  // namespace qproc::cqp
