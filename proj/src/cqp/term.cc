#include "qproc/cqp/term.h"

#include <algorithm>

#include "qproc/text/lexer.h"

namespace qproc::cqp {

namespace {

TermPtr make(Term t) {
    return std::make_shared<const Term>(std::move(t));
}

TermPtr with_body(const TermPtr &p, TermPtr body) {
    if (body == p->body) {
        return p;
    }
    Term t = *p;
    t.body = std::move(body);
    return make(std::move(t));
}

void collect_free_channels(const TermPtr &p, std::set<std::string> &bound, std::set<std::string> &out) {
    switch (p->kind) {
        case TermKind::Nil:
        case TermKind::Success:
            return;
        case TermKind::Par:
            collect_free_channels(p->body, bound, out);
            collect_free_channels(p->right, bound, out);
            return;
        case TermKind::In:
        case TermKind::Out:
            if (!bound.count(p->chan)) {
                out.insert(p->chan);
            }
            collect_free_channels(p->body, bound, out);
            return;
        case TermKind::Trans:
        case TermKind::NewQbit:
            collect_free_channels(p->body, bound, out);
            return;
        case TermKind::Measure:
        case TermKind::NewChan: {
            bool fresh = bound.insert(p->var).second;
            collect_free_channels(p->body, bound, out);
            if (fresh) {
                bound.erase(p->var);
            }
            return;
        }
    }
}

void collect_free_qubits(const TermPtr &p, std::set<std::string> &bound, std::set<std::string> &out) {
    auto use = [&](const std::string &q) {
        if (!bound.count(q)) {
            out.insert(q);
        }
    };
    switch (p->kind) {
        case TermKind::Nil:
        case TermKind::Success:
            return;
        case TermKind::Par:
            collect_free_qubits(p->body, bound, out);
            collect_free_qubits(p->right, bound, out);
            return;
        case TermKind::Out:
            use(p->qubit);
            collect_free_qubits(p->body, bound, out);
            return;
        case TermKind::Trans:
        case TermKind::Measure:
            for (const auto &q : p->qubits) {
                use(q);
            }
            collect_free_qubits(p->body, bound, out);
            return;
        case TermKind::NewChan:
            collect_free_qubits(p->body, bound, out);
            return;
        case TermKind::In:
        case TermKind::NewQbit: {
            bool fresh = bound.insert(p->var).second;
            collect_free_qubits(p->body, bound, out);
            if (fresh) {
                bound.erase(p->var);
            }
            return;
        }
    }
}

void collect_all(const TermPtr &p, std::set<std::string> &out) {
    if (!p) {
        return;
    }
    for (const std::string *s : {&p->chan, &p->var, &p->qubit}) {
        if (!s->empty()) {
            out.insert(*s);
        }
    }
    out.insert(p->qubits.begin(), p->qubits.end());
    collect_all(p->body, out);
    collect_all(p->right, out);
}

TermPtr rename_qubits_rec(const TermPtr &p, const std::map<std::string, std::string> &gamma) {
    auto image = [&](const std::string &q) {
        auto it = gamma.find(q);
        return it == gamma.end() ? q : it->second;
    };
    switch (p->kind) {
        case TermKind::Nil:
        case TermKind::Success:
            return p;
        case TermKind::Par: {
            auto l = rename_qubits_rec(p->body, gamma);
            auto r = rename_qubits_rec(p->right, gamma);
            if (l == p->body && r == p->right) {
                return p;
            }
            return par(l, r);
        }
        case TermKind::Out: {
            Term t = *p;
            t.qubit = image(p->qubit);
            t.body = rename_qubits_rec(p->body, gamma);
            return make(std::move(t));
        }
        case TermKind::Trans:
        case TermKind::Measure: {
            Term t = *p;
            for (auto &q : t.qubits) {
                q = image(q);
            }
            t.body = rename_qubits_rec(p->body, gamma);
            return make(std::move(t));
        }
        case TermKind::NewChan:
            return with_body(p, rename_qubits_rec(p->body, gamma));
        case TermKind::In:
        case TermKind::NewQbit: {
            std::map<std::string, std::string> inner = gamma;
            inner.erase(p->var);
            if (inner.empty()) {
                return p;
            }
            auto body_free = free_qubits(p->body);
            bool captured = false;
            for (const auto &[from, to] : inner) {
                if (to == p->var && body_free.count(from)) {
                    captured = true;
                }
            }
            Term t = *p;
            TermPtr body = p->body;
            if (captured) {
                std::set<std::string> taken = all_names(body);
                for (const auto &[from, to] : inner) {
                    taken.insert(from);
                    taken.insert(to);
                }
                t.var = fresh_variant(p->var, taken);
                body = rename_qubits_rec(body, {{p->var, t.var}});
            }
            t.body = rename_qubits_rec(body, inner);
            return make(std::move(t));
        }
    }
    return p;
}

}  // namespace

TermPtr nil() {
    static const TermPtr kNil = make(Term{});
    return kNil;
}

TermPtr success() {
    Term t;
    t.kind = TermKind::Success;
    static const TermPtr kSuccess = make(t);
    return kSuccess;
}

TermPtr par(TermPtr left, TermPtr right) {
    Term t;
    t.kind = TermKind::Par;
    t.body = std::move(left);
    t.right = std::move(right);
    return make(std::move(t));
}

TermPtr input(std::string chan, std::string var, TermPtr body) {
    Term t;
    t.kind = TermKind::In;
    t.chan = std::move(chan);
    t.var = std::move(var);
    t.body = std::move(body);
    return make(std::move(t));
}

TermPtr output(std::string chan, std::string qubit, TermPtr body) {
    Term t;
    t.kind = TermKind::Out;
    t.chan = std::move(chan);
    t.qubit = std::move(qubit);
    t.body = std::move(body);
    return make(std::move(t));
}

TermPtr trans(std::vector<std::string> qubits, std::string gate, TermPtr body) {
    Term t;
    t.kind = TermKind::Trans;
    t.qubits = std::move(qubits);
    t.gate = std::move(gate);
    t.body = std::move(body);
    return make(std::move(t));
}

TermPtr measure(std::vector<std::string> qubits, std::string var, TermPtr body) {
    Term t;
    t.kind = TermKind::Measure;
    t.qubits = std::move(qubits);
    t.var = std::move(var);
    t.body = std::move(body);
    return make(std::move(t));
}

TermPtr new_chan(std::string var, TermPtr body) {
    Term t;
    t.kind = TermKind::NewChan;
    t.var = std::move(var);
    t.body = std::move(body);
    return make(std::move(t));
}

TermPtr new_qbit(std::string var, TermPtr body) {
    Term t;
    t.kind = TermKind::NewQbit;
    t.var = std::move(var);
    t.body = std::move(body);
    return make(std::move(t));
}

TermPtr par_all(const std::vector<TermPtr> &components) {
    if (components.empty()) {
        return nil();
    }
    TermPtr out = components.back();
    for (size_t k = components.size() - 1; k-- > 0;) {
        out = par(components[k], out);
    }
    return out;
}

bool is_prefix(TermKind kind) {
    return kind == TermKind::In || kind == TermKind::Out || kind == TermKind::Trans || kind == TermKind::Measure;
}

std::set<std::string> free_channels(const TermPtr &p) {
    std::set<std::string> bound, out;
    collect_free_channels(p, bound, out);
    return out;
}

std::set<std::string> free_qubits(const TermPtr &p) {
    std::set<std::string> bound, out;
    collect_free_qubits(p, bound, out);
    return out;
}

std::set<std::string> all_names(const TermPtr &p) {
    std::set<std::string> out;
    collect_all(p, out);
    return out;
}

TermPtr subst_channel(const TermPtr &p, const std::string &from, const std::string &to) {
    if (from == to) {
        return p;
    }
    switch (p->kind) {
        case TermKind::Nil:
        case TermKind::Success:
            return p;
        case TermKind::Par: {
            auto l = subst_channel(p->body, from, to);
            auto r = subst_channel(p->right, from, to);
            if (l == p->body && r == p->right) {
                return p;
            }
            return par(l, r);
        }
        case TermKind::In:
        case TermKind::Out: {
            Term t = *p;
            if (t.chan == from) {
                t.chan = to;
            }
            t.body = subst_channel(p->body, from, to);
            return make(std::move(t));
        }
        case TermKind::Trans:
        case TermKind::NewQbit:
            return with_body(p, subst_channel(p->body, from, to));
        case TermKind::Measure:
        case TermKind::NewChan: {
            if (p->var == from) {
                return p;
            }
            Term t = *p;
            TermPtr body = p->body;
            if (p->var == to && free_channels(body).count(from)) {
                std::set<std::string> taken = all_names(body);
                taken.insert(from);
                taken.insert(to);
                t.var = fresh_variant(p->var, taken);
                body = subst_channel(body, p->var, t.var);
            }
            t.body = subst_channel(body, from, to);
            return make(std::move(t));
        }
    }
    return p;
}

TermPtr subst_qubits(const TermPtr &p, const std::map<std::string, std::string> &gamma) {
    std::map<std::string, std::string> active;
    for (const auto &[from, to] : gamma) {
        if (from != to) {
            active.emplace(from, to);
        }
    }
    if (active.empty()) {
        return p;
    }
    std::map<std::string, std::string> preimage;
    for (const auto &q : free_qubits(p)) {
        auto it = active.find(q);
        const std::string &img = it == active.end() ? q : it->second;
        auto [pos, inserted] = preimage.emplace(img, q);
        if (!inserted) {
            throw Error(ErrorKind::NoCloningViolation,
                        "qubit renaming identifies " + pos->second + " and " + q + " as " + img);
        }
    }
    return rename_qubits_rec(p, active);
}

TermPtr subst_qubit(const TermPtr &p, const std::string &from, const std::string &to) {
    return subst_qubits(p, {{from, to}});
}

bool same_term(const TermPtr &a, const TermPtr &b) {
    if (a == b) {
        return true;
    }
    if (!a || !b) {
        return false;
    }
    return a->kind == b->kind && a->chan == b->chan && a->var == b->var && a->qubit == b->qubit &&
           a->gate == b->gate && a->qubits == b->qubits && same_term(a->body, b->body) &&
           same_term(a->right, b->right);
}

size_t term_size(const TermPtr &p) {
    if (!p) {
        return 0;
    }
    return 1 + term_size(p->body) + term_size(p->right);
}

size_t term_depth(const TermPtr &p) {
    if (!p) {
        return 0;
    }
    return 1 + std::max(term_depth(p->body), term_depth(p->right));
}

}  // namespace qproc::cqp
