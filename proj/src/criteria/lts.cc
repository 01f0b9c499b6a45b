#include "qproc/criteria/lts.h"

#include <algorithm>
#include <deque>
#include <functional>
#include <unordered_map>

#include "qproc/cqp/congruence.h"
#include "qproc/qccs/congruence.h"

namespace qproc::criteria {

const char *verdict_name(VerdictKind kind) {
    switch (kind) {
        case VerdictKind::Holds:
            return "holds";
        case VerdictKind::Fails:
            return "fails";
        case VerdictKind::Inconclusive:
            return "inconclusive";
    }
    return "?";
}

Verdict Verdict::holds(std::string reason, std::vector<TraceStep> witness) {
    return {VerdictKind::Holds, std::move(witness), std::move(reason)};
}

Verdict Verdict::fails(std::string reason, std::vector<TraceStep> witness) {
    return {VerdictKind::Fails, std::move(witness), std::move(reason)};
}

Verdict Verdict::inconclusive(std::string reason) {
    return {VerdictKind::Inconclusive, {}, std::move(reason)};
}

std::vector<size_t> script_of(const std::vector<TraceStep> &trace) {
    std::vector<size_t> out;
    for (const auto &s : trace) {
        if (s.options > 1) {
            out.push_back(s.choice);
        }
    }
    return out;
}

size_t Lts::edge_count() const {
    size_t n = 0;
    for (const auto &e : edges) {
        n += e.size();
    }
    return n;
}

size_t Lts::max_depth() const {
    return depth.empty() ? 0 : *std::max_element(depth.begin(), depth.end());
}

bool Lts::any_truncated() const {
    return std::find(truncated.begin(), truncated.end(), true) != truncated.end();
}

std::vector<TraceStep> Lts::trace_to(size_t state) const {
    std::vector<TraceStep> out;
    while (state != initial) {
        auto [from, k] = parent[state];
        const Edge &e = edges[from][k];
        out.push_back({e.choice, e.options, e.rule});
        state = from;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

namespace {

struct Successor {
    Edge edge;
    std::string key;
};

// Generic breadth-first exploration. `expand` returns the successors of a configuration with
// their edges (target unset); `same` confirms a key match.
template <class Config, class Expand, class Key, class Same, class Barb, class Size>
void explore(const Config &initial, const Budget &budget, Lts &lts, std::vector<Config> &configs, Expand expand,
             Key key, Same same, Barb barb, Size size) {
    std::unordered_map<std::string, std::vector<size_t>> index;
    auto add = [&](const Config &c, const std::string &k, size_t depth, std::pair<size_t, size_t> parent) {
        configs.push_back(c);
        lts.edges.emplace_back();
        lts.barb.push_back(barb(c));
        lts.truncated.push_back(false);
        lts.depth.push_back(depth);
        lts.register_size.push_back(size(c));
        size_t id = configs.size() - 1;
        lts.parent.push_back(parent.first == SIZE_MAX ? std::pair<size_t, size_t>{id, 0} : parent);
        index[k].push_back(id);
        return id;
    };
    auto find = [&](const Config &c, const std::string &k) -> std::optional<size_t> {
        auto it = index.find(k);
        if (it != index.end()) {
            for (size_t id : it->second) {
                if (same(configs[id], c)) {
                    return id;
                }
            }
        }
        return std::nullopt;
    };
    lts.initial = add(initial, key(initial), 0, {SIZE_MAX, 0});
    std::deque<size_t> todo = {lts.initial};
    while (!todo.empty()) {
        size_t s = todo.front();
        todo.pop_front();
        auto successors = expand(configs[s]);
        if (successors.empty()) {
            continue;
        }
        if (lts.depth[s] >= budget.max_depth) {
            lts.truncated[s] = true;
            continue;
        }
        size_t depth = lts.depth[s];
        for (auto &[edge, next] : successors) {
            std::string k = key(next);
            auto found = find(next, k);
            if (!found) {
                if (configs.size() >= budget.max_states) {
                    lts.truncated[s] = true;
                    continue;
                }
                found = add(next, k, depth + 1, {s, lts.edges[s].size()});
                todo.push_back(*found);
            }
            edge.target = *found;
            lts.edges[s].push_back(std::move(edge));
        }
    }
}

}  // namespace

CqpLts build_lts(const cqp::Config &initial, const Budget &budget, const cqp::StepOptions &options) {
    CqpLts out;
    auto expand = [&](const cqp::Config &c) {
        auto steps = cqp::enumerate_steps(c, options);
        std::vector<std::pair<Edge, cqp::Config>> result;
        for (size_t k = 0; k < steps.size(); ++k) {
            Edge e;
            e.label = "tau";
            e.rule = steps[k].description;
            e.choice = k;
            e.options = steps.size();
            e.permutation = steps[k].rule == cqp::Rule::Perm;
            result.emplace_back(std::move(e), std::move(steps[k].next));
        }
        return result;
    };
    auto same = [&](const cqp::Config &a, const cqp::Config &b) { return cqp::congruent(a, b, options.tolerance); };
    explore(initial, budget, out.lts, out.configs, expand, cqp::config_key, same,
            [](const cqp::Config &c) { return cqp::has_success_barb(c); },
            [](const cqp::Config &c) { return c.register_size(); });
    return out;
}

QccsLts build_lts(const qccs::Config &initial, const qccs::Definitions &defs, const Budget &budget, QccsSteps steps,
                  const qccs::StepOptions &options) {
    QccsLts out;
    auto expand = [&](const qccs::Config &c) {
        auto ts = steps == QccsSteps::Labelled ? qccs::lts_steps(c, defs, options) : qccs::reduce_steps(c, defs, options);
        std::vector<std::pair<Edge, qccs::Config>> result;
        for (size_t k = 0; k < ts.size(); ++k) {
            Edge e;
            e.label = qccs::label_text(ts[k].label);
            e.rule = ts[k].rule;
            e.choice = k;
            e.options = ts.size();
            e.silent = ts[k].label.kind == qccs::LabelKind::Tau;
            qccs::Config next = std::move(ts[k].next);
            next.mixture.reset();
            result.emplace_back(std::move(e), std::move(next));
        }
        return result;
    };
    auto same = [&](const qccs::Config &a, const qccs::Config &b) {
        return qccs::congruent(a, b, options.tolerance) && a.rho.names().size() == b.rho.names().size();
    };
    explore(initial, budget, out.lts, out.configs, expand, qccs::config_key, same,
            [&](const qccs::Config &c) { return qccs::has_success_barb(c, defs); },
            [](const qccs::Config &c) { return c.rho.num_qubits(); });
    return out;
}

Verdict may_reach_success(const Lts &lts) {
    for (size_t s = 0; s < lts.size(); ++s) {
        if (lts.barb[s]) {
            return Verdict::holds("success is reachable", lts.trace_to(s));
        }
    }
    if (lts.any_truncated()) {
        return Verdict::inconclusive("exploration budget exhausted before success was found");
    }
    for (size_t s = 0; s < lts.size(); ++s) {
        if (lts.edges[s].empty()) {
            return Verdict::fails("no reachable state shows success", lts.trace_to(s));
        }
    }
    return Verdict::fails("no reachable state shows success");
}

Verdict must_reach_success(const Lts &lts) {
    // Search the states reachable without passing a barb for a dead end.
    std::vector<bool> seen(lts.size(), false);
    std::vector<std::pair<size_t, size_t>> via(lts.size());
    std::deque<size_t> todo;
    auto trace = [&](size_t s) {
        std::vector<TraceStep> out;
        while (s != lts.initial) {
            auto [from, k] = via[s];
            const Edge &e = lts.edges[from][k];
            out.push_back({e.choice, e.options, e.rule});
            s = from;
        }
        std::reverse(out.begin(), out.end());
        return out;
    };
    if (!lts.barb[lts.initial]) {
        seen[lts.initial] = true;
        todo.push_back(lts.initial);
    }
    bool cut = false;
    while (!todo.empty()) {
        size_t s = todo.front();
        todo.pop_front();
        if (lts.truncated[s]) {
            cut = true;
        }
        if (lts.edges[s].empty() && !lts.truncated[s]) {
            return Verdict::fails("a maximal path ends without success", trace(s));
        }
        for (size_t k = 0; k < lts.edges[s].size(); ++k) {
            size_t t = lts.edges[s][k].target;
            if (!seen[t] && !lts.barb[t]) {
                seen[t] = true;
                via[t] = {s, k};
                todo.push_back(t);
            }
        }
    }
    if (cut) {
        return Verdict::inconclusive("a path without success reaches the exploration budget");
    }
    return Verdict::holds("every maximal finite path passes success");
}

Verdict detect_divergence(const Lts &lts) {
    enum Color : char { White, Grey, Black };
    std::vector<Color> color(lts.size(), White);
    for (size_t root = 0; root < lts.size(); ++root) {
        if (color[root] != White) {
            continue;
        }
        // Iterative depth-first search over non-permutation edges.
        std::vector<std::pair<size_t, size_t>> stack = {{root, 0}};
        color[root] = Grey;
        while (!stack.empty()) {
            auto &[s, k] = stack.back();
            if (k == lts.edges[s].size()) {
                color[s] = Black;
                stack.pop_back();
                continue;
            }
            const Edge &e = lts.edges[s][k++];
            if (e.permutation) {
                continue;
            }
            if (color[e.target] == Grey) {
                return Verdict::holds("a cycle is reachable", lts.trace_to(e.target));
            }
            if (color[e.target] == White) {
                color[e.target] = Grey;
                stack.emplace_back(e.target, 0);
            }
        }
    }
    if (lts.any_truncated()) {
        return Verdict::inconclusive("no cycle within the exploration budget");
    }
    return Verdict::fails("the transition graph is acyclic");
}

}  // namespace qproc::criteria
