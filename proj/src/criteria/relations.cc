#include "qproc/criteria/relations.h"

#include <map>

namespace qproc::criteria {

namespace {

// Fixed-width bit rows; a relation over n1 x n2 states is n1 rows of n2 bits.
class Bits {
   public:
    explicit Bits(size_t n = 0) : words_((n + 63) / 64, 0) {}

    void set(size_t k) {
        words_[k / 64] |= uint64_t{1} << (k % 64);
    }
    void reset(size_t k) {
        words_[k / 64] &= ~(uint64_t{1} << (k % 64));
    }
    bool test(size_t k) const {
        return (words_[k / 64] >> (k % 64)) & 1;
    }
    bool intersects(const Bits &other) const {
        for (size_t w = 0; w < words_.size(); ++w) {
            if (words_[w] & other.words_[w]) {
                return true;
            }
        }
        return false;
    }
    void unite(const Bits &other) {
        for (size_t w = 0; w < words_.size(); ++w) {
            words_[w] |= other.words_[w];
        }
    }

   private:
    std::vector<uint64_t> words_;
};

// Derived relations of one transition system.
struct Closures {
    std::vector<Bits> silent;                       // s ==> t, zero or more silent steps
    std::vector<bool> reach_barb;                   // s ==> t with a barb at t
    std::vector<std::map<std::string, Bits>> weak;  // s ==> -a-> ==> t for visible a
    std::vector<std::map<std::string, Bits>> then;  // s ==> -a-> t (a silent: s ==> t)
};

Closures closures(const Lts &lts) {
    size_t n = lts.size();
    Closures c;
    c.silent.assign(n, Bits(n));
    for (size_t s = 0; s < n; ++s) {
        // Depth-first over silent edges.
        std::vector<size_t> stack = {s};
        c.silent[s].set(s);
        while (!stack.empty()) {
            size_t u = stack.back();
            stack.pop_back();
            for (const auto &e : lts.edges[u]) {
                if (e.silent && !c.silent[s].test(e.target)) {
                    c.silent[s].set(e.target);
                    stack.push_back(e.target);
                }
            }
        }
    }
    c.reach_barb.assign(n, false);
    for (size_t s = 0; s < n; ++s) {
        for (size_t t = 0; t < n && !c.reach_barb[s]; ++t) {
            c.reach_barb[s] = c.silent[s].test(t) && lts.barb[t];
        }
    }
    c.then.assign(n, {});
    c.weak.assign(n, {});
    for (size_t s = 0; s < n; ++s) {
        auto &then = c.then[s];
        for (size_t u = 0; u < n; ++u) {
            if (!c.silent[s].test(u)) {
                continue;
            }
            for (const auto &e : lts.edges[u]) {
                if (!e.silent) {
                    auto [it, fresh] = then.try_emplace(e.label, Bits(n));
                    it->second.set(e.target);
                }
            }
        }
        for (const auto &[label, targets] : then) {
            Bits closed(n);
            for (size_t t = 0; t < n; ++t) {
                if (targets.test(t)) {
                    closed.unite(c.silent[t]);
                }
            }
            c.weak[s].emplace(label, std::move(closed));
        }
        then.emplace("tau", c.silent[s]);
        c.weak[s].emplace("tau", c.silent[s]);
    }
    return c;
}

using Relation = std::vector<Bits>;

bool any_related(const Relation &r, const Bits &lefts, const Bits &rights, size_t n_left) {
    for (size_t s = 0; s < n_left; ++s) {
        if (lefts.test(s) && r[s].intersects(rights)) {
            return true;
        }
    }
    return false;
}

const Bits *lookup(const std::map<std::string, Bits> &m, const std::string &label) {
    auto it = m.find(label);
    return it == m.end() ? nullptr : &it->second;
}

Bits single(size_t n, size_t k) {
    Bits b(n);
    b.set(k);
    return b;
}

}  // namespace

Verdict corr_sim_check(const Lts &left, const Lts &right, const CorrOptions &options) {
    if (left.any_truncated() || right.any_truncated()) {
        return Verdict::inconclusive("a transition system was truncated by the budget");
    }
    size_t n1 = left.size(), n2 = right.size();
    Closures c1 = closures(left), c2 = closures(right);
    Relation r(n1, Bits(n2));
    for (size_t s = 0; s < n1; ++s) {
        for (size_t t = 0; t < n2; ++t) {
            bool sizes = !options.size_sensitive || left.register_size[s] == right.register_size[t];
            if (c1.reach_barb[s] == c2.reach_barb[t] && sizes) {
                r[s].set(t);
            }
        }
    }
    bool weak = options.mode == CorrMode::Weak;
    // Clause 1: every left step is answered by the right.
    auto clause1 = [&](size_t s, size_t t) {
        for (const auto &e : left.edges[s]) {
            bool answered = false;
            if (weak) {
                const Bits *targets = lookup(c2.weak[t], e.label);
                answered = targets && r[e.target].intersects(*targets);
            } else {
                for (const auto &f : right.edges[t]) {
                    if (f.label == e.label && r[e.target].test(f.target)) {
                        answered = true;
                        break;
                    }
                }
            }
            if (!answered) {
                return false;
            }
        }
        return true;
    };
    // Clause 2: every right step is answered by the left, and the right may catch up silently.
    auto clause2 = [&](size_t s, size_t t) {
        for (const auto &f : right.edges[t]) {
            const Bits *lefts = lookup(weak ? c1.weak[s] : c1.then[s], f.label);
            if (!lefts || !any_related(r, *lefts, c2.silent[f.target], n1)) {
                return false;
            }
        }
        return true;
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t s = 0; s < n1; ++s) {
            for (size_t t = 0; t < n2; ++t) {
                if (r[s].test(t) && !(clause1(s, t) && clause2(s, t))) {
                    r[s].reset(t);
                    changed = true;
                }
            }
        }
    }
    if (r[left.initial].test(right.initial)) {
        return Verdict::holds("the initial states are correspondence similar");
    }
    std::string why = c1.reach_barb[left.initial] != c2.reach_barb[right.initial]
                          ? "the initial states disagree on reachable success"
                          : "no correspondence simulation relates the initial states";
    return Verdict::fails(why);
}

Verdict bisimulation_check(const Lts &left, const Lts &right, BisimMode mode) {
    if (left.any_truncated() || right.any_truncated()) {
        return Verdict::inconclusive("a transition system was truncated by the budget");
    }
    size_t n1 = left.size(), n2 = right.size();
    Closures c1 = closures(left), c2 = closures(right);
    Relation r(n1, Bits(n2));
    for (size_t s = 0; s < n1; ++s) {
        for (size_t t = 0; t < n2; ++t) {
            if (c1.reach_barb[s] == c2.reach_barb[t]) {
                r[s].set(t);
            }
        }
    }
    bool weak = mode == BisimMode::Weak;
    auto forward = [&](size_t s, size_t t) {
        for (const auto &e : left.edges[s]) {
            bool answered = false;
            if (weak) {
                const Bits *targets = lookup(c2.weak[t], e.label);
                answered = targets && r[e.target].intersects(*targets);
            } else {
                for (const auto &f : right.edges[t]) {
                    answered = answered || (f.label == e.label && r[e.target].test(f.target));
                }
            }
            if (!answered) {
                return false;
            }
        }
        return true;
    };
    auto backward = [&](size_t s, size_t t) {
        for (const auto &f : right.edges[t]) {
            bool answered = false;
            if (weak) {
                const Bits *sources = lookup(c1.weak[s], f.label);
                answered = sources && any_related(r, *sources, single(n2, f.target), n1);
            } else {
                for (const auto &e : left.edges[s]) {
                    answered = answered || (f.label == e.label && r[e.target].test(f.target));
                }
            }
            if (!answered) {
                return false;
            }
        }
        return true;
    };
    for (bool changed = true; changed;) {
        changed = false;
        for (size_t s = 0; s < n1; ++s) {
            for (size_t t = 0; t < n2; ++t) {
                if (r[s].test(t) && !(forward(s, t) && backward(s, t))) {
                    r[s].reset(t);
                    changed = true;
                }
            }
        }
    }
    if (r[left.initial].test(right.initial)) {
        return Verdict::holds("the initial states are bisimilar");
    }
    return Verdict::fails("no bisimulation relates the initial states");
}

}  // namespace qproc::criteria
