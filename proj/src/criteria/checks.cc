#include "qproc/criteria/checks.h"

#include <algorithm>
#include <random>
#include <set>
#include <unordered_map>

#include "qproc/cqp/congruence.h"
#include "qproc/criteria/generator.h"
#include "qproc/encode/encode.h"
#include "qproc/qccs/congruence.h"
#include "qproc/qccs/printer.h"

namespace qproc::criteria {

Stats stats_of(const Lts &lts) {
    return {lts.size(), lts.edge_count(), lts.max_depth(), lts.any_truncated()};
}

Stats combine(const Stats &a, const Stats &b) {
    return {a.states + b.states, a.edges + b.edges, std::max(a.depth, b.depth), a.truncated || b.truncated};
}

namespace {

cqp::StepOptions source_steps(const CheckOptions &options) {
    cqp::StepOptions s;
    s.tolerance = options.tolerance;
    s.perm_mode = options.perm_mode;
    return s;
}

qccs::StepOptions target_steps(const CheckOptions &options) {
    qccs::StepOptions s;
    s.tolerance = options.tolerance;
    return s;
}

// Translations of the explored source configurations, computed once each.
class Translations {
   public:
    explicit Translations(const std::vector<cqp::Config> &configs) : configs_(configs), cache_(configs.size()) {}

    const qccs::Config &operator[](size_t k) {
        if (!cache_[k]) {
            auto c = encode::encode_config(configs_[k]).config;
            c.mixture.reset();
            cache_[k] = std::move(c);
        }
        return *cache_[k];
    }

   private:
    const std::vector<cqp::Config> &configs_;
    std::vector<std::optional<qccs::Config>> cache_;
};

std::vector<TraceStep> extend(std::vector<TraceStep> trace, const Edge &e) {
    trace.push_back({e.choice, e.options, e.rule});
    return trace;
}

bool is_outcome_choice(const std::string &rule) {
    // "Oper E3[q0,q1]"
    if (rule.rfind("Oper ", 0) != 0) {
        return false;
    }
    auto name = rule.substr(5, rule.find('[') - 5);
    return qccs::parse_expected_outcome_op(name).has_value();
}

struct Emulation {
    bool found = false;
    size_t length = 0;
    size_t register_size = 0;
    bool inconclusive = false;
};

// Looks for T with [[S]] ==> T in at most one step and [[S']] related to T.
Emulation emulate(const qccs::Config &from, const qccs::Config &to, bool permutation, const CheckOptions &options) {
    std::vector<std::pair<size_t, qccs::Config>> candidates = {{0, from}};
    if (!permutation) {
        for (auto &t : qccs::reduce_steps(from, {}, target_steps(options))) {
            candidates.emplace_back(1, std::move(t.next));
        }
    }
    for (const auto &[length, t] : candidates) {
        if (qccs::congruent(to, t, options.tolerance)) {
            return {true, length, t.rho.num_qubits(), false};
        }
    }
    Emulation out;
    auto left = build_lts(to, {}, options.budget, QccsSteps::Labelled, target_steps(options));
    for (const auto &[length, t] : candidates) {
        auto right = build_lts(t, {}, options.budget, QccsSteps::Labelled, target_steps(options));
        auto v = corr_sim_check(left.lts, right.lts, options.corr);
        if (v.is(VerdictKind::Holds)) {
            return {true, length, t.rho.num_qubits(), false};
        }
        out.inconclusive = out.inconclusive || v.is(VerdictKind::Inconclusive);
    }
    return out;
}

struct CompletenessRun {
    CheckResult result;
    // (source size, emulating target size) per matched step
    std::vector<std::pair<size_t, size_t>> sizes;
    CqpLts source;
};

CompletenessRun completeness(const cqp::Config &source, const CheckOptions &options) {
    CompletenessRun run;
    run.source = build_lts(source, options.budget, source_steps(options));
    const Lts &lts = run.source.lts;
    Translations enc(run.source.configs);
    bool unsure = lts.any_truncated();
    run.result.stats = stats_of(lts);
    for (size_t s = 0; s < lts.size(); ++s) {
        for (const auto &e : lts.edges[s]) {
            auto m = emulate(enc[s], enc[e.target], e.permutation, options);
            if (!m.found) {
                if (m.inconclusive) {
                    unsure = true;
                    continue;
                }
                run.result.verdict = Verdict::fails("the step " + e.rule + " has no emulation within one target step",
                                                    extend(lts.trace_to(s), e));
                return run;
            }
            run.result.longest_emulation = std::max(run.result.longest_emulation, m.length);
            run.sizes.emplace_back(lts.register_size[e.target], m.register_size);
        }
    }
    run.result.verdict = unsure ? Verdict::inconclusive("exploration budget exhausted")
                                : Verdict::holds("every source step is emulated by at most one target step");
    return run;
}

// Hash of a target configuration that ignores its state; candidates are confirmed exactly.
std::string shape_key(const qccs::Config &c) {
    auto names = c.rho.names();
    std::sort(names.begin(), names.end());
    std::string key;
    for (const auto &n : names) {
        key += n + ",";
    }
    return key + "|" + qccs::print_term(qccs::normal_form(c.term));
}

std::set<std::string> bound_channels(const cqp::TermPtr &p) {
    std::set<std::string> out;
    if (!p) {
        return out;
    }
    if (p->kind == cqp::TermKind::NewChan || p->kind == cqp::TermKind::Measure) {
        out.insert(p->var);
    }
    for (const auto &child : {p->body, p->right}) {
        auto more = bound_channels(child);
        out.insert(more.begin(), more.end());
    }
    return out;
}

std::set<std::string> bound_qubits(const cqp::TermPtr &p) {
    std::set<std::string> out;
    if (!p) {
        return out;
    }
    if (p->kind == cqp::TermKind::In || p->kind == cqp::TermKind::NewQbit) {
        out.insert(p->var);
    }
    for (const auto &child : {p->body, p->right}) {
        auto more = bound_qubits(child);
        out.insert(more.begin(), more.end());
    }
    return out;
}

bool is_integer(const std::string &s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
}

bool same_config(const qccs::Config &a, const qccs::Config &b) {
    return qccs::same_term(a.term, b.term) && a.rho.names() == b.rho.names() && quantum::approx_eq(a.rho, b.rho);
}

cqp::Config with_term(const cqp::Config &c, cqp::TermPtr term) {
    if (!c.is_dist()) {
        return cqp::Config::pure(c.state(), c.channels(), std::move(term));
    }
    return cqp::Config::dist(c.channels(), std::move(term), c.measured_var(), c.measured_count(), c.cases());
}

}  // namespace

CheckResult check_completeness(const cqp::Config &source, const CheckOptions &options) {
    return completeness(source, options).result;
}

CheckResult check_soundness(const cqp::Config &source, const CheckOptions &options) {
    CheckResult result;
    auto src = build_lts(source, options.budget, source_steps(options));
    Translations enc(src.configs);
    std::unordered_map<std::string, std::vector<size_t>> index;
    for (size_t k = 0; k < src.configs.size(); ++k) {
        index[shape_key(enc[k])].push_back(k);
    }
    auto tgt = build_lts(enc[src.lts.initial], {}, options.budget, QccsSteps::Reductions, target_steps(options));
    result.stats = combine(stats_of(src.lts), stats_of(tgt.lts));
    bool unsure = false;
    for (size_t t = 0; t < tgt.lts.size(); ++t) {
        // Resolve outcome choices only, breadth first.
        std::vector<qccs::Config> frontier = {tgt.configs[t]};
        bool matched = false;
        for (size_t round = 0; round < 8 && !frontier.empty() && !matched; ++round) {
            std::vector<qccs::Config> next;
            for (const auto &c : frontier) {
                auto it = index.find(shape_key(c));
                if (it != index.end()) {
                    for (size_t k : it->second) {
                        if (qccs::congruent(c, enc[k], options.tolerance)) {
                            matched = true;
                            break;
                        }
                    }
                }
                if (matched) {
                    break;
                }
                for (auto &step : qccs::reduce_steps(c, {}, target_steps(options))) {
                    if (is_outcome_choice(step.rule)) {
                        next.push_back(std::move(step.next));
                    }
                }
            }
            frontier = std::move(next);
        }
        if (!matched) {
            if (src.lts.any_truncated() || tgt.lts.truncated[t]) {
                unsure = true;
                continue;
            }
            result.verdict = Verdict::fails(
                "a reachable target configuration does not complete to the translation of a source derivative",
                tgt.lts.trace_to(t));
            return result;
        }
    }
    result.verdict = unsure || tgt.lts.any_truncated()
                         ? Verdict::inconclusive("exploration budget exhausted")
                         : Verdict::holds("every reachable target configuration completes to a translation");
    return result;
}

cqp::Config rename_channels(const cqp::Config &c, const std::map<std::string, std::string> &gamma) {
    // Through placeholders, so that the renaming is simultaneous.
    cqp::TermPtr term = c.term();
    size_t k = 0;
    std::vector<std::pair<std::string, std::string>> second;
    for (const auto &[from, to] : gamma) {
        std::string hold = "%g" + std::to_string(k++);
        term = cqp::subst_channel(term, from, hold);
        second.emplace_back(hold, to);
    }
    for (const auto &[hold, to] : second) {
        term = cqp::subst_channel(term, hold, to);
    }
    std::vector<std::string> phi;
    for (const auto &ch : c.channels()) {
        auto it = gamma.find(ch);
        phi.push_back(it == gamma.end() ? ch : it->second);
    }
    if (!c.is_dist()) {
        return cqp::Config::pure(c.state(), phi, term);
    }
    return cqp::Config::dist(phi, term, c.measured_var(), c.measured_count(), c.cases());
}

cqp::Config rename_qubits(const cqp::Config &c, const std::map<std::string, std::string> &gamma) {
    std::map<std::string, std::string> on_register;
    for (const auto &n : c.state().names()) {
        auto it = gamma.find(n);
        if (it != gamma.end()) {
            on_register.emplace(n, it->second);
        }
    }
    auto term = cqp::subst_qubits(c.term(), gamma);
    if (!c.is_dist()) {
        return cqp::Config::pure(c.state().renamed(on_register), c.channels(), term);
    }
    std::vector<cqp::DistCase> cases;
    for (const auto &k : c.cases()) {
        cases.push_back({k.probability, k.state.renamed(on_register)});
    }
    return cqp::Config::dist(c.channels(), term, c.measured_var(), c.measured_count(), std::move(cases));
}

CheckResult check_name_invariance(const cqp::Config &source, const std::map<std::string, std::string> &gamma) {
    CheckResult result;
    auto bound = bound_channels(source.term());
    std::set<std::string> phi(source.channels().begin(), source.channels().end());
    for (const auto &[from, to] : gamma) {
        if (is_integer(from) || is_integer(to)) {
            result.verdict = Verdict::inconclusive("integer channels are measurement outcomes and are not renamed");
            return result;
        }
        if (bound.count(to) || from == source.measured_var() || (phi.count(to) && !gamma.count(to))) {
            result.verdict = Verdict::inconclusive("the renaming touches a bound channel");
            return result;
        }
    }
    auto lhs = encode::encode_config(rename_channels(source, gamma)).config;
    auto rhs = encode::encode_config(source).config;
    // The declared channels become the outermost restriction; rename them there as well.
    if (!phi.empty() && rhs.term->kind == qccs::Kind::Restrict) {
        std::set<std::string> renamed;
        for (const auto &ch : rhs.term->restricted) {
            auto it = gamma.find(ch);
            renamed.insert(it == gamma.end() ? ch : it->second);
        }
        rhs.term = qccs::restrict(qccs::subst_channels(rhs.term->body, gamma), renamed);
    } else {
        rhs.term = qccs::subst_channels(rhs.term, gamma);
    }
    result.verdict = same_config(lhs, rhs) ? Verdict::holds("translation commutes with the channel renaming")
                                           : Verdict::fails("translation of the renamed source differs: " +
                                                            qccs::print_term(lhs.term) + " vs " +
                                                            qccs::print_term(rhs.term));
    return result;
}

CheckResult check_qubit_invariance(const cqp::Config &source, const std::map<std::string, std::string> &gamma) {
    CheckResult result;
    std::set<std::string> targets;
    for (const auto &[from, to] : gamma) {
        if (!targets.insert(to).second) {
            throw Error(ErrorKind::NoCloningViolation, "the renaming sends two qubits to " + to);
        }
    }
    auto bound = bound_qubits(source.term());
    for (const auto &[from, to] : gamma) {
        if (bound.count(to) || bound.count(from)) {
            result.verdict = Verdict::inconclusive("the renaming touches a bound qubit");
            return result;
        }
    }
    auto lhs = encode::encode_config(rename_qubits(source, gamma)).config;
    auto rhs = encode::encode_config(source).config;
    std::map<std::string, std::string> on_register;
    for (const auto &n : rhs.rho.names()) {
        auto it = gamma.find(n);
        if (it != gamma.end()) {
            on_register.emplace(n, it->second);
        }
    }
    rhs.term = qccs::subst_qubits(rhs.term, gamma);
    rhs.rho = rhs.rho.renamed(on_register);
    result.verdict = same_config(lhs, rhs) ? Verdict::holds("translation commutes with the qubit renaming")
                                           : Verdict::fails("translation of the renamed source differs");
    return result;
}

namespace {

CheckResult register_size_of(const CompletenessRun &run) {
    CheckResult result;
    result.stats = run.result.stats;
    Translations enc(run.source.configs);
    const Lts &lts = run.source.lts;
    for (size_t s = 0; s < lts.size(); ++s) {
        if (enc[s].rho.num_qubits() != lts.register_size[s]) {
            result.verdict = Verdict::fails("the translation changes the register size", lts.trace_to(s));
            return result;
        }
    }
    for (const auto &[src, tgt] : run.sizes) {
        if (src != tgt) {
            result.verdict = Verdict::fails("an emulating target configuration has " + std::to_string(tgt) +
                                            " qubits where the source has " + std::to_string(src));
            return result;
        }
    }
    if (run.result.verdict.is(VerdictKind::Fails)) {
        result.verdict = Verdict::inconclusive("some source step has no emulation: " + run.result.verdict.reason);
    } else if (run.result.verdict.is(VerdictKind::Inconclusive)) {
        result.verdict = Verdict::inconclusive(run.result.verdict.reason);
    } else {
        result.verdict = Verdict::holds("source and translation registers agree in size");
    }
    return result;
}

}  // namespace

CheckResult check_register_size(const cqp::Config &source, const CheckOptions &options) {
    return register_size_of(completeness(source, options));
}

namespace {

// Random congruent variant: parallel components swapped, nil components added, binders renamed.
class Shuffler {
   public:
    Shuffler(uint64_t seed, std::set<std::string> taken) : rng_(seed), taken_(std::move(taken)) {}

    cqp::TermPtr run(const cqp::TermPtr &p) {
        using cqp::TermKind;
        switch (p->kind) {
            case TermKind::Nil:
            case TermKind::Success:
                return p;
            case TermKind::Par: {
                auto left = run(p->body), right = run(p->right);
                auto out = coin() ? cqp::par(right, left) : cqp::par(left, right);
                return coin() ? cqp::par(out, cqp::nil()) : out;
            }
            case TermKind::In: {
                std::string v = fresh();
                return cqp::input(p->chan, v, run(cqp::subst_qubit(p->body, p->var, v)));
            }
            case TermKind::NewQbit: {
                std::string v = fresh();
                return cqp::new_qbit(v, run(cqp::subst_qubit(p->body, p->var, v)));
            }
            case TermKind::NewChan:
                if (!is_integer(p->var)) {
                    std::string v = fresh();
                    return cqp::new_chan(v, run(cqp::subst_channel(p->body, p->var, v)));
                }
                return cqp::new_chan(p->var, run(p->body));
            case TermKind::Measure: {
                std::string v = fresh();
                return cqp::measure(p->qubits, v, run(cqp::subst_channel(p->body, p->var, v)));
            }
            case TermKind::Out:
                return cqp::output(p->chan, p->qubit, run(p->body));
            case TermKind::Trans:
                return cqp::trans(p->qubits, p->gate, run(p->body));
        }
        return p;
    }

   private:
    bool coin() {
        return rng_() % 2 == 0;
    }
    std::string fresh() {
        std::string v;
        do {
            v = "v" + std::to_string(counter_++);
        } while (taken_.count(v));
        return v;
    }

    std::mt19937_64 rng_;
    std::set<std::string> taken_;
    size_t counter_ = 0;
};

}  // namespace

CheckResult check_congruence_preservation(const cqp::Config &source, uint64_t seed) {
    CheckResult result;
    auto taken = cqp::all_names(source.term());
    taken.insert(source.channels().begin(), source.channels().end());
    auto variant = with_term(source, Shuffler(seed, taken).run(source.term()));
    if (!cqp::congruent(source, variant)) {
        result.verdict = Verdict::inconclusive("the shuffled source is not recognised as congruent");
        return result;
    }
    auto a = encode::encode_config(source).config;
    auto b = encode::encode_config(variant).config;
    result.verdict = qccs::congruent(a, b) ? Verdict::holds("congruent sources translate to congruent targets")
                                           : Verdict::fails("translations of congruent sources differ: " +
                                                            qccs::print_term(a.term) + " vs " +
                                                            qccs::print_term(b.term));
    return result;
}

CheckResult check_divergence_reflection(const cqp::Config &source, const CheckOptions &options) {
    CheckResult result;
    auto src = build_lts(source, options.budget, source_steps(options));
    auto tgt = build_lts(encode::encode_config(source).config, {}, options.budget, QccsSteps::Reductions,
                         target_steps(options));
    result.stats = combine(stats_of(src.lts), stats_of(tgt.lts));
    auto target_div = detect_divergence(tgt.lts);
    auto source_div = detect_divergence(src.lts);
    if (target_div.is(VerdictKind::Fails) || source_div.is(VerdictKind::Holds)) {
        result.verdict = Verdict::holds(target_div.is(VerdictKind::Fails) ? "the translation does not diverge"
                                                                           : "both diverge");
    } else if (target_div.is(VerdictKind::Holds) && source_div.is(VerdictKind::Fails)) {
        result.verdict = Verdict::fails("the translation diverges while the source does not", target_div.witness);
    } else {
        result.verdict = Verdict::inconclusive("exploration budget exhausted");
    }
    return result;
}

CheckResult check_success_sensitiveness(const cqp::Config &source, const CheckOptions &options) {
    CheckResult result;
    auto src = build_lts(source, options.budget, source_steps(options));
    auto tgt = build_lts(encode::encode_config(source).config, {}, options.budget, QccsSteps::Reductions,
                         target_steps(options));
    result.stats = combine(stats_of(src.lts), stats_of(tgt.lts));
    std::pair<Verdict, Verdict> pairs[] = {{may_reach_success(src.lts), may_reach_success(tgt.lts)},
                                           {must_reach_success(src.lts), must_reach_success(tgt.lts)}};
    const char *names[] = {"may", "must"};
    for (size_t k = 0; k < 2; ++k) {
        const auto &[s, t] = pairs[k];
        if (s.is(VerdictKind::Inconclusive) || t.is(VerdictKind::Inconclusive)) {
            result.verdict = Verdict::inconclusive("exploration budget exhausted");
            return result;
        }
        if (s.kind != t.kind) {
            result.verdict = Verdict::fails(std::string(names[k]) + " success differs: source " +
                                            verdict_name(s.kind) + ", translation " + verdict_name(t.kind));
            return result;
        }
    }
    result.verdict = Verdict::holds("source and translation agree on may and must success");
    return result;
}

std::map<std::string, std::string> random_channel_renaming(const cqp::Config &source, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::set<std::string> phi(source.channels().begin(), source.channels().end());
    auto taken = cqp::all_names(source.term());
    std::map<std::string, std::string> gamma;
    size_t k = 0;
    std::set<std::string> candidates = cqp::free_channels(source.term());
    candidates.insert(phi.begin(), phi.end());
    for (const auto &c : candidates) {
        if (is_integer(c) || c == source.measured_var() || rng() % 4 == 0) {
            continue;
        }
        std::string to;
        do {
            to = "n" + std::to_string(k++);
        } while (taken.count(to));
        gamma.emplace(c, to);
    }
    return gamma;
}

std::map<std::string, std::string> random_qubit_renaming(const cqp::Config &source, uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto names = source.state().names();
    auto shuffled = names;
    for (size_t k = shuffled.size(); k > 1; --k) {
        std::swap(shuffled[k - 1], shuffled[rng() % k]);
    }
    if (!names.empty() && rng() % 2 == 0) {
        auto taken = cqp::all_names(source.term());
        taken.insert(names.begin(), names.end());
        std::string fresh = "r0";
        for (size_t k = 1; taken.count(fresh); ++k) {
            fresh = "r" + std::to_string(k);
        }
        shuffled[rng() % shuffled.size()] = fresh;
    }
    std::map<std::string, std::string> gamma;
    for (size_t k = 0; k < names.size(); ++k) {
        gamma.emplace(names[k], shuffled[k]);
    }
    return gamma;
}

size_t CampaignResult::total_fails() const {
    size_t n = 0;
    for (const auto &[name, t] : tallies) {
        n += t.fails;
    }
    return n;
}

size_t CampaignResult::total_inconclusive() const {
    size_t n = 0;
    for (const auto &[name, t] : tallies) {
        n += t.inconclusive;
    }
    return n;
}

size_t CampaignResult::total_runs() const {
    size_t n = 0;
    for (const auto &[name, t] : tallies) {
        n += t.holds + t.fails + t.inconclusive;
    }
    return n;
}

CampaignResult run_campaign(const CampaignOptions &options) {
    CampaignResult out;
    std::mt19937_64 seeds(options.seed);
    for (size_t i = 0; i < options.instances; ++i) {
        uint64_t seed = seeds();
        auto source = gen_config(seed, options.max_qubits, options.max_depth);
        auto record = [&](const std::string &name, const CheckResult &r) {
            auto &t = out.tallies[name];
            switch (r.verdict.kind) {
                case VerdictKind::Holds:
                    ++t.holds;
                    break;
                case VerdictKind::Fails:
                    ++t.fails;
                    out.failures.push_back(std::to_string(seed) + " " + name + ": " + r.verdict.reason);
                    break;
                case VerdictKind::Inconclusive:
                    ++t.inconclusive;
                    break;
            }
        };
        // One completeness run serves the register size check as well.
        auto run = completeness(source, options.check);
        out.longest_emulation = std::max(out.longest_emulation, run.result.longest_emulation);
        record("completeness", run.result);
        record("soundness", check_soundness(source, options.check));
        record("name-invariance", check_name_invariance(source, random_channel_renaming(source, seed)));
        record("qubit-invariance", check_qubit_invariance(source, random_qubit_renaming(source, seed)));
        record("register-size", register_size_of(run));
        record("congruence", check_congruence_preservation(source, seed));
        record("divergence", check_divergence_reflection(source, options.check));
        record("success", check_success_sensitiveness(source, options.check));
        ++out.instances;
    }
    return out;
}

}  // namespace qproc::criteria
