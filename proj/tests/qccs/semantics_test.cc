#include <gtest/gtest.h>

#include <cmath>
#include <deque>
#include <set>

#include "qproc/qccs/congruence.h"
#include "qproc/qccs/parser.h"
#include "qproc/qccs/printer.h"
#include "qproc/qccs/semantics.h"
#include "support/data.h"

using namespace qproc;
using namespace qproc::qccs;

namespace {

File load(const std::string &src) {
    return parse_qccs(src);
}

std::vector<std::string> labels(const std::vector<Transition> &ts) {
    std::vector<std::string> out;
    for (const auto &t : ts) {
        out.push_back(label_text(t.label));
    }
    return out;
}

}  // namespace

TEST(qccs_step, silent_prefix) {
    File f = load("qubits q; rho = outer(|0>); process tau.ok");
    auto ts = lts_steps(f.config, f.defs);
    ASSERT_EQ(ts.size(), 1u);
    EXPECT_EQ(ts[0].label.kind, LabelKind::Tau);
    EXPECT_EQ(ts[0].next.term->kind, Kind::Success);
    EXPECT_TRUE(lts_steps(ts[0].next, f.defs).empty());
}

TEST(qccs_step, measurement_forgets_outcome) {
    File f = load("qubits q; rho = 1/2 outer(|0> + |1>); process M[q].nil");
    auto ts = reduce_steps(f.config, f.defs);
    ASSERT_EQ(ts.size(), 1u);
    quantum::Matrix half = quantum::Matrix::Identity(2, 2) * 0.5;
    EXPECT_LE((ts[0].next.rho.entries() - half).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_EQ(ts[0].rule, "Oper M[q]");
}

TEST(qccs_step, gate_application) {
    File f = load("qubits a, b; rho = outer(|10>); process CNOT[a, b].nil");
    auto ts = reduce_steps(f.config, f.defs);
    ASSERT_EQ(ts.size(), 1u);
    EXPECT_NEAR(ts[0].next.rho.entries()(3, 3).real(), 1.0, 1e-12);
}

TEST(qccs_step, communication) {
    File f = load("qubits q; rho = outer(|0>); process c!q.nil | c?x.H[x].ok");
    auto ts = reduce_steps(f.config, f.defs);
    ASSERT_EQ(ts.size(), 1u);
    EXPECT_EQ(ts[0].rule, "Comm c q");
    EXPECT_EQ(print_term(ts[0].next.term), "nil | H[q].ok");
    auto all = labels(lts_steps(f.config, f.defs));
    EXPECT_EQ(all, (std::vector<std::string>{"c!q", "tau"}));
}

TEST(qccs_step, inputs_range_over_idle_qubits) {
    File f = load("qubits q, r; rho = outer(|00>); process c?x.nil");
    EXPECT_EQ(labels(lts_steps(f.config, f.defs)), (std::vector<std::string>{"c?q", "c?r"}));
    File g = load("qubits q, r; rho = outer(|00>); process c?x.nil | X[q].nil");
    auto got = labels(lts_steps(g.config, g.defs));
    EXPECT_EQ(std::count(got.begin(), got.end(), "c?q"), 0);
    EXPECT_EQ(std::count(got.begin(), got.end(), "c?r"), 1);
}

TEST(qccs_step, restriction_hides_visible_actions) {
    File f = load("qubits q; rho = outer(|0>); process (c!q.nil) \\ {c}");
    EXPECT_TRUE(lts_steps(f.config, f.defs).empty());
    File g = load("qubits q; rho = outer(|0>); process (c!q.nil | c?x.ok) \\ {c}");
    auto ts = lts_steps(g.config, g.defs);
    ASSERT_EQ(ts.size(), 1u);
    EXPECT_EQ(ts[0].label.kind, LabelKind::Tau);
    EXPECT_EQ(ts[0].next.term->kind, Kind::Restrict);
}

TEST(qccs_step, guards) {
    File f = load("qubits q; rho = outer(|0>); process nil");
    EXPECT_TRUE(eval_bool(trace_nonzero("E0", {"q"}), f.config.rho, f.defs));
    EXPECT_FALSE(eval_bool(trace_nonzero("E1", {"q"}), f.config.rho, f.defs));
    EXPECT_TRUE(eval_bool(bool_not(trace_nonzero("E1", {"q"})), f.config.rho, f.defs));
    EXPECT_FALSE(eval_bool(bool_and(bool_true(), bool_false()), f.config.rho, f.defs));

    File g = load("qubits q; rho = outer(|0>); process if tr(E1[q]) != 0 then tau.ok + if tr(E0[q]) != 0 then tau.nil");
    auto ts = reduce_steps(g.config, g.defs);
    ASSERT_EQ(ts.size(), 1u);
    EXPECT_EQ(ts[0].next.term->kind, Kind::Nil);
}

TEST(qccs_step, constants_unfold) {
    File f = load("def A(x) = tau.X[x].A(x); qubits q; rho = outer(|0>); process A(q)");
    auto ts = reduce_steps(f.config, f.defs);
    ASSERT_EQ(ts.size(), 1u);
    auto us = reduce_steps(ts[0].next, f.defs);
    ASSERT_EQ(us.size(), 1u);
    EXPECT_EQ(print_term(us[0].next.term), "A(q)");
    EXPECT_NEAR(us[0].next.rho.entries()(1, 1).real(), 1.0, 1e-12);

    File g = load("def B(x) = B(x); qubits q; rho = outer(|0>); process B(q)");
    try {
        lts_steps(g.config, g.defs);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnguardedRecursion);
    }
}

TEST(qccs_step, new_qubit_extends_state) {
    File f = load("qubits q; rho = outer(|1>); process new[x].c!x.nil");
    auto ts = reduce_steps(f.config, f.defs);
    ASSERT_EQ(ts.size(), 1u);
    const auto &names = ts[0].next.rho.names();
    ASSERT_EQ(names.size(), 2u);
    EXPECT_EQ(names[0], "q");
    EXPECT_NE(names[1], "q");
    EXPECT_NEAR(ts[0].next.rho.entries()(2, 2).real(), 1.0, 1e-12);
    EXPECT_EQ(print_term(ts[0].next.term), "c!" + names[1] + ".nil");
}

TEST(qccs_step, success_barb) {
    Definitions defs;
    EXPECT_TRUE(has_success_barb(parse_term("ok | tau.nil"), defs));
    EXPECT_TRUE(has_success_barb(parse_term("(ok + tau.nil) \\ {c}"), defs));
    EXPECT_FALSE(has_success_barb(parse_term("tau.ok"), defs));
    EXPECT_FALSE(has_success_barb(parse_term("if true then ok"), defs));
}

TEST(qccs_step, counterexample_is_small_and_deterministic) {
    File f = parse_qccs(read_data("counterexample.qccs"));
    std::deque<Config> todo = {f.config};
    std::set<std::string> seen = {config_key(f.config)};
    bool reached_success = false;
    while (!todo.empty()) {
        Config c = todo.front();
        todo.pop_front();
        reached_success |= has_success_barb(c, f.defs);
        for (auto &t : reduce_steps(c, f.defs)) {
            if (seen.insert(config_key(t.next)).second) {
                todo.push_back(t.next);
            }
        }
    }
    EXPECT_LE(seen.size(), 6u);
    EXPECT_TRUE(reached_success);
}
