#include <gtest/gtest.h>

#include <cmath>

#include "qproc/qccs/parser.h"
#include "qproc/qccs/printer.h"
#include "support/data.h"

using namespace qproc;
using namespace qproc::qccs;

TEST(qccs_parse, atoms) {
    EXPECT_EQ(parse_term("nil")->kind, Kind::Nil);
    EXPECT_EQ(parse_term("ok")->kind, Kind::Success);
    EXPECT_TRUE(same_term(parse_term("tau.ok"), tau(success())));
}

TEST(qccs_parse, precedence) {
    auto p = parse_term("c!q.nil | tau.ok + tau.nil | d?x.nil \\ {d}");
    auto expect = par(output("c", "q", nil()),
                      par(choice(tau(success()), tau(nil())), restrict(input("d", "x", nil()), {"d"})));
    EXPECT_TRUE(same_term(p, expect));
}

TEST(qccs_parse, operators_and_guards) {
    auto p = parse_term("M[q].(if tr(E0[q]) != 0 then tau.ok + if not tr(E1[q]) != 0 and true then nil)");
    auto expect = oper("M", {"q"},
                       choice(if_then(trace_nonzero("E0", {"q"}), tau(success())),
                              if_then(bool_and(bool_not(trace_nonzero("E1", {"q"})), bool_true()), nil())));
    EXPECT_TRUE(same_term(p, expect));
}

TEST(qccs_parse, new_qubit_binds) {
    auto p = parse_term("new[x].H[x].c!x.nil");
    EXPECT_TRUE(same_term(p, new_qubit("x", oper("H", {"x"}, output("c", "x", nil())))));
    EXPECT_TRUE(free_qubits(p).empty());
}

TEST(qccs_parse, counterexample_file) {
    File f = parse_qccs(read_data("counterexample.qccs"));
    ASSERT_EQ(f.defs.ops.count("Q"), 1u);
    std::vector<std::string> names = {"q"};
    EXPECT_EQ(f.config.rho.names(), names);
    EXPECT_NEAR(f.config.rho.entries()(0, 0).real(), 1.0, 1e-12);
    EXPECT_EQ(f.config.term->kind, Kind::Oper);
    EXPECT_EQ(f.config.term->op, "Q");
}

TEST(qccs_parse, mixtures_and_matrices) {
    File f = parse_qccs("qubits a; rho = 1/2 outer(|0>) + 1/2 * outer(|1>); process nil");
    EXPECT_NEAR(f.config.rho.entries()(0, 0).real(), 0.5, 1e-12);
    EXPECT_NEAR(f.config.rho.entries()(1, 1).real(), 0.5, 1e-12);
    File g = parse_qccs("qubits a; rho = matrix [[0.5, 0.5], [0.5, 0.5]]; process nil");
    EXPECT_NEAR(g.config.rho.entries()(0, 1).real(), 0.5, 1e-12);
}

TEST(qccs_parse, errors) {
    auto kind_of = [](const char *src) {
        try {
            parse_qccs(src);
        } catch (const Error &e) {
            return e.kind();
        }
        ADD_FAILURE() << "accepted: " << src;
        return ErrorKind::Syntax;
    };
    EXPECT_EQ(kind_of("qubits q; rho = outer(|0>); process c!q.H[q].nil"), ErrorKind::NoCloningViolation);
    EXPECT_EQ(kind_of("qubits q; rho = outer(|0>); process c!q.nil +"), ErrorKind::Syntax);
    EXPECT_EQ(kind_of("qubits q; rho = outer(|0>); process FOO[q].nil"), ErrorKind::UnresolvedName);
    EXPECT_EQ(kind_of("qubits q; rho = outer(|0>); process CNOT[q].nil"), ErrorKind::ArityMismatch);
    EXPECT_EQ(kind_of("qubits q; rho = 2 outer(|0>); process nil"), ErrorKind::InvalidState);
}

TEST(qccs_parse, print_round_trip) {
    for (const char *src :
         {"c!q.nil | c?x.ok", "tau.ok + tau.nil + nil", "(c!q.nil | c?x.ok) \\ {c}",
          "M[q, r].(if tr(E0[q,r]) != 0 then E0[q,r].ok + if tr(E3[q,r]) != 0 then nil)",
          "new[x].c!x.nil", "tau.(tau.nil + ok)", "(tau.nil | ok) + nil", "if not (true and false) then ok"}) {
        auto p = parse_term(src);
        auto printed = print_term(p);
        EXPECT_TRUE(same_term(parse_term(printed), p)) << src << " -> " << printed;
    }
}

TEST(qccs_parse, file_emission_is_idempotent) {
    File f = parse_qccs(read_data("counterexample.qccs"));
    std::string once = print_file(f.defs, f.config);
    File g = parse_qccs(once);
    EXPECT_EQ(print_file(g.defs, g.config), once);
    EXPECT_TRUE(same_term(g.config.term, f.config.term));

    File h = parse_qccs("def A(x) = tau.A(x); qubits a, b; rho = 1/2 outer(|00> + |11>); process A(a) | c!b.nil");
    std::string emitted = print_file(h.defs, h.config);
    File k = parse_qccs(emitted);
    EXPECT_EQ(print_file(k.defs, k.config), emitted);
    EXPECT_TRUE(quantum::approx_eq(k.config.rho, h.config.rho));
}
