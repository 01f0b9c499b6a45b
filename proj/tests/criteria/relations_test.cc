#include <gtest/gtest.h>

#include "qproc/criteria/relations.h"
#include "qproc/criteria/systems.h"
#include "qproc/qccs/parser.h"

using namespace qproc;
using namespace qproc::criteria;

namespace {

Lts labelled(const std::string &process) {
    auto file = qccs::parse_qccs("qubits q; rho = outer(|0>); process " + process);
    return build_lts(file.config, file.defs, {}, QccsSteps::Labelled).lts;
}

}  // namespace

TEST(relations, identical_systems) {
    auto a = labelled("tau.(c!q.ok + tau.nil)");
    EXPECT_TRUE(corr_sim_check(a, a).is(VerdictKind::Holds));
    EXPECT_TRUE(bisimulation_check(a, a).is(VerdictKind::Holds));
}

TEST(relations, success_must_agree) {
    auto a = labelled("tau.ok");
    auto b = labelled("tau.nil");
    EXPECT_TRUE(corr_sim_check(a, b).is(VerdictKind::Fails));
    EXPECT_TRUE(bisimulation_check(a, b).is(VerdictKind::Fails));
}

TEST(relations, silent_step_on_the_right_may_go_unanswered) {
    // The right side takes an extra silent step before its label; the left answers with nothing.
    auto left = labelled("c!q.nil");
    auto right = labelled("tau.c!q.nil");
    EXPECT_TRUE(corr_sim_check(left, right).is(VerdictKind::Fails));
    EXPECT_TRUE(corr_sim_check(left, right, {CorrMode::Weak, false}).is(VerdictKind::Holds));
    EXPECT_TRUE(bisimulation_check(left, right, BisimMode::Weak).is(VerdictKind::Holds));
    EXPECT_TRUE(bisimulation_check(left, right, BisimMode::Strong).is(VerdictKind::Fails));
}

TEST(relations, labels_must_match) {
    auto a = labelled("c!q.nil");
    auto b = labelled("d!q.nil");
    EXPECT_TRUE(corr_sim_check(a, b).is(VerdictKind::Fails));
}

TEST(relations, measurement_under_parallel_separates_the_relations) {
    auto ex = separation_example();
    qccs::Definitions defs;
    auto enc = build_lts(ex.encoded_measured, defs, {}, QccsSteps::Labelled).lts;
    auto target = build_lts(ex.target_measured, defs, {}, QccsSteps::Labelled).lts;
    EXPECT_TRUE(corr_sim_check(enc, target).is(VerdictKind::Holds));
    EXPECT_TRUE(bisimulation_check(enc, target).is(VerdictKind::Fails));
}

TEST(relations, truncation_is_inconclusive) {
    auto file = qccs::parse_qccs("qubits q; rho = outer(|0>); process tau.tau.tau.ok");
    auto cut = build_lts(file.config, file.defs, {1, 100}, QccsSteps::Labelled).lts;
    EXPECT_TRUE(corr_sim_check(cut, cut).is(VerdictKind::Inconclusive));
}
