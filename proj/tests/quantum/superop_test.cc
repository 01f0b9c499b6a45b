#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qproc/error.h"
#include "qproc/quantum/superop.h"

using namespace qproc;
using namespace qproc::quantum;

namespace {

const double kTol = 1e-9;
const double kS = 1.0 / std::sqrt(2.0);

Matrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
    Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
    Eigen::Index i = 0;
    for (const auto &row : rows) {
        Eigen::Index j = 0;
        for (auto c : row) {
            m(i, j++) = c;
        }
        ++i;
    }
    return m;
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

StateVector random_state(std::mt19937_64 &rng, size_t n) {
    std::normal_distribution<double> g;
    Vector v(Eigen::Index{1} << n);
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        v[k] = Complex(g(rng), g(rng));
    }
    v /= v.norm();
    std::vector<std::string> names;
    for (size_t k = 0; k < n; ++k) {
        names.push_back("q" + std::to_string(k));
    }
    return StateVector(names, v);
}

DensityMatrix single(const Matrix &m) {
    return DensityMatrix({"q"}, m);
}

}  // namespace

TEST(superop_make, expected_outcome_on_empty_set_is_identity) {
    auto e = SuperOperator::meas_expected(0, 0);
    std::mt19937_64 rng(1);
    auto rho = outer(random_state(rng, 2));
    auto out = superop_apply(e, {}, rho);
    EXPECT_TRUE(approx_eq(out, rho, kTol));
    EXPECT_TRUE(e.normalize_after());
}

TEST(superop_make, invalid_outcome) {
    EXPECT_THROW(SuperOperator::meas_expected(2, 1), Error);
    EXPECT_THROW(SuperOperator::meas_expected(4, 2), Error);
    EXPECT_NO_THROW(SuperOperator::meas_expected(3, 2));
}

TEST(superop_make, hadamard_from_unitary) {
    auto e = SuperOperator::from_unitary(*builtin_gate("H"));
    auto out = superop_apply(e, {"q"}, outer(StateVector::basis({"q"}, 0)));
    auto oracle = outer(apply_unitary_prefix(*builtin_gate("H"), StateVector::basis({"q"}, 0)));
    EXPECT_TRUE(approx_eq(out, oracle, kTol));
    EXPECT_FALSE(e.normalize_after());
}

TEST(superop_make, counterexample_terms) {
    auto q = SuperOperator::damping_counterexample(1.0);
    ASSERT_EQ(q.terms().size(), 2u);
    EXPECT_EQ(q.terms()[0].sign, +1);
    EXPECT_EQ(q.terms()[1].sign, -1);
    EXPECT_LE(max_abs_diff(q.terms()[0].matrix, mat({{1, 0}, {0, std::sqrt(2.0)}})), kTol);
    EXPECT_LE(max_abs_diff(q.terms()[1].matrix, mat({{0, 1}, {0, 0}})), kTol);
}

TEST(superop_apply, measurement_of_plus) {
    auto plus = single(mat({{0.5, 0.5}, {0.5, 0.5}}));
    auto out = superop_apply(SuperOperator::meas_unknown(1), {"q"}, plus);
    EXPECT_LE(max_abs_diff(out.entries(), mat({{0.5, 0}, {0, 0.5}})), kTol);
}

TEST(superop_apply, counterexample_matrices) {
    auto q = SuperOperator::damping_counterexample(1.0);
    auto apply = [&](const Matrix &m) { return superop_apply(q, {"q"}, single(m)).entries(); };
    double h = std::sqrt(2.0) / 2;
    EXPECT_LE(max_abs_diff(apply(mat({{1, 0}, {0, 0}})), mat({{1, 0}, {0, 0}})), kTol);
    EXPECT_LE(max_abs_diff(apply(mat({{0, 0}, {0, 1}})), mat({{-1, 0}, {0, 2}})), kTol);
    EXPECT_LE(max_abs_diff(apply(mat({{0.5, 0.5}, {0.5, 0.5}})), mat({{0, h}, {h, 1}})), kTol);
    EXPECT_LE(max_abs_diff(apply(mat({{0.5, -0.5}, {-0.5, 0.5}})), mat({{0, -h}, {-h, 1}})), kTol);
}

TEST(superop_apply, counterexample_closed_form) {
    // Q(rho) = [[rho00 - rho11, sqrt2 rho01], [sqrt2 rho10, 2 rho11]] for any rho.
    auto q = SuperOperator::damping_counterexample(1.0);
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix rho = outer(random_state(rng, 1)).entries();
        Matrix expect(2, 2);
        expect << rho(0, 0) - rho(1, 1), std::sqrt(2.0) * rho(0, 1), std::sqrt(2.0) * rho(1, 0), 2.0 * rho(1, 1);
        EXPECT_LE(max_abs_diff(superop_apply(q, {"q"}, single(rho)).entries(), expect), kTol);
    }
}

TEST(superop_apply, measure_first_of_bell_dissolves_entanglement) {
    StateVector bell({"a", "b"}, (Vector(4) << kS, 0, 0, kS).finished());
    auto rho = outer(bell);
    auto out = superop_apply(SuperOperator::meas_unknown(1), {"a"}, rho);
    Matrix p0 = kron(mat({{1, 0}, {0, 0}}), Matrix::Identity(2, 2));
    Matrix p1 = kron(mat({{0, 0}, {0, 1}}), Matrix::Identity(2, 2));
    Matrix expect = p0 * rho.entries() * p0.adjoint() + p1 * rho.entries() * p1.adjoint();
    EXPECT_LE(max_abs_diff(out.entries(), expect), kTol);
    EXPECT_LE(max_abs_diff(expect, mat({{0.5, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 0, 0.5}})), kTol);
}

TEST(superop_apply, non_front_targets_match_swap_oracle) {
    std::mt19937_64 rng(31);
    auto rho = outer(random_state(rng, 3));
    auto e = SuperOperator::from_unitary(*builtin_gate("CNOT"));
    // Targets (q2, q1): relabel so the operands lead, apply CNOT (x) I, relabel back.
    auto out = superop_apply(e, {"q2", "q1"}, rho);
    Matrix perm = permutation_unitary({2, 1, 0}).matrix();  // swaps positions 0 and 2
    Matrix full = perm * kron(e.terms()[0].matrix, Matrix::Identity(2, 2)) * perm;
    Matrix expect = full * rho.entries() * full.adjoint();
    EXPECT_LE(max_abs_diff(out.entries(), expect), kTol);
}

TEST(superop_apply, measurement_linkage_with_state_vectors) {
    std::mt19937_64 rng(37);
    for (int trial = 0; trial < 60; ++trial) {
        size_t n = 1 + trial % 3;
        auto psi = random_state(rng, n);
        for (size_t r = 0; r <= n; ++r) {
            Matrix mixed = Matrix::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
            for (const auto &o : measure_prefix(psi, r)) {
                if (!o.post_state.is_zero_branch()) {
                    mixed += o.probability * outer(o.post_state).entries();
                }
            }
            std::vector<std::string> front(psi.names().begin(), psi.names().begin() + static_cast<long>(r));
            auto via_op = superop_apply(SuperOperator::meas_unknown(r), front, outer(psi));
            EXPECT_LE(max_abs_diff(mixed, via_op.entries()), kTol);
        }
    }
}

TEST(superop_apply, permutation_as_superoperator) {
    std::mt19937_64 rng(41);
    auto psi = random_state(rng, 3);
    auto pi = permutation_unitary({1, 2, 0});
    auto lhs = outer(apply_unitary_prefix(pi, psi));
    auto rhs = superop_apply(SuperOperator::from_unitary(pi), psi.names(), outer(psi));
    EXPECT_TRUE(approx_eq(lhs, rhs, kTol));
}

TEST(superop_apply, traces) {
    std::mt19937_64 rng(43);
    auto psi = random_state(rng, 2);
    auto rho = outer(psi);
    for (const auto &name : builtin_gate_names()) {
        auto g = *builtin_gate(name);
        std::vector<std::string> targets(psi.names().begin(), psi.names().begin() + static_cast<long>(g.arity()));
        EXPECT_NEAR(superop_apply(SuperOperator::from_unitary(g), targets, rho).trace().real(), 1.0, kTol);
    }
    auto outcomes = measure_prefix(psi, 1);
    for (uint64_t i = 0; i < 2; ++i) {
        auto raw = superop_apply_raw(SuperOperator::meas_expected(i, 1), {"q0"}, rho);
        EXPECT_NEAR(raw.trace().real(), outcomes[i].probability, kTol);
        auto normalized = superop_apply(SuperOperator::meas_expected(i, 1), {"q0"}, rho);
        EXPECT_TRUE(approx_eq(normalized, outer(outcomes[i].post_state), 1e-8));
    }
}

TEST(superop_apply, zero_branch) {
    auto rho = outer(StateVector::basis({"q"}, 0));
    EXPECT_THROW(superop_apply(SuperOperator::meas_expected(1, 1), {"q"}, rho), Error);
    try {
        superop_apply(SuperOperator::meas_expected(1, 1), {"q"}, rho);
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::ZeroBranch);
    }
}

TEST(superop_apply, unknown_qubit_and_arity) {
    auto rho = outer(StateVector::basis({"q"}, 0));
    auto h = SuperOperator::from_unitary(*builtin_gate("H"));
    try {
        superop_apply(h, {"r"}, rho);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnknownQubit);
    }
    EXPECT_THROW(superop_apply(h, {"q", "q"}, rho), Error);
}

TEST(superop_apply, new_qubit_appends_zero) {
    StateVector plus({"q"}, (Vector(2) << kS, kS).finished());
    auto out = superop_apply(SuperOperator::new_qubit(), {"fresh"}, outer(plus));
    auto oracle = outer(tensor(plus, StateVector::basis({"fresh"}, 0)));
    EXPECT_TRUE(approx_eq(out, oracle, kTol));
    EXPECT_THROW(superop_apply(SuperOperator::new_qubit(), {"q"}, outer(plus)), Error);
}

TEST(cp_advisory, flags_only_the_signed_operator) {
    EXPECT_TRUE(cp_advisory(SuperOperator::from_unitary(*builtin_gate("H"))).empty());
    EXPECT_TRUE(cp_advisory(SuperOperator::meas_unknown(2)).empty());
    auto findings = cp_advisory(SuperOperator::damping_counterexample(1.0));
    ASSERT_EQ(findings.size(), 1u);
    EXPECT_NE(findings[0].find("not completely positive"), std::string::npos);
    Matrix big = 2.0 * Matrix::Identity(2, 2);
    auto grow = SuperOperator::signed_kraus("grow", 1, {{+1, big}});
    EXPECT_EQ(cp_advisory(grow).size(), 1u);
}
