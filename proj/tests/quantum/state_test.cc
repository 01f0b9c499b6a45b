#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qproc/error.h"
#include "qproc/quantum/state.h"
#include "qproc/quantum/unitary.h"

using namespace qproc;
using namespace qproc::quantum;

namespace {

const double kTol = 1e-9;
const double kS = 1.0 / std::sqrt(2.0);

Vector vec(std::initializer_list<Complex> values) {
    Vector v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index k = 0;
    for (auto c : values) {
        v[k++] = c;
    }
    return v;
}

std::vector<std::string> qnames(size_t n) {
    std::vector<std::string> out;
    for (size_t k = 0; k < n; ++k) {
        out.push_back("q" + std::to_string(k));
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
    return StateVector(qnames(n), v);
}

// Kronecker product written out directly; independent of the library's index arithmetic.
Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            for (Eigen::Index k = 0; k < b.rows(); ++k) {
                for (Eigen::Index l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
                }
            }
        }
    }
    return out;
}

}  // namespace

TEST(state_vector, rejects_bad_registers) {
    EXPECT_THROW(StateVector({"a", "a"}, vec({1, 0, 0, 0})), Error);
    EXPECT_THROW(StateVector({"a"}, vec({1, 0, 0, 0})), Error);
    EXPECT_THROW(StateVector({"a"}, vec({1, 1})), Error);
    EXPECT_NO_THROW(StateVector({"a"}, vec({kS, kS})));
}

TEST(state_vector, tensor_basis_product) {
    auto zero_a = StateVector::basis({"a"}, 0);
    auto zero_b = StateVector::basis({"b"}, 0);
    auto both = tensor(zero_a, zero_b);
    EXPECT_EQ(both.names(), (std::vector<std::string>{"a", "b"}));
    EXPECT_LE(max_abs_diff(both.amplitudes(), vec({1, 0, 0, 0})), kTol);
}

TEST(state_vector, tensor_plus_one) {
    StateVector plus({"a"}, vec({kS, kS}));
    auto one = StateVector::basis({"b"}, 1);
    EXPECT_LE(max_abs_diff(tensor(plus, one).amplitudes(), vec({0, kS, 0, kS})), kTol);
}

TEST(state_vector, tensor_with_fresh_zero_interleaves) {
    std::mt19937_64 rng(7);
    auto psi = random_state(rng, 3);
    auto out = tensor(psi, StateVector::basis({"fresh"}, 0));
    ASSERT_EQ(out.amplitudes().size(), 16);
    for (Eigen::Index k = 0; k < 8; ++k) {
        EXPECT_LE(std::abs(out.amplitudes()[2 * k] - psi.amplitudes()[k]), kTol);
        EXPECT_LE(std::abs(out.amplitudes()[2 * k + 1]), kTol);
    }
}

TEST(state_vector, tensor_name_collision) {
    auto a = StateVector::basis({"a"}, 0);
    EXPECT_THROW(tensor(a, a), Error);
}

TEST(state_vector, tensor_associative) {
    std::mt19937_64 rng(3);
    auto a = random_state(rng, 1);
    auto b = random_state(rng, 2).renamed({{"q0", "b0"}, {"q1", "b1"}});
    auto c = random_state(rng, 1).renamed({{"q0", "c0"}});
    auto left = tensor(tensor(a, b), c);
    auto right = tensor(a, tensor(b, c));
    EXPECT_TRUE(approx_eq(left, right, kTol));
}

TEST(state_vector, reordered_moves_amplitudes_with_names) {
    // |01> over (a, b) is |10> over (b, a).
    auto s = StateVector::basis({"a", "b"}, 1);
    auto r = s.reordered({"b", "a"});
    EXPECT_LE(max_abs_diff(r.amplitudes(), vec({0, 0, 1, 0})), kTol);
}

TEST(outer, basis_and_plus) {
    auto zero = StateVector::basis({"q"}, 0);
    Matrix expect_zero(2, 2);
    expect_zero << 1, 0, 0, 0;
    EXPECT_LE(max_abs_diff(outer(zero).entries(), expect_zero), kTol);

    StateVector plus({"q"}, vec({kS, kS}));
    Matrix expect_plus = Matrix::Constant(2, 2, 0.5);
    EXPECT_LE(max_abs_diff(outer(plus).entries(), expect_plus), kTol);
    EXPECT_TRUE(approx_eq(DensityMatrix({"q"}, expect_plus), outer(plus), kTol));
}

TEST(outer, general_two_qubit_grid) {
    Complex alpha(0.5, 0), beta(0, 0.5), gamma(-0.5, 0), delta(0.5, 0);
    StateVector psi({"a", "b"}, vec({alpha, beta, gamma, delta}));
    auto rho = outer(psi);
    Complex amps[4] = {alpha, beta, gamma, delta};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            EXPECT_LE(std::abs(rho.entries()(i, j) - amps[i] * std::conj(amps[j])), kTol);
        }
    }
    EXPECT_LE(std::abs(rho.trace() - 1.0), kTol);
}

TEST(unitary, gates_on_basis_states) {
    auto h = *builtin_gate("H");
    auto plus = apply_unitary_prefix(h, StateVector::basis({"q"}, 0));
    EXPECT_LE(max_abs_diff(plus.amplitudes(), vec({kS, kS})), kTol);

    auto x = *builtin_gate("X");
    Matrix xx = kron(x.matrix(), x.matrix());
    Unitary xx_gate("XX", xx);
    auto s = apply_unitary_prefix(xx_gate, StateVector::basis({"a", "b"}, 0));
    EXPECT_LE(max_abs_diff(s.amplitudes(), vec({0, 0, 0, 1})), kTol);

    Unitary ix("IX", kron(Matrix::Identity(2, 2), x.matrix()));
    auto t = apply_unitary_prefix(ix, StateVector::basis({"a", "b"}, 0));
    EXPECT_LE(max_abs_diff(t.amplitudes(), vec({0, 1, 0, 0})), kTol);
}

TEST(unitary, cnot_on_teleport_start) {
    StateVector psi0(qnames(3), vec({0, 0, 0, 0, kS, 0, 0, kS}));
    auto psi1 = apply_unitary_prefix(*builtin_gate("CNOT"), psi0);
    // (|110> + |101>)/sqrt(2)
    EXPECT_LE(max_abs_diff(psi1.amplitudes(), vec({0, 0, 0, 0, 0, kS, kS, 0})), kTol);
}

TEST(unitary, arity_mismatch) {
    EXPECT_THROW(apply_unitary_prefix(*builtin_gate("CNOT"), StateVector::basis({"a"}, 0)), Error);
}

TEST(unitary, norm_preserved_for_random_states) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        size_t n = 1 + trial % 4;
        auto psi = random_state(rng, n);
        for (const auto &name : builtin_gate_names()) {
            auto g = *builtin_gate(name);
            if (g.arity() > n) {
                continue;
            }
            EXPECT_NEAR(apply_unitary_prefix(g, psi).amplitudes().norm(), 1.0, kTol);
        }
    }
}

TEST(unitary, apply_on_named_targets_matches_kron_oracle) {
    std::mt19937_64 rng(5);
    auto psi = random_state(rng, 3);
    auto cnot = *builtin_gate("CNOT");
    // CNOT with control q2 and target q0: move q2, q0 to positions 0, 1, apply CNOT (x) I, move back.
    auto out = apply_unitary(cnot, {"q2", "q0"}, psi);
    Matrix to_front = permutation_unitary({1, 2, 0}).matrix();
    Matrix full = to_front.adjoint() * kron(cnot.matrix(), Matrix::Identity(2, 2)) * to_front;
    Vector expect = full * psi.amplitudes();
    EXPECT_LE(max_abs_diff(out.amplitudes(), expect), kTol);
}

TEST(permutation, identity_is_identity) {
    auto p = permutation_unitary({0, 1, 2});
    EXPECT_LE(max_abs_diff(p.matrix(), Matrix::Identity(8, 8)), kTol);
}

TEST(permutation, swap_on_01) {
    auto p = permutation_unitary({1, 0});
    auto out = apply_unitary_prefix(p, StateVector::basis({"a", "b"}, 1));
    EXPECT_LE(max_abs_diff(out.amplitudes(), vec({0, 0, 1, 0})), kTol);
}

TEST(permutation, composed_with_inverse_is_identity) {
    std::mt19937_64 rng(13);
    for (size_t n = 1; n <= 4; ++n) {
        std::vector<size_t> perm(n);
        for (size_t k = 0; k < n; ++k) {
            perm[k] = k;
        }
        for (int trial = 0; trial < 5; ++trial) {
            std::shuffle(perm.begin(), perm.end(), rng);
            Matrix prod = permutation_unitary(perm).matrix() * permutation_unitary(inverse_permutation(perm)).matrix();
            auto dim = Eigen::Index{1} << n;
            EXPECT_LE(max_abs_diff(prod, Matrix::Identity(dim, dim)), kTol);
        }
    }
}

TEST(permutation, rejects_non_bijection) {
    EXPECT_THROW(permutation_unitary({0, 0}), Error);
    EXPECT_THROW(permutation_unitary({0, 2}), Error);
}

TEST(permutation, reordering_agrees_with_permutation_unitary) {
    // Listing the register as names[perm^-1(j)] is the same physical state as Pi|psi>.
    std::mt19937_64 rng(17);
    auto psi = random_state(rng, 3);
    std::vector<size_t> perm = {2, 0, 1};
    auto inv = inverse_permutation(perm);
    std::vector<std::string> order;
    for (size_t j = 0; j < 3; ++j) {
        order.push_back(psi.names()[inv[j]]);
    }
    Vector expect = permutation_unitary(perm).matrix() * psi.amplitudes();
    EXPECT_LE(max_abs_diff(psi.reordered(order).amplitudes(), expect), kTol);
}

TEST(measure_prefix, bell_first_qubit) {
    StateVector bell({"a", "b"}, vec({kS, 0, 0, kS}));
    auto outcomes = measure_prefix(bell, 1);
    ASSERT_EQ(outcomes.size(), 2u);
    EXPECT_NEAR(outcomes[0].probability, 0.5, kTol);
    EXPECT_NEAR(outcomes[1].probability, 0.5, kTol);
    EXPECT_LE(max_abs_diff(outcomes[0].post_state.amplitudes(), vec({1, 0, 0, 0})), kTol);
    EXPECT_LE(max_abs_diff(outcomes[1].post_state.amplitudes(), vec({0, 0, 0, 1})), kTol);
}

TEST(measure_prefix, teleport_distribution) {
    // psi2 = (|001> + |010> - |101> - |110>)/2
    StateVector psi2(qnames(3), vec({0, 0.5, 0.5, 0, 0, -0.5, -0.5, 0}));
    auto outcomes = measure_prefix(psi2, 2);
    ASSERT_EQ(outcomes.size(), 4u);
    int expect_index[4] = {1, 2, 5, 6};
    double expect_sign[4] = {1, 1, -1, -1};
    for (int m = 0; m < 4; ++m) {
        EXPECT_EQ(outcomes[m].result, static_cast<uint64_t>(m));
        EXPECT_NEAR(outcomes[m].probability, 0.25, kTol);
        Vector expect = Vector::Zero(8);
        expect[expect_index[m]] = expect_sign[m];
        EXPECT_LE(max_abs_diff(outcomes[m].post_state.amplitudes(), expect), kTol);
    }
}

TEST(measure_prefix, empty_measurement_keeps_state) {
    std::mt19937_64 rng(19);
    auto psi = random_state(rng, 2);
    auto outcomes = measure_prefix(psi, 0);
    ASSERT_EQ(outcomes.size(), 1u);
    EXPECT_NEAR(outcomes[0].probability, 1.0, kTol);
    EXPECT_TRUE(approx_eq(outcomes[0].post_state, psi, kTol));
}

TEST(measure_prefix, zero_probability_is_flagged) {
    auto outcomes = measure_prefix(StateVector::basis({"a"}, 0), 1);
    EXPECT_FALSE(outcomes[0].post_state.is_zero_branch());
    EXPECT_TRUE(outcomes[1].post_state.is_zero_branch());
    EXPECT_EQ(outcomes[1].probability, 0.0);
}

TEST(measure_prefix, too_many_qubits) {
    EXPECT_THROW(measure_prefix(StateVector::basis({"a"}, 0), 2), Error);
}

TEST(measure_prefix, probabilities_sum_to_one) {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        size_t n = 1 + trial % 3;
        auto psi = random_state(rng, n);
        for (size_t r = 0; r <= n; ++r) {
            double total = 0;
            for (const auto &o : measure_prefix(psi, r)) {
                total += o.probability;
            }
            EXPECT_NEAR(total, 1.0, kTol);
        }
    }
}

TEST(approx_eq, basic_cases) {
    auto zero = StateVector::basis({"q"}, 0);
    auto one = StateVector::basis({"q"}, 1);
    EXPECT_TRUE(approx_eq(zero, zero, kTol));
    EXPECT_FALSE(approx_eq(zero, one, kTol));
    EXPECT_THROW(approx_eq(zero, StateVector::basis({"q", "r"}, 0), kTol), Error);
}

TEST(density_matrix, canonical_order) {
    auto s = StateVector::basis({"b", "a"}, 1);  // b=0, a=1
    auto rho = outer(s).canonical();
    EXPECT_EQ(rho.names(), (std::vector<std::string>{"a", "b"}));
    EXPECT_NEAR(rho.entries()(2, 2).real(), 1.0, kTol);
    EXPECT_TRUE(approx_eq_unordered(outer(s), outer(s.reordered({"a", "b"})), kTol));
}
