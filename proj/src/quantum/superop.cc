#include "qproc/quantum/superop.h"

#include <cmath>

#include "qproc/error.h"

namespace qproc::quantum {

SuperOperator SuperOperator::from_unitary(const Unitary &u) {
    SuperOperator e;
    e.arity_ = u.arity();
    e.name_ = u.name();
    e.terms_.push_back({+1, u.matrix()});
    return e;
}

SuperOperator SuperOperator::meas_unknown(size_t r) {
    SuperOperator e;
    e.arity_ = r;
    e.name_ = "M";
    auto dim = Eigen::Index{1} << r;
    for (Eigen::Index m = 0; m < dim; ++m) {
        Matrix p = Matrix::Zero(dim, dim);
        p(m, m) = 1.0;
        e.terms_.push_back({+1, std::move(p)});
    }
    return e;
}

SuperOperator SuperOperator::meas_expected(uint64_t i, size_t r) {
    auto dim = uint64_t{1} << r;
    if (i >= dim) {
        throw Error(
            ErrorKind::InvalidOutcome,
            "outcome " + std::to_string(i) + " does not exist for " + std::to_string(r) + " measured qubits");
    }
    SuperOperator e;
    e.arity_ = r;
    e.name_ = "E" + std::to_string(i);
    e.normalize_after_ = true;
    Matrix p = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
    e.terms_.push_back({+1, std::move(p)});
    return e;
}

SuperOperator SuperOperator::new_qubit() {
    SuperOperator e;
    e.kind_ = Kind::NewQubit;
    e.arity_ = 0;
    e.name_ = "new";
    return e;
}

SuperOperator SuperOperator::signed_kraus(std::string name, size_t arity, std::vector<KrausTerm> terms) {
    if (terms.empty()) {
        throw Error(ErrorKind::InvalidArity, "super-operator '" + name + "' has no terms");
    }
    auto dim = Eigen::Index{1} << arity;
    for (const auto &t : terms) {
        if (t.matrix.rows() != dim || t.matrix.cols() != dim) {
            throw Error(
                ErrorKind::InvalidArity,
                "term of super-operator '" + name + "' must be " + std::to_string(dim) + "x" + std::to_string(dim));
        }
        if (t.sign != 1 && t.sign != -1) {
            throw Error(ErrorKind::InvalidArity, "term sign must be + or -");
        }
    }
    SuperOperator e;
    e.arity_ = arity;
    e.name_ = std::move(name);
    e.terms_ = std::move(terms);
    return e;
}

SuperOperator SuperOperator::damping_counterexample(double p) {
    Matrix plus = Matrix::Zero(2, 2);
    plus(0, 0) = 1.0;
    plus(1, 1) = std::sqrt(1.0 + p);
    Matrix minus = Matrix::Zero(2, 2);
    minus(0, 1) = std::sqrt(p);
    return signed_kraus("Q", 1, {{+1, plus}, {-1, minus}});
}

DensityMatrix superop_apply_raw(const SuperOperator &e, const std::vector<std::string> &targets, const DensityMatrix &rho) {
    if (e.kind() == SuperOperator::Kind::NewQubit) {
        if (targets.size() != 1) {
            throw Error(ErrorKind::InvalidArity, "register extension takes exactly one fresh qubit name");
        }
        if (rho.position_of(targets[0]) >= 0) {
            throw Error(ErrorKind::InvalidRegister, "qubit '" + targets[0] + "' already exists");
        }
        Matrix zero = Matrix::Zero(2, 2);
        zero(0, 0) = 1.0;
        return tensor(rho, DensityMatrix({targets[0]}, zero));
    }
    if (targets.size() != e.arity()) {
        throw Error(
            ErrorKind::InvalidArity, "super-operator '" + e.name() + "' acts on " + std::to_string(e.arity()) +
                                         " qubits, got " + std::to_string(targets.size()));
    }
    auto positions = positions_of(rho.names(), targets);
    size_t n = rho.num_qubits();
    Matrix out = Matrix::Zero(rho.entries().rows(), rho.entries().cols());
    for (const auto &term : e.terms()) {
        // A rho A^dagger = (A (A rho)^dagger)^dagger holds for any rho, Hermitian or not.
        Matrix left = apply_left_on_positions(term.matrix, positions, n, rho.entries());
        Matrix both = apply_left_on_positions(term.matrix, positions, n, left.adjoint()).adjoint();
        if (term.sign > 0) {
            out += both;
        } else {
            out -= both;
        }
    }
    return DensityMatrix(rho.names(), std::move(out));
}

DensityMatrix superop_apply(const SuperOperator &e, const std::vector<std::string> &targets, const DensityMatrix &rho, double tol) {
    DensityMatrix raw = superop_apply_raw(e, targets, rho);
    if (!e.normalize_after()) {
        return raw;
    }
    Complex tr = raw.trace();
    if (std::abs(tr) <= tol) {
        throw Error(ErrorKind::ZeroBranch, "operator '" + e.name() + "' selects a branch of probability zero");
    }
    return DensityMatrix(raw.names(), raw.entries() / tr);
}

std::vector<std::string> cp_advisory(const SuperOperator &e, double tol) {
    std::vector<std::string> findings;
    if (e.kind() == SuperOperator::Kind::NewQubit) {
        return findings;
    }
    auto dim = Eigen::Index{1} << e.arity();
    // Choi matrix sum_j sign_j vec(K_j) vec(K_j)^dagger, column-stacked.
    Matrix choi = Matrix::Zero(dim * dim, dim * dim);
    Matrix gram = Matrix::Zero(dim, dim);
    for (const auto &term : e.terms()) {
        Eigen::Map<const Vector> vec(term.matrix.data(), dim * dim);
        Matrix contribution = vec * vec.adjoint();
        Matrix g = term.matrix.adjoint() * term.matrix;
        if (term.sign > 0) {
            choi += contribution;
            gram += g;
        } else {
            choi -= contribution;
            gram -= g;
        }
    }
    Eigen::SelfAdjointEigenSolver<Matrix> choi_eig(choi);
    double min_choi = choi_eig.eigenvalues().minCoeff();
    if (min_choi < -tol) {
        findings.push_back(
            "'" + e.name() + "' is not completely positive (Choi eigenvalue " + std::to_string(min_choi) + ")");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> gram_eig(Matrix::Identity(dim, dim) - gram);
    double min_slack = gram_eig.eigenvalues().minCoeff();
    if (min_slack < -tol) {
        findings.push_back(
            "'" + e.name() + "' can increase the trace (I - sum K^dagger K has eigenvalue " + std::to_string(min_slack) +
            ")");
    }
    return findings;
}

}  // namespace qproc::quantum
