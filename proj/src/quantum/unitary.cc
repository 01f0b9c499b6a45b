#include "qproc/quantum/unitary.h"

#include <cmath>
#include <numbers>

#include "qproc/error.h"

namespace qproc::quantum {

namespace {

size_t arity_of_dim(Eigen::Index dim) {
    size_t k = 0;
    while ((Eigen::Index{1} << k) < dim) {
        ++k;
    }
    if ((Eigen::Index{1} << k) != dim) {
        throw Error(ErrorKind::InvalidArity, "operator dimension " + std::to_string(dim) + " is not a power of two");
    }
    return k;
}

Matrix mat2(Complex a, Complex b, Complex c, Complex d) {
    Matrix m(2, 2);
    m << a, b, c, d;
    return m;
}

}  // namespace

Unitary::Unitary(std::string name, Matrix matrix, double tol) : name_(std::move(name)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols()) {
        throw Error(ErrorKind::InvalidArity, "unitary '" + name_ + "' is not square");
    }
    arity_ = arity_of_dim(matrix_.rows());
    Matrix check = matrix_.adjoint() * matrix_;
    if (max_abs_diff(check, Matrix::Identity(matrix_.rows(), matrix_.cols())) > tol) {
        throw Error(ErrorKind::InvalidState, "matrix '" + name_ + "' is not unitary");
    }
}

std::vector<std::string> builtin_gate_names() {
    return {"I", "X", "Y", "Z", "H", "S", "T", "CNOT", "CZ", "SWAP"};
}

std::optional<Unitary> builtin_gate(const std::string &name) {
    const Complex i{0.0, 1.0};
    const double h = 1.0 / std::sqrt(2.0);
    if (name == "I") {
        return Unitary(name, Matrix::Identity(2, 2));
    }
    if (name == "X") {
        return Unitary(name, mat2(0, 1, 1, 0));
    }
    if (name == "Y") {
        return Unitary(name, mat2(0, -i, i, 0));
    }
    if (name == "Z") {
        return Unitary(name, mat2(1, 0, 0, -1));
    }
    if (name == "H") {
        return Unitary(name, mat2(h, h, h, -h));
    }
    if (name == "S") {
        return Unitary(name, mat2(1, 0, 0, i));
    }
    if (name == "T") {
        return Unitary(name, mat2(1, 0, 0, std::polar(1.0, std::numbers::pi / 4)));
    }
    if (name == "CNOT" || name == "CZ" || name == "SWAP") {
        Matrix m = Matrix::Zero(4, 4);
        if (name == "CNOT") {
            m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
        } else if (name == "CZ") {
            m(0, 0) = m(1, 1) = m(2, 2) = 1;
            m(3, 3) = -1;
        } else {
            m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1;
        }
        return Unitary(name, m);
    }
    return std::nullopt;
}

void check_permutation(const std::vector<size_t> &perm) {
    std::vector<bool> hit(perm.size(), false);
    for (size_t p : perm) {
        if (p >= perm.size() || hit[p]) {
            throw Error(ErrorKind::InvalidPermutation, "not a bijection on 0.." + std::to_string(perm.size()) + "-1");
        }
        hit[p] = true;
    }
}

std::vector<size_t> inverse_permutation(const std::vector<size_t> &perm) {
    check_permutation(perm);
    std::vector<size_t> inv(perm.size());
    for (size_t i = 0; i < perm.size(); ++i) {
        inv[perm[i]] = i;
    }
    return inv;
}

Unitary permutation_unitary(const std::vector<size_t> &perm) {
    check_permutation(perm);
    size_t n = perm.size();
    auto dim = Eigen::Index{1} << n;
    Matrix m = Matrix::Zero(dim, dim);
    for (Eigen::Index idx = 0; idx < dim; ++idx) {
        uint64_t target = 0;
        for (size_t i = 0; i < n; ++i) {
            if (static_cast<uint64_t>(idx) & position_bit(n, i)) {
                target |= position_bit(n, perm[i]);
            }
        }
        m(static_cast<Eigen::Index>(target), idx) = 1.0;
    }
    return Unitary("PERM", std::move(m));
}

StateVector apply_unitary_prefix(const Unitary &u, const StateVector &psi) {
    if (u.arity() > psi.num_qubits()) {
        throw Error(
            ErrorKind::InvalidArity, "gate " + u.name() + " acts on " + std::to_string(u.arity()) +
                                         " qubits but the register has " + std::to_string(psi.num_qubits()));
    }
    std::vector<size_t> positions(u.arity());
    for (size_t k = 0; k < positions.size(); ++k) {
        positions[k] = k;
    }
    Vector out = apply_on_positions(u.matrix(), positions, psi.num_qubits(), psi.amplitudes());
    return StateVector(psi.names(), std::move(out), 1e-6);
}

StateVector apply_unitary(const Unitary &u, const std::vector<std::string> &targets, const StateVector &psi) {
    if (targets.size() != u.arity()) {
        throw Error(ErrorKind::InvalidArity, "gate " + u.name() + " expects " + std::to_string(u.arity()) + " targets");
    }
    auto positions = positions_of(psi.names(), targets);
    Vector out = apply_on_positions(u.matrix(), positions, psi.num_qubits(), psi.amplitudes());
    return StateVector(psi.names(), std::move(out), 1e-6);
}

}  // namespace qproc::quantum
