#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qproc/quantum/state.h"

namespace qproc::quantum {

class Unitary {
   public:
    /// Validates a square 2^k matrix with U^dagger U = I.
    Unitary(std::string name, Matrix matrix, double tol = kDefaultTolerance);

    size_t arity() const {
        return arity_;
    }
    const Matrix &matrix() const {
        return matrix_;
    }
    const std::string &name() const {
        return name_;
    }

   private:
    std::string name_;
    size_t arity_;
    Matrix matrix_;
};

/// I, X, Y, Z, H, S, T (one qubit) and CNOT, CZ, SWAP (two qubits). CNOT controls on its first
/// operand.
std::optional<Unitary> builtin_gate(const std::string &name);
std::vector<std::string> builtin_gate_names();

/// perm[i] is the new position of the qubit at position i: |b_0...b_(n-1)> maps to the basis
/// state whose bit at position perm[i] is b_i, i.e. |b_(perm^-1(0)) ... b_(perm^-1(n-1))>.
Unitary permutation_unitary(const std::vector<size_t> &perm);

std::vector<size_t> inverse_permutation(const std::vector<size_t> &perm);
void check_permutation(const std::vector<size_t> &perm);

/// (U (x) I) |psi> on the first arity(U) qubits.
StateVector apply_unitary_prefix(const Unitary &u, const StateVector &psi);
/// U on the named qubits, in the listed order.
StateVector apply_unitary(const Unitary &u, const std::vector<std::string> &targets, const StateVector &psi);

}  // namespace qproc::quantum
