#pragma once

#include <string>
#include <vector>

#include "qproc/quantum/state.h"
#include "qproc/quantum/unitary.h"

namespace qproc::quantum {

struct KrausTerm {
    int sign;  // +1 or -1
    Matrix matrix;
};

/// rho -> sum_j sign_j (K_j (x) I) rho (K_j (x) I)^dagger on a named target set, or the
/// register extension that appends a fresh qubit in |0>.
class SuperOperator {
   public:
    enum class Kind { Kraus, NewQubit };

    static SuperOperator from_unitary(const Unitary &u);
    /// Projective measurement with unknown outcome on r qubits.
    static SuperOperator meas_unknown(size_t r);
    /// Projection on outcome i of r qubits, renormalized afterwards. r = 0 gives the identity.
    static SuperOperator meas_expected(uint64_t i, size_t r);
    static SuperOperator new_qubit();
    static SuperOperator signed_kraus(std::string name, size_t arity, std::vector<KrausTerm> terms);
    /// Signed operator of the impossibility argument: +[[1,0],[0,sqrt(1+p)]] and -[[0,sqrt(p)],[0,0]].
    static SuperOperator damping_counterexample(double p = 1.0);

    Kind kind() const {
        return kind_;
    }
    size_t arity() const {
        return arity_;
    }
    const std::vector<KrausTerm> &terms() const {
        return terms_;
    }
    const std::string &name() const {
        return name_;
    }
    bool normalize_after() const {
        return normalize_after_;
    }

   private:
    SuperOperator() = default;

    Kind kind_ = Kind::Kraus;
    size_t arity_ = 0;
    std::vector<KrausTerm> terms_;
    std::string name_;
    bool normalize_after_ = false;
};

/// Raw application (no renormalization) on the named targets.
DensityMatrix superop_apply_raw(const SuperOperator &e, const std::vector<std::string> &targets, const DensityMatrix &rho);
/// Application including renormalization for operators that ask for it. A renormalized result
/// with |trace| <= tol raises ZeroBranch. For NewQubit, `targets` holds the one fresh name.
DensityMatrix superop_apply(
    const SuperOperator &e, const std::vector<std::string> &targets, const DensityMatrix &rho, double tol = kDefaultTolerance);

/// Advisory findings: violations of complete positivity (Choi matrix) and of trace
/// non-increase. Empty when the operator satisfies both. Never blocks execution.
std::vector<std::string> cp_advisory(const SuperOperator &e, double tol = kDefaultTolerance);

}  // namespace qproc::quantum
