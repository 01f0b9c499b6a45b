#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qproc::quantum {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double kDefaultTolerance = 1e-9;

/// Bit of qubit position `pos` inside a basis index of an n-qubit register.
/// Position 0 is the most significant bit, so |b0 b1 ... b(n-1)> has index sum(b_k 2^(n-1-k)).
inline uint64_t position_bit(size_t n, size_t pos) {
    return uint64_t{1} << (n - 1 - pos);
}

/// Named pure state of an n-qubit register.
class StateVector {
   public:
    /// The empty register: zero qubits, amplitude 1.
    StateVector();
    /// Validates length 2^n, distinct names, finite entries and unit norm.
    StateVector(std::vector<std::string> names, Vector amps, double tol = kDefaultTolerance);

    /// Post-state of a zero-probability outcome; norm is not checked and the flag is set.
    static StateVector zero_branch(std::vector<std::string> names, Vector amps);
    static StateVector basis(std::vector<std::string> names, uint64_t index);

    size_t num_qubits() const {
        return names_.size();
    }
    const std::vector<std::string> &names() const {
        return names_;
    }
    const Vector &amplitudes() const {
        return amps_;
    }
    bool is_zero_branch() const {
        return zero_branch_;
    }
    /// -1 when absent.
    int position_of(const std::string &name) const;

    /// Same physical state listed in another qubit order; amplitudes follow their names.
    StateVector reordered(const std::vector<std::string> &order) const;
    /// Renames qubits; unmapped names are kept. The map must stay injective on the register.
    StateVector renamed(const std::map<std::string, std::string> &gamma) const;

   private:
    std::vector<std::string> names_;
    Vector amps_;
    bool zero_branch_ = false;
};

/// Named (partial) density operator. Positivity is not enforced: signed operators may leave it.
class DensityMatrix {
   public:
    DensityMatrix();
    /// Validates a square 2^n grid, distinct names and finite entries.
    DensityMatrix(std::vector<std::string> names, Matrix entries);

    size_t num_qubits() const {
        return names_.size();
    }
    const std::vector<std::string> &names() const {
        return names_;
    }
    const Matrix &entries() const {
        return entries_;
    }
    int position_of(const std::string &name) const;
    Complex trace() const {
        return entries_.trace();
    }

    DensityMatrix reordered(const std::vector<std::string> &order) const;
    DensityMatrix renamed(const std::map<std::string, std::string> &gamma) const;
    /// Names in lexicographic order; the representation used for comparisons.
    DensityMatrix canonical() const;

   private:
    std::vector<std::string> names_;
    Matrix entries_;
};

/// "q<n>" for an n-qubit register, bumped until unused. Both calculi name created qubits with it.
std::string fresh_qubit_name(const std::vector<std::string> &register_names);

struct MeasurementOutcome {
    uint64_t result;
    double probability;
    StateVector post_state;
};

StateVector tensor(const StateVector &a, const StateVector &b);
DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b);
DensityMatrix outer(const StateVector &psi);

/// Measures the first r qubits; outcome m keeps amplitudes [2^(n-r) m, 2^(n-r) (m+1)).
std::vector<MeasurementOutcome> measure_prefix(const StateVector &psi, size_t r, double tol = kDefaultTolerance);

/// Applies `op` (2^k x 2^k) to the qubits at `positions`; positions[0] is the operator's most
/// significant bit.
Vector apply_on_positions(const Matrix &op, const std::vector<size_t> &positions, size_t n, const Vector &v);
/// Left multiplication of every column of `m` by `op` acting on `positions`.
Matrix apply_left_on_positions(const Matrix &op, const std::vector<size_t> &positions, size_t n, const Matrix &m);
std::vector<size_t> positions_of(const std::vector<std::string> &register_names, const std::vector<std::string> &targets);

/// Maximum entrywise absolute difference. Throws ShapeMismatch on differing dimensions.
double max_abs_diff(const Matrix &a, const Matrix &b);
double max_abs_diff(const Vector &a, const Vector &b);

/// Entrywise comparison; register names must agree as well. Global phase is significant.
bool approx_eq(const StateVector &a, const StateVector &b, double tol = kDefaultTolerance);
bool approx_eq(const DensityMatrix &a, const DensityMatrix &b, double tol = kDefaultTolerance);
/// Same comparison after bringing both to name order; false when the name sets differ.
bool approx_eq_unordered(const DensityMatrix &a, const DensityMatrix &b, double tol = kDefaultTolerance);

/// Appends a rounded rendering (9 decimal digits) usable as a hash key.
void append_rounded(std::string &out, const Vector &v);
void append_rounded(std::string &out, const Matrix &m);

}  // namespace qproc::quantum
