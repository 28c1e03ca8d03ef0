#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cqs {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Thrown on contract violations (space mismatch, non-Hermitian input, ...).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

enum class SpaceKind { Boson, Qubit, QubitBoson };

/// Identifies the Hilbert space a matrix or vector lives in.
/// Boson spaces are Fock-truncated at level `cutoff` (dimension cutoff+1);
/// composite spaces are ordered qubit-major (spin-up block first).
struct SpaceDescriptor {
    SpaceKind kind = SpaceKind::Boson;
    int cutoff = 0;   // highest Fock level N_c; unused for pure qubit spaces
    int dim = 0;

    static SpaceDescriptor boson(int cutoff) {
        require_cutoff(cutoff);
        return {SpaceKind::Boson, cutoff, cutoff + 1};
    }
    static SpaceDescriptor qubit() { return {SpaceKind::Qubit, 0, 2}; }
    static SpaceDescriptor qubit_boson(int cutoff) {
        require_cutoff(cutoff);
        return {SpaceKind::QubitBoson, cutoff, 2 * (cutoff + 1)};
    }

    bool has_boson() const { return kind != SpaceKind::Qubit; }
    bool has_qubit() const { return kind != SpaceKind::Boson; }
    int boson_dim() const { return cutoff + 1; }

    bool operator==(const SpaceDescriptor&) const = default;

private:
    static void require_cutoff(int cutoff) {
        if (cutoff < 2) throw Error("SpaceDescriptor: cutoff must be >= 2");
    }
};

/// Dense operator tagged with its space.
struct Operator {
    SpaceDescriptor space;
    Matrix matrix;

    Operator() = default;
    Operator(SpaceDescriptor s, Matrix m) : space(s), matrix(std::move(m)) {
        if (matrix.rows() != space.dim || matrix.cols() != space.dim)
            throw Error("Operator: matrix shape does not match space dimension");
    }
};

enum class StateKind { Pure, Density };

/// Pure state (column vector) or density matrix, tagged with its space.
struct QuantumState {
    SpaceDescriptor space;
    StateKind kind = StateKind::Pure;
    Vector vector;   // pure
    Matrix matrix;   // density

    static QuantumState pure(SpaceDescriptor s, Vector v);
    static QuantumState density(SpaceDescriptor s, Matrix m);
};

inline void require_same_space(const SpaceDescriptor& a, const SpaceDescriptor& b,
                               const char* what) {
    if (!(a == b)) throw Error(std::string(what) + ": operands live in different spaces");
}

}  // namespace cqs
