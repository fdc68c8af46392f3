#pragma once

#include <cstddef>
#include <vector>

#include "dicke/matrix.h"
#include "dicke/model.h"

// Brute-force cross-check for the total-spin reduction: the Hamiltonian is
// written on the full 2^N qubit space from Pauli operators, then projected
// onto the permutation-symmetric subspace. Shares no assembly code with
// build_full_hamiltonian.
namespace dicke::oracle {

inline constexpr int kMaxAtoms = 3;

/// H on (2^N qubit states) x (Fock 0..n_max); index = n * 2^N + bits, where
/// bit i set means qubit i is excited.
SymMatrix qubit_hamiltonian(const ModelParams& params, int n_max);

/// Isometry columns onto normalized Dicke states |k excitations> x |n>,
/// column index = n * (N + 1) + k. Row-major, rows = 2^N (n_max + 1).
std::vector<double> symmetric_isometry(int n_atoms, int n_max);

/// V^T H V in the (n, k) ordering above.
SymMatrix symmetric_hamiltonian(const ModelParams& params, int n_max);

/// Sorted spectrum of symmetric_hamiltonian.
std::vector<double> symmetric_spectrum(const ModelParams& params, int n_max);

struct Comparison {
    double max_abs_diff = 0.0;
    std::size_t levels = 0;
    double max_residual = 0.0;
};

/// Compares the oracle spectrum with eigh(build_full_hamiltonian(...)).
Comparison compare_with_full_basis(const ModelParams& params, int n_max);

}  // namespace dicke::oracle
