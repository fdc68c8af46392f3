#pragma once

#include <cstddef>
#include <vector>

#include "dicke/matrix.h"

namespace dicke {

/// Couplings of the collective qubit-cavity model
///
///   H = omega_a a^dag a + omega_b J_z + (g / sqrt N)(a^dag J_- + a J_+)
///     + (g' / sqrt N)(a^dag J_+ + a J_-) + lambda_z J_z a^dag a / j + u J_z^2 / j
///
/// restricted to total spin j = N / 2.
struct ModelParams {
    double omega_a = 1.0;
    double omega_b = 1.0;
    double g = 0.0;
    double g_prime = 0.0;
    double lambda_z = 0.0;
    double u = 0.0;
    int n_atoms = 1;

    double j() const { return 0.5 * n_atoms; }

    /// Throws std::invalid_argument on any violated invariant.
    void validate() const;

    ModelParams with_g(double value) const {
        ModelParams p = *this;
        p.g = value;
        return p;
    }
};

/// Conserved-excitation block: state s is |N/2, s - N/2> (x) |P - s>.
struct SectorBasis {
    int P = 0;
    int n_atoms = 1;

    SectorBasis(int n_atoms, int P);

    int dim() const;
    int photons(int s) const { return P - s; }
    double spin_m(int s) const { return s - 0.5 * n_atoms; }
};

int sector_dimension(int n_atoms, int P);

/// Requires params.g_prime == 0.
SymMatrix build_sector_hamiltonian(const ModelParams& params, int P);

/// Truncated product basis (n, s), n = 0..n_max photons, s = 0..N spin
/// excitations. Index = n * (N + 1) + s.
struct FullBasis {
    int n_atoms = 1;
    int n_max = 0;

    FullBasis(int n_atoms, int n_max);

    std::size_t size() const;
    std::size_t index(int n, int s) const;
    int photons(std::size_t idx) const;
    int spin(std::size_t idx) const;
    int parity(std::size_t idx) const;
};

struct FullHamiltonian {
    FullBasis basis;
    SymMatrix matrix;
};

FullHamiltonian build_full_hamiltonian(const ModelParams& params, int n_max);

struct ParityBlocks {
    std::vector<std::size_t> even;
    std::vector<std::size_t> odd;

    const std::vector<std::size_t>& block(int parity) const { return parity > 0 ? even : odd; }
};

ParityBlocks parity_blocks(int n_atoms, int n_max);

}  // namespace dicke
