#include "dicke/model.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace dicke {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

// Diagonal part shared by sector and full assembly; m = s - N/2.
double diagonal_energy(const ModelParams& p, int photons, int s) {
    const double j = p.j();
    const double m = s - j;
    return p.omega_a * photons + p.omega_b * m + p.lambda_z * m * photons / j +
           p.u * m * m / j;
}

}  // namespace

void ModelParams::validate() const {
    require(std::isfinite(omega_a) && omega_a > 0, "omega_a must be > 0");
    require(std::isfinite(omega_b) && omega_b > 0, "omega_b must be > 0");
    require(std::isfinite(g) && g >= 0, "g must be >= 0");
    require(std::isfinite(g_prime) && g_prime >= 0, "g_prime must be >= 0");
    require(std::isfinite(lambda_z), "lambda_z must be finite");
    require(std::isfinite(u), "u must be finite");
    require(n_atoms >= 1, "n_atoms must be >= 1");
}

SectorBasis::SectorBasis(int n_atoms_, int P_) : P(P_), n_atoms(n_atoms_) {
    require(n_atoms >= 1, "SectorBasis: n_atoms must be >= 1");
    require(P >= 0, "SectorBasis: P must be >= 0");
}

int SectorBasis::dim() const { return std::min(P, n_atoms) + 1; }

int sector_dimension(int n_atoms, int P) { return SectorBasis(n_atoms, P).dim(); }

SymMatrix build_sector_hamiltonian(const ModelParams& params, int P) {
    params.validate();
    require(params.g_prime == 0.0, "build_sector_hamiltonian: sectors require g_prime == 0");
    const SectorBasis basis(params.n_atoms, P);
    const int N = params.n_atoms;
    const int dim = basis.dim();
    const double coupling = params.g / std::sqrt(static_cast<double>(N));

    SymMatrix h(static_cast<std::size_t>(dim));
    for (int s = 0; s < dim; ++s) {
        h(s, s) = diagonal_energy(params, basis.photons(s), s);
        if (s + 1 < dim) {
            // a J_+ : |s, P-s> -> |s+1, P-s-1>
            const double spin = std::sqrt(static_cast<double>(s + 1) * (N - s));
            const double photon = std::sqrt(static_cast<double>(P - s));
            h.set_symmetric(s, s + 1, coupling * spin * photon);
        }
    }
    return h;
}

FullBasis::FullBasis(int n_atoms_, int n_max_) : n_atoms(n_atoms_), n_max(n_max_) {
    require(n_atoms >= 1, "FullBasis: n_atoms must be >= 1");
    require(n_max >= 0, "FullBasis: n_max must be >= 0");
}

std::size_t FullBasis::size() const {
    return static_cast<std::size_t>(n_max + 1) * static_cast<std::size_t>(n_atoms + 1);
}

std::size_t FullBasis::index(int n, int s) const {
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(n_atoms + 1) +
           static_cast<std::size_t>(s);
}

int FullBasis::photons(std::size_t idx) const { return static_cast<int>(idx / (n_atoms + 1)); }
int FullBasis::spin(std::size_t idx) const { return static_cast<int>(idx % (n_atoms + 1)); }
int FullBasis::parity(std::size_t idx) const {
    return ((photons(idx) + spin(idx)) % 2 == 0) ? 1 : -1;
}

FullHamiltonian build_full_hamiltonian(const ModelParams& params, int n_max) {
    params.validate();
    FullBasis basis(params.n_atoms, n_max);
    const int N = params.n_atoms;
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(N));

    SymMatrix h(basis.size());
    for (int n = 0; n <= n_max; ++n) {
        for (int s = 0; s <= N; ++s) {
            const std::size_t i = basis.index(n, s);
            h(i, i) = diagonal_energy(params, n, s);
            if (n == n_max) continue;
            const double photon = std::sqrt(static_cast<double>(n + 1));
            // a^dag J_- : (n, s) -> (n+1, s-1)
            if (s > 0 && params.g != 0.0) {
                const double spin = std::sqrt(static_cast<double>(s) * (N - s + 1));
                h.set_symmetric(i, basis.index(n + 1, s - 1), params.g * inv_sqrt_n * photon * spin);
            }
            // a^dag J_+ : (n, s) -> (n+1, s+1)
            if (s < N && params.g_prime != 0.0) {
                const double spin = std::sqrt(static_cast<double>(s + 1) * (N - s));
                h.set_symmetric(i, basis.index(n + 1, s + 1),
                                params.g_prime * inv_sqrt_n * photon * spin);
            }
        }
    }
    return {basis, std::move(h)};
}

ParityBlocks parity_blocks(int n_atoms, int n_max) {
    const FullBasis basis(n_atoms, n_max);
    ParityBlocks out;
    for (std::size_t i = 0; i < basis.size(); ++i)
        (basis.parity(i) > 0 ? out.even : out.odd).push_back(i);
    return out;
}

}  // namespace dicke
