#include "dicke/oracle.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "dicke/eigen.h"

namespace dicke::oracle {

namespace {

void check_size(const ModelParams& params, int n_max) {
    params.validate();
    if (params.n_atoms > kMaxAtoms)
        throw std::invalid_argument("oracle: brute force is limited to n_atoms <= 3");
    if (n_max < 0) throw std::invalid_argument("oracle: n_max must be >= 0");
}

double binomial(int n, int k) {
    double b = 1.0;
    for (int i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

}  // namespace

SymMatrix qubit_hamiltonian(const ModelParams& params, int n_max) {
    check_size(params, n_max);
    const int N = params.n_atoms;
    const std::size_t q = std::size_t{1} << N;
    const std::size_t dim = q * static_cast<std::size_t>(n_max + 1);
    const double j = params.j();
    const double gr = params.g / std::sqrt(static_cast<double>(N));
    const double gcr = params.g_prime / std::sqrt(static_cast<double>(N));

    auto idx = [q](int n, std::size_t bits) { return static_cast<std::size_t>(n) * q + bits; };

    SymMatrix h(dim);
    auto add = [&h](std::size_t a, std::size_t b, double v) { h.set_symmetric(a, b, h(a, b) + v); };
    for (int n = 0; n <= n_max; ++n) {
        for (std::size_t bits = 0; bits < q; ++bits) {
            // J_z = sum_i sigma^z_i / 2
            const double jz = std::popcount(bits) - 0.5 * N;
            const std::size_t i = idx(n, bits);
            h(i, i) += params.omega_a * n + params.omega_b * jz + params.lambda_z * jz * n / j +
                       params.u * jz * jz / j;
            if (n == n_max) continue;
            const double amp = std::sqrt(n + 1.0);
            for (int site = 0; site < N; ++site) {
                const std::size_t mask = std::size_t{1} << site;
                // a^dag sigma^-_site and its conjugate
                if (bits & mask) add(i, idx(n + 1, bits & ~mask), gr * amp);
                // a^dag sigma^+_site and its conjugate
                if (!(bits & mask)) add(i, idx(n + 1, bits | mask), gcr * amp);
            }
        }
    }
    return h;
}

std::vector<double> symmetric_isometry(int n_atoms, int n_max) {
    const std::size_t q = std::size_t{1} << n_atoms;
    const std::size_t rows = q * static_cast<std::size_t>(n_max + 1);
    const std::size_t cols = static_cast<std::size_t>(n_atoms + 1) * static_cast<std::size_t>(n_max + 1);
    std::vector<double> v(rows * cols, 0.0);
    for (int n = 0; n <= n_max; ++n) {
        for (std::size_t bits = 0; bits < q; ++bits) {
            const int k = std::popcount(bits);
            const std::size_t row = static_cast<std::size_t>(n) * q + bits;
            const std::size_t col = static_cast<std::size_t>(n) * (n_atoms + 1) + k;
            v[row * cols + col] = 1.0 / std::sqrt(binomial(n_atoms, k));
        }
    }
    return v;
}

SymMatrix symmetric_hamiltonian(const ModelParams& params, int n_max) {
    const SymMatrix h = qubit_hamiltonian(params, n_max);
    const std::vector<double> v = symmetric_isometry(params.n_atoms, n_max);
    const std::size_t rows = h.size();
    const std::size_t cols = v.size() / rows;

    // hv = H V, then out = V^T (H V)
    std::vector<double> hv(rows * cols, 0.0);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t k = 0; k < rows; ++k) {
            const double hrk = h(r, k);
            if (hrk == 0.0) continue;
            for (std::size_t c = 0; c < cols; ++c) hv[r * cols + c] += hrk * v[k * cols + c];
        }
    SymMatrix out(cols);
    for (std::size_t a = 0; a < cols; ++a)
        for (std::size_t b = 0; b < cols; ++b) {
            double s = 0.0;
            for (std::size_t r = 0; r < rows; ++r) s += v[r * cols + a] * hv[r * cols + b];
            out(a, b) = s;
        }
    // Remove round-off asymmetry before handing to the eigensolver.
    for (std::size_t a = 0; a < cols; ++a)
        for (std::size_t b = a + 1; b < cols; ++b) out.set_symmetric(a, b, 0.5 * (out(a, b) + out(b, a)));
    return out;
}

std::vector<double> symmetric_spectrum(const ModelParams& params, int n_max) {
    return eigh(symmetric_hamiltonian(params, n_max)).eigenvalues;
}

Comparison compare_with_full_basis(const ModelParams& params, int n_max) {
    const auto reference = eigh(symmetric_hamiltonian(params, n_max));
    const auto reduced = eigh(build_full_hamiltonian(params, n_max).matrix);
    if (reference.eigenvalues.size() != reduced.eigenvalues.size())
        throw std::logic_error("oracle: dimension mismatch between oracle and full basis");

    Comparison c;
    c.levels = reduced.eigenvalues.size();
    c.max_residual = std::max(reference.max_residual, reduced.max_residual);
    for (std::size_t i = 0; i < c.levels; ++i)
        c.max_abs_diff = std::max(c.max_abs_diff, std::abs(reference.eigenvalues[i] - reduced.eigenvalues[i]));
    return c;
}

}  // namespace dicke::oracle
