#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dicke/matrix.h"

namespace dicke {

/// Raised when the QL iteration exceeds its cap or the residual certificate
/// is not met.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, int iterations)
        : std::runtime_error(what), iterations_(iterations) {}
    int iterations() const { return iterations_; }

private:
    int iterations_;
};

/// Full spectrum of a real symmetric matrix. Eigenvalues ascending;
/// eigenvector k is column k (stored contiguously).
struct EigenDecomposition {
    std::size_t n = 0;
    std::vector<double> eigenvalues;
    std::vector<double> eigenvectors;  // column-major, n * n
    double max_residual = 0.0;
    double orthonormality_defect = 0.0;
    int iterations = 0;

    std::span<const double> eigenvector(std::size_t k) const {
        return {eigenvectors.data() + k * n, n};
    }
    double component(std::size_t k, std::size_t i) const { return eigenvectors[k * n + i]; }
};

inline constexpr double kDefaultEigenTol = 1e-8;

/// Householder tridiagonalization followed by implicit-shift QL.
///
/// The returned decomposition is certified: max_residual is recomputed from
/// the input matrix and must not exceed tol * max(1, max|entry|), otherwise
/// ConvergenceError is thrown. Non-symmetric input throws
/// std::invalid_argument. Within a numerically degenerate cluster the order
/// of eigenvectors is unspecified.
EigenDecomposition eigh(const SymMatrix& m, double tol = kDefaultEigenTol);

/// max_i ||m v_i - lambda_i v_i||_2, computed directly from m.
double residual(const SymMatrix& m, const EigenDecomposition& d);

/// max |V^T V - I| over all entries.
double orthonormality_defect(const EigenDecomposition& d);

}  // namespace dicke
