#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "dicke/eigen.h"
#include "dicke/model.h"

namespace dicke {

/// Spectrum of one conserved-excitation block. amplitude(l, s) is the
/// component of eigenstate l on SectorBasis state s.
struct SectorSpectrum {
    int P = 0;
    int n_atoms = 1;
    std::vector<double> energies;
    std::vector<double> amplitudes;  // dim * dim, eigenvector l contiguous
    double max_residual = 0.0;
    double orthonormality_defect = 0.0;

    int dim() const { return static_cast<int>(energies.size()); }
    double amplitude(int l, int s) const {
        return amplitudes[static_cast<std::size_t>(l) * energies.size() + s];
    }
    int photons(int s) const { return P - s; }
};

SectorSpectrum solve_sector(const ModelParams& params, int P, double tol = kDefaultEigenTol);

/// Per-coupling record of the ground-state staircase.
struct GroundScanPoint {
    double g = 0.0;
    int p_star = 0;
    double ground_energy = 0.0;
    double e_goldstone = 0.0;            // E^{P*+1}_0 - E^{P*}_0
    std::optional<double> e_higgs;       // E^{P*}_1 - E^{P*}_0, absent when dim == 1
    double e_optical = 0.0;              // E^{P*+1}_1 - E^{P*}_0
    int p_max = 0;                       // highest sector solved
    double max_residual = 0.0;           // worst over all sectors solved
    double orthonormality_defect = 0.0;  // worst over all sectors solved
    SectorSpectrum ground_sector;        // sector P*
    SectorSpectrum next_sector;          // sector P* + 1
};

class ScanExhaustedError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ScanOptions {
    std::optional<int> p_max;  // default: default_p_max(...)
    double eigen_tol = kDefaultEigenTol;
    int threads = 0;           // 0: resolve_workers()
    int max_retries = 8;       // p_max doublings per point
};

/// ceil(4 lambda_a^2(g_max)) + N + 4.
int default_p_max(const ModelParams& params_template, double g_max);

/// Energies within this absolute distance count as a tie; the smaller P wins.
inline constexpr double kStaircaseTie = 1e-12;

/// Solves one coupling: sectors 0..p_max, raising p_max until it exceeds P*
/// by at least 2.
GroundScanPoint ground_state_point(const ModelParams& params, int p_max,
                                   double tol = kDefaultEigenTol, int max_retries = 8);

/// Grid points run on a worker pool; output order equals input order.
/// g_values must be ascending and non-negative; params_template.g_prime must be 0.
std::vector<GroundScanPoint> ground_state_scan(const ModelParams& params_template,
                                               std::span<const double> g_values,
                                               const ScanOptions& options = {});

/// One parity block of the truncated full basis (valid for any g').
struct FullSpectrum {
    int parity = 1;
    int n_max = 0;
    FullBasis basis{1, 0};
    std::vector<std::size_t> indices;  // FullBasis indices spanned by the block
    std::vector<double> energies;
    std::vector<double> amplitudes;    // eigenvector l contiguous, length indices.size()
    double max_residual = 0.0;
    double orthonormality_defect = 0.0;

    std::size_t dim() const { return indices.size(); }
    std::span<const double> eigenvector(std::size_t l) const {
        return {amplitudes.data() + l * indices.size(), indices.size()};
    }
};

FullSpectrum solve_full(const ModelParams& params, int n_max, int parity,
                        double tol = kDefaultEigenTol);

inline constexpr int kNmaxFloor = 1;
inline constexpr int kNmaxCap = 4096;
inline constexpr int kNmaxProbeStep = 10;
inline constexpr double kDefaultTruncationTol = 1e-8;

class TruncationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// True when the lowest three energies of the parity block move by less than
/// tol between n_max and n_max + 10.
bool truncation_converged(const ModelParams& params, int parity, int n_max, double tol);

/// Smallest converged n_max from a doubling-then-bisect search starting at
/// kNmaxFloor. Throws TruncationError past kNmaxCap.
int auto_nmax(const ModelParams& params, int parity, double tol = kDefaultTruncationTol);

}  // namespace dicke
