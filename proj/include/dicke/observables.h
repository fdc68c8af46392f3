#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "dicke/ed.h"

namespace dicke {

enum class LineRole { goldstone, optical, higgs, other };
enum class CorrelationKind { photon, number, anomalous };

std::string_view to_string(LineRole role);
std::string_view to_string(CorrelationKind kind);

struct SpectralLine {
    double excitation_energy = 0.0;
    double weight = 0.0;
    LineRole role = LineRole::other;
};

/// Lehmann lines of one imaginary-time correlator. Eigenstates whose
/// energies fall in one numerically degenerate cluster are merged into a
/// single line carrying the summed weight.
struct CorrelationSpectrum {
    CorrelationKind kind = CorrelationKind::photon;
    std::vector<SpectralLine> lines;
    int source_P = 0;
    int target_P = 0;

    double total_weight() const;
    /// Weight of the first line with the given role, or 0 if absent.
    double weight_of(LineRole role) const;
    /// Energy of the first line with the given role, or NaN if absent.
    double energy_of(LineRole role) const;
};

/// Relative width (in units of max(1, |E|max)) of a degenerate cluster.
inline constexpr double kDegeneracyTol = 1e-9;
/// Weights below this are reported as zero.
inline constexpr double kWeightFloor = 1e-12;

double mean_photon_number(const SectorSpectrum& ground);
double photon_number_variance(const SectorSpectrum& ground);

/// a^dag acting on the ground state of sector P, resolved on sector P + 1.
/// Line l = 0 is the Goldstone line and l = 1 the optical line.
CorrelationSpectrum photon_correlation(const SectorSpectrum& spec_p,
                                       const SectorSpectrum& spec_p1);

/// Connected n_a-n_a correlator within one sector; line l = 1 is the Higgs line.
/// Requires dim >= 2.
CorrelationSpectrum number_correlation(const SectorSpectrum& spec_p);

/// -1 + Var(n) / <n>; throws std::domain_error when <n> == 0.
double mandel_q(const SectorSpectrum& ground);

/// |sum_m <G|a|m><m|a|G>| = |<G|a a|G>| with G the lowest state of the two
/// blocks and m running over the opposite-parity eigenbasis.
double anomalous_weight(const FullSpectrum& full_even, const FullSpectrum& full_odd);

/// sum over lines of weight * exp(-energy * tau), per tau.
std::vector<double> evaluate_time_correlation(const CorrelationSpectrum& cs,
                                              std::span<const double> tau_values);

}  // namespace dicke
