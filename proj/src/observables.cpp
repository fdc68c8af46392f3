#include "dicke/observables.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dicke {

std::string_view to_string(LineRole role) {
    switch (role) {
        case LineRole::goldstone: return "goldstone";
        case LineRole::optical: return "optical";
        case LineRole::higgs: return "higgs";
        case LineRole::other: return "other";
    }
    return "other";
}

std::string_view to_string(CorrelationKind kind) {
    switch (kind) {
        case CorrelationKind::photon: return "photon";
        case CorrelationKind::number: return "number";
        case CorrelationKind::anomalous: return "anomalous";
    }
    return "photon";
}

double CorrelationSpectrum::total_weight() const {
    double w = 0.0;
    for (const auto& line : lines) w += line.weight;
    return w;
}

double CorrelationSpectrum::weight_of(LineRole role) const {
    for (const auto& line : lines)
        if (line.role == role) return line.weight;
    return 0.0;
}

double CorrelationSpectrum::energy_of(LineRole role) const {
    for (const auto& line : lines)
        if (line.role == role) return line.excitation_energy;
    return std::numeric_limits<double>::quiet_NaN();
}

namespace {

struct RawLine {
    double energy;
    double amplitude;
    LineRole role;
};

// Merges consecutive (ascending) lines closer than the degeneracy tolerance.
std::vector<SpectralLine> merge_clusters(const std::vector<RawLine>& raw, double scale) {
    std::vector<SpectralLine> out;
    const double width = kDegeneracyTol * std::max(1.0, scale);
    double cluster_start = 0.0;
    for (const auto& r : raw) {
        const double w = r.amplitude * r.amplitude;
        if (!out.empty() && r.energy - cluster_start < width) {
            out.back().weight += w;
        } else {
            out.push_back({r.energy, w, r.role});
            cluster_start = r.energy;
        }
    }
    return out;
}

double energy_scale(const std::vector<double>& energies) {
    double s = 0.0;
    for (double e : energies) s = std::max(s, std::abs(e));
    return s;
}

}  // namespace

double mean_photon_number(const SectorSpectrum& ground) {
    double n = 0.0;
    for (int s = 0; s < ground.dim(); ++s) {
        const double a = ground.amplitude(0, s);
        n += a * a * ground.photons(s);
    }
    return n;
}

double photon_number_variance(const SectorSpectrum& ground) {
    double n = 0.0, n2 = 0.0;
    for (int s = 0; s < ground.dim(); ++s) {
        const double a2 = ground.amplitude(0, s) * ground.amplitude(0, s);
        const double k = ground.photons(s);
        n += a2 * k;
        n2 += a2 * k * k;
    }
    return n2 - n * n;
}

CorrelationSpectrum photon_correlation(const SectorSpectrum& spec_p, const SectorSpectrum& spec_p1) {
    if (spec_p1.P != spec_p.P + 1 || spec_p1.n_atoms != spec_p.n_atoms)
        throw std::invalid_argument("photon_correlation: sectors must be P and P + 1 of the same model");

    const int P = spec_p.P;
    const double e0 = spec_p.energies[0];
    std::vector<RawLine> raw;
    raw.reserve(spec_p1.energies.size());
    for (int l = 0; l < spec_p1.dim(); ++l) {
        // a^dag |s, P-s> = sqrt(P+1-s) |s, P+1-s>: same spin label s.
        double amp = 0.0;
        for (int s = 0; s < spec_p.dim(); ++s)
            amp += spec_p1.amplitude(l, s) * spec_p.amplitude(0, s) * std::sqrt(P + 1.0 - s);
        const LineRole role = l == 0 ? LineRole::goldstone : l == 1 ? LineRole::optical : LineRole::other;
        raw.push_back({spec_p1.energies[l] - e0, amp, role});
    }

    CorrelationSpectrum cs;
    cs.kind = CorrelationKind::photon;
    cs.source_P = P;
    cs.target_P = P + 1;
    cs.lines = merge_clusters(raw, std::max(energy_scale(spec_p.energies), energy_scale(spec_p1.energies)));
    return cs;
}

CorrelationSpectrum number_correlation(const SectorSpectrum& spec_p) {
    if (spec_p.dim() < 2)
        throw std::invalid_argument("number_correlation: sector dimension must be >= 2");

    const double e0 = spec_p.energies[0];
    std::vector<RawLine> raw;
    for (int l = 1; l < spec_p.dim(); ++l) {
        double amp = 0.0;
        for (int s = 0; s < spec_p.dim(); ++s)
            amp += spec_p.amplitude(l, s) * spec_p.amplitude(0, s) * spec_p.photons(s);
        raw.push_back({spec_p.energies[l] - e0, amp, l == 1 ? LineRole::higgs : LineRole::other});
    }

    CorrelationSpectrum cs;
    cs.kind = CorrelationKind::number;
    cs.source_P = spec_p.P;
    cs.target_P = spec_p.P;
    cs.lines = merge_clusters(raw, energy_scale(spec_p.energies));
    return cs;
}

double mandel_q(const SectorSpectrum& ground) {
    const double mean = mean_photon_number(ground);
    if (!(mean > 0))
        throw std::domain_error("mandel_q: mean photon number is zero (vacuum sector)");
    return -1.0 + photon_number_variance(ground) / mean;
}

double anomalous_weight(const FullSpectrum& full_even, const FullSpectrum& full_odd) {
    if (full_even.parity != 1 || full_odd.parity != -1 || full_even.n_max != full_odd.n_max ||
        full_even.basis.n_atoms != full_odd.basis.n_atoms)
        throw std::invalid_argument("anomalous_weight: need even and odd blocks of the same truncated basis");
    if (full_even.energies.empty() || full_odd.energies.empty())
        throw std::invalid_argument("anomalous_weight: empty parity block");

    const bool even_ground = full_even.energies[0] <= full_odd.energies[0] + 1e-12;
    const FullSpectrum& gblock = even_ground ? full_even : full_odd;
    const FullSpectrum& other = even_ground ? full_odd : full_even;
    const FullBasis& basis = gblock.basis;

    std::vector<double> ground(basis.size(), 0.0);
    const auto gv = gblock.eigenvector(0);
    for (std::size_t i = 0; i < gblock.dim(); ++i) ground[gblock.indices[i]] = gv[i];

    // a|G> and a^dag|G> on the truncated basis.
    std::vector<double> lowered(basis.size(), 0.0), raised(basis.size(), 0.0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        if (ground[i] == 0.0) continue;
        const int n = basis.photons(i);
        const int s = basis.spin(i);
        if (n > 0) lowered[basis.index(n - 1, s)] += std::sqrt(static_cast<double>(n)) * ground[i];
        if (n < basis.n_max) raised[basis.index(n + 1, s)] += std::sqrt(n + 1.0) * ground[i];
    }

    double total = 0.0;
    for (std::size_t m = 0; m < other.dim(); ++m) {
        const auto v = other.eigenvector(m);
        double m_a_g = 0.0;  // <m|a|G>
        double g_a_m = 0.0;  // <G|a|m> = <m|a^dag|G>
        for (std::size_t i = 0; i < other.dim(); ++i) {
            m_a_g += v[i] * lowered[other.indices[i]];
            g_a_m += v[i] * raised[other.indices[i]];
        }
        total += g_a_m * m_a_g;
    }
    return std::abs(total);
}

std::vector<double> evaluate_time_correlation(const CorrelationSpectrum& cs,
                                              std::span<const double> tau_values) {
    std::vector<double> out;
    out.reserve(tau_values.size());
    for (double tau : tau_values) {
        if (!(tau >= 0)) throw std::invalid_argument("evaluate_time_correlation: tau must be >= 0");
        double v = 0.0;
        for (const auto& line : cs.lines) v += line.weight * std::exp(-line.excitation_energy * tau);
        out.push_back(v);
    }
    return out;
}

}  // namespace dicke
