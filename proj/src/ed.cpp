#include "dicke/ed.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "dicke/parallel.h"
#include "dicke/theory.h"

namespace dicke {

SectorSpectrum solve_sector(const ModelParams& params, int P, double tol) {
    const SymMatrix h = build_sector_hamiltonian(params, P);
    EigenDecomposition d = eigh(h, tol);

    SectorSpectrum out;
    out.P = P;
    out.n_atoms = params.n_atoms;
    out.energies = std::move(d.eigenvalues);
    out.amplitudes = std::move(d.eigenvectors);
    out.max_residual = d.max_residual;
    out.orthonormality_defect = d.orthonormality_defect;
    return out;
}

int default_p_max(const ModelParams& params_template, double g_max) {
    const SaddlePoint sp = saddle_point(params_template.with_g(g_max));
    return static_cast<int>(std::ceil(4.0 * sp.lambda_a_sq())) + params_template.n_atoms + 4;
}

GroundScanPoint ground_state_point(const ModelParams& params, int p_max, double tol,
                                   int max_retries) {
    if (p_max < 2) p_max = 2;
    for (int attempt = 0; attempt <= max_retries; ++attempt, p_max *= 2) {
        std::vector<SectorSpectrum> sectors;
        sectors.reserve(static_cast<std::size_t>(p_max) + 1);
        for (int P = 0; P <= p_max; ++P) sectors.push_back(solve_sector(params, P, tol));

        int p_star = 0;
        for (int P = 1; P <= p_max; ++P)
            if (sectors[P].energies[0] < sectors[p_star].energies[0] - kStaircaseTie) p_star = P;
        if (p_star > p_max - 2) continue;

        GroundScanPoint pt;
        pt.g = params.g;
        pt.p_star = p_star;
        pt.p_max = p_max;
        const SectorSpectrum& ground = sectors[p_star];
        const SectorSpectrum& next = sectors[p_star + 1];
        pt.ground_energy = ground.energies[0];
        pt.e_goldstone = next.energies[0] - ground.energies[0];
        if (ground.dim() >= 2) pt.e_higgs = ground.energies[1] - ground.energies[0];
        pt.e_optical = next.energies[1] - ground.energies[0];
        for (const auto& s : sectors) {
            pt.max_residual = std::max(pt.max_residual, s.max_residual);
            pt.orthonormality_defect = std::max(pt.orthonormality_defect, s.orthonormality_defect);
        }
        pt.ground_sector = ground;
        pt.next_sector = next;
        return pt;
    }
    throw ScanExhaustedError("ground_state_scan: ground sector still at the p_max boundary after " +
                             std::to_string(max_retries) + " retries (g = " +
                             std::to_string(params.g) + ")");
}

std::vector<GroundScanPoint> ground_state_scan(const ModelParams& params_template,
                                               std::span<const double> g_values,
                                               const ScanOptions& options) {
    params_template.validate();
    if (params_template.g_prime != 0.0)
        throw std::invalid_argument("ground_state_scan: requires g_prime == 0");
    if (g_values.empty()) return {};
    for (std::size_t i = 0; i < g_values.size(); ++i) {
        if (!(g_values[i] >= 0)) throw std::invalid_argument("ground_state_scan: g must be >= 0");
        if (i > 0 && g_values[i] < g_values[i - 1])
            throw std::invalid_argument("ground_state_scan: g_values must be ascending");
    }

    const int p_max = options.p_max.value_or(default_p_max(params_template, g_values.back()));
    std::vector<GroundScanPoint> out(g_values.size());
    parallel_for(g_values.size(), resolve_workers(options.threads), [&](std::size_t i) {
        out[i] = ground_state_point(params_template.with_g(g_values[i]), p_max, options.eigen_tol,
                                    options.max_retries);
    });
    return out;
}

FullSpectrum solve_full(const ModelParams& params, int n_max, int parity, double tol) {
    if (parity != 1 && parity != -1) throw std::invalid_argument("solve_full: parity must be +1 or -1");
    if (n_max < 1) throw std::invalid_argument("solve_full: n_max must be >= 1");

    const FullHamiltonian full = build_full_hamiltonian(params, n_max);
    const ParityBlocks blocks = parity_blocks(params.n_atoms, n_max);

    FullSpectrum out;
    out.parity = parity;
    out.n_max = n_max;
    out.basis = full.basis;
    out.indices = blocks.block(parity);

    EigenDecomposition d = eigh(full.matrix.submatrix(out.indices), tol);
    out.energies = std::move(d.eigenvalues);
    out.amplitudes = std::move(d.eigenvectors);
    out.max_residual = d.max_residual;
    out.orthonormality_defect = d.orthonormality_defect;
    return out;
}

namespace {

class LowLevelProbe {
public:
    LowLevelProbe(const ModelParams& params, int parity) : params_(params), parity_(parity) {}

    const std::vector<double>& lowest(int n_max) {
        auto it = cache_.find(n_max);
        if (it != cache_.end()) return it->second;
        FullSpectrum fs = solve_full(params_, n_max, parity_);
        fs.energies.resize(std::min<std::size_t>(3, fs.energies.size()));
        return cache_.emplace(n_max, std::move(fs.energies)).first->second;
    }

    bool converged(int n_max, double tol) {
        const auto a = lowest(n_max);
        const auto& b = lowest(n_max + kNmaxProbeStep);
        const std::size_t k = std::min(a.size(), b.size());
        for (std::size_t i = 0; i < k; ++i)
            if (!(std::abs(a[i] - b[i]) < tol)) return false;
        return true;
    }

private:
    ModelParams params_;
    int parity_;
    std::map<int, std::vector<double>> cache_;
};

}  // namespace

bool truncation_converged(const ModelParams& params, int parity, int n_max, double tol) {
    return LowLevelProbe(params, parity).converged(n_max, tol);
}

int auto_nmax(const ModelParams& params, int parity, double tol) {
    if (!(tol > 0)) throw std::invalid_argument("auto_nmax: tol must be positive");
    params.validate();
    LowLevelProbe probe(params, parity);

    if (probe.converged(kNmaxFloor, tol)) return kNmaxFloor;
    int lo = kNmaxFloor;  // not converged
    int hi = kNmaxFloor * 2;
    while (!probe.converged(hi, tol)) {
        lo = hi;
        hi *= 2;
        if (hi > kNmaxCap)
            throw TruncationError("auto_nmax: no convergence below n_max = " +
                                  std::to_string(kNmaxCap));
    }
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        if (probe.converged(mid, tol))
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

}  // namespace dicke
