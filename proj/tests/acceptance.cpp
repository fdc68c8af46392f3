// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "dicke/ed.h"
#include "dicke/eigen.h"
#include "dicke/observables.h"
#include "dicke/oracle.h"
#include "dicke/theory.h"
#include "support/random.h"

using namespace dicke;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// Worst certificates over every decomposition touched by criteria 1-9.
struct Hygiene {
    double residual = 0.0;
    double orthonormality = 0.0;
    std::size_t decompositions = 0;
    bool truncation_ok = true;
    int truncation_checks = 0;

    void add(double res, double orth) {
        residual = std::max(residual, res);
        orthonormality = std::max(orthonormality, orth);
        ++decompositions;
    }
    void add(const SectorSpectrum& s) { add(s.max_residual, s.orthonormality_defect); }
    void add(const FullSpectrum& s) { add(s.max_residual, s.orthonormality_defect); }
    void add(const EigenDecomposition& d) { add(d.max_residual, d.orthonormality_defect); }
    void add(const GroundScanPoint& p) {
        add(p.max_residual, p.orthonormality_defect);
    }
};

Hygiene hygiene;

ModelParams resonant(int n, double g, double g_prime = 0.0) {
    ModelParams p;
    p.n_atoms = n;
    p.g = g;
    p.g_prime = g_prime;
    return p;
}

std::vector<double> linspace(double a, double b, int count) {
    std::vector<double> v(count);
    for (int i = 0; i < count; ++i) v[i] = a + (b - a) * i / (count - 1);
    return v;
}

std::vector<GroundScanPoint> scan(int n_atoms, const std::vector<double>& x) {
    const ModelParams tmpl = resonant(n_atoms, 0.0);
    const double gc = critical_coupling(tmpl);
    std::vector<double> gs;
    for (double v : x) gs.push_back(v * gc);
    auto pts = ground_state_scan(tmpl, gs);
    for (const auto& p : pts) hygiene.add(p);
    return pts;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

std::string fmt(const char* f, double a, double b) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

std::string fmt(const char* f, double a, double b, double c) {
    char buf[192];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

Outcome jaynes_cummings() {
    const auto t0 = std::chrono::steady_clock::now();
    const double g = 0.7;
    double worst = 0.0;
    for (int P = 1; P <= 50; ++P) {
        const auto s = solve_sector(resonant(1, g), P);
        hygiene.add(s);
        worst = std::max(worst, std::abs(s.energies[0] - (P - 0.5 - g * std::sqrt(P))));
        worst = std::max(worst, std::abs(s.energies[1] - (P - 0.5 + g * std::sqrt(P))));
    }
    const double t = elapsed(t0);
    return {worst <= 1e-10 && t < 1.0, fmt("max |dE| = %.2e (tol 1e-10), %.3f s (limit 1 s)", worst, t)};
}

Outcome oracle_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(2024);
    double worst = 0.0;
    for (int n = 1; n <= 3; ++n) {
        for (int draw = 0; draw < 10; ++draw) {
            const ModelParams p = testing::random_params(n, rng, true);
            const int n_max = 1 + draw % 6;
            const auto ref = eigh(oracle::symmetric_hamiltonian(p, n_max));
            const auto ed = eigh(build_full_hamiltonian(p, n_max).matrix);
            hygiene.add(ref);
            hygiene.add(ed);
            for (std::size_t i = 0; i < ed.eigenvalues.size(); ++i)
                worst = std::max(worst, std::abs(ref.eigenvalues[i] - ed.eigenvalues[i]));
        }
    }
    const double t = elapsed(t0);
    return {worst <= 1e-10 && t < 30.0,
            fmt("30 draws, max |dE| = %.2e (tol 1e-10), %.3f s (limit 30 s)", worst, t)};
}

Outcome sum_rules() {
    double photon = 0.0, number = 0.0;
    int points = 0;
    for (int n = 1; n <= 5; ++n) {
        for (const auto& pt : scan(n, {1.5, 2.0, 3.0})) {
            const auto& G = pt.ground_sector;
            const double mean = mean_photon_number(G);
            photon = std::max(photon, std::abs(photon_correlation(G, pt.next_sector).total_weight() - (mean + 1.0)));
            if (G.dim() >= 2)
                number = std::max(number, std::abs(number_correlation(G).total_weight() - photon_number_variance(G)));
            ++points;
        }
    }
    return {photon <= 1e-8 && number <= 1e-8,
            fmt("%g points, photon %.2e, number %.2e (tol 1e-8)", points, photon, number)};
}

const std::vector<double>& n3_grid() {
    static const std::vector<double> x = linspace(2.0, 3.0, 101);
    return x;
}

const std::vector<GroundScanPoint>& n3_points() {
    static const std::vector<GroundScanPoint> pts = scan(3, n3_grid());
    return pts;
}

Outcome higgs_agreement() {
    const auto& x = n3_grid();
    const auto& pts = n3_points();
    double lower = 0.0, upper = 0.0, worst = 0.0;
    int masked = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (pts[i].p_star < 3 || !pts[i].e_higgs) {
            ++masked;
            continue;
        }
        const double an = predictions(resonant(3, pts[i].g)).E_H;
        const double dev = std::abs(*pts[i].e_higgs - an) / an;
        worst = std::max(worst, dev);
        (x[i] < 2.5 ? lower : upper) = std::max(x[i] < 2.5 ? lower : upper, dev);
    }
    return {worst <= 0.10 && upper < lower,
            fmt("max dev %.4f (tol 0.10); max on [2,2.5) %.4f vs [2.5,3] %.4f (must shrink)", worst, lower, upper) +
                (masked ? fmt(", %g rows masked", masked) : "")};
}

Outcome goldstone_envelope_check() {
    const auto x = linspace(2.0, 3.0, 501);
    const auto pts = scan(5, x);
    // A tooth is a run of constant P*; its peak sits just before the jump, so
    // only runs that end in a jump inside the grid are complete.
    double worst = 0.0;
    int teeth = 0;
    std::size_t start = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].p_star == pts[start].p_star) continue;
        std::size_t peak = start;
        for (std::size_t k = start; k < i; ++k)
            if (pts[k].e_goldstone > pts[peak].e_goldstone) peak = k;
        const double d = goldstone_envelope(resonant(5, 0.0), pts[peak].g);
        worst = std::max(worst, std::abs(pts[peak].e_goldstone - d) / d);
        ++teeth;
        start = i;
    }
    return {teeth > 0 && worst <= 0.15, fmt("%g complete teeth, max |E_G peak - D| / D = %.4f (tol 0.15)", teeth, worst)};
}

Outcome optical_relation() {
    const auto& pts = n3_points();
    double worst = 0.0;
    int rows = 0;
    for (const auto& pt : pts) {
        if (pt.p_star < 3) continue;
        const auto an = predictions(resonant(3, pt.g));
        worst = std::max(worst, std::abs(pt.e_optical - (an.E_H + an.E_G)) / pt.e_optical);
        ++rows;
    }
    return {rows > 0 && worst <= 0.05, fmt("%g rows with P* >= 3, max dev %.4f (tol 0.05)", rows, worst)};
}

Outcome weights() {
    const auto& pts = n3_points();
    double cg = 0.0, co = 0.0, ch = 0.0, qm = 0.0;
    double q_lo = 0.0, q_hi = -1.0;
    bool q_in_range = true;
    for (const auto& pt : pts) {
        const auto an = predictions(resonant(3, pt.g));
        const auto& G = pt.ground_sector;
        const auto pc = photon_correlation(G, pt.next_sector);
        cg = std::max(cg, std::abs(pc.weight_of(LineRole::goldstone) - an.C_G) / an.C_G);
        co = std::max(co, std::abs(pc.weight_of(LineRole::optical) - an.C_o) / an.C_o);
        ch = std::max(ch, std::abs(number_correlation(G).weight_of(LineRole::higgs) - an.C_H) / an.C_H);
        const double q = mandel_q(G);
        qm = std::max(qm, std::abs(q - an.Q_M));
        q_lo = std::min(q_lo, q);
        q_hi = std::max(q_hi, q);
        q_in_range = q_in_range && q > -1.0 && q < -0.5;
    }
    const bool pass = cg <= 0.15 && co <= 0.15 && ch <= 0.10 && qm <= 0.05 && q_in_range;
    return {pass, fmt("C_G %.4f (0.15), C_o %.4f (0.15), C_H %.4f (0.10)", cg, co, ch) +
                      fmt(", |dQ_M| %.4f (0.05), Q_M in [%.4f, %.4f] within (-1, -1/2)", qm, q_lo, q_hi)};
}

Outcome staircase() {
    const auto pts = scan(5, linspace(0.5, 3.0, 500));
    bool monotone = true;
    int jumps = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        const int step = pts[i].p_star - pts[i - 1].p_star;
        if (step != 0 && step != 1) monotone = false;
        jumps += step;
    }
    const ModelParams p = resonant(5, 3.0 * critical_coupling(resonant(5, 0.0)));
    const auto deep = ground_state_point(p, default_p_max(p, p.g));
    hygiene.add(deep);
    const double ratio = deep.e_higgs ? *deep.e_higgs / deep.e_goldstone : 0.0;
    return {monotone && ratio >= 2.5,
            fmt("%g jumps, every step 0 or +1: ", jumps) + (monotone ? "yes" : "no") +
                fmt("; Landau ratio at 3 g_c = %.2f (>= 2.5)", ratio)};
}

Outcome crw_scaling() {
    const ModelParams base = resonant(2, 2.0 * critical_coupling(resonant(2, 0.0)));
    auto weight = [&](double g_prime) {
        ModelParams p = base;
        p.g_prime = g_prime;
        const int n_max = std::max(auto_nmax(p, 1), auto_nmax(p, -1));
        for (int parity : {1, -1}) {
            hygiene.truncation_ok = hygiene.truncation_ok && truncation_converged(p, parity, n_max, kDefaultTruncationTol);
            ++hygiene.truncation_checks;
        }
        const auto even = solve_full(p, n_max, 1);
        const auto odd = solve_full(p, n_max, -1);
        hygiene.add(even);
        hygiene.add(odd);
        return anomalous_weight(even, odd);
    };

    const std::vector<double> ratios{0.02, 0.04, 0.06, 0.08, 0.10};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double r : ratios) {
        const double lx = std::log(r * base.g), ly = std::log(weight(r * base.g));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(ratios.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double at_zero = weight(0.0);

    // Cross-parity entries of the full Hamiltonian must be exactly zero.
    ModelParams crw = base;
    crw.g_prime = 0.1 * base.g;
    const auto h = build_full_hamiltonian(crw, 12);
    double cross = 0.0;
    for (std::size_t i = 0; i < h.basis.size(); ++i)
        for (std::size_t k = 0; k < h.basis.size(); ++k)
            if (h.basis.parity(i) != h.basis.parity(k)) cross = std::max(cross, std::abs(h.matrix(i, k)));

    const bool pass = std::abs(slope - 2.0) <= 0.3 && at_zero == 0.0 && cross == 0.0;
    return {pass, fmt("log-log slope %.3f (2 +- 0.3), weight at g'=0: %g, max cross-parity |H| %g", slope, at_zero, cross)};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "Jaynes-Cummings exactness", jaynes_cummings},
        {2, "oracle equivalence", oracle_equivalence},
        {3, "sum rules", sum_rules},
        {4, "Higgs agreement", higgs_agreement},
        {5, "Goldstone envelope", goldstone_envelope_check},
        {6, "optical relation", optical_relation},
        {7, "weights and Mandel Q", weights},
        {8, "staircase", staircase},
        {9, "counter-rotating scaling", crw_scaling},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failures;
        std::printf("criterion %d %s: %s | %s\n", c.id, o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str());
    }

    const bool clean = hygiene.residual <= 1e-8 && hygiene.orthonormality <= 1e-10 && hygiene.truncation_ok;
    if (!clean) ++failures;
    std::printf("criterion 10 %s: numerical hygiene | %zu decompositions, max residual %.2e (1e-8), "
                "max orthonormality defect %.2e (1e-10), %d truncation checks %s\n",
                clean ? "PASS" : "FAIL", hygiene.decompositions, hygiene.residual, hygiene.orthonormality,
                hygiene.truncation_checks, hygiene.truncation_ok ? "converged" : "NOT converged");

    std::printf("%d of 10 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
