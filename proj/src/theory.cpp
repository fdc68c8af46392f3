#include "dicke/theory.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dicke {

SaddlePoint saddle_point(const ModelParams& params) {
    params.validate();
    SaddlePoint sp;
    const double gt = params.g + params.g_prime;
    const double wa = params.omega_a;
    const double wb = params.omega_b;
    const double j = params.j();

    if (gt * gt <= wa * wb) {
        sp.mu = gt > 0 ? std::min(1.0, wa * wb / (gt * gt)) : 1.0;
        return sp;
    }
    sp.superradiant = true;
    sp.mu = wa * wb / (gt * gt);
    sp.lambda_a = (gt / wa) * std::sqrt(0.5 * j * (1.0 - sp.mu * sp.mu));
    sp.lambda_b = std::sqrt(j * (1.0 - sp.mu));
    sp.lambda_plus_sq = sp.lambda_a_sq() + sp.lambda_b_sq();
    sp.lambda_minus_sq = sp.lambda_a_sq() - sp.lambda_b_sq();
    return sp;
}

BerryOffset berry_offset(double lambda_plus_sq) {
    // ceil(x - 1/2) puts exact half-integers at alpha = +1/2.
    const double P = std::ceil(lambda_plus_sq - 0.5);
    return {static_cast<int>(P), lambda_plus_sq - P};
}

EffectiveTheory effective_theory(const ModelParams& params) {
    EffectiveTheory t;
    t.saddle = saddle_point(params);
    if (!t.saddle.superradiant)
        throw std::domain_error("effective_theory: parameters are in the normal phase");

    const double gt = params.g + params.g_prime;
    const double wa = params.omega_a;
    const double wb = params.omega_b;
    const double N = params.n_atoms;
    const double la2 = t.saddle.lambda_a_sq();

    const double eh2 = (wa + wb) * (wa + wb) + 4.0 * gt * gt * la2 / N;
    t.E_H = std::sqrt(eh2);
    t.D = 2.0 * wa * gt * gt / (eh2 * N);
    t.D_minus = eh2 / (16.0 * la2 * wa);
    t.gamma = (wa * wa / eh2) * (1.0 - std::pow(gt / wa, 4));

    const auto [P, alpha] = berry_offset(t.saddle.lambda_plus_sq);
    t.P_nearest = P;
    t.alpha = alpha;
    return t;
}

double landau_energy(const EffectiveTheory& theory, int l, int m) {
    if (l < 0) throw std::invalid_argument("landau_energy: l must be >= 0");
    const double x = m + l - theory.alpha;
    return (l + 0.5) * theory.E_H + 0.5 * theory.D * x * x;
}

AnalyticPredictions predictions(const ModelParams& params) {
    const EffectiveTheory t = effective_theory(params);
    const double wa = params.omega_a;
    const double wb = params.omega_b;
    const double gt = params.g + params.g_prime;
    const double la2 = t.saddle.lambda_a_sq();

    AnalyticPredictions p;
    p.E_H = t.E_H;
    p.mean_photons = la2;
    p.E_G = t.D * (0.5 - t.alpha);
    p.E_o = p.E_H + p.E_G;
    const double r = (wa + wb) / t.E_H + 1.0;
    p.C_o = wa / (4.0 * t.E_H) * r * r;
    p.C_G = la2 - p.C_o + (1.0 - 0.5 * t.gamma * t.alpha);
    p.C_H = wa * la2 / t.E_H;
    p.Q_M = -1.0 + wa / t.E_H;

    if (params.g_prime > 0) {
        const double frac = params.g_prime / gt;
        const double gc2 = wa * wb;  // g_c^4 = (omega_a omega_b)^2
        p.Delta_PG = 4.0 / (t.E_H * t.E_H) * frac * (std::pow(gt, 4) - gc2 * gc2);
        p.delta_crw = 2.0 * wa * la2 * frac / t.D;
    }
    return p;
}

double critical_coupling(const ModelParams& params) {
    params.validate();
    const double photon = params.omega_a - params.lambda_z;
    const double atom = params.omega_b - 2.0 * params.u;
    if (!(photon > 0) || !(atom > 0))
        throw std::domain_error(
            "critical_coupling: requires omega_a > lambda_z and omega_b > 2u");
    return std::sqrt(photon * atom);
}

double goldstone_envelope(const ModelParams& params_template, double g) {
    return effective_theory(params_template.with_g(g)).D;
}

}  // namespace dicke
