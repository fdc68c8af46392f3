#pragma once

#include "dicke/model.h"

namespace dicke {

/// Condensate amplitudes of the superradiant saddle point. Depends on g and g'
/// only through g + g'. lambda_z and u are not included (they enter only
/// critical_coupling). In the normal phase, superradiant is false and the
/// amplitudes are zero.
struct SaddlePoint {
    double mu = 1.0;
    double lambda_a = 0.0;
    double lambda_b = 0.0;
    double lambda_plus_sq = 0.0;
    double lambda_minus_sq = 0.0;
    bool superradiant = false;

    double lambda_a_sq() const { return lambda_a * lambda_a; }
    double lambda_b_sq() const { return lambda_b * lambda_b; }
};

SaddlePoint saddle_point(const ModelParams& params);

/// Constants of the quadratic phase/amplitude theory around the saddle point.
struct EffectiveTheory {
    SaddlePoint saddle;
    double E_H = 0.0;      // Higgs (inter-Landau-level) energy
    double D = 0.0;        // phase diffusion constant
    double D_minus = 0.0;  // amplitude stiffness
    double gamma = 0.0;    // +/- sector coupling
    double alpha = 0.0;    // lambda_+^2 - P_nearest, in (-1/2, 1/2]
    int P_nearest = 0;
};

/// Throws std::domain_error in the normal phase.
EffectiveTheory effective_theory(const ModelParams& params);

/// Splits x into (P, alpha) with x = P + alpha, alpha in (-1/2, 1/2].
struct BerryOffset {
    int P;
    double alpha;
};
BerryOffset berry_offset(double lambda_plus_sq);

/// Landau-level energy (l + 1/2) E_H + (D/2)(m + l - alpha)^2.
double landau_energy(const EffectiveTheory& theory, int l, int m);

struct AnalyticPredictions {
    double E_H = 0.0;
    double E_G = 0.0;
    double E_o = 0.0;
    double C_G = 0.0;
    double C_o = 0.0;
    double C_H = 0.0;
    double Q_M = 0.0;
    double Delta_PG = 0.0;
    double delta_crw = 0.0;
    double mean_photons = 0.0;  // lambda_a^2
};

/// Throws std::domain_error in the normal phase.
AnalyticPredictions predictions(const ModelParams& params);

/// Threshold on g + g': sqrt((omega_a - lambda_z)(omega_b - 2u)). Throws
/// std::domain_error when either factor is not positive.
double critical_coupling(const ModelParams& params);

/// D(g), the envelope through the tooth maxima of the exact Goldstone gap.
double goldstone_envelope(const ModelParams& params_template, double g);

}  // namespace dicke
