#pragma once

#include "phonolase/errors.hpp"
#include "phonolase/model.hpp"

#include <cmath>
#include <complex>

namespace phonolase {

using complex = std::complex<double>;

/// Coefficients of the Hamiltonian after each cavity has been squeezed on its
/// own (a_j = cosh r_dj a_sj − e^{−iΦ_dj} sinh r_dj a_sj†):
///
///   H = Σ ω_sj a_sj†a_sj − g_s2 a_s2†a_s2 (b†+b) + g_p2 (e^{−iΦ_d2} a_s2†² + h.c.)(b†+b)
///       + J (λ₁ a_s1 a_s2† − λ₂ a_s1 a_s2 + h.c.) − F (b†+b) + C
struct Stage1Result {
    double r_d1 = 0.0;
    double r_d2 = 0.0;
    double omega_s1 = 0.0; // signed: carries sign(Δ_1)
    double omega_s2 = 0.0;
    double g_s2 = 0.0;
    double g_p2 = 0.0;
    complex lam1{1.0, 0.0};
    complex lam2{0.0, 0.0};
    double f_disp = 0.0;
    double c_const = 0.0;
};

/// r_d = (1/4) ln[(Δ + 2Λ)/(Δ − 2Λ)]; requires |Δ| > 2Λ.
inline double squeeze_param(double delta, double lambda_amp) {
    if (!(std::abs(delta) > 2.0 * lambda_amp) || !std::isfinite(delta) || !std::isfinite(lambda_amp))
        throw Stage1Unstable(0);
    return 0.25 * std::log((delta + 2.0 * lambda_amp) / (delta - 2.0 * lambda_amp));
}

inline Stage1Result stage1_transform(const ValidatedParams& params) {
    const PhysicalParams& p = params.raw();
    Stage1Result s;
    try {
        s.r_d1 = squeeze_param(p.delta1, p.lambda1);
    } catch (const Stage1Unstable&) {
        throw Stage1Unstable(1);
    }
    try {
        s.r_d2 = squeeze_param(p.delta2, p.lambda2);
    } catch (const Stage1Unstable&) {
        throw Stage1Unstable(2);
    }

    s.omega_s1 = (p.delta1 - 2.0 * p.lambda1) * std::exp(2.0 * s.r_d1);
    s.omega_s2 = (p.delta2 - 2.0 * p.lambda2) * std::exp(2.0 * s.r_d2);

    const double c1 = std::cosh(s.r_d1), s1 = std::sinh(s.r_d1);
    const double c2 = std::cosh(s.r_d2), s2 = std::sinh(s.r_d2);

    // hyperbolic forms stay correct for Δ_2 < 0, the algebraic ones need sign(Δ_2)
    s.g_s2 = p.g0 * std::cosh(2.0 * s.r_d2);
    s.g_p2 = p.g0 * c2 * s2;

    s.lam1 = c1 * c2 + s1 * s2 * std::polar(1.0, p.phi_d1 - p.phi_d2);
    s.lam2 = c1 * s2 * std::polar(1.0, p.phi_d2) + s1 * c2 * std::polar(1.0, p.phi_d1);

    s.f_disp = p.g0 * s2 * s2;
    s.c_const = p.delta1 * s1 * s1 - 2.0 * p.lambda1 * c1 * s1
              + p.delta2 * s2 * s2 - 2.0 * p.lambda2 * c2 * s2;
    return s;
}

} // namespace phonolase
