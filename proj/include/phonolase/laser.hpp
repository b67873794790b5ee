#pragma once

#include "phonolase/errors.hpp"

#include <cmath>
#include <limits>

namespace phonolase {

struct LaserInput {
    double gp12_abs = 0.0;
    double w1 = 0.0;
    double w2 = 0.0;
    double n_plus = 1.0;  // pump supermode density N₊
    double n_minus = 0.0; // idle supermode density N₋
};

struct PhononNumber {
    double value = 0.0;
    bool capped = false; // exponent exceeded the cap, value is exp(cap)
};

struct Threshold {
    double n_threshold = 0.0;
    double p_threshold = 0.0; // NaN when negative_frequency
    bool negative_frequency = false;
};

struct LaserOptions {
    double exponent_cap = 700.0;
    double kappa_gamma_warn = 10.0;
};

struct LaserResult {
    double detuning = 0.0; // W₁ − W₂ − ω_m
    double gain = 0.0;
    PhononNumber n_b;
    Threshold threshold;
    double kappa_over_gamma = 0.0;
    bool kappa_gamma_warning = false;
};

/// Lorentzian denominator (W₁ − W₂ − ω_m)² + (κ/2)².
inline double lorentz_denominator(double w1, double w2, double omega_m, double kappa) {
    const double detuning = w1 - w2 - omega_m;
    return detuning * detuning + 0.25 * kappa * kappa;
}

/// 𝒢 = |G_p12|² (N₊ − N₋) κ / [(W₁ − W₂ − ω_m)² + (κ/2)²]
inline double mechanical_gain(const LaserInput& in, double omega_m, double kappa) {
    const double delta_n = in.n_plus - in.n_minus;
    return in.gp12_abs * in.gp12_abs * delta_n * kappa / lorentz_denominator(in.w1, in.w2, omega_m, kappa);
}

/// n_b = exp[2(𝒢 − γ_m)/γ_m]
inline PhononNumber phonon_number(double gain, double gamma_m, double exponent_cap = 700.0) {
    const double exponent = 2.0 * (gain - gamma_m) / gamma_m;
    if (exponent > exponent_cap) return {std::exp(exponent_cap), true};
    return {std::exp(exponent), false};
}

/// Density and pump power at which 𝒢 = γ_m (N₋ = 0). Throws ZeroCoupling for
/// G_p12 = 0; W₁ ≤ 0 is flagged and leaves p_threshold NaN.
inline Threshold threshold(double gp12_abs, double w1, double w2, double omega_m, double kappa,
                           double gamma_m) {
    if (gp12_abs == 0.0) throw ZeroCoupling();
    const double g2 = gp12_abs * gp12_abs;
    const double lorentz = lorentz_denominator(w1, w2, omega_m, kappa);
    Threshold t;
    t.n_threshold = gamma_m * lorentz / (g2 * kappa);
    if (w1 > 0.0) {
        // P_th = N₊ κ W₁, equal to γ_m W₁ [(W₁−W₂−ω_m)² + (κ/2)²] / |G_p12|²
        t.p_threshold = t.n_threshold * kappa * w1;
    } else {
        t.negative_frequency = true;
        t.p_threshold = std::numeric_limits<double>::quiet_NaN();
    }
    return t;
}

inline LaserResult laser_working_point(const LaserInput& in, double omega_m, double kappa, double gamma_m,
                                       LaserOptions options = {}) {
    LaserResult r;
    r.detuning = in.w1 - in.w2 - omega_m;
    r.gain = mechanical_gain(in, omega_m, kappa);
    r.n_b = phonon_number(r.gain, gamma_m, options.exponent_cap);
    if (in.gp12_abs > 0.0) {
        r.threshold = threshold(in.gp12_abs, in.w1, in.w2, omega_m, kappa, gamma_m);
    } else {
        r.threshold.n_threshold = std::numeric_limits<double>::infinity();
        r.threshold.p_threshold = std::numeric_limits<double>::infinity();
    }
    r.kappa_over_gamma = kappa / gamma_m;
    r.kappa_gamma_warning = r.kappa_over_gamma < options.kappa_gamma_warn;
    return r;
}

} // namespace phonolase
