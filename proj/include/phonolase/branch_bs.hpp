#pragma once

#include "phonolase/model.hpp"
#include "phonolase/stage1.hpp"
#include "phonolase/validity.hpp"

#include <cmath>
#include <complex>

namespace phonolase {

/// Effective couplings once the coherent term λ₁ is diagonalised (f₁ ≪ 1) by
///
///   a_s1 = cos(θ/2) A₁ + e^{−iΦ} sin(θ/2) A₂,  a_s2 = cos(θ/2) A₂ − e^{iΦ} sin(θ/2) A₁
///
/// with J' = 2Jλ₁ and Φ = arg J'. Per unit (b†+b):
///
///   −Σ G_j A_j†A_j + Σ_{j≤k} (G_jk A_j A_k + h.c.) + (G_p12 A₁†A₂ + h.c.) − F
struct BsCouplings {
    double theta = 0.0;
    double phi_big = 0.0;
    double j_prime_abs = 0.0;
    double w1 = 0.0;
    double w2 = 0.0;
    double g1 = 0.0;
    double g2 = 0.0;
    complex g11{};
    complex g22{};
    complex g12{};
    complex gp12{};
};

/// θ = arctan(|J'| / (ω_s2 − ω_s1)) kept in (−π/2, π/2] so that A₁ always
/// connects to a_s1 as J' → 0; θ = π/2 on exact degeneracy.
inline double mixing_angle(double j_prime_abs, double omega_s1, double omega_s2) {
    const double split = omega_s2 - omega_s1;
    // arctan(|J'|/split) without the division; for split < 0 this is
    // atan2(|J'|, split) − π, written so small |J'| keeps full precision
    if (split < 0.0) return -std::atan2(j_prime_abs, -split);
    return std::atan2(j_prime_abs, split);
}

inline BsCouplings bs_couplings(const Stage1Result& s, const ValidatedParams& params) {
    const PhysicalParams& p = params.raw();
    const complex j_prime = 2.0 * p.j_hop * s.lam1;

    BsCouplings c;
    c.j_prime_abs = std::abs(j_prime);
    c.phi_big = std::arg(j_prime);
    c.theta = mixing_angle(c.j_prime_abs, s.omega_s1, s.omega_s2);

    const double ch = std::cos(0.5 * c.theta), sh = std::sin(0.5 * c.theta);
    const double ch2 = ch * ch, sh2 = sh * sh;
    const double sin_t = std::sin(c.theta);
    const double cosh2rd = std::cosh(2.0 * s.r_d2);
    const double sinh2rd = std::sinh(2.0 * s.r_d2);
    const double half_g0 = 0.5 * p.g0;
    const double phi = c.phi_big;
    const double phi_d2 = p.phi_d2;

    c.w1 = s.omega_s1 * ch2 + s.omega_s2 * sh2 - 0.5 * c.j_prime_abs * sin_t;
    c.w2 = s.omega_s2 * ch2 + s.omega_s1 * sh2 + 0.5 * c.j_prime_abs * sin_t;

    c.g1 = p.g0 * cosh2rd * sh2;
    c.g2 = p.g0 * cosh2rd * ch2;
    c.g12 = -half_g0 * sinh2rd * sin_t * std::polar(1.0, phi_d2 + phi);
    c.g11 = half_g0 * sinh2rd * sh2 * std::polar(1.0, 2.0 * phi + phi_d2);
    c.g22 = half_g0 * sinh2rd * ch2 * std::polar(1.0, phi_d2);
    c.gp12 = half_g0 * cosh2rd * sin_t * std::polar(1.0, -phi);
    return c;
}

/// Same ratio table as the two-mode-squeezing branch; here G_p12 against
/// W₁ − W₂ − ω_m is the kept laser interaction and G_j/ω_m compete.
inline ValidityReport rwa_validity_bs(const BsCouplings& c, double omega_m,
                                      ValidityOptions options = {}) {
    ValidityReport report;
    report.options = options;
    detail::add_sideband_entry(report, "G11", "2*W1 +- omega_m", std::abs(c.g11), 2.0 * c.w1, omega_m);
    detail::add_sideband_entry(report, "G22", "2*W2 +- omega_m", std::abs(c.g22), 2.0 * c.w2, omega_m);
    detail::add_sideband_entry(report, "G12", "W1 + W2 +- omega_m", std::abs(c.g12), c.w1 + c.w2, omega_m);
    detail::add_sideband_entry(report, "Gp12", "W1 - W2 +- omega_m", std::abs(c.gp12), c.w1 - c.w2, omega_m,
                               false);
    detail::add_scale_entry(report, "G1", c.g1, omega_m, true);
    detail::add_scale_entry(report, "G2", c.g2, omega_m, true);
    return report;
}

/// W₁ − W₂ − ω_m, the detuning that enters the mechanical gain.
inline double laser_detuning(const BsCouplings& c, double omega_m) { return c.w1 - c.w2 - omega_m; }

} // namespace phonolase
