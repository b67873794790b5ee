#pragma once

#include "phonolase/errors.hpp"
#include "phonolase/model.hpp"
#include "phonolase/stage1.hpp"
#include "phonolase/validity.hpp"

#include <cmath>
#include <complex>

namespace phonolase {

/// Effective couplings once the two-mode squeezing term λ₂ is diagonalised
/// (f₁ ≫ 1). The Hamiltonian, per unit (b†+b), reads
///
///   −Σ G_j A_j†A_j + Σ_{j≤k} (G_jk A_j A_k + h.c.) − (G_p12 A₁†A₂ + h.c.) − (F + F')
///
/// The supermodes come from a_sj = cosh r A_j + e^{−iΦ} sinh r A_k† with
/// Φ = arg J', J' = 2Jλ₂, r ≥ 0.
struct TmsCouplings {
    double r = 0.0;
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
    double f_prime = 0.0;
    double c_prime = 0.0;
    double eta = 0.0; // G₁/G₂ = tanh² r
};

inline TmsCouplings tms_couplings(const Stage1Result& s, const ValidatedParams& params) {
    const PhysicalParams& p = params.raw();
    const complex j_prime = 2.0 * p.j_hop * s.lam2;
    const double jabs = std::abs(j_prime);
    const double sum = s.omega_s1 + s.omega_s2;
    if (!(sum > jabs))
        throw TmsUnstable("two-mode squeezing needs omega_s1 + omega_s2 > |J'| (got "
                          + std::to_string(sum) + " vs " + std::to_string(jabs) + ")");

    TmsCouplings c;
    c.j_prime_abs = jabs;
    c.phi_big = std::arg(j_prime);
    c.r = 0.25 * std::log((sum + jabs) / (sum - jabs));

    const double ch = std::cosh(c.r), sh = std::sinh(c.r);
    const double ch2 = ch * ch, sh2 = sh * sh;
    const double sinh2r = std::sinh(2.0 * c.r);
    const double cosh2rd = std::cosh(2.0 * s.r_d2);
    const double sinh2rd = std::sinh(2.0 * s.r_d2);
    const double half_g0 = 0.5 * p.g0;
    const double phi = c.phi_big;
    const double phi_d2 = p.phi_d2;

    c.w1 = s.omega_s1 * ch2 + s.omega_s2 * sh2 - 0.5 * jabs * sinh2r;
    c.w2 = s.omega_s2 * ch2 + s.omega_s1 * sh2 - 0.5 * jabs * sinh2r;

    c.g1 = p.g0 * cosh2rd * sh2;
    c.g2 = p.g0 * cosh2rd * ch2;
    // G12 and G_p12 carry an overall minus relative to the e^{−iΦ} sinh r sign
    // convention; magnitudes are unaffected.
    c.g12 = -half_g0 * cosh2rd * sinh2r * std::polar(1.0, phi);
    c.g11 = half_g0 * sinh2rd * sh2 * std::polar(1.0, 2.0 * phi - phi_d2);
    c.g22 = half_g0 * sinh2rd * ch2 * std::polar(1.0, phi_d2);
    c.gp12 = -half_g0 * sinh2rd * sinh2r * std::polar(1.0, phi_d2 - phi);

    c.f_prime = p.g0 * cosh2rd * sh2;
    c.c_prime = sum * sh2 - jabs * sh * ch;
    c.eta = c.g2 == 0.0 ? 0.0 : c.g1 / c.g2;
    return c;
}

/// Ratios of every term the two-mode-squeezing picture neglects against its
/// detuning. G_j/ω_m is listed but not counted as competing: radiation pressure
/// is what this branch keeps.
inline ValidityReport rwa_validity_tms(const TmsCouplings& c, double omega_m,
                                       ValidityOptions options = {}) {
    ValidityReport report;
    report.options = options;
    detail::add_sideband_entry(report, "G11", "2*W1 +- omega_m", std::abs(c.g11), 2.0 * c.w1, omega_m);
    detail::add_sideband_entry(report, "G22", "2*W2 +- omega_m", std::abs(c.g22), 2.0 * c.w2, omega_m);
    detail::add_sideband_entry(report, "G12", "W1 + W2 +- omega_m", std::abs(c.g12), c.w1 + c.w2, omega_m);
    detail::add_sideband_entry(report, "Gp12", "W1 - W2 +- omega_m", std::abs(c.gp12), c.w1 - c.w2, omega_m);
    detail::add_scale_entry(report, "G1", c.g1, omega_m, false);
    detail::add_scale_entry(report, "G2", c.g2, omega_m, false);
    return report;
}

} // namespace phonolase
