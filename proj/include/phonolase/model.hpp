#pragma once

#include "phonolase/errors.hpp"

#include <cmath>
#include <numbers>

namespace phonolase {

/// Dimensionless system parameters. Every rate is in units of the mechanical
/// frequency, so omega_m is 1 by construction.
struct PhysicalParams {
    double delta1 = 0.0;  // pump detuning of cavity 1
    double delta2 = 0.0;  // pump detuning of cavity 2
    double lambda1 = 0.0; // OPA drive amplitude, cavity 1
    double lambda2 = 0.0; // OPA drive amplitude, cavity 2
    double phi_d1 = 0.0;  // OPA drive phase, cavity 1 [rad]
    double phi_d2 = 0.0;  // OPA drive phase, cavity 2 [rad]
    double j_hop = 0.0;   // photon hopping between the cavities
    double g0 = 0.0;      // single-photon optomechanical coupling
    double omega_m = 1.0;
    double kappa = 0.05;
    double gamma_m = 0.001;

    friend bool operator==(const PhysicalParams&, const PhysicalParams&) = default;
};

/// Wraps an angle into [0, 2π).
inline double canonical_phase(double phi) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double wrapped = std::fmod(phi, two_pi);
    if (wrapped < 0.0) wrapped += two_pi;
    // fmod of a value just below a multiple of 2π can round up to 2π after the shift
    if (wrapped >= two_pi) wrapped = 0.0;
    return wrapped;
}

struct DerivedPhase {
    double delta_phi = 0.0; // Φ_d1 − Φ_d2 in [0, 2π)
};

/// Parameters that passed `validate`. Only `validate` can construct one.
class ValidatedParams {
public:
    const PhysicalParams& raw() const noexcept { return raw_; }
    double delta_phi() const noexcept { return phase_.delta_phi; }
    DerivedPhase phase() const noexcept { return phase_; }

private:
    ValidatedParams(const PhysicalParams& raw, DerivedPhase phase) : raw_(raw), phase_(phase) {}
    friend ValidatedParams validate(const PhysicalParams& raw);

    PhysicalParams raw_;
    DerivedPhase phase_;
};

namespace detail {

inline void require_finite(double value, const char* field) {
    if (!std::isfinite(value)) throw NonPositive(field);
}

inline void require_positive(double value, const char* field) {
    if (!(std::isfinite(value) && value > 0.0)) throw NonPositive(field);
}

inline void require_non_negative(double value, const char* field) {
    if (!(std::isfinite(value) && value >= 0.0)) throw NonPositive(field);
}

} // namespace detail

/// Checks the stage-1 stability bound |Δ_j| > 2Λ_j (strict, no margin) and the
/// sign constraints on rates. Throws Stage1Unstable, NonPositive or InvalidConfig.
inline ValidatedParams validate(const PhysicalParams& raw) {
    detail::require_finite(raw.delta1, "delta1");
    detail::require_finite(raw.delta2, "delta2");
    detail::require_finite(raw.phi_d1, "phi_d1");
    detail::require_finite(raw.phi_d2, "phi_d2");
    detail::require_non_negative(raw.lambda1, "lambda1");
    detail::require_non_negative(raw.lambda2, "lambda2");
    detail::require_non_negative(raw.j_hop, "j_hop");
    detail::require_non_negative(raw.g0, "g0");
    detail::require_positive(raw.omega_m, "omega_m");
    detail::require_positive(raw.kappa, "kappa");
    detail::require_positive(raw.gamma_m, "gamma_m");
    if (raw.omega_m != 1.0)
        throw InvalidConfig("omega_m must be exactly 1: all rates are in units of the mechanical frequency");

    if (!(std::abs(raw.delta1) > 2.0 * raw.lambda1)) throw Stage1Unstable(1);
    if (!(std::abs(raw.delta2) > 2.0 * raw.lambda2)) throw Stage1Unstable(2);

    return ValidatedParams(raw, DerivedPhase{canonical_phase(raw.phi_d1 - raw.phi_d2)});
}

} // namespace phonolase
