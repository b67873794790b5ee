#pragma once

#include "phonolase/model.hpp"
#include "phonolase/stage1.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace phonolase {

/// Random stage-1-valid parameter sets with moderate squeezing
/// (Λ_j ≤ 0.99|Δ_j|/2), for identity and oracle sweeps.
template <class Rng>
PhysicalParams random_valid_params(Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    auto detuning = [&] {
        const double mag = 1.0 + 99.0 * unit(rng);
        return unit(rng) < 0.5 ? -mag : mag;
    };
    PhysicalParams p;
    p.delta1 = detuning();
    p.delta2 = detuning();
    p.lambda1 = 0.99 * unit(rng) * std::abs(p.delta1) / 2.0;
    p.lambda2 = 0.99 * unit(rng) * std::abs(p.delta2) / 2.0;
    p.phi_d1 = phase(rng);
    p.phi_d2 = phase(rng);
    p.j_hop = 2.0 * unit(rng);
    p.g0 = 1e-4 + (1e-2 - 1e-4) * unit(rng);
    p.kappa = 0.05;
    p.gamma_m = 0.001;
    return p;
}

/// Like random_valid_params but inside the two-mode-squeezing stability region
/// ω_s1 + ω_s2 > |J'| with |J'| ≤ 0.98(ω_s1 + ω_s2).
template <class Rng>
PhysicalParams random_tms_params(Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (;;) {
        PhysicalParams p = random_valid_params(rng);
        const Stage1Result s = stage1_transform(validate(p));
        const double sum = s.omega_s1 + s.omega_s2;
        if (!(sum > 0.0)) continue;
        const double lam2 = std::abs(s.lam2);
        p.j_hop = lam2 > 0.0 ? 0.98 * unit(rng) * sum / (2.0 * lam2) : 2.0 * unit(rng);
        return p;
    }
}

} // namespace phonolase
