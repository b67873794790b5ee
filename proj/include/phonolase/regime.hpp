#pragma once

#include "phonolase/model.hpp"
#include "phonolase/stage1.hpp"

#include <cmath>
#include <limits>
#include <string_view>

namespace phonolase {

enum class Branch { TwoModeSqueezing, BeamSplitter, Intermediate };

inline std::string_view to_string(Branch b) {
    switch (b) {
    case Branch::TwoModeSqueezing: return "TwoModeSqueezing";
    case Branch::BeamSplitter: return "BeamSplitter";
    case Branch::Intermediate: return "Intermediate";
    }
    return "Unknown";
}

struct RegimeThresholds {
    double f1_hi = 10.0;
    double f1_lo = 0.1;
};

struct RegimeReport {
    double f1 = 0.0;
    double f2 = 0.0;
    Branch branch = Branch::Intermediate;
    // f1's denominator vanished; f1 is then +inf
    bool degenerate_denominator = false;
};

/// f1 = |λ₂(ω_s1−ω_s2) / (λ₁(ω_s1+ω_s2))|, f2 = |ω_s1+ω_s2| − 2J|λ₂|.
inline RegimeReport classify(const Stage1Result& s, const ValidatedParams& params,
                             RegimeThresholds thresholds = {}) {
    RegimeReport out;
    const double sum = s.omega_s1 + s.omega_s2;
    const double denom = std::abs(s.lam1) * std::abs(sum);
    const double numer = std::abs(s.lam2) * std::abs(s.omega_s1 - s.omega_s2);
    if (denom == 0.0) {
        out.degenerate_denominator = true;
        // without a squeezing term there is nothing to keep: f1 = 0
        out.f1 = std::abs(s.lam2) == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
        out.f1 = numer / denom;
    }
    out.f2 = std::abs(sum) - 2.0 * params.raw().j_hop * std::abs(s.lam2);

    if (out.f1 >= thresholds.f1_hi && out.f2 > 0.0)
        out.branch = Branch::TwoModeSqueezing;
    else if (out.f1 <= thresholds.f1_lo)
        out.branch = Branch::BeamSplitter;
    else
        out.branch = Branch::Intermediate;
    return out;
}

} // namespace phonolase
