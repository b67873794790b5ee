#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace phonolase {

struct ValidityOptions {
    double smallness = 0.1;        // a ratio below this counts as negligible
    double resonance_floor = 1e-9; // a gap below this is a frequency-matching point
};

/// One neglected (or kept) coupling measured against its frequency mismatch.
struct ValidityEntry {
    std::string term;  // e.g. "G12", "Gp12", "G1"
    std::string gap_expr;
    double coupling = 0.0;
    double gap = 0.0;
    double ratio = 0.0;
    bool small = true;
    bool resonance = false;
    // false for the interaction the branch is built to keep
    bool competing = true;
};

struct ValidityReport {
    std::vector<ValidityEntry> entries;
    ValidityOptions options;

    /// Every competing ratio is below `options.smallness`.
    bool competing_small() const {
        return std::all_of(entries.begin(), entries.end(),
                           [](const ValidityEntry& e) { return !e.competing || e.small; });
    }

    bool resonance_hit() const {
        return std::any_of(entries.begin(), entries.end(),
                           [](const ValidityEntry& e) { return e.resonance; });
    }

    const ValidityEntry* find(const std::string& term) const {
        auto it = std::find_if(entries.begin(), entries.end(),
                               [&](const ValidityEntry& e) { return e.term == term; });
        return it == entries.end() ? nullptr : &*it;
    }
};

namespace detail {

/// Adds |coupling| / min(|base + ω_m|, |base − ω_m|).
inline void add_sideband_entry(ValidityReport& report, std::string term, std::string gap_expr,
                               double coupling, double base, double omega_m, bool competing = true) {
    ValidityEntry e;
    e.term = std::move(term);
    e.gap_expr = std::move(gap_expr);
    e.coupling = std::abs(coupling);
    e.gap = std::min(std::abs(base + omega_m), std::abs(base - omega_m));
    e.competing = competing;
    e.resonance = e.gap < report.options.resonance_floor;
    if (e.resonance)
        e.ratio = e.coupling == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    else
        e.ratio = e.coupling / e.gap;
    e.small = !e.resonance && e.ratio < report.options.smallness;
    if (e.coupling == 0.0) e.small = true;
    report.entries.push_back(std::move(e));
}

inline void add_scale_entry(ValidityReport& report, std::string term, double coupling,
                            double omega_m, bool competing) {
    ValidityEntry e;
    e.term = std::move(term);
    e.gap_expr = "omega_m";
    e.coupling = std::abs(coupling);
    e.gap = omega_m;
    e.ratio = e.coupling / omega_m;
    e.small = e.ratio < report.options.smallness;
    e.competing = competing;
    report.entries.push_back(std::move(e));
}

} // namespace detail

} // namespace phonolase
