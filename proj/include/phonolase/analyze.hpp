#pragma once

#include "phonolase/config.hpp"
#include "phonolase/oracle.hpp"
#include "phonolase/point.hpp"
#include "phonolase/sweep.hpp"

#include <string>
#include <vector>

namespace phonolase {

/// Single-point report as (quantity, value) rows: every point column, then the
/// oracle cross-check and the RWA audit of the applicable branch(es).
inline Table analyze(const Config& cfg) {
    const PointResult point = evaluate_point(cfg);
    Table t;
    t.header = {"quantity", "value"};
    for (const auto& c : point_columns()) t.rows.push_back({c.name, c.render(point)});
    if (!point.ok()) return t;

    auto add = [&t](const std::string& key, double v) { t.rows.push_back({key, format_double(v)}); };
    auto add_text = [&t](const std::string& key, const std::string& v) { t.rows.push_back({key, v}); };

    const ValidatedParams params = validate(cfg.params);
    const oracle::RwaReport report = oracle::rwa_error_report(params, cfg.options.regime);
    add_text("exact_stable", report.exact.stable ? "true" : "false");
    if (!report.exact_error.empty()) add_text("exact_error", report.exact_error);
    add("exact_nu1", report.exact.signed_freq[0]);
    add("exact_nu2", report.exact.signed_freq[1]);
    for (const auto& audit : report.branches) {
        const std::string prefix = audit.branch == Branch::TwoModeSqueezing ? "audit_tms_" : "audit_bs_";
        if (!audit.available) {
            add_text(prefix + "error", audit.error);
            continue;
        }
        add(prefix + "coupling_rel_dev", audit.coupling_rel_dev);
        add(prefix + "metric_defect", audit.metric_defect);
        add(prefix + "oracle_w1", audit.oracle_w[0]);
        add(prefix + "oracle_w2", audit.oracle_w[1]);
        add(prefix + "exact_w1", audit.exact_freq[0]);
        add(prefix + "exact_w2", audit.exact_freq[1]);
        add(prefix + "w1_rel_dev", audit.freq_rel_dev[0]);
        add(prefix + "w2_rel_dev", audit.freq_rel_dev[1]);
        for (const auto& d : audit.dropped) add(prefix + "dropped_" + d.term + "_ratio", d.ratio);
        add(prefix + "dropped_weight", audit.dropped_weight);
    }
    auto add_validity = [&](const std::string& prefix, const ValidityReport& v) {
        for (const auto& e : v.entries) {
            add(prefix + e.term + "_ratio", e.ratio);
            if (e.resonance) add_text(prefix + e.term + "_resonance", e.gap_expr);
        }
    };
    if (point.tms) add_validity("validity_tms_", point.tms_validity);
    if (point.bs) add_validity("validity_bs_", point.bs_validity);
    return t;
}

/// RWA audit as a flat table, one row per dropped term per audited branch.
inline Table rwa_table(const oracle::RwaReport& report) {
    Table t;
    t.header = {"branch", "term", "magnitude", "gap", "ratio"};
    for (const auto& audit : report.branches) {
        const std::string name(to_string(audit.branch));
        if (!audit.available) {
            t.rows.push_back({name, "error:" + audit.error, "nan", "nan", "nan"});
            continue;
        }
        for (const auto& d : audit.dropped)
            t.rows.push_back({name, d.term, format_double(d.magnitude), format_double(d.gap), format_double(d.ratio)});
        t.rows.push_back({name, "stage1_weight", "nan", "nan", format_double(audit.dropped_weight)});
        for (int j = 0; j < 2; ++j)
            t.rows.push_back({name, "W" + std::to_string(j + 1) + "_vs_exact", format_double(audit.analytic_w[j]),
                              format_double(audit.exact_freq[j]), format_double(audit.freq_rel_dev[j])});
    }
    return t;
}

} // namespace phonolase
