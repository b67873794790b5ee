#pragma once

#include "phonolase/branch_bs.hpp"
#include "phonolase/branch_tms.hpp"
#include "phonolase/config.hpp"
#include "phonolase/laser.hpp"
#include "phonolase/model.hpp"
#include "phonolase/regime.hpp"
#include "phonolase/stage1.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace phonolase {

/// Everything the pipeline knows about one parameter point. Per-point failures
/// are recorded, never thrown, so sweeps can cross unstable regions.
struct PointResult {
    Config config;
    double delta_phi = std::numeric_limits<double>::quiet_NaN();
    std::string error; // stage-1 / validation failure; nothing else is filled then
    Stage1Result stage1;
    RegimeReport regime;
    std::optional<TmsCouplings> tms;
    std::string tms_error;
    ValidityReport tms_validity;
    std::optional<BsCouplings> bs;
    ValidityReport bs_validity;
    std::optional<LaserResult> laser;
    std::string laser_error;

    bool ok() const { return error.empty(); }
};

inline PointResult evaluate_point(const Config& cfg) {
    PointResult out;
    out.config = cfg;
    std::optional<ValidatedParams> params;
    try {
        params = validate(cfg.params);
        out.delta_phi = params->delta_phi();
        out.stage1 = stage1_transform(*params);
    } catch (const Error& e) {
        out.error = std::string(to_string(e.kind()));
        return out;
    }
    const double omega_m = cfg.params.omega_m;
    out.regime = classify(out.stage1, *params, cfg.options.regime);

    try {
        out.tms = tms_couplings(out.stage1, *params);
        out.tms_validity = rwa_validity_tms(*out.tms, omega_m, cfg.options.validity);
    } catch (const Error& e) {
        out.tms_error = std::string(to_string(e.kind()));
    }

    out.bs = bs_couplings(out.stage1, *params);
    out.bs_validity = rwa_validity_bs(*out.bs, omega_m, cfg.options.validity);

    LaserInput in{std::abs(out.bs->gp12), out.bs->w1, out.bs->w2, cfg.options.n_plus, cfg.options.n_minus};
    out.laser = laser_working_point(in, omega_m, cfg.params.kappa, cfg.params.gamma_m, cfg.options.laser);
    return out;
}

// ------------------------------------------------------------------ columns

/// 17 significant digits, so every value reads back bit-exact.
inline std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

struct Column {
    std::string name;
    std::function<double(const PointResult&)> number; // empty for text columns
    std::function<std::string(const PointResult&)> text;

    bool numeric() const { return static_cast<bool>(number); }

    std::string render(const PointResult& r) const { return numeric() ? format_double(number(r)) : text(r); }
};

namespace detail {

inline constexpr double nan = std::numeric_limits<double>::quiet_NaN();

inline double max_competing_ratio(const ValidityReport& v) {
    double m = 0.0;
    for (const auto& e : v.entries)
        if (e.competing) m = std::max(m, e.ratio);
    return m;
}

inline Column num(std::string name, std::function<double(const PointResult&)> f) {
    return {std::move(name), std::move(f), {}};
}

inline Column stage1_col(std::string name, double Stage1Result::*member) {
    return num(std::move(name), [member](const PointResult& r) { return r.ok() ? r.stage1.*member : nan; });
}

inline Column tms_col(std::string name, std::function<double(const TmsCouplings&)> f) {
    return num(std::move(name), [f](const PointResult& r) { return r.tms ? f(*r.tms) : nan; });
}

inline Column bs_col(std::string name, std::function<double(const BsCouplings&)> f) {
    return num(std::move(name), [f](const PointResult& r) { return r.bs ? f(*r.bs) : nan; });
}

inline Column laser_col(std::string name, std::function<double(const LaserResult&)> f) {
    return num(std::move(name), [f](const PointResult& r) { return r.laser ? f(*r.laser) : nan; });
}

inline std::string joined_errors(const PointResult& r) {
    if (!r.ok()) return r.error;
    return r.tms_error;
}

inline std::string joined_warnings(const PointResult& r) {
    std::string w;
    auto add = [&w](const char* s) {
        if (!w.empty()) w += ';';
        w += s;
    };
    if (!r.ok()) return w;
    if (r.regime.degenerate_denominator) add("f1_degenerate");
    if (r.regime.branch == Branch::Intermediate) add("intermediate_regime");
    if (r.laser && r.laser->kappa_gamma_warning) add("kappa_gamma_low");
    if (r.laser && r.laser->threshold.negative_frequency) add("negative_frequency");
    if (r.laser && r.laser->n_b.capped) add("n_b_capped");
    if (r.tms && r.tms_validity.resonance_hit()) add("tms_resonance");
    if (r.bs && r.bs_validity.resonance_hit()) add("bs_resonance");
    return w;
}

} // namespace detail

/// Every output column in its fixed order.
inline const std::vector<Column>& point_columns() {
    using detail::nan;
    static const std::vector<Column> columns = [] {
        std::vector<Column> c;
        c.push_back(detail::num("delta_phi", [](const PointResult& r) { return r.delta_phi; }));
        c.push_back(detail::stage1_col("r_d1", &Stage1Result::r_d1));
        c.push_back(detail::stage1_col("r_d2", &Stage1Result::r_d2));
        c.push_back(detail::stage1_col("omega_s1", &Stage1Result::omega_s1));
        c.push_back(detail::stage1_col("omega_s2", &Stage1Result::omega_s2));
        c.push_back(detail::stage1_col("g_s2", &Stage1Result::g_s2));
        c.push_back(detail::stage1_col("g_p2", &Stage1Result::g_p2));
        c.push_back(detail::num("lam1_abs", [](const PointResult& r) { return r.ok() ? std::abs(r.stage1.lam1) : nan; }));
        c.push_back(detail::num("lam2_abs", [](const PointResult& r) { return r.ok() ? std::abs(r.stage1.lam2) : nan; }));
        c.push_back(detail::stage1_col("f_disp", &Stage1Result::f_disp));
        c.push_back(detail::stage1_col("c_const", &Stage1Result::c_const));
        c.push_back(detail::num("f1", [](const PointResult& r) { return r.ok() ? r.regime.f1 : nan; }));
        c.push_back(detail::num("f2", [](const PointResult& r) { return r.ok() ? r.regime.f2 : nan; }));
        c.push_back({"branch", {}, [](const PointResult& r) {
                         return r.ok() ? std::string(to_string(r.regime.branch)) : std::string("none");
                     }});

        c.push_back(detail::tms_col("tms_r", [](const TmsCouplings& t) { return t.r; }));
        c.push_back(detail::tms_col("tms_phi", [](const TmsCouplings& t) { return t.phi_big; }));
        c.push_back(detail::tms_col("tms_j_prime", [](const TmsCouplings& t) { return t.j_prime_abs; }));
        c.push_back(detail::tms_col("tms_w1", [](const TmsCouplings& t) { return t.w1; }));
        c.push_back(detail::tms_col("tms_w2", [](const TmsCouplings& t) { return t.w2; }));
        c.push_back(detail::tms_col("tms_g1", [](const TmsCouplings& t) { return t.g1; }));
        c.push_back(detail::tms_col("tms_g2", [](const TmsCouplings& t) { return t.g2; }));
        c.push_back(detail::tms_col("tms_g11_abs", [](const TmsCouplings& t) { return std::abs(t.g11); }));
        c.push_back(detail::tms_col("tms_g22_abs", [](const TmsCouplings& t) { return std::abs(t.g22); }));
        c.push_back(detail::tms_col("tms_g12_abs", [](const TmsCouplings& t) { return std::abs(t.g12); }));
        c.push_back(detail::tms_col("tms_gp12_abs", [](const TmsCouplings& t) { return std::abs(t.gp12); }));
        c.push_back(detail::tms_col("tms_f_prime", [](const TmsCouplings& t) { return t.f_prime; }));
        c.push_back(detail::tms_col("tms_c_prime", [](const TmsCouplings& t) { return t.c_prime; }));
        c.push_back(detail::tms_col("tms_eta", [](const TmsCouplings& t) { return t.eta; }));
        c.push_back(detail::num("tms_max_ratio", [](const PointResult& r) {
            return r.tms ? detail::max_competing_ratio(r.tms_validity) : nan;
        }));

        c.push_back(detail::bs_col("bs_theta", [](const BsCouplings& b) { return b.theta; }));
        c.push_back(detail::bs_col("bs_phi", [](const BsCouplings& b) { return b.phi_big; }));
        c.push_back(detail::bs_col("bs_j_prime", [](const BsCouplings& b) { return b.j_prime_abs; }));
        c.push_back(detail::bs_col("bs_w1", [](const BsCouplings& b) { return b.w1; }));
        c.push_back(detail::bs_col("bs_w2", [](const BsCouplings& b) { return b.w2; }));
        c.push_back(detail::bs_col("bs_g1", [](const BsCouplings& b) { return b.g1; }));
        c.push_back(detail::bs_col("bs_g2", [](const BsCouplings& b) { return b.g2; }));
        c.push_back(detail::bs_col("bs_g11_abs", [](const BsCouplings& b) { return std::abs(b.g11); }));
        c.push_back(detail::bs_col("bs_g22_abs", [](const BsCouplings& b) { return std::abs(b.g22); }));
        c.push_back(detail::bs_col("bs_g12_abs", [](const BsCouplings& b) { return std::abs(b.g12); }));
        c.push_back(detail::bs_col("bs_gp12_abs", [](const BsCouplings& b) { return std::abs(b.gp12); }));
        c.push_back(detail::num("bs_max_ratio", [](const PointResult& r) {
            return r.bs ? detail::max_competing_ratio(r.bs_validity) : nan;
        }));

        c.push_back(detail::laser_col("detuning", [](const LaserResult& l) { return l.detuning; }));
        c.push_back(detail::laser_col("gain", [](const LaserResult& l) { return l.gain; }));
        c.push_back(detail::laser_col("n_b", [](const LaserResult& l) { return l.n_b.value; }));
        c.push_back(detail::laser_col("n_threshold", [](const LaserResult& l) { return l.threshold.n_threshold; }));
        c.push_back(detail::laser_col("p_threshold", [](const LaserResult& l) { return l.threshold.p_threshold; }));

        c.push_back({"error", {}, detail::joined_errors});
        c.push_back({"warnings", {}, detail::joined_warnings});
        return c;
    }();
    return columns;
}

inline const Column* find_column(std::string_view name) {
    for (const auto& c : point_columns())
        if (c.name == name) return &c;
    return nullptr;
}

} // namespace phonolase
