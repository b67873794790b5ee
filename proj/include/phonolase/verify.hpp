#pragma once

#include "phonolase/branch_bs.hpp"
#include "phonolase/branch_tms.hpp"
#include "phonolase/laser.hpp"
#include "phonolase/model.hpp"
#include "phonolase/oracle.hpp"
#include "phonolase/random_params.hpp"
#include "phonolase/stage1.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace phonolase {

/// |a − b| / max(|a|, |b|); 0 when both vanish.
inline double rel_diff(double a, double b) {
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

/// |a − b| / scale with an explicit scale (for identities whose sides cancel).
inline double scaled_diff(double a, double b, double scale) {
    return scale == 0.0 ? std::abs(a - b) : std::abs(a - b) / scale;
}

struct Stage1Residuals {
    double coupling_hyperbola = 0.0; // g_s2² − 4g_p2² = g₀²
    double lambda_norm = 0.0;        // |λ₁|² − |λ₂|² = 1
    double frequency_definition = 0.0; // ω_s e^{−2r} = Δ − 2Λ
};

inline Stage1Residuals stage1_residuals(const Stage1Result& s, const PhysicalParams& p) {
    Stage1Residuals r;
    r.coupling_hyperbola = scaled_diff(s.g_s2 * s.g_s2 - 4.0 * s.g_p2 * s.g_p2, p.g0 * p.g0, s.g_s2 * s.g_s2);
    r.lambda_norm = scaled_diff(std::norm(s.lam1) - std::norm(s.lam2), 1.0, std::norm(s.lam1));
    r.frequency_definition = std::max(
        scaled_diff(s.omega_s1 * std::exp(-2.0 * s.r_d1), p.delta1 - 2.0 * p.lambda1, std::abs(p.delta1)),
        scaled_diff(s.omega_s2 * std::exp(-2.0 * s.r_d2), p.delta2 - 2.0 * p.lambda2, std::abs(p.delta2)));
    return r;
}

struct TmsResiduals {
    double g_difference = 0.0;  // G₂ − G₁ = g₀ cosh 2r_d2
    double g12_product = 0.0;   // |G₁₂|² = G₁G₂
    double w_difference = 0.0;  // W₁ − W₂ = ω_s1 − ω_s2
    double w_sum = 0.0;         // W₁ + W₂ = sqrt((ω_s1+ω_s2)² − |J'|²)
    double eta = 0.0;           // η = tanh² r
};

inline TmsResiduals tms_residuals(const TmsCouplings& c, const Stage1Result& s, const PhysicalParams& p) {
    TmsResiduals r;
    r.g_difference = scaled_diff(c.g2 - c.g1, p.g0 * std::cosh(2.0 * s.r_d2), c.g2);
    r.g12_product = scaled_diff(std::norm(c.g12), c.g1 * c.g2, std::max(std::norm(c.g12), c.g1 * c.g2));
    const double wscale = std::max({std::abs(c.w1), std::abs(c.w2), std::abs(s.omega_s1), std::abs(s.omega_s2)});
    r.w_difference = scaled_diff(c.w1 - c.w2, s.omega_s1 - s.omega_s2, wscale);
    const double sum = s.omega_s1 + s.omega_s2;
    r.w_sum = scaled_diff(c.w1 + c.w2, std::sqrt(sum * sum - c.j_prime_abs * c.j_prime_abs), wscale);
    r.eta = std::abs(c.eta - std::tanh(c.r) * std::tanh(c.r));
    return r;
}

struct BsResiduals {
    double g_sum = 0.0;         // G₁ + G₂ = g₀ cosh 2r_d2
    double gp12_product = 0.0;  // |G_p12|² = G₁G₂
    double w_sum = 0.0;         // W₁ + W₂ = ω_s1 + ω_s2
    double w_split = 0.0;       // |W₁ − W₂| = sqrt((ω_s1−ω_s2)² + |J'|²)
    double g12_ratio = 0.0;     // |G₁₂|/|G_p12| = |tanh 2r_d2|
};

inline BsResiduals bs_residuals(const BsCouplings& c, const Stage1Result& s, const PhysicalParams& p) {
    BsResiduals r;
    r.g_sum = rel_diff(c.g1 + c.g2, p.g0 * std::cosh(2.0 * s.r_d2));
    r.gp12_product = scaled_diff(std::norm(c.gp12), c.g1 * c.g2, std::max(std::norm(c.gp12), c.g1 * c.g2));
    const double wscale = std::max({std::abs(c.w1), std::abs(c.w2), std::abs(s.omega_s1), std::abs(s.omega_s2)});
    r.w_sum = scaled_diff(c.w1 + c.w2, s.omega_s1 + s.omega_s2, wscale);
    const double split = s.omega_s1 - s.omega_s2;
    r.w_split = scaled_diff(std::abs(c.w1 - c.w2), std::sqrt(split * split + c.j_prime_abs * c.j_prime_abs), wscale);
    if (std::abs(c.gp12) > 0.0 && std::abs(c.g12) > 0.0)
        r.g12_ratio = rel_diff(std::abs(c.g12) / std::abs(c.gp12), std::abs(std::tanh(2.0 * s.r_d2)));
    return r;
}

// ------------------------------------------------------------------ checks

struct CheckResult {
    std::string name;
    double tolerance = 0.0;
    std::size_t cases = 0;
    double max_error = 0.0;
    std::string failure; // set on an exception

    bool pass() const { return failure.empty() && max_error <= tolerance; }

    void add(double err) {
        ++cases;
        if (!(err <= max_error)) max_error = err; // NaN sticks
    }
};

class CheckBook {
public:
    CheckResult& operator()(const std::string& name, double tolerance) {
        for (auto& c : checks_)
            if (c.name == name) return c;
        checks_.push_back({name, tolerance, 0, 0.0, {}});
        return checks_.back();
    }

    const std::vector<CheckResult>& results() const { return checks_; }

    bool all_pass() const {
        return std::all_of(checks_.begin(), checks_.end(), [](const CheckResult& c) { return c.pass(); });
    }

private:
    std::vector<CheckResult> checks_;
};

inline constexpr double identity_tol = 1e-10;
inline constexpr double oracle_tol = 1e-9;
inline constexpr double metric_tol = 1e-12;

/// Runs every exact identity and oracle equivalence at `p`. Which branch checks
/// run depends on what is computable there.
inline void check_point(CheckBook& book, const PhysicalParams& raw, bool want_tms, bool want_bs) {
    const ValidatedParams params = validate(raw);
    const Stage1Result s = stage1_transform(params);
    const auto s1 = stage1_residuals(s, raw);
    book("stage1 g_s2^2-4g_p2^2=g0^2", identity_tol).add(s1.coupling_hyperbola);
    book("stage1 |lam1|^2-|lam2|^2=1", identity_tol).add(s1.lambda_norm);
    book("stage1 omega_s*exp(-2r)=delta-2lambda", identity_tol).add(s1.frequency_definition);

    const auto conj1 = oracle::conjugate_coupling(params, oracle::MapBranch::Stage1Only);
    book("oracle stage1 photonic", oracle_tol)
        .add(oracle::relative_deviation(conj1.photonic, oracle::expected_stage1_photonic(s, params)));
    book("oracle stage1 coupling", oracle_tol)
        .add(oracle::relative_deviation(conj1.coupling, oracle::expected_stage1_coupling(s, params)));
    book("oracle stage1 metric", metric_tol).add(conj1.stage1.metric_defect());

    if (want_tms) {
        const TmsCouplings c = tms_couplings(s, params);
        const auto t = tms_residuals(c, s, raw);
        book("tms G2-G1=g0cosh2rd2", identity_tol).add(t.g_difference);
        book("tms |G12|^2=G1G2", identity_tol).add(t.g12_product);
        book("tms W1-W2=ws1-ws2", identity_tol).add(t.w_difference);
        book("tms W1+W2=sqrt(sum^2-J'^2)", identity_tol).add(t.w_sum);
        book("tms eta=tanh^2r", identity_tol).add(t.eta);
        const auto conj = oracle::conjugate_coupling(params, oracle::MapBranch::TwoModeSqueezing);
        book("oracle tms coupling", oracle_tol)
            .add(oracle::relative_deviation(conj.coupling, oracle::expected_coupling(c, s)));
        const double wscale = std::max(std::abs(c.w1), std::abs(c.w2));
        book("oracle tms W", oracle_tol)
            .add(std::max(std::abs(conj.photonic.hop(0, 0).real() - c.w1),
                          std::abs(conj.photonic.hop(1, 1).real() - c.w2)) / wscale);
        book("oracle tms metric", metric_tol)
            .add(std::max(conj.stage2.metric_defect(), conj.total.metric_defect()));
    }
    if (want_bs) {
        const BsCouplings c = bs_couplings(s, params);
        const auto b = bs_residuals(c, s, raw);
        book("bs G1+G2=g0cosh2rd2", identity_tol).add(b.g_sum);
        book("bs |Gp12|^2=G1G2", identity_tol).add(b.gp12_product);
        book("bs W1+W2=ws1+ws2", identity_tol).add(b.w_sum);
        book("bs |W1-W2|=sqrt(split^2+J'^2)", identity_tol).add(b.w_split);
        book("bs |G12|/|Gp12|=tanh2rd2", identity_tol).add(b.g12_ratio);
        const auto conj = oracle::conjugate_coupling(params, oracle::MapBranch::BeamSplitter);
        book("oracle bs coupling", oracle_tol)
            .add(oracle::relative_deviation(conj.coupling, oracle::expected_coupling(c, s)));
        const double wscale = std::max(std::abs(c.w1), std::abs(c.w2));
        book("oracle bs W", oracle_tol)
            .add(std::max(std::abs(conj.photonic.hop(0, 0).real() - c.w1),
                          std::abs(conj.photonic.hop(1, 1).real() - c.w2)) / wscale);
        book("oracle bs metric", metric_tol).add(conj.stage2.metric_defect());
    }
}

/// The config point (where computable) plus `random_sets` random sets per
/// branch drawn from `seed`.
inline CheckBook verify(const PhysicalParams& point, std::size_t random_sets, std::uint64_t seed) {
    CheckBook book;
    auto guarded = [&book](const std::string& label, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            book(label, 0.0).failure = e.what();
        }
    };
    guarded("config point", [&] {
        const ValidatedParams params = validate(point);
        const Stage1Result s = stage1_transform(params);
        bool tms_ok = true;
        try {
            tms_couplings(s, params);
        } catch (const TmsUnstable&) {
            tms_ok = false;
        }
        check_point(book, point, tms_ok, true);
    });
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < random_sets; ++i) {
        guarded("random tms sets", [&] { check_point(book, random_tms_params(rng), true, false); });
        guarded("random bs sets", [&] { check_point(book, random_valid_params(rng), false, true); });
    }
    return book;
}

} // namespace phonolase
