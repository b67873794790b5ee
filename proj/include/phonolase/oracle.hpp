#pragma once

// Brute-force cross-check of the analytic pipeline. Operators quadratic in the
// photon modes are stored as 4×4 matrices over α = (a₁, a₂, a₁†, a₂†), the
// transformations as 4×4 maps α = M β. Nothing in here calls the analytic
// coupling formulas: squeezing angles are recomputed by a different route and
// the beam-splitter rotation comes from a numerical eigen-decomposition.

#include "phonolase/branch_bs.hpp"
#include "phonolase/branch_tms.hpp"
#include "phonolase/errors.hpp"
#include "phonolase/model.hpp"
#include "phonolase/regime.hpp"
#include "phonolase/stage1.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

namespace phonolase::oracle {

using Mat4 = Eigen::Matrix4cd;
using Mat2 = Eigen::Matrix2cd;

inline Mat4 symplectic_metric() {
    Mat4 s = Mat4::Zero();
    s.diagonal() << 1.0, 1.0, -1.0, -1.0;
    return s;
}

/// The operator ½ α† h α + offset.
struct QuadraticOperator {
    Mat4 h = Mat4::Zero();
    double offset = 0.0;
};

struct QuadraticForm {
    QuadraticOperator photonic;
    // coefficient operator of (b† + b)
    QuadraticOperator coupling;
};

/// Normal-ordered coefficients of a quadratic operator:
///   Σ hop(i,j) A_i†A_j + [pair(0,0) A₁² + pair(1,1) A₂² + pair(0,1) A₁A₂ + h.c.] + constant
struct NormalOrdered {
    Mat2 hop = Mat2::Zero();
    Mat2 pair = Mat2::Zero();
    double constant = 0.0;
};

struct LinearMap {
    Mat4 m = Mat4::Identity();

    /// max |M†ΣM − Σ|
    double metric_defect() const {
        const Mat4 sigma = symplectic_metric();
        return (m.adjoint() * sigma * m - sigma).cwiseAbs().maxCoeff();
    }

    bool is_symplectic(double tol = 1e-12) const { return metric_defect() <= tol; }
};

/// Apply `inner` after `outer`: α = outer · (inner · β).
inline LinearMap compose(const LinearMap& outer, const LinearMap& inner) { return {outer.m * inner.m}; }

inline QuadraticOperator conjugate(const QuadraticOperator& op, const LinearMap& map) {
    return {map.m.adjoint() * op.h * map.m, op.offset};
}

inline NormalOrdered normal_order(const QuadraticOperator& op) {
    NormalOrdered out;
    out.hop = op.h.topLeftCorner<2, 2>();
    const Mat2 lower = op.h.bottomLeftCorner<2, 2>();
    out.pair(0, 0) = 0.5 * lower(0, 0);
    out.pair(1, 1) = 0.5 * lower(1, 1);
    out.pair(0, 1) = 0.5 * (lower(0, 1) + lower(1, 0));
    out.pair(1, 0) = out.pair(0, 1);
    out.constant = op.offset + 0.5 * out.hop.trace().real();
    return out;
}

/// Largest entry-wise deviation between two coefficient sets.
inline double max_deviation(const NormalOrdered& a, const NormalOrdered& b) {
    double d = std::max((a.hop - b.hop).cwiseAbs().maxCoeff(), (a.pair - b.pair).cwiseAbs().maxCoeff());
    return std::max(d, std::abs(a.constant - b.constant));
}

inline double max_magnitude(const NormalOrdered& a) {
    return std::max({a.hop.cwiseAbs().maxCoeff(), a.pair.cwiseAbs().maxCoeff(), std::abs(a.constant)});
}

/// Deviation scaled by the largest coefficient of the reference set.
inline double relative_deviation(const NormalOrdered& got, const NormalOrdered& want) {
    const double scale = std::max(max_magnitude(want), std::numeric_limits<double>::min());
    return max_deviation(got, want) / scale;
}

// ---------------------------------------------------------------- building

/// Same as build_photonic_form but skips validation, so unstable forms can be
/// inspected.
inline QuadraticForm build_photonic_form_unchecked(const PhysicalParams& p) {
    QuadraticForm q;
    Mat2 a;
    a << p.delta1, p.j_hop, p.j_hop, p.delta2;
    Mat2 b = Mat2::Zero();
    // Λ (a†² e^{−iΦ} + h.c.) = ½ (a† B a† + h.c.) with B = 2Λ e^{−iΦ}
    b(0, 0) = 2.0 * p.lambda1 * std::polar(1.0, -p.phi_d1);
    b(1, 1) = 2.0 * p.lambda2 * std::polar(1.0, -p.phi_d2);
    q.photonic.h << a, b, b.conjugate(), a.conjugate();
    q.photonic.offset = -0.5 * (p.delta1 + p.delta2);

    q.coupling.h = Mat4::Zero();
    q.coupling.h(1, 1) = -p.g0;
    q.coupling.h(3, 3) = -p.g0;
    q.coupling.offset = 0.5 * p.g0;
    return q;
}

inline QuadraticForm build_photonic_form(const ValidatedParams& params) {
    return build_photonic_form_unchecked(params.raw());
}

/// max |h − h†| and max |h − X h̄ X| (X swaps the annihilation/creation blocks).
struct FormDefects {
    double hermiticity = 0.0;
    double particle_hole = 0.0;
};

inline FormDefects form_defects(const QuadraticOperator& op) {
    Mat4 swap = Mat4::Zero();
    swap(0, 2) = swap(1, 3) = swap(2, 0) = swap(3, 1) = 1.0;
    return {(op.h - op.h.adjoint()).cwiseAbs().maxCoeff(),
            (op.h - swap * op.h.conjugate() * swap).cwiseAbs().maxCoeff()};
}

// ---------------------------------------------------------------- maps

/// Per-cavity squeeze a_j = cosh r_j a_sj − e^{−iΦ_j} sinh r_j a_sj†,
/// with r_j = ½ artanh(2Λ_j/Δ_j).
inline LinearMap stage1_map(const PhysicalParams& p) {
    const double r1 = 0.5 * std::atanh(2.0 * p.lambda1 / p.delta1);
    const double r2 = 0.5 * std::atanh(2.0 * p.lambda2 / p.delta2);
    LinearMap map;
    map.m = Mat4::Zero();
    map.m(0, 0) = map.m(2, 2) = std::cosh(r1);
    map.m(1, 1) = map.m(3, 3) = std::cosh(r2);
    map.m(0, 2) = -std::polar(1.0, -p.phi_d1) * std::sinh(r1);
    map.m(1, 3) = -std::polar(1.0, -p.phi_d2) * std::sinh(r2);
    map.m(2, 0) = std::conj(map.m(0, 2));
    map.m(3, 1) = std::conj(map.m(1, 3));
    return map;
}

/// Two-mode squeeze that removes K a₁a₂ + h.c. from ω₁n₁ + ω₂n₂:
/// a_sj = cosh r A_j + u sinh r A_k†, tanh 2r = 2|K|/(ω₁+ω₂), u = −K̄/|K|.
inline LinearMap two_mode_squeeze_map(const NormalOrdered& stage1_photonic) {
    const double sum = stage1_photonic.hop(0, 0).real() + stage1_photonic.hop(1, 1).real();
    const complex k = stage1_photonic.pair(0, 1);
    const double kabs = std::abs(k);
    if (!(sum > 2.0 * kabs)) throw TmsUnstable("oracle: omega_s1 + omega_s2 <= |J'|");
    const double r = 0.5 * std::atanh(2.0 * kabs / sum);
    const complex u = kabs == 0.0 ? complex{1.0, 0.0} : -std::conj(k) / kabs;
    const double c = std::cosh(r), s = std::sinh(r);
    LinearMap map;
    map.m = Mat4::Zero();
    map.m(0, 0) = map.m(1, 1) = map.m(2, 2) = map.m(3, 3) = c;
    map.m(0, 3) = u * s;
    map.m(1, 2) = u * s;
    map.m(2, 1) = std::conj(u) * s;
    map.m(3, 0) = std::conj(u) * s;
    return map;
}

/// Unitary that diagonalises the 2×2 hopping block numerically. Columns are
/// ordered so A₁ keeps the larger overlap with a_s1 and phased so the
/// diagonal of U is real and non-negative.
inline LinearMap beam_splitter_map(const NormalOrdered& stage1_photonic) {
    Mat2 u = Mat2::Identity();
    if (std::abs(stage1_photonic.hop(0, 1)) != 0.0) {
        Eigen::SelfAdjointEigenSolver<Mat2> solver(stage1_photonic.hop);
        const Mat2 v = solver.eigenvectors(); // ascending eigenvalues
        const double overlap0 = std::abs(v(0, 0)), overlap1 = std::abs(v(0, 1));
        const bool keep = overlap0 >= overlap1;
        u.col(0) = keep ? v.col(0) : v.col(1);
        u.col(1) = keep ? v.col(1) : v.col(0);
        for (int j = 0; j < 2; ++j) {
            const complex d = u(j, j);
            if (std::abs(d) > 0.0) u.col(j) *= std::conj(d) / std::abs(d);
        }
    }
    LinearMap map;
    map.m = Mat4::Zero();
    map.m.topLeftCorner<2, 2>() = u;
    map.m.bottomRightCorner<2, 2>() = u.conjugate();
    return map;
}

// ---------------------------------------------------------------- frequencies

struct NormalModes {
    std::array<double, 2> signed_freq{};  // positive-norm eigenvalues, ascending
    std::array<double, 2> magnitude{};    // |ν| ascending
    bool stable = true;
    double max_imag = 0.0;
};

/// Eigenvalues of Σh. Stable when every eigenvalue is real to within
/// 1e-9·max(1, max|h|). The frequency of each mode is the eigenvalue whose
/// eigenvector has positive symplectic norm, so negative-energy modes keep
/// their sign.
inline NormalModes symplectic_frequencies(const QuadraticOperator& op) {
    const Mat4 sigma = symplectic_metric();
    Eigen::ComplexEigenSolver<Mat4> solver(sigma * op.h);
    if (solver.info() != Eigen::Success) throw NumericalDegeneracy("eigen-decomposition did not converge");
    const auto& values = solver.eigenvalues();
    const auto& vectors = solver.eigenvectors();
    const double scale = std::max(1.0, op.h.cwiseAbs().maxCoeff());

    NormalModes out;
    for (int k = 0; k < 4; ++k) out.max_imag = std::max(out.max_imag, std::abs(values(k).imag()));
    out.stable = out.max_imag <= 1e-9 * scale;
    if (!out.stable) {
        out.signed_freq.fill(std::numeric_limits<double>::quiet_NaN());
        out.magnitude.fill(std::numeric_limits<double>::quiet_NaN());
        return out;
    }

    std::vector<double> positive;
    for (int k = 0; k < 4; ++k) {
        const auto v = vectors.col(k);
        const double norm = (v.adjoint() * sigma * v)(0, 0).real();
        if (std::abs(norm) < 1e-8 * v.squaredNorm())
            throw NumericalDegeneracy("eigenvector with vanishing symplectic norm");
        if (norm > 0.0) positive.push_back(values(k).real());
    }
    if (positive.size() != 2) throw NumericalDegeneracy("could not pair normal modes");
    std::sort(positive.begin(), positive.end());
    out.signed_freq = {positive[0], positive[1]};
    out.magnitude = {std::abs(positive[0]), std::abs(positive[1])};
    std::sort(out.magnitude.begin(), out.magnitude.end());
    return out;
}

// ---------------------------------------------------------------- conjugation

enum class MapBranch { Stage1Only, TwoModeSqueezing, BeamSplitter };

struct Conjugation {
    LinearMap stage1;
    LinearMap stage2;
    LinearMap total;
    NormalOrdered photonic; // full photon Hamiltonian in the final basis, nothing dropped
    NormalOrdered coupling; // coefficient of (b† + b) in the final basis
};

inline Conjugation conjugate_coupling(const ValidatedParams& params, MapBranch branch) {
    const QuadraticForm form = build_photonic_form(params);
    Conjugation out;
    out.stage1 = stage1_map(params.raw());
    const NormalOrdered after_stage1 = normal_order(conjugate(form.photonic, out.stage1));
    switch (branch) {
    case MapBranch::Stage1Only: out.stage2 = LinearMap{}; break;
    case MapBranch::TwoModeSqueezing: out.stage2 = two_mode_squeeze_map(after_stage1); break;
    case MapBranch::BeamSplitter: out.stage2 = beam_splitter_map(after_stage1); break;
    }
    out.total = compose(out.stage1, out.stage2);
    out.photonic = normal_order(conjugate(form.photonic, out.total));
    out.coupling = normal_order(conjugate(form.coupling, out.total));
    return out;
}

// ------------------------------------------- analytic results in oracle layout

inline NormalOrdered expected_stage1_photonic(const Stage1Result& s, const ValidatedParams& params) {
    const double j = params.raw().j_hop;
    NormalOrdered e;
    e.hop << s.omega_s1, j * std::conj(s.lam1), j * s.lam1, s.omega_s2;
    e.pair(0, 1) = e.pair(1, 0) = -j * s.lam2;
    e.constant = s.c_const;
    return e;
}

inline NormalOrdered expected_stage1_coupling(const Stage1Result& s, const ValidatedParams& params) {
    NormalOrdered e;
    e.hop(1, 1) = -s.g_s2;
    e.pair(1, 1) = s.g_p2 * std::polar(1.0, params.raw().phi_d2);
    e.constant = -s.f_disp;
    return e;
}

inline NormalOrdered expected_coupling(const TmsCouplings& c, const Stage1Result& s) {
    NormalOrdered e;
    e.hop << -c.g1, -c.gp12, -std::conj(c.gp12), -c.g2;
    e.pair << c.g11, c.g12, c.g12, c.g22;
    e.constant = -(s.f_disp + c.f_prime);
    return e;
}

inline NormalOrdered expected_coupling(const BsCouplings& c, const Stage1Result& s) {
    NormalOrdered e;
    e.hop << -c.g1, c.gp12, std::conj(c.gp12), -c.g2;
    e.pair << c.g11, c.g12, c.g12, c.g22;
    e.constant = -s.f_disp;
    return e;
}

// ---------------------------------------------------------------- RWA audit

struct DroppedTerm {
    std::string term;
    double magnitude = 0.0;
    double gap = 0.0;
    double ratio = 0.0;
};

struct BranchAudit {
    Branch branch = Branch::Intermediate;
    bool available = false;
    std::string error;
    std::array<double, 2> analytic_w{};  // W₁, W₂ from the closed forms
    std::array<double, 2> oracle_w{};    // diagonal of the transformed full Hamiltonian
    std::array<double, 2> exact_freq{};  // exact normal modes matched to (W₁, W₂) by order
    std::array<double, 2> freq_rel_dev{};
    std::vector<DroppedTerm> dropped;
    // the discarded interaction over its own detuning, in the stage-1 basis:
    // J|λ₁|/|ω_s1−ω_s2| for TMS, J|λ₂|/|ω_s1+ω_s2| for BS
    double dropped_weight = 0.0;
    double coupling_rel_dev = 0.0;       // oracle vs analytic coefficient set
    double metric_defect = 0.0;
};

struct RwaReport {
    RegimeReport regime;
    NormalModes exact;
    std::string exact_error; // set when the exact modes could not be paired
    std::vector<BranchAudit> branches;
};

namespace detail {

inline double safe_ratio(double magnitude, double gap) {
    if (magnitude == 0.0) return 0.0;
    return gap == 0.0 ? std::numeric_limits<double>::infinity() : magnitude / gap;
}

/// Everything left off-diagonal in the final basis, each against the detuning
/// it rotates at. These interfere, so they bound rather than measure the error.
inline void fill_dropped(BranchAudit& audit, const NormalOrdered& photonic) {
    const double w1 = photonic.hop(0, 0).real(), w2 = photonic.hop(1, 1).real();
    auto add = [&](std::string term, double magnitude, double gap) {
        audit.dropped.push_back({std::move(term), magnitude, gap, safe_ratio(magnitude, gap)});
    };
    add("A1dag_A2", std::abs(photonic.hop(0, 1)), std::abs(w1 - w2));
    add("A1_A2", std::abs(photonic.pair(0, 1)), std::abs(w1 + w2));
    add("A1_A1", std::abs(photonic.pair(0, 0)), std::abs(2.0 * w1));
    add("A2_A2", std::abs(photonic.pair(1, 1)), std::abs(2.0 * w2));
}

/// Pairs exact frequencies with (W₁, W₂) by ascending order.
inline void fill_frequencies(BranchAudit& audit, const NormalModes& exact) {
    const bool swapped = audit.analytic_w[0] > audit.analytic_w[1];
    audit.exact_freq = swapped ? std::array<double, 2>{exact.signed_freq[1], exact.signed_freq[0]}
                               : exact.signed_freq;
    for (int j = 0; j < 2; ++j)
        audit.freq_rel_dev[j] = std::abs(audit.exact_freq[j] - audit.analytic_w[j]) / std::abs(audit.analytic_w[j]);
}

} // namespace detail

inline BranchAudit audit_branch(const ValidatedParams& params, Branch branch, const NormalModes& exact) {
    BranchAudit audit;
    audit.branch = branch;
    const Stage1Result s = stage1_transform(params);
    const NormalOrdered stage1 = conjugate_coupling(params, MapBranch::Stage1Only).photonic;
    const double w_sum = stage1.hop(0, 0).real() + stage1.hop(1, 1).real();
    const double w_diff = stage1.hop(0, 0).real() - stage1.hop(1, 1).real();
    audit.dropped_weight = branch == Branch::TwoModeSqueezing
                               ? detail::safe_ratio(std::abs(stage1.hop(0, 1)), std::abs(w_diff))
                               : detail::safe_ratio(std::abs(stage1.pair(0, 1)), std::abs(w_sum));
    try {
        if (branch == Branch::TwoModeSqueezing) {
            const TmsCouplings c = tms_couplings(s, params);
            const Conjugation conj = conjugate_coupling(params, MapBranch::TwoModeSqueezing);
            audit.analytic_w = {c.w1, c.w2};
            audit.coupling_rel_dev = relative_deviation(conj.coupling, expected_coupling(c, s));
            audit.metric_defect = std::max(conj.stage1.metric_defect(), conj.stage2.metric_defect());
            audit.oracle_w = {conj.photonic.hop(0, 0).real(), conj.photonic.hop(1, 1).real()};
            detail::fill_dropped(audit, conj.photonic);
        } else {
            const BsCouplings c = bs_couplings(s, params);
            const Conjugation conj = conjugate_coupling(params, MapBranch::BeamSplitter);
            audit.analytic_w = {c.w1, c.w2};
            audit.coupling_rel_dev = relative_deviation(conj.coupling, expected_coupling(c, s));
            audit.metric_defect = std::max(conj.stage1.metric_defect(), conj.stage2.metric_defect());
            audit.oracle_w = {conj.photonic.hop(0, 0).real(), conj.photonic.hop(1, 1).real()};
            detail::fill_dropped(audit, conj.photonic);
        }
        audit.available = true;
        if (exact.stable && std::isfinite(exact.signed_freq[0])) detail::fill_frequencies(audit, exact);
    } catch (const Error& e) {
        audit.error = std::string(to_string(e.kind()));
    }
    return audit;
}

/// Audits the branch the regime classifier picks; an Intermediate point audits
/// both.
inline RwaReport rwa_error_report(const ValidatedParams& params, RegimeThresholds thresholds = {}) {
    RwaReport report;
    const Stage1Result s = stage1_transform(params);
    report.regime = classify(s, params, thresholds);
    try {
        report.exact = symplectic_frequencies(build_photonic_form(params).photonic);
    } catch (const NumericalDegeneracy& e) {
        report.exact.stable = false;
        report.exact.signed_freq.fill(std::numeric_limits<double>::quiet_NaN());
        report.exact.magnitude.fill(std::numeric_limits<double>::quiet_NaN());
        report.exact_error = e.what();
    }
    if (report.regime.branch != Branch::BeamSplitter)
        report.branches.push_back(audit_branch(params, Branch::TwoModeSqueezing, report.exact));
    if (report.regime.branch != Branch::TwoModeSqueezing)
        report.branches.push_back(audit_branch(params, Branch::BeamSplitter, report.exact));
    return report;
}

} // namespace phonolase::oracle
