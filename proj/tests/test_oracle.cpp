#include "phonolase/config.hpp"
#include "phonolase/oracle.hpp"
#include "phonolase/random_params.hpp"
#include "phonolase/verify.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace phonolase;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

Config load(const char* name) { return load_config(std::string(PHONOLASE_CONFIG_DIR) + "/" + name); }

PhysicalParams bare() {
    PhysicalParams p;
    p.delta1 = 3.0;
    p.delta2 = 5.0;
    p.g0 = 0.004;
    return p;
}

} // namespace

TEST_CASE("photonic form without drives or hopping is diagonal") {
    const auto form = oracle::build_photonic_form(validate(bare()));
    const auto n = oracle::normal_order(form.photonic);
    CHECK(n.hop(0, 0) == complex(3.0, 0.0));
    CHECK(n.hop(1, 1) == complex(5.0, 0.0));
    CHECK(n.hop(0, 1) == complex(0.0, 0.0));
    CHECK(n.pair.cwiseAbs().maxCoeff() == 0.0);
    CHECK(n.constant == 0.0);
}

TEST_CASE("photonic form is Hermitian with particle-hole structure") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        const auto form = oracle::build_photonic_form(validate(random_valid_params(rng)));
        const auto d = oracle::form_defects(form.photonic);
        CHECK(d.hermiticity == 0.0);
        CHECK(d.particle_hole == 0.0);
    }
}

TEST_CASE("identity maps leave only -g0 on the second cavity") {
    auto p = bare();
    p.g0 = 0.007;
    const auto conj = oracle::conjugate_coupling(validate(p), oracle::MapBranch::BeamSplitter);
    CHECK(conj.total.metric_defect() == 0.0);
    CHECK(conj.coupling.hop(1, 1) == complex(-0.007, 0.0));
    CHECK(conj.coupling.hop(0, 0) == complex(0.0, 0.0));
    CHECK(std::abs(conj.coupling.hop(0, 1)) == 0.0);
    CHECK(conj.coupling.pair.cwiseAbs().maxCoeff() == 0.0);
    CHECK(conj.coupling.constant == 0.0);
}

TEST_CASE("decoupled parametric oscillators: exact modes equal stage-1 frequencies") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 200; ++i) {
        auto p = random_valid_params(rng);
        p.j_hop = 0.0;
        const auto v = validate(p);
        const auto s = stage1_transform(v);
        const auto modes = oracle::symplectic_frequencies(oracle::build_photonic_form(v).photonic);
        REQUIRE(modes.stable);
        auto want = std::array<double, 2>{s.omega_s1, s.omega_s2};
        std::sort(want.begin(), want.end());
        for (int j = 0; j < 2; ++j)
            CHECK_THAT(modes.signed_freq[j], WithinAbs(want[j], 1e-9 * std::max(1.0, std::abs(want[j]))));
    }
}

TEST_CASE("parametrically unstable form is flagged") {
    auto p = bare();
    p.lambda1 = 2.0; // |delta1| < 2 lambda1
    const auto form = oracle::build_photonic_form_unchecked(p);
    const auto modes = oracle::symplectic_frequencies(form.photonic);
    CHECK_FALSE(modes.stable);
    CHECK(std::isnan(modes.signed_freq[0]));
}

TEST_CASE("every map preserves the symplectic metric") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 200; ++i) {
        const auto v = validate(random_tms_params(rng));
        const auto tms = oracle::conjugate_coupling(v, oracle::MapBranch::TwoModeSqueezing);
        CHECK(tms.stage1.metric_defect() < 1e-12);
        CHECK(tms.stage2.metric_defect() < 1e-12);
        const auto bs = oracle::conjugate_coupling(v, oracle::MapBranch::BeamSplitter);
        CHECK(bs.stage2.metric_defect() < 1e-12);
    }
}

TEST_CASE("oracle reproduces the analytic couplings on both working sets") {
    {
        const auto v = validate(load("tms_working_point.json").params);
        const auto s = stage1_transform(v);
        const auto c = tms_couplings(s, v);
        const auto conj = oracle::conjugate_coupling(v, oracle::MapBranch::TwoModeSqueezing);
        CHECK(oracle::relative_deviation(conj.coupling, oracle::expected_coupling(c, s)) < 1e-9);
        CHECK_THAT(conj.photonic.hop(0, 0).real(), WithinRel(c.w1, 1e-9));
        CHECK_THAT(conj.photonic.hop(1, 1).real(), WithinRel(c.w2, 1e-9));
        // the squeeze term J lambda2 is gone exactly
        CHECK(std::abs(conj.photonic.pair(0, 1)) < 1e-9 * std::abs(c.w2));
    }
    {
        const auto v = validate(load("bs_laser.json").params);
        const auto s = stage1_transform(v);
        const auto c = bs_couplings(s, v);
        const auto conj = oracle::conjugate_coupling(v, oracle::MapBranch::BeamSplitter);
        CHECK(oracle::relative_deviation(conj.coupling, oracle::expected_coupling(c, s)) < 1e-9);
        CHECK(std::abs(conj.photonic.hop(0, 1)) < 1e-12);
    }
}

TEST_CASE("RWA audit at the reference working points") {
    {
        const auto v = validate(load("tms_working_point.json").params);
        const auto rep = oracle::rwa_error_report(v);
        REQUIRE(rep.branches.size() == 1);
        const auto& a = rep.branches[0];
        CHECK(a.branch == Branch::TwoModeSqueezing);
        REQUIRE(a.available);
        CHECK(a.dropped_weight < 0.1);
        CHECK(a.freq_rel_dev[0] <= 0.01);
        CHECK(a.freq_rel_dev[1] <= 0.01);
    }
    {
        const auto v = validate(load("bs_laser.json").params);
        const auto rep = oracle::rwa_error_report(v);
        REQUIRE(rep.branches.size() == 1);
        const auto& a = rep.branches[0];
        CHECK(a.branch == Branch::BeamSplitter);
        CHECK(a.dropped_weight < 0.1);
        CHECK(a.freq_rel_dev[0] <= 0.01);
        CHECK(a.freq_rel_dev[1] <= 0.01);
    }
}

TEST_CASE("RWA audit without drives drops nothing") {
    auto p = bare();
    p.j_hop = 0.3;
    const auto rep = oracle::rwa_error_report(validate(p));
    REQUIRE(rep.branches.size() == 1);
    CHECK(rep.branches[0].dropped_weight == 0.0);
    for (const auto& d : rep.branches[0].dropped) CHECK(d.ratio < 1e-12);
    CHECK(rep.branches[0].freq_rel_dev[0] < 1e-12);
}

TEST_CASE("verify passes on random sets") {
    const auto book = verify(load("bs_laser.json").params, 100, 42);
    for (const auto& c : book.results()) {
        INFO(c.name << " max_error=" << c.max_error << " " << c.failure);
        CHECK(c.pass());
    }
}
