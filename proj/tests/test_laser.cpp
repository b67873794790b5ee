#include "phonolase/config.hpp"
#include "phonolase/laser.hpp"
#include "phonolase/point.hpp"
#include "phonolase/resonance.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

using namespace phonolase;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double kappa = 0.05;
constexpr double gamma_m = 0.001;

Config load(const char* name) { return load_config(std::string(PHONOLASE_CONFIG_DIR) + "/" + name); }

} // namespace

TEST_CASE("no inversion, no gain") {
    CHECK(mechanical_gain({0.04, 3.0, 2.0, 0.5, 0.5}, 1.0, kappa) == 0.0);
}

TEST_CASE("gain peaks on the W1 - W2 = omega_m resonance") {
    const double g = 0.04;
    const double peak = mechanical_gain({g, 3.0, 2.0, 1.0, 0.0}, 1.0, kappa);
    CHECK_THAT(peak, WithinRel(4.0 * g * g / kappa, 1e-14));
    for (double d : {-1e-3, 1e-3, 0.02, -0.5, 3.0})
        CHECK(mechanical_gain({g, 3.0 + d, 2.0, 1.0, 0.0}, 1.0, kappa) < peak);
}

TEST_CASE("phonon number at fixed gains") {
    CHECK(phonon_number(gamma_m, gamma_m).value == 1.0);
    CHECK_THAT(phonon_number(0.0, gamma_m).value, WithinRel(std::exp(-2.0), 1e-15));
    CHECK_THAT(phonon_number(0.0, gamma_m).value, WithinAbs(0.1353, 1e-4));
    CHECK_THAT(phonon_number(2.0 * gamma_m, gamma_m).value, WithinRel(std::exp(2.0), 1e-15));
    CHECK_THAT(phonon_number(2.0 * gamma_m, gamma_m).value, WithinAbs(7.389, 1e-3));
}

TEST_CASE("phonon number saturates at the exponent cap") {
    const auto n = phonon_number(1.0, gamma_m);
    CHECK(n.capped);
    CHECK(std::isfinite(n.value));
    CHECK(n.value == std::exp(700.0));
    CHECK_FALSE(phonon_number(0.3, gamma_m).capped);
}

TEST_CASE("threshold density on resonance") {
    const double g = 0.03;
    const auto t = threshold(g, 3.0, 2.0, 1.0, kappa, gamma_m);
    CHECK_THAT(t.n_threshold, WithinRel(gamma_m * kappa / (4.0 * g * g), 1e-14));
    CHECK(t.p_threshold == t.n_threshold * kappa * 3.0);
    // Feeding the threshold density back gives exactly the damping rate.
    CHECK_THAT(mechanical_gain({g, 3.0, 2.0, t.n_threshold, 0.0}, 1.0, kappa), WithinRel(gamma_m, 1e-12));
}

TEST_CASE("threshold edge cases") {
    CHECK_THROWS_AS(threshold(0.0, 3.0, 2.0, 1.0, kappa, gamma_m), ZeroCoupling);
    const auto t = threshold(0.02, -0.5, -1.5, 1.0, kappa, gamma_m);
    CHECK(t.negative_frequency);
    CHECK(std::isnan(t.p_threshold));
    CHECK(std::isfinite(t.n_threshold));

    const auto r = laser_working_point({0.0, 3.0, 2.0, 1.0, 0.0}, 1.0, kappa, gamma_m);
    CHECK(r.gain == 0.0);
    CHECK(std::isinf(r.threshold.n_threshold));
}

TEST_CASE("weak damping ratio is reported") {
    CHECK_FALSE(laser_working_point({0.02, 3.0, 2.0}, 1.0, kappa, gamma_m).kappa_gamma_warning);
    CHECK(laser_working_point({0.02, 3.0, 2.0}, 1.0, kappa, 0.01).kappa_gamma_warning);
}

TEST_CASE("laser set at a threshold dip reaches threshold below one photon") {
    const Config cfg = load("bs_laser.json");
    const auto roots = find_axis_roots(cfg, {"delta_phi", 0.0, 2.0 * std::numbers::pi, 361},
                                       [](const PointResult& r) { return r.bs ? r.laser->detuning : std::nan(""); });
    REQUIRE(roots.size() == 2);
    for (double x : roots) {
        Config c = cfg;
        set_axis(c, "delta_phi", x);
        const auto point = evaluate_point(c);
        REQUIRE(point.ok());
        CHECK(point.regime.branch == Branch::BeamSplitter);
        CHECK(point.laser->gain >= gamma_m);
        CHECK(point.laser->threshold.n_threshold <= 1.0);
        CHECK(point.bs_validity.find("Gp12")->resonance);
    }
}

TEST_CASE("n_b crosses one at the threshold density along an N+ sweep") {
    Config cfg = load("bs_laser.json");
    set_axis(cfg, "delta_phi", 2.0);
    const double n_th = evaluate_point(cfg).laser->threshold.n_threshold;
    const auto roots = find_axis_roots(cfg, {"n_plus", 0.0, 4.0 * n_th, 41},
                                       [](const PointResult& r) { return r.laser->n_b.value - 1.0; });
    REQUIRE(roots.size() == 1);
    CHECK_THAT(roots[0], WithinRel(n_th, 1e-9));
}
