#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "berrylink/hmap.hpp"

using namespace berrylink;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("map spec parsing round trip") {
    const MapSpec a = MapSpec::parse("pontrjagin:n=2");
    CHECK(a.kind == MapSpec::Kind::PontrjaginS2);
    CHECK(a.degree == 2);

    const MapSpec b = MapSpec::parse("hopf:m=1,deformed");
    CHECK(b.kind == MapSpec::Kind::HopfS3);
    CHECK(b.deformed);
    CHECK(MapSpec::parse(b.to_string()).deformed);

    const MapSpec c = MapSpec::parse("hopf:m=3,deformed=false");
    CHECK_FALSE(c.deformed);

    CHECK(MapSpec::parse("constant-north").kind == MapSpec::Kind::ConstantNorth);
    CHECK_THROWS_AS(MapSpec::parse("hopf:m=-1"), ConfigError);
    CHECK_THROWS_AS(MapSpec::parse("spin2:q=1"), ConfigError);
    CHECK_THROWS_AS(MapSpec::parse("pontrjagin"), ConfigError);
}

TEST_CASE("eval_map pins") {
    const MapSpec hopf1 = MapSpec::hopf(1, true);
    CHECK(eval_map(hopf1, AngleCoordS3(0.0, 0.3, 2.1)).isApprox(UnitVec3(0, 0, 1), 1e-14));

    const UnitVec3 h = eval_map(hopf1, AngleCoordS3(0.5 * kPi, 0.25 * kPi, 0.0));
    CHECK(h.isApprox(UnitVec3(std::sqrt(0.5), std::sqrt(0.5), 0.0), 1e-14));

    // Pontrjagin n=1 is the identity map
    const MapSpec pont1 = MapSpec::pontrjagin(1);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uth(0.0, kPi), uph(0.0, 2 * kPi);
    for (int i = 0; i < 50; ++i) {
        const AngleCoordS2 p(uth(rng), uph(rng));
        const UnitVec3 r{std::sin(p.theta) * std::cos(p.phi),
                         std::sin(p.theta) * std::sin(p.phi), std::cos(p.theta)};
        CHECK((eval_map(pont1, p) - r).norm() < 1e-12);
    }

    CHECK_THROWS_AS(eval_map(pont1, AngleCoordS3(1.0, 1.0, 1.0)), DomainMismatch);
    CHECK_THROWS_AS(eval_map(hopf1, AngleCoordS2(1.0, 1.0)), DomainMismatch);
}

TEST_CASE("eval_map returns unit vectors densely") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> ut(0.0, kPi), ua(0.0, 2 * kPi);
    for (const MapSpec& spec :
         {MapSpec::hopf(1, false), MapSpec::hopf(3, false), MapSpec::hopf(2, true)}) {
        for (int i = 0; i < 500; ++i) {
            const UnitVec3 h = eval_map(spec, AngleCoordS3(ut(rng), ua(rng), ua(rng)));
            CHECK(std::abs(h.norm() - 1.0) < 1e-12);
        }
    }
    for (const MapSpec& spec : {MapSpec::pontrjagin(2), MapSpec::pontrjagin(4)}) {
        for (int i = 0; i < 500; ++i) {
            const UnitVec3 h = eval_map(spec, AngleCoordS2(ut(rng), ua(rng)));
            CHECK(std::abs(h.norm() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("analytic jets match finite differences") {
    const double h = 1e-6;
    auto check_jet_s3 = [&](const MapSpec& spec, const AngleCoordS3& p) {
        const MapJetS3 jet = eval_map_jet(spec, p);
        auto at = [&](double dt, double da, double db) {
            return eval_map(spec, AngleCoordS3(p.t + dt, p.alpha + da, p.beta + db));
        };
        CHECK((jet.d_t - (at(h, 0, 0) - at(-h, 0, 0)) / (2 * h)).norm() < 1e-8);
        CHECK((jet.d_alpha - (at(0, h, 0) - at(0, -h, 0)) / (2 * h)).norm() < 1e-8);
        CHECK((jet.d_beta - (at(0, 0, h) - at(0, 0, -h)) / (2 * h)).norm() < 1e-8);
    };
    check_jet_s3(MapSpec::hopf(2, false), AngleCoordS3(1.1, 0.7, 2.9));
    check_jet_s3(MapSpec::hopf(3, true), AngleCoordS3(2.0, 4.0, 0.3));

    auto check_jet_s2 = [&](const MapSpec& spec, const AngleCoordS2& p) {
        const MapJetS2 jet = eval_map_jet(spec, p);
        auto at = [&](double dth, double dph) {
            return eval_map(spec, AngleCoordS2(p.theta + dth, p.phi + dph));
        };
        CHECK((jet.d_theta - (at(h, 0) - at(-h, 0)) / (2 * h)).norm() < 1e-8);
        CHECK((jet.d_phi - (at(0, h) - at(0, -h)) / (2 * h)).norm() < 1e-8);
    };
    check_jet_s2(MapSpec::pontrjagin(1), AngleCoordS2(0.9, 1.3));
    check_jet_s2(MapSpec::pontrjagin(3), AngleCoordS2(2.2, 5.1));
}

TEST_CASE("pontrjagin index is +n") {
    const GridS2 grid(96, 64);
    CHECK(pontrjagin_index(MapSpec::pontrjagin(1), grid) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(pontrjagin_index(MapSpec::pontrjagin(3), grid) == doctest::Approx(3.0).epsilon(1e-8));
    CHECK(std::abs(pontrjagin_index(MapSpec::constant_north(), grid)) < 1e-14);
    CHECK_THROWS_AS(pontrjagin_index(MapSpec::hopf(1, true), grid), DomainMismatch);
}

TEST_CASE("pontrjagin index survives monotone reparametrization") {
    // same endpoints a(0) = 0, a(pi) = pi, family of monotone profiles
    const GridS2 grid(128, 64);
    for (int n : {1, 2}) {
        const double p_ref = pontrjagin_index(MapSpec::pontrjagin(n), grid);
        CHECK(std::abs(p_ref - n) < 1e-8);
        for (double amp : {0.1, 0.35, -0.3}) {
            auto reparam = [n, amp](const AngleCoordS2& p) {
                const double a = p.theta + amp * std::sin(2.0 * p.theta);  // monotone for |amp| < 1/2
                const ProfileJet pj = profile_angle(n, a);
                const double b = n * p.phi;
                return UnitVec3{std::sin(pj.value) * std::cos(b),
                                std::sin(pj.value) * std::sin(b), std::cos(pj.value)};
            };
            CHECK(std::abs(pontrjagin_index(reparam, grid) - p_ref) < 1e-6);
        }
    }
}
