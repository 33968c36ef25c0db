#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "berrylink/berry.hpp"

using namespace berrylink;

namespace {
constexpr double kPi = std::numbers::pi;

Cplx apply_hsigma_row(const UnitVec3& h, const Spinor2& s, int row) {
    const Cplx offdiag(h.x(), row == 0 ? -h.y() : h.y());
    return row == 0 ? h.z() * s.up + offdiag * s.dn : offdiag * s.up - h.z() * s.dn;
}

double eigen_residual(const UnitVec3& h, const Spinor2& s) {
    const Cplx r0 = apply_hsigma_row(h, s, 0) - s.up;
    const Cplx r1 = apply_hsigma_row(h, s, 1) - s.dn;
    return std::sqrt(std::norm(r0) + std::norm(r1));
}
}  // namespace

TEST_CASE("eigen_plus pins and eigen residual") {
    const Spinor2 a = eigen_plus(UnitVec3(0, 0, 1), GaugePatch::North);
    CHECK(std::abs(a.up - 1.0) < 1e-13);
    CHECK(std::abs(a.dn) < 1e-13);

    const Spinor2 b = eigen_plus(UnitVec3(1, 0, 0), GaugePatch::North);
    CHECK(std::abs(b.up - std::sqrt(0.5)) < 1e-13);
    CHECK(std::abs(b.dn - std::sqrt(0.5)) < 1e-13);

    CHECK_THROWS_AS(eigen_plus(UnitVec3(0, 0, -1), GaugePatch::North), PatchSingularity);
    CHECK_THROWS_AS(eigen_plus(UnitVec3(0, 0, 1), GaugePatch::South), PatchSingularity);
    CHECK_THROWS_AS(eigen_plus(UnitVec3(1, 0, 0), GaugePatch::HopfGauge), DomainMismatch);

    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        UnitVec3 h(u(rng), u(rng), u(rng));
        if (h.norm() < 1e-3) continue;
        h.normalize();
        if ((h - UnitVec3(0, 0, -1)).norm() > 1e-6) {
            const Spinor2 s = eigen_plus(h, GaugePatch::North);
            CHECK(std::abs(s.norm() - 1.0) < 1e-13);
            CHECK(eigen_residual(h, s) < 1e-12);
        }
        if ((h - UnitVec3(0, 0, 1)).norm() > 1e-6)
            CHECK(eigen_residual(h, eigen_plus(h, GaugePatch::South)) < 1e-12);
    }
}

TEST_CASE("hopf gauge spinor pins and band eigen residual") {
    const MapSpec spec = MapSpec::hopf(1, true);

    const Spinor2 z0 = hopf_gauge_spinor(spec, AngleCoordS3(0.0, 0.0, 0.0));
    CHECK(std::abs(z0.up - 1.0) < 1e-13);
    CHECK(std::abs(z0.dn) < 1e-13);

    const Spinor2 z1 = hopf_gauge_spinor(spec, AngleCoordS3(0.5 * kPi, 0.5 * kPi, 0.0));
    CHECK(std::abs(z1.up - Cplx(0.0, std::sqrt(0.5))) < 1e-13);
    CHECK(std::abs(z1.dn - std::sqrt(0.5)) < 1e-13);

    std::mt19937 rng(23);
    std::uniform_real_distribution<double> ut(0.0, kPi), ua(0.0, 2 * kPi);
    for (const MapSpec& s : {MapSpec::hopf(1, true), MapSpec::hopf(2, false), MapSpec::hopf(3, true)}) {
        for (int i = 0; i < 100; ++i) {
            const AngleCoordS3 p(ut(rng), ua(rng), ua(rng));
            const Spinor2 z = hopf_gauge_spinor(s, p);
            CHECK(std::abs(z.norm() - 1.0) < 1e-13);
            CHECK(eigen_residual(hopf_band_map(s, p), z) < 1e-12);
        }
    }

    CHECK_THROWS_AS(hopf_gauge_spinor(MapSpec::pontrjagin(1), AngleCoordS3(1, 1, 1)),
                    DomainMismatch);
}

TEST_CASE("connection_analytic pins") {
    const ConnectionS3 a =
        connection_analytic(MapSpec::hopf(1, true), AngleCoordS3(0.5 * kPi, 0.1, 0.2));
    CHECK(a.A_t == 0.0);
    CHECK(a.A_alpha == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(a.A_beta == doctest::Approx(0.5).epsilon(1e-14));

    const ConnectionS3 b =
        connection_analytic(MapSpec::hopf(2, true), AngleCoordS3(0.0, 0.0, 0.0));
    CHECK(b.A_alpha == doctest::Approx(2.0));
    CHECK(b.A_beta == doctest::Approx(0.0));

    const ConnectionS3 c =
        connection_analytic(MapSpec::hopf(0, true), AngleCoordS3(1.0, 2.0, 3.0));
    CHECK(c.A_alpha == 0.0);
    CHECK(c.A_beta == 0.0);
}

TEST_CASE("connection_numeric observes the analytic connection") {
    const MapSpec spec = MapSpec::hopf(1, true);
    SpinorFieldS3 field = [&](const AngleCoordS3& q) { return hopf_gauge_spinor(spec, q); };

    const AngleCoordS3 p(0.5 * kPi, 1.2, 0.4);
    const ConnectionS3 num = connection_numeric(field, p, 1e-5);
    CHECK(std::abs(num.A_t - 0.0) < 1e-9);
    CHECK(std::abs(num.A_alpha - 0.5) < 1e-9);
    CHECK(std::abs(num.A_beta - 0.5) < 1e-9);

    // monopole North patch: A_phi = sin^2(theta/2) at theta = pi/2
    SpinorFieldS2 monopole = [](const AngleCoordS2& q) {
        return eigen_plus(eval_map(MapSpec::pontrjagin(1), q), GaugePatch::North);
    };
    const ConnectionS2 mn = connection_numeric(monopole, AngleCoordS2(0.5 * kPi, 0.8));
    CHECK(std::abs(mn.A_phi - 0.5) < 1e-9);
    CHECK(std::abs(mn.A_theta) < 1e-9);

    // constant field has zero connection
    SpinorFieldS3 constant = [](const AngleCoordS3&) {
        return Spinor2{std::sqrt(0.5), std::sqrt(0.5), GaugePatch::North};
    };
    const ConnectionS3 cz = connection_numeric(constant, p);
    CHECK(std::abs(cz.A_t) < 1e-12);
    CHECK(std::abs(cz.A_alpha) < 1e-12);
    CHECK(std::abs(cz.A_beta) < 1e-12);
}

TEST_CASE("abelian gauge covariance: chi = alpha + 2 beta") {
    const MapSpec spec = MapSpec::hopf(1, true);
    SpinorFieldS3 base = [&](const AngleCoordS3& q) { return hopf_gauge_spinor(spec, q); };
    SpinorFieldS3 shifted = [&](const AngleCoordS3& q) {
        Spinor2 s = hopf_gauge_spinor(spec, q);
        const Cplx ph = std::polar(1.0, q.alpha + 2.0 * q.beta);
        return Spinor2{s.up * ph, s.dn * ph, s.patch};
    };
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> ut(0.3, kPi - 0.3), ua(0.0, 2 * kPi);
    for (int i = 0; i < 20; ++i) {
        const AngleCoordS3 p(ut(rng), ua(rng), ua(rng));
        const ConnectionS3 a = connection_numeric(base, p);
        const ConnectionS3 b = connection_numeric(shifted, p);
        CHECK(std::abs(b.A_t - a.A_t) < 1e-8);
        CHECK(std::abs(b.A_alpha - (a.A_alpha + 1.0)) < 1e-8);
        CHECK(std::abs(b.A_beta - (a.A_beta + 2.0)) < 1e-8);
    }
}

TEST_CASE("curvature pins") {
    // monopole: F_{theta phi} = sin(theta)/2
    for (double th : {0.3, 1.1, 2.5}) {
        const CurvatureS2 f = curvature_from_h(MapSpec::pontrjagin(1), AngleCoordS2(th, 0.7));
        CHECK(f.F_theta_phi == doctest::Approx(0.5 * std::sin(th)).epsilon(1e-12));
    }

    // deformed Hopf at t = pi/2: F_ta = -1/2, F_tb = +1/2 from the connection
    const AngleCoordS3 p(0.5 * kPi, 1.0, 2.0);
    const CurvatureS3 fa = curvature_from_A(MapSpec::hopf(1, true), p, 1e-5);
    CHECK(std::abs(fa.F_ta + 0.5) < 1e-9);
    CHECK(std::abs(fa.F_tb - 0.5) < 1e-9);
    CHECK(std::abs(fa.F_ab) < 1e-9);

    // F_ab vanishes because d_alpha h = -d_beta h
    const CurvatureS3 fh = curvature_from_h(MapSpec::hopf(2, false), AngleCoordS3(1.0, 0.5, 0.25));
    CHECK(std::abs(fh.F_ab) < 1e-14);

    const CurvatureS2 fz = curvature_from_h(MapSpec::constant_north(), AngleCoordS2(1.0, 1.0));
    CHECK(fz.F_theta_phi == 0.0);

    const CurvatureS3 fz3 = curvature_from_h(MapSpec::constant_north(), AngleCoordS3(1.0, 1.0, 1.0));
    CHECK(fz3.F_ta == 0.0);
    CHECK(fz3.F_tb == 0.0);
    CHECK(fz3.F_ab == 0.0);

    const CurvatureS3 f0 = curvature_from_A(MapSpec::hopf(0, true), p);
    CHECK(std::abs(f0.F_ta) < 1e-14);
    CHECK(std::abs(f0.F_tb) < 1e-14);
}

TEST_CASE("theorem equivalence: curvature from A equals curvature from h") {
    // S^3 Hopf variants over a 16^3 sample
    for (int m : {1, 2, 3}) {
        for (bool deformed : {true, false}) {
            const MapSpec spec = MapSpec::hopf(m, deformed);
            double worst = 0.0;
            for (int i = 0; i < 16; ++i)
                for (int j = 0; j < 16; ++j)
                    for (int k = 0; k < 16; ++k) {
                        const AngleCoordS3 p(kPi * (i + 0.5) / 16, 2 * kPi * j / 16,
                                             2 * kPi * k / 16);
                        const CurvatureS3 fa = curvature_from_A(spec, p);
                        const CurvatureS3 fh = curvature_from_h(spec, p);
                        worst = std::max({worst, std::abs(fa.F_ta - fh.F_ta),
                                          std::abs(fa.F_tb - fh.F_tb),
                                          std::abs(fa.F_ab - fh.F_ab)});
                    }
            CHECK(worst < 1e-6);
        }
    }

    // S^2 Pontrjagin maps over a 16^2 sample
    for (int n : {1, 2, 3}) {
        const MapSpec spec = MapSpec::pontrjagin(n);
        double worst = 0.0;
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 16; ++j) {
                const AngleCoordS2 p(kPi * (i + 0.5) / 16, 2 * kPi * j / 16);
                worst = std::max(worst, std::abs(curvature_from_A(spec, p).F_theta_phi -
                                                 curvature_from_h(spec, p).F_theta_phi));
            }
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("berry phase loop: line equals surface") {
    const GridS2 grid(64, 64);
    const MapSpec identity = MapSpec::pontrjagin(1);

    // shrinking loop
    const LoopPhases tiny = berry_phase_loop(identity, 1e-4, grid);
    CHECK(std::abs(tiny.line_integral) < 1e-6);
    CHECK(std::abs(tiny.surface_integral) < 1e-6);

    // theta0 = pi/2: both equal pi
    const LoopPhases half = berry_phase_loop(identity, 0.5 * kPi, grid);
    CHECK(half.line_integral == doctest::Approx(kPi).epsilon(1e-8));
    CHECK(half.surface_integral == doctest::Approx(kPi).epsilon(1e-8));

    // Stokes on the cap for random loops and maps
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> uth(0.2, kPi - 0.2);
    for (int i = 0; i < 20; ++i) {
        const double th0 = uth(rng);
        const MapSpec spec = (i % 2) ? MapSpec::pontrjagin(2) : identity;
        const LoopPhases lp = berry_phase_loop(spec, th0, grid);
        const Cplx a = std::polar(1.0, lp.line_integral);
        const Cplx b = std::polar(1.0, lp.surface_integral);
        CHECK(std::abs(a - b) < 1e-8);
    }

    // the loop at theta0 = pi runs through the North patch singularity
    CHECK_THROWS_AS(berry_phase_loop(identity, kPi, grid, GaugePatch::North),
                    PatchSingularity);

    // South patch: holonomy agrees only mod 2pi; raw integrals differ by 2pi n
    const LoopPhases south = berry_phase_loop(identity, 0.5 * kPi, grid, GaugePatch::South);
    CHECK(std::abs(std::polar(1.0, south.line_integral) -
                   std::polar(1.0, south.surface_integral)) < 1e-8);
    CHECK(south.line_integral ==
          doctest::Approx(south.surface_integral - 2 * kPi).epsilon(1e-8));
}

TEST_CASE("north and south holonomies agree on the equator") {
    const int nphi = 256;
    const double dphi = 2 * kPi / nphi;
    for (int n : {1, 2, 3}) {
        const MapSpec spec = MapSpec::pontrjagin(n);
        double north = 0.0, south = 0.0;
        for (int j = 0; j < nphi; ++j) {
            const AngleCoordS2 q(0.5 * kPi, dphi * j);
            SpinorFieldS2 fn = [&](const AngleCoordS2& x) {
                return eigen_plus(eval_map(spec, x), GaugePatch::North);
            };
            SpinorFieldS2 fs = [&](const AngleCoordS2& x) {
                return eigen_plus(eval_map(spec, x), GaugePatch::South);
            };
            // step 1e-4: truncation is still negligible and the larger step
            // keeps the roundoff of the difference quotients below 1e-11
            north += connection_numeric(fn, q, 1e-4).A_phi * dphi;
            south += connection_numeric(fs, q, 1e-4).A_phi * dphi;
        }
        CHECK(std::abs(std::polar(1.0, north) - std::polar(1.0, south)) < 1e-10);
        // and the difference is the 2 pi n winding of the transition function
        CHECK(std::abs((north - south) - 2 * kPi * n) < 1e-8);
    }
}

TEST_CASE("surface frames: unit normal orthogonal to the tangent frame") {
    std::mt19937 rng(59);
    std::uniform_real_distribution<double> uth(0.2, kPi - 0.2), uph(0.0, 2 * kPi);
    const SurfacePatch sphere = SurfacePatch::unit_sphere();
    const SurfacePatch plane = SurfacePatch::flat_plane();
    for (int i = 0; i < 50; ++i) {
        const double u = uth(rng), v = uph(rng);
        for (const SurfacePatch* s : {&sphere, &plane}) {
            const Eigen::Vector3d n = s->normal(u, v);
            CHECK(std::abs(n.norm() - 1.0) < 1e-12);
            const auto psi = s->frame(u, v);
            CHECK(std::abs(n.dot(psi[0])) < 1e-12);
            CHECK(std::abs(n.dot(psi[1])) < 1e-12);
        }
    }
}

TEST_CASE("projector connection reproduces Christoffel symbols") {
    const SurfacePatch sphere = SurfacePatch::unit_sphere();

    // oracle: Christoffels of ds^2 = dtheta^2 + sin^2(theta) dphi^2 from the
    // metric derivative formula evaluated analytically
    auto oracle = [](double th) {
        Eigen::Matrix2d A_th = Eigen::Matrix2d::Zero(), A_ph = Eigen::Matrix2d::Zero();
        A_th(1, 1) = std::cos(th) / std::sin(th);             // Gamma^phi_{phi theta}
        A_ph(0, 1) = -std::sin(th) * std::cos(th);            // Gamma^theta_{phi phi}
        A_ph(1, 0) = std::cos(th) / std::sin(th);             // Gamma^phi_{theta phi}
        return std::make_pair(A_th, A_ph);
    };

    for (double th : {0.25 * kPi, 0.5 * kPi, 0.7}) {
        const BridgeSample s = projector_connection(sphere, th, 1.1);
        const auto [A_th, A_ph] = oracle(th);
        CHECK((s.A[0] - A_th).cwiseAbs().maxCoeff() < 1e-6);
        CHECK((s.A[1] - A_ph).cwiseAbs().maxCoeff() < 1e-6);
    }

    // cot(pi/4) = 1
    const BridgeSample q = projector_connection(sphere, 0.25 * kPi, 0.3);
    CHECK(q.A[0](1, 1) == doctest::Approx(1.0).epsilon(1e-6));
    // Gamma^theta_{phi phi} = -sin cos = 0 at the equator
    CHECK(std::abs(projector_connection(sphere, 0.5 * kPi, 0.3).A[1](0, 1)) < 1e-8);

    const SurfacePatch plane = SurfacePatch::flat_plane();
    const BridgeSample f = projector_connection(plane, 0.2, -0.4);
    CHECK(f.A[0].cwiseAbs().maxCoeff() < 1e-10);
    CHECK(f.A[1].cwiseAbs().maxCoeff() < 1e-10);

    // degenerate frame at the coordinate pole
    CHECK_THROWS_AS(projector_connection(sphere, 1e-9, 0.0), DegenerateFrame);
}

TEST_CASE("riemann equals minus curvature") {
    const SurfacePatch sphere = SurfacePatch::unit_sphere();
    CHECK(riemann_vs_curvature(sphere, kPi / 3.0, 0.8) < 1e-5);

    // R^theta_{phi theta phi} = sin^2(theta)
    const Eigen::Matrix2d R = riemann_matrix(sphere, 0.5 * kPi, 0.8);
    CHECK(R(0, 1) == doctest::Approx(1.0).epsilon(1e-5));

    const SurfacePatch plane = SurfacePatch::flat_plane();
    CHECK(riemann_vs_curvature(plane, 0.1, 0.2) < 1e-10);
}

TEST_CASE("non-abelian covariance under a phi-dependent frame rotation") {
    SurfacePatch plain = SurfacePatch::unit_sphere();
    SurfacePatch rotated = SurfacePatch::unit_sphere();
    rotated.set_frame_rotation([](double, double v) { return 0.7 * v; });

    for (double th : {0.6, 0.5 * kPi, 2.2}) {
        const double v = 0.9;
        const Eigen::Matrix2d F = bridge_curvature_matrix(plain, th, v);
        const Eigen::Matrix2d Fr = bridge_curvature_matrix(rotated, th, v);
        const double chi = rotated.rotation_angle(th, v);
        Eigen::Matrix2d S;
        S << std::cos(chi), std::sin(chi), -std::sin(chi), std::cos(chi);
        CHECK((Fr - S * F * S.transpose()).cwiseAbs().maxCoeff() < 1e-6);
    }
}
