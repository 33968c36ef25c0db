#include "berrylink/berry.hpp"

#include <cmath>
#include <numbers>
#include <type_traits>

#include "berrylink/numeric.hpp"

namespace berrylink {

namespace {
constexpr double kPi = std::numbers::pi;

// polar/azimuth angles of a unit vector
void sphere_angles(const UnitVec3& h, double& a, double& b) {
    a = std::acos(std::clamp(h.z(), -1.0, 1.0));
    b = std::atan2(h.y(), h.x());
}

double hopf_theta(const MapSpec& spec, double t) {
    return spec.deformed ? t : profile_angle(spec.degree, t).value;
}

void require_hopf(const MapSpec& spec, const char* where) {
    if (spec.kind != MapSpec::Kind::HopfS3)
        throw DomainMismatch(std::string(where) + ": spec is not a Hopf variant");
}

void require_s2(const MapSpec& spec, const char* where) {
    if (!spec.is_s2())
        throw DomainMismatch(std::string(where) + ": spec is not an S^2 map");
}

// 4th-order centered first derivative of a scalar functional
template <typename F>
double fd4(F&& f, double x, double h) {
    return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h);
}

}  // namespace

Spinor2 eigen_plus(const UnitVec3& h, GaugePatch patch) {
    if (patch == GaugePatch::HopfGauge)
        throw DomainMismatch("eigen_plus: the Hopf gauge needs a chart point; use hopf_gauge_spinor");
    double a, b;
    sphere_angles(h, a, b);
    const UnitVec3 bad =
        (patch == GaugePatch::North) ? UnitVec3{0, 0, -1} : UnitVec3{0, 0, 1};
    if ((h - bad).norm() < 1e-9)
        throw PatchSingularity("eigen_plus: h at the patch's singular pole");
    const double c = std::cos(0.5 * a), s = std::sin(0.5 * a);
    if (patch == GaugePatch::North)
        return {c, std::polar(s, b), GaugePatch::North};
    return {std::polar(c, -b), s, GaugePatch::South};
}

UnitVec3 hopf_band_map(const MapSpec& spec, const AngleCoordS3& p) {
    require_hopf(spec, "hopf_band_map");
    const double theta = hopf_theta(spec, p.t);
    const double phi = spec.degree * (p.beta - p.alpha);
    const double st = std::sin(theta);
    return {st * std::cos(phi), st * std::sin(phi), std::cos(theta)};
}

MapJetS3 hopf_band_jet(const MapSpec& spec, const AngleCoordS3& p) {
    require_hopf(spec, "hopf_band_jet");
    const int m = spec.degree;
    double theta, slope;
    if (spec.deformed) {
        theta = p.t;
        slope = 1.0;
    } else {
        const ProfileJet pj = profile_angle(m, p.t);
        theta = pj.value;
        slope = pj.slope;
    }
    const double phi = m * (p.beta - p.alpha);
    const double st = std::sin(theta), ct = std::cos(theta);
    const double cp = std::cos(phi), sp = std::sin(phi);
    MapJetS3 jet;
    jet.h = {st * cp, st * sp, ct};
    jet.d_t = slope * UnitVec3{ct * cp, ct * sp, -st};
    jet.d_beta = m * st * UnitVec3{-sp, cp, 0.0};
    jet.d_alpha = -jet.d_beta;
    return jet;
}

Spinor2 hopf_gauge_spinor(const MapSpec& spec, const AngleCoordS3& p) {
    require_hopf(spec, "hopf_gauge_spinor");
    const double theta = hopf_theta(spec, p.t);
    const double m = spec.degree;
    return {std::polar(std::cos(0.5 * theta), m * p.alpha),
            std::polar(std::sin(0.5 * theta), m * p.beta), GaugePatch::HopfGauge};
}

ConnectionS3 connection_analytic(const MapSpec& hopf, const AngleCoordS3& p) {
    require_hopf(hopf, "connection_analytic");
    const double theta = hopf_theta(hopf, p.t);
    const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    return {0.0, hopf.degree * c * c, hopf.degree * s * s};
}

ConnectionS2 connection_north_analytic(const MapSpec& s2map, const AngleCoordS2& p) {
    require_s2(s2map, "connection_north_analytic");
    if (s2map.kind == MapSpec::Kind::ConstantNorth) return {0.0, 0.0};
    const double a = profile_angle(s2map.degree, p.theta).value;
    const double s = std::sin(0.5 * a);
    return {0.0, s2map.degree * s * s};
}

namespace {

// Im<psi|dpsi> along one coordinate by a 4th-order stencil.
template <typename Field, typename Point>
double numeric_component(const Field& field, const Point& base, int axis, double step) {
    auto shift = [&](double d) {
        Point q = base;
        if constexpr (std::is_same_v<Point, AngleCoordS3>) {
            if (axis == 0) q = AngleCoordS3(base.t + d, base.alpha, base.beta);
            if (axis == 1) q = AngleCoordS3(base.t, base.alpha + d, base.beta);
            if (axis == 2) q = AngleCoordS3(base.t, base.alpha, base.beta + d);
        } else {
            if (axis == 0) q = AngleCoordS2(base.theta + d, base.phi);
            if (axis == 1) q = AngleCoordS2(base.theta, base.phi + d);
        }
        return field(q);
    };
    const Spinor2 psi = field(base);
    const Spinor2 m2 = shift(-2 * step), m1 = shift(-step), p1 = shift(step),
                  p2 = shift(2 * step);
    const Cplx dup =
        (m2.up - 8.0 * m1.up + 8.0 * p1.up - p2.up) / (12.0 * step);
    const Cplx ddn =
        (m2.dn - 8.0 * m1.dn + 8.0 * p1.dn - p2.dn) / (12.0 * step);
    return (std::conj(psi.up) * dup + std::conj(psi.dn) * ddn).imag();
}

double shrink_polar_step(double x, double step) {
    return std::min({step, 0.25 * x, 0.25 * (kPi - x)});
}

}  // namespace

ConnectionS3 connection_numeric(const SpinorFieldS3& field, const AngleCoordS3& p,
                                double step) {
    const double ht = shrink_polar_step(p.t, step);
    return {numeric_component(field, p, 0, ht), numeric_component(field, p, 1, step),
            numeric_component(field, p, 2, step)};
}

ConnectionS2 connection_numeric(const SpinorFieldS2& field, const AngleCoordS2& p,
                                double step) {
    const double hth = shrink_polar_step(p.theta, step);
    return {numeric_component(field, p, 0, hth), numeric_component(field, p, 1, step)};
}

CurvatureS3 curvature_from_h(const MapSpec& hopf, const AngleCoordS3& p) {
    if (hopf.kind == MapSpec::Kind::ConstantNorth) return {0.0, 0.0, 0.0};
    const MapJetS3 jet = hopf_band_jet(hopf, p);
    return {0.5 * jet.h.dot(jet.d_t.cross(jet.d_alpha)),
            0.5 * jet.h.dot(jet.d_t.cross(jet.d_beta)),
            0.5 * jet.h.dot(jet.d_alpha.cross(jet.d_beta))};
}

CurvatureS2 curvature_from_h(const MapSpec& s2map, const AngleCoordS2& p) {
    require_s2(s2map, "curvature_from_h");
    const MapJetS2 jet = eval_map_jet(s2map, p);
    return {0.5 * jet.h.dot(jet.d_theta.cross(jet.d_phi))};
}

CurvatureS3 curvature_from_A(const MapSpec& hopf, const AngleCoordS3& p, double step) {
    require_hopf(hopf, "curvature_from_A");
    const double ht = shrink_polar_step(p.t, step);
    auto Aa = [&](double t) { return connection_analytic(hopf, AngleCoordS3(t, p.alpha, p.beta)).A_alpha; };
    auto Ab = [&](double t) { return connection_analytic(hopf, AngleCoordS3(t, p.alpha, p.beta)).A_beta; };
    // A_t = 0 and A_alpha, A_beta depend on t only; the remaining partials
    // are evaluated anyway to keep the stencil honest about cancellations.
    auto At_a = [&](double a) { return connection_analytic(hopf, AngleCoordS3(p.t, a, p.beta)).A_t; };
    auto At_b = [&](double b) { return connection_analytic(hopf, AngleCoordS3(p.t, p.alpha, b)).A_t; };
    auto Aa_b = [&](double b) { return connection_analytic(hopf, AngleCoordS3(p.t, p.alpha, b)).A_alpha; };
    auto Ab_a = [&](double a) { return connection_analytic(hopf, AngleCoordS3(p.t, a, p.beta)).A_beta; };
    const double F_ta = fd4(Aa, p.t, ht) - fd4(At_a, p.alpha, step);
    const double F_tb = fd4(Ab, p.t, ht) - fd4(At_b, p.beta, step);
    const double F_ab = fd4(Ab_a, p.alpha, step) - fd4(Aa_b, p.beta, step);
    return {F_ta, F_tb, F_ab};
}

CurvatureS2 curvature_from_A(const MapSpec& s2map, const AngleCoordS2& p, double step) {
    require_s2(s2map, "curvature_from_A");
    const double hth = shrink_polar_step(p.theta, step);
    auto Ap = [&](double th) { return connection_north_analytic(s2map, AngleCoordS2(th, p.phi)).A_phi; };
    auto At = [&](double ph) { return connection_north_analytic(s2map, AngleCoordS2(p.theta, ph)).A_theta; };
    return {fd4(Ap, p.theta, hth) - fd4(At, p.phi, step)};
}

LoopPhases berry_phase_loop(const MapSpec& s2map, double theta0, const GridS2& grid,
                            GaugePatch patch) {
    require_s2(s2map, "berry_phase_loop");
    LoopPhases out{0.0, 0.0};
    if (theta0 <= 0.0) return out;

    SpinorFieldS2 field = [&](const AngleCoordS2& q) {
        return eigen_plus(eval_map(s2map, q), patch);
    };

    // loop integral of A_phi over the circle theta = theta0
    const int nphi = grid.nphi();
    const double dphi = 2.0 * kPi / nphi;
    for (int j = 0; j < nphi; ++j) {
        const AngleCoordS2 q(theta0, dphi * j);
        out.line_integral += connection_numeric(field, q).A_phi * dphi;
    }

    // flux of F through the cap theta < theta0
    numeric::GaussRule cap = numeric::gauss_legendre(grid.ntheta(), 0.0, theta0);
    for (int i = 0; i < grid.ntheta(); ++i) {
        double row = 0.0;
        for (int j = 0; j < nphi; ++j)
            row += curvature_from_h(s2map, AngleCoordS2(cap.nodes[i], dphi * j)).F_theta_phi;
        out.surface_integral += cap.weights[i] * dphi * row;
    }
    return out;
}

SurfacePatch SurfacePatch::unit_sphere() { return SurfacePatch(Kind::UnitSphere); }
SurfacePatch SurfacePatch::flat_plane() { return SurfacePatch(Kind::FlatPlane); }

void SurfacePatch::set_frame_rotation(std::function<double(double, double)> chi) {
    chi_ = std::move(chi);
}

Eigen::Vector3d SurfacePatch::embed(double u, double v) const {
    if (kind_ == Kind::UnitSphere)
        return {std::sin(u) * std::cos(v), std::sin(u) * std::sin(v), std::cos(u)};
    return {u, v, 0.0};
}

Eigen::Vector3d SurfacePatch::normal(double u, double v) const {
    if (kind_ == Kind::UnitSphere) return embed(u, v);
    return {0.0, 0.0, 1.0};
}

double SurfacePatch::rotation_angle(double u, double v) const {
    return chi_ ? chi_(u, v) : 0.0;
}

std::array<Eigen::Vector3d, 2> SurfacePatch::frame(double u, double v) const {
    std::array<Eigen::Vector3d, 2> psi;
    if (kind_ == Kind::UnitSphere) {
        psi[0] = {std::cos(u) * std::cos(v), std::cos(u) * std::sin(v), -std::sin(u)};
        psi[1] = {-std::sin(u) * std::sin(v), std::sin(u) * std::cos(v), 0.0};
    } else {
        psi[0] = {1.0, 0.0, 0.0};
        psi[1] = {0.0, 1.0, 0.0};
    }
    if (chi_) {
        const double c = std::cos(chi_(u, v)), s = std::sin(chi_(u, v));
        const Eigen::Vector3d p0 = psi[0], p1 = psi[1];
        psi[0] = c * p0 + s * p1;
        psi[1] = -s * p0 + c * p1;
    }
    return psi;
}

BridgeSample projector_connection(const SurfacePatch& surf, double u, double v,
                                  double step) {
    const auto psi = surf.frame(u, v);
    BridgeSample out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) out.metric(a, b) = psi[a].dot(psi[b]);
    if (std::abs(out.metric.determinant()) < 1e-12)
        throw DegenerateFrame("projector_connection: induced metric is degenerate");
    out.metric_inv = out.metric.inverse();

    // d_mu psi_beta by 4th-order centered differences of the frame field
    std::array<std::array<Eigen::Vector3d, 2>, 2> dpsi;  // [mu][beta]
    for (int mu = 0; mu < 2; ++mu) {
        auto frame_at = [&](double d) {
            return (mu == 0) ? surf.frame(u + d, v) : surf.frame(u, v + d);
        };
        const auto m2 = frame_at(-2 * step), m1 = frame_at(-step), p1 = frame_at(step),
                   p2 = frame_at(2 * step);
        for (int b = 0; b < 2; ++b)
            dpsi[mu][b] =
                (m2[b] - 8.0 * m1[b] + 8.0 * p1[b] - p2[b]) / (12.0 * step);
    }

    for (int mu = 0; mu < 2; ++mu) {
        Eigen::Matrix2d lower;  // <psi_gamma | d_mu psi_beta>
        for (int g = 0; g < 2; ++g)
            for (int b = 0; b < 2; ++b) lower(g, b) = psi[g].dot(dpsi[mu][b]);
        out.A[mu] = out.metric_inv * lower;
    }
    return out;
}

namespace {

// outer step for differentiating connection-level quantities
double outer_step(double step) { return std::max(1e-3, 10.0 * step); }

Eigen::Matrix2d induced_metric(const SurfacePatch& surf, double u, double v) {
    const auto psi = surf.frame(u, v);
    Eigen::Matrix2d g;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) g(a, b) = psi[a].dot(psi[b]);
    return g;
}

// 4th-order centered difference of a matrix-valued map along axis mu
template <typename F>
Eigen::Matrix2d fd4_matrix(F&& at, double h) {
    return ((at(-2 * h) - 8.0 * at(-h) + 8.0 * at(h) - at(2 * h)) / (12.0 * h)).eval();
}

}  // namespace

std::array<Eigen::Matrix2d, 2> christoffel_from_metric(const SurfacePatch& surf,
                                                       double u, double v, double step) {
    const Eigen::Matrix2d g = induced_metric(surf, u, v);
    if (std::abs(g.determinant()) < 1e-12)
        throw DegenerateFrame("christoffel_from_metric: induced metric is degenerate");
    const Eigen::Matrix2d ginv = g.inverse();

    std::array<Eigen::Matrix2d, 2> dg;  // dg[mu] = d_mu g
    for (int mu = 0; mu < 2; ++mu)
        dg[mu] = fd4_matrix(
            [&](double d) {
                return (mu == 0) ? induced_metric(surf, u + d, v)
                                 : induced_metric(surf, u, v + d);
            },
            step);

    std::array<Eigen::Matrix2d, 2> gamma;  // gamma[mu](a, b) = Gamma^a_{b mu}
    for (int mu = 0; mu < 2; ++mu)
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                double acc = 0.0;
                for (int l = 0; l < 2; ++l)
                    acc += ginv(a, l) * (dg[b](l, mu) + dg[mu](l, b) - dg[l](b, mu));
                gamma[mu](a, b) = 0.5 * acc;
            }
    return gamma;
}

Eigen::Matrix2d riemann_matrix(const SurfacePatch& surf, double u, double v, double step) {
    const double h = outer_step(step);
    const std::array<Eigen::Matrix2d, 2> c = christoffel_from_metric(surf, u, v, step);
    // R^beta_{nu uv} = Gamma^beta_{nu v,u} - Gamma^beta_{nu u,v}
    //                + Gamma^beta_{alpha u} Gamma^alpha_{nu v}
    //                - Gamma^beta_{alpha v} Gamma^alpha_{nu u}
    const Eigen::Matrix2d dGv_du = fd4_matrix(
        [&](double d) { return christoffel_from_metric(surf, u + d, v, step)[1]; }, h);
    const Eigen::Matrix2d dGu_dv = fd4_matrix(
        [&](double d) { return christoffel_from_metric(surf, u, v + d, step)[0]; }, h);
    return dGv_du - dGu_dv + c[0] * c[1] - c[1] * c[0];
}

Eigen::Matrix2d bridge_curvature_matrix(const SurfacePatch& surf, double u, double v,
                                        double step) {
    // Convention fixed so that R_{uv} = -F_{uv} is an identity for the
    // coordinate frame: F_{uv} = d_v A_u - d_u A_v + [A_v, A_u], with A the
    // projector (Berry) connection of the frame bundle.
    const double h = outer_step(step);
    const BridgeSample c = projector_connection(surf, u, v, step);
    const Eigen::Matrix2d dAu_dv = fd4_matrix(
        [&](double d) { return projector_connection(surf, u, v + d, step).A[0]; }, h);
    const Eigen::Matrix2d dAv_du = fd4_matrix(
        [&](double d) { return projector_connection(surf, u + d, v, step).A[1]; }, h);
    return dAu_dv - dAv_du + c.A[1] * c.A[0] - c.A[0] * c.A[1];
}

double riemann_vs_curvature(const SurfacePatch& surf, double u, double v, double step) {
    const Eigen::Matrix2d R = riemann_matrix(surf, u, v, step);
    const Eigen::Matrix2d F = bridge_curvature_matrix(surf, u, v, step);
    return (R + F).cwiseAbs().maxCoeff();
}

}  // namespace berrylink
