#pragma once

#include <Eigen/Dense>
#include <array>
#include <complex>
#include <functional>

#include "berrylink/hmap.hpp"
#include "berrylink/manifold.hpp"

namespace berrylink {

enum class GaugePatch { North, South, HopfGauge };

/// Normalized eigenvector of h.sigma carried with its gauge-patch tag.
struct Spinor2 {
    Cplx up, dn;
    GaugePatch patch;

    double norm() const { return std::sqrt(std::norm(up) + std::norm(dn)); }
    Cplx dot(const Spinor2& other) const {  // <this|other>
        return std::conj(up) * other.up + std::conj(dn) * other.dn;
    }
};

/// +1 eigenspinor of h.sigma in the requested patch.
/// North: (cos(a/2), e^{ib} sin(a/2)) -- singular toward h = -z.
/// South: (e^{-ib} cos(a/2), sin(a/2)) -- singular toward h = +z.
/// Throws PatchSingularity within 1e-9 (chordal) of the bad pole.
Spinor2 eigen_plus(const UnitVec3& h, GaugePatch patch);

/// The global S^3 gauge |Z> = (e^{im a} cos(theta(t)/2), e^{im b} sin(theta(t)/2)).
/// Z diagonalizes the Hopf band map below (fiber phase m(beta-alpha)); the
/// companion eval_map convention m(alpha-beta) is the conjugate fiber phase.
Spinor2 hopf_gauge_spinor(const MapSpec& spec, const AngleCoordS3& p);

/// Unit-vector field whose +1 band the Z gauge describes; same profile
/// theta(t) as eval_map, azimuth m(beta-alpha).
UnitVec3 hopf_band_map(const MapSpec& spec, const AngleCoordS3& p);
MapJetS3 hopf_band_jet(const MapSpec& spec, const AngleCoordS3& p);

struct ConnectionS3 {
    double A_t, A_alpha, A_beta;
};
struct ConnectionS2 {
    double A_theta, A_phi;
};

/// Closed-form Berry connection of |Z>: (0, m cos^2(theta/2), m sin^2(theta/2)).
ConnectionS3 connection_analytic(const MapSpec& hopf, const AngleCoordS3& p);

/// North-patch connection of an S^2 map: A_theta = 0, A_phi = n sin^2(a/2)
/// with a the polar angle of h.
ConnectionS2 connection_north_analytic(const MapSpec& s2map, const AngleCoordS2& p);

/// A_mu = -i <psi | d_mu psi> by centered differences of a smooth spinor field.
using SpinorFieldS3 = std::function<Spinor2(const AngleCoordS3&)>;
using SpinorFieldS2 = std::function<Spinor2(const AngleCoordS2&)>;
ConnectionS3 connection_numeric(const SpinorFieldS3& field, const AngleCoordS3& p,
                                double step = 1e-5);
ConnectionS2 connection_numeric(const SpinorFieldS2& field, const AngleCoordS2& p,
                                double step = 1e-5);

/// Independent curvature components, mu < nu in chart order.
struct CurvatureS3 {
    double F_ta, F_tb, F_ab;
};
struct CurvatureS2 {
    double F_theta_phi;
};

/// F_{mu nu} = (1/2) h . (d_mu h x d_nu h) from closed-form map partials.
CurvatureS3 curvature_from_h(const MapSpec& hopf, const AngleCoordS3& p);
CurvatureS2 curvature_from_h(const MapSpec& s2map, const AngleCoordS2& p);

/// F_{mu nu} = d_mu A_nu - d_nu A_mu by centered differences of the analytic
/// connection of the same band.
CurvatureS3 curvature_from_A(const MapSpec& hopf, const AngleCoordS3& p,
                             double step = 1e-5);
CurvatureS2 curvature_from_A(const MapSpec& s2map, const AngleCoordS2& p,
                             double step = 1e-5);

/// Berry phase around the circle theta = theta0 (traversed in +phi) computed
/// two ways: loop integral of A in the given patch, and flux of F through the
/// cap theta < theta0. The two agree mod 2pi (exactly for a cap containing
/// the patch's regular pole).
struct LoopPhases {
    double line_integral;
    double surface_integral;
};
LoopPhases berry_phase_loop(const MapSpec& s2map, double theta0, const GridS2& grid,
                            GaugePatch patch = GaugePatch::North);

/// Parametrized surface in R^3 with its normal and tangent coordinate frame;
/// built-ins: the unit sphere (u,v) = (theta,phi) and a flat plane patch.
/// An optional position-dependent SO(2) rotation of the tangent frame supports
/// gauge-covariance checks.
class SurfacePatch {
public:
    enum class Kind { UnitSphere, FlatPlane };

    static SurfacePatch unit_sphere();
    static SurfacePatch flat_plane();

    void set_frame_rotation(std::function<double(double, double)> chi);

    Eigen::Vector3d embed(double u, double v) const;
    Eigen::Vector3d normal(double u, double v) const;
    std::array<Eigen::Vector3d, 2> frame(double u, double v) const;
    double rotation_angle(double u, double v) const;

private:
    Kind kind_;
    std::function<double(double, double)> chi_;
    explicit SurfacePatch(Kind k) : kind_(k) {}
};

/// Projector (Christoffel) connection sample at (u,v):
/// (A_mu)^alpha_beta = g^{alpha gamma} <psi_gamma | d_mu psi_beta>, equal to
/// Gamma^alpha_{beta mu} of the induced metric for the coordinate frame.
struct BridgeSample {
    std::array<Eigen::Matrix2d, 2> A;  // indexed by mu
    Eigen::Matrix2d metric;
    Eigen::Matrix2d metric_inv;
};
BridgeSample projector_connection(const SurfacePatch& surf, double u, double v,
                                  double step = 1e-5);

/// Christoffel symbols of the induced metric by the classical route,
/// Gamma^alpha_{beta mu} = (1/2) g^{alpha lambda} (g_{lambda mu,beta}
/// + g_{lambda beta,mu} - g_{beta mu,lambda}), metric derivatives by
/// centered differences. Never touches <psi | d psi> inner products.
std::array<Eigen::Matrix2d, 2> christoffel_from_metric(const SurfacePatch& surf,
                                                       double u, double v,
                                                       double step = 1e-5);

/// R^beta_{nu uv} assembled from christoffel_from_metric (matrix indexed
/// [beta][nu], (rho,sigma) = (u,v)).
Eigen::Matrix2d riemann_matrix(const SurfacePatch& surf, double u, double v,
                               double step = 1e-5);

/// Frame-field curvature F_{uv} built from the projector connection, in the
/// convention where R_{uv} = -F_{uv} holds for the coordinate frame.
Eigen::Matrix2d bridge_curvature_matrix(const SurfacePatch& surf, double u, double v,
                                        double step = 1e-5);

/// max_{beta,nu} |R^beta_{nu uv} + (F_{uv})^beta_nu| with R from the metric
/// pipeline and F from the projector pipeline; small values verify that the
/// projector connection is the Christoffel connection. Meaningful for the
/// coordinate frame (no frame rotation).
double riemann_vs_curvature(const SurfacePatch& surf, double u, double v,
                            double step = 1e-5);

}  // namespace berrylink
