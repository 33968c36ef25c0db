#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "berrylink/berry.hpp"
#include "berrylink/hmap.hpp"
#include "berrylink/manifold.hpp"

namespace berrylink {

/// Raw quadrature value of a topological invariant together with its
/// quantized reading. Nothing is silently rounded: `residual` is the
/// distance from `raw` to the reconstructed quantized value.
struct InvariantResult {
    double raw = 0.0;
    double normalized = 0.0;
    double rounded = 0.0;
    double residual = 0.0;
};

/// Chern number of the +1 band of h.sigma over S^2, in the normalization
/// where C = P/2 (half-integer quantized):
///   C = (1/16pi) Int eps^{mu nu} h . (d_mu h x d_nu h) d^2x.
/// rounded = nearest half-integer.
InvariantResult chern_number(const MapSpec& s2map, const GridS2& grid);

/// Gauge-free plaquette (link-overlap) Chern number for a generic Hermitian
/// field over S^2, reported in the same half-integer normalization
/// (plaquette winding / 2). `band` indexes eigenvalues in ascending order.
/// Throws BandDegeneracy when a link overlap magnitude drops below 1e-6.
using HermitianField = std::function<Eigen::MatrixXcd(const AngleCoordS2&)>;
InvariantResult chern_number_plaquette(const HermitianField& field, int band,
                                       int ntheta, int nphi);

/// The 3x3 spin-1 field Sigma . r(theta,phi) used by the spin-1 identity-map
/// Chern check.
HermitianField spin1_identity_field();

/// 2x2 field h(p).sigma for an S^2 map spec.
HermitianField hsigma_field(const MapSpec& s2map);

/// Chern-Simons integral of the Hopf-gauge Berry connection over S^3,
/// orientation dt^dalpha^dbeta > 0.
///   raw        = Int A ^ dA            (= -4 pi^2 m^2 for the built-ins)
///   normalized = (2/8pi) * raw         (the d^3x eps A F normalization)
///   rounded    = nearest integer of raw / (-4 pi^2)  (m^2 units)
InvariantResult chern_simons_raw(const MapSpec& hopf, const QuadratureGrid& grid);

/// Closed polyline in R^3.
struct Polyline3 {
    std::vector<Eigen::Vector3d> pts;  // first point not repeated at the end
    bool closed = true;
};

/// Gauss linking integral of two disjoint closed polylines by the segment
/// midpoint rule with one 2x Richardson refinement. Throws CurvesTooClose
/// if the curves come within 1e-6, OpenCurve for open/short input.
double linking_number(const Polyline3& c1, const Polyline3& c2);

}  // namespace berrylink
