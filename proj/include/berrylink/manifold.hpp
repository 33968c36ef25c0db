#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

#include "berrylink/errors.hpp"

namespace berrylink {

using Cplx = std::complex<double>;

/// Point on S^3 in the (t, alpha, beta) chart:
///   (cos(t/2)cos a, cos(t/2)sin a, sin(t/2)cos b, sin(t/2)sin b),
/// t in [0,pi], alpha/beta reduced mod 2pi at construction.
struct AngleCoordS3 {
    double t;
    double alpha;
    double beta;

    AngleCoordS3(double t_, double alpha_, double beta_);
};

/// Point on S^2 in polar coordinates, theta in [0,pi], phi mod 2pi.
struct AngleCoordS2 {
    double theta;
    double phi;

    AngleCoordS2(double theta_, double phi_);
};

/// Diagonal round metric on S^3 in the (t, alpha, beta) chart:
/// ds^2 = dt^2/4 + cos^2(t/2) da^2 + sin^2(t/2) db^2, Jacobian v = sin(t)/4.
struct MetricDiagS3 {
    static constexpr double g_tt = 0.25;
    static double g_aa(double t);
    static double g_bb(double t);
    static double jacobian(double t);
};

Eigen::Vector4d s3_embed(const AngleCoordS3& p);

/// Chart inverse of s3_embed; well-defined away from t = 0, pi where one
/// angle circle degenerates.
AngleCoordS3 s3_extract(const Eigen::Vector4d& y);

/// Stereographic projection w.r.t. the pole (t = pi, beta = pi/2).
/// Throws PoleError when 1 - sin(t/2)sin(beta) < 1e-12.
Eigen::Vector3d stereographic_project(const AngleCoordS3& p);

/// Complex scalar field sampled on a QuadratureGrid, index order
/// f[(it*Na + ia)*Nb + ib].
using GridFn = std::vector<Cplx>;

/// Tensor-product quadrature over (t, alpha, beta).
///
/// t-rule: Gauss-Legendre in x = sin^2(t/2) mapped to (0, pi) through
/// t = 2 asin(sqrt(x)); this absorbs the volume factor v = sin(t)/4 so that
/// every integrand polynomial in cos(t) is integrated exactly, and no node
/// sits on the chart singularities t = 0, pi. alpha/beta: uniform periodic
/// rules (trapezoidal), spectrally exact on the trigonometric modes in scope.
class QuadratureGrid {
public:
    QuadratureGrid(int nt, int na, int nb);

    int nt() const { return nt_; }
    int na() const { return na_; }
    int nb() const { return nb_; }
    std::size_t size() const { return t_.size() * a_.size() * b_.size(); }
    std::size_t index(int it, int ia, int ib) const {
        return (static_cast<std::size_t>(it) * na_ + ia) * nb_ + ib;
    }

    double t_node(int i) const { return t_[i]; }
    /// Open-rule t-weight WITHOUT the volume factor (dt weight).
    double t_weight(int i) const { return tw_[i]; }
    double alpha_node(int j) const { return a_[j]; }
    double beta_node(int k) const { return b_[k]; }
    AngleCoordS3 point(int it, int ia, int ib) const {
        return AngleCoordS3(t_[it], a_[ia], b_[ib]);
    }

    /// Per-node volume weight, t_weight * (2pi/Na) * (2pi/Nb) * v(t).
    double volume_weight(int it) const { return vw_[it]; }

    /// Integral of f against the S^3 volume measure v dt da db.
    Cplx integrate_volume(const GridFn& f) const;
    /// Integral of f against the plain chart measure dt da db (3-forms).
    Cplx integrate_coordinate(const GridFn& f) const;

    double norm_l2(const GridFn& f) const;

    // derivatives: spectral in alpha/beta, local-polynomial FD in t
    GridFn d_t(const GridFn& f) const;
    GridFn d2_t(const GridFn& f) const;
    GridFn d_alpha(const GridFn& f) const;
    GridFn d2_alpha(const GridFn& f) const;
    GridFn d_beta(const GridFn& f) const;
    GridFn d2_beta(const GridFn& f) const;

    /// Sample a smooth function over all nodes.
    template <typename F>
    GridFn sample(F&& fn) const {
        GridFn out(size());
        for (int it = 0; it < nt_; ++it)
            for (int ia = 0; ia < na_; ++ia)
                for (int ib = 0; ib < nb_; ++ib)
                    out[index(it, ia, ib)] = fn(point(it, ia, ib));
        return out;
    }

private:
    int nt_, na_, nb_;
    std::vector<double> t_, tw_, vw_;  // t nodes, dt weights, volume weights
    std::vector<double> a_, b_;
    Eigen::MatrixXd dt1_, dt2_;        // t differentiation matrices
    Eigen::MatrixXcd da1_, da2_, db1_, db2_;

    GridFn apply_t_matrix(const Eigen::MatrixXd& D, const GridFn& f) const;
    GridFn apply_alpha_matrix(const Eigen::MatrixXcd& D, const GridFn& f) const;
    GridFn apply_beta_matrix(const Eigen::MatrixXcd& D, const GridFn& f) const;
};

/// Scalar Laplacian on S^3:
///   4 d_t^2 + 4 (cos t / sin t) d_t + d_a^2/cos^2(t/2) + d_b^2/sin^2(t/2).
GridFn laplacian_apply(const GridFn& f, const QuadratureGrid& grid);

/// Tensor-product quadrature over S^2: Gauss-Legendre in cos(theta) times a
/// uniform periodic phi rule. area_weight includes sin(theta) dtheta dphi.
class GridS2 {
public:
    GridS2(int ntheta, int nphi);

    int ntheta() const { return ntheta_; }
    int nphi() const { return nphi_; }
    double theta_node(int i) const { return th_[i]; }
    /// dtheta weight (no sin factor).
    double theta_weight(int i) const { return thw_[i]; }
    double phi_node(int j) const { return ph_[j]; }
    double dphi() const { return dphi_; }
    /// Weight for integrals against sin(theta) dtheta dphi.
    double area_weight(int i) const { return aw_[i] * dphi_; }

private:
    int ntheta_, nphi_;
    double dphi_;
    std::vector<double> th_, thw_, aw_, ph_;
};

}  // namespace berrylink
