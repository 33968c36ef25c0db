#include "berrylink/manifold.hpp"

#include <cmath>
#include <numbers>

#include "berrylink/numeric.hpp"

namespace berrylink {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

AngleCoordS3::AngleCoordS3(double t_, double alpha_, double beta_)
    : t(t_), alpha(numeric::wrap_angle(alpha_)), beta(numeric::wrap_angle(beta_)) {
    if (t < -1e-12 || t > kPi + 1e-12)
        throw ConfigError("AngleCoordS3: t outside [0, pi]");
    if (t < 0.0) t = 0.0;
    if (t > kPi) t = kPi;
}

AngleCoordS2::AngleCoordS2(double theta_, double phi_)
    : theta(theta_), phi(numeric::wrap_angle(phi_)) {
    if (theta < -1e-12 || theta > kPi + 1e-12)
        throw ConfigError("AngleCoordS2: theta outside [0, pi]");
    if (theta < 0.0) theta = 0.0;
    if (theta > kPi) theta = kPi;
}

double MetricDiagS3::g_aa(double t) {
    const double c = std::cos(0.5 * t);
    return c * c;
}

double MetricDiagS3::g_bb(double t) {
    const double s = std::sin(0.5 * t);
    return s * s;
}

double MetricDiagS3::jacobian(double t) { return 0.25 * std::sin(t); }

Eigen::Vector4d s3_embed(const AngleCoordS3& p) {
    const double c = std::cos(0.5 * p.t);
    const double s = std::sin(0.5 * p.t);
    return {c * std::cos(p.alpha), c * std::sin(p.alpha),
            s * std::cos(p.beta), s * std::sin(p.beta)};
}

AngleCoordS3 s3_extract(const Eigen::Vector4d& y) {
    const double c = std::hypot(y[0], y[1]);
    const double s = std::hypot(y[2], y[3]);
    const double t = 2.0 * std::atan2(s, c);
    const double alpha = (c > 0.0) ? std::atan2(y[1], y[0]) : 0.0;
    const double beta = (s > 0.0) ? std::atan2(y[3], y[2]) : 0.0;
    return AngleCoordS3(t, alpha, beta);
}

Eigen::Vector3d stereographic_project(const AngleCoordS3& p) {
    const double c = std::cos(0.5 * p.t);
    const double s = std::sin(0.5 * p.t);
    const double denom = 1.0 - s * std::sin(p.beta);
    if (denom < 1e-12)
        throw PoleError("stereographic_project: point at the projection pole");
    return {c * std::cos(p.alpha) / denom, c * std::sin(p.alpha) / denom,
            s * std::cos(p.beta) / denom};
}

QuadratureGrid::QuadratureGrid(int nt, int na, int nb) : nt_(nt), na_(na), nb_(nb) {
    if (nt < 4 || na < 4 || nb < 4)
        throw SizeError("QuadratureGrid: all sizes must be >= 4");

    // Gauss-Legendre in x = sin^2(t/2); v dt = dx/2.
    numeric::GaussRule gl = numeric::gauss_legendre(nt, 0.0, 1.0);
    t_.resize(nt);
    tw_.resize(nt);
    vw_.resize(nt);
    const double cell = (kTwoPi / na) * (kTwoPi / nb);
    for (int i = 0; i < nt; ++i) {
        const double x = gl.nodes[i];
        t_[i] = 2.0 * std::asin(std::sqrt(x));
        const double v = MetricDiagS3::jacobian(t_[i]);
        tw_[i] = 0.5 * gl.weights[i] / v;
        vw_[i] = 0.5 * gl.weights[i] * cell;
    }

    a_.resize(na);
    for (int j = 0; j < na; ++j) a_[j] = kTwoPi * j / na;
    b_.resize(nb);
    for (int k = 0; k < nb; ++k) b_[k] = kTwoPi * k / nb;

    // t-derivative matrices: 9-point local polynomial stencils (order 8);
    // the Casimir residual tests certify the accuracy.
    const int stencil = std::min(9, nt);
    std::vector<double> m1 = numeric::fd_matrix(t_, 1, stencil);
    std::vector<double> m2 = numeric::fd_matrix(t_, 2, stencil);
    dt1_.resize(nt, nt);
    dt2_.resize(nt, nt);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < nt; ++j) {
            dt1_(i, j) = m1[static_cast<std::size_t>(i) * nt + j];
            dt2_(i, j) = m2[static_cast<std::size_t>(i) * nt + j];
        }

    // Spectral differentiation matrices for the periodic angles.
    auto spectral = [](int n, int order) {
        Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(n, n);
        for (int k = -n / 2; k < (n + 1) / 2; ++k) {
            Cplx ik(0.0, static_cast<double>(k));
            if (order == 1 && 2 * std::abs(k) == n) continue;  // drop Nyquist
            Cplx factor = (order == 1) ? ik : ik * ik;
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c) {
                    const double ang = kTwoPi * k * (r - c) / n;
                    D(r, c) += factor * std::polar(1.0 / n, ang);
                }
        }
        return D;
    };
    da1_ = spectral(na, 1);
    da2_ = spectral(na, 2);
    if (nb == na) {
        db1_ = da1_;
        db2_ = da2_;
    } else {
        db1_ = spectral(nb, 1);
        db2_ = spectral(nb, 2);
    }
}

Cplx QuadratureGrid::integrate_volume(const GridFn& f) const {
    Cplx acc(0.0, 0.0);
    for (int it = 0; it < nt_; ++it) {
        Cplx slab(0.0, 0.0);
        const std::size_t base = static_cast<std::size_t>(it) * na_ * nb_;
        for (std::size_t r = 0; r < static_cast<std::size_t>(na_) * nb_; ++r)
            slab += f[base + r];
        acc += vw_[it] * slab;
    }
    return acc;
}

Cplx QuadratureGrid::integrate_coordinate(const GridFn& f) const {
    const double cell = (kTwoPi / na_) * (kTwoPi / nb_);
    Cplx acc(0.0, 0.0);
    for (int it = 0; it < nt_; ++it) {
        Cplx slab(0.0, 0.0);
        const std::size_t base = static_cast<std::size_t>(it) * na_ * nb_;
        for (std::size_t r = 0; r < static_cast<std::size_t>(na_) * nb_; ++r)
            slab += f[base + r];
        acc += tw_[it] * cell * slab;
    }
    return acc;
}

double QuadratureGrid::norm_l2(const GridFn& f) const {
    double acc = 0.0;
    for (int it = 0; it < nt_; ++it) {
        double slab = 0.0;
        const std::size_t base = static_cast<std::size_t>(it) * na_ * nb_;
        for (std::size_t r = 0; r < static_cast<std::size_t>(na_) * nb_; ++r)
            slab += std::norm(f[base + r]);
        acc += vw_[it] * slab;
    }
    return std::sqrt(acc);
}

GridFn QuadratureGrid::apply_t_matrix(const Eigen::MatrixXd& D, const GridFn& f) const {
    GridFn out(f.size(), Cplx(0.0, 0.0));
    const std::size_t stride = static_cast<std::size_t>(na_) * nb_;
    for (int i = 0; i < nt_; ++i)
        for (int j = 0; j < nt_; ++j) {
            const double d = D(i, j);
            if (d == 0.0) continue;
            const std::size_t oi = i * stride, oj = j * stride;
            for (std::size_t r = 0; r < stride; ++r) out[oi + r] += d * f[oj + r];
        }
    return out;
}

GridFn QuadratureGrid::apply_alpha_matrix(const Eigen::MatrixXcd& D, const GridFn& f) const {
    GridFn out(f.size(), Cplx(0.0, 0.0));
    for (int it = 0; it < nt_; ++it)
        for (int ia = 0; ia < na_; ++ia) {
            const std::size_t oi = index(it, ia, 0);
            for (int ja = 0; ja < na_; ++ja) {
                const Cplx d = D(ia, ja);
                const std::size_t oj = index(it, ja, 0);
                for (int ib = 0; ib < nb_; ++ib) out[oi + ib] += d * f[oj + ib];
            }
        }
    return out;
}

GridFn QuadratureGrid::apply_beta_matrix(const Eigen::MatrixXcd& D, const GridFn& f) const {
    GridFn out(f.size(), Cplx(0.0, 0.0));
    for (int it = 0; it < nt_; ++it)
        for (int ia = 0; ia < na_; ++ia) {
            const std::size_t base = index(it, ia, 0);
            for (int ib = 0; ib < nb_; ++ib) {
                Cplx acc(0.0, 0.0);
                for (int jb = 0; jb < nb_; ++jb) acc += D(ib, jb) * f[base + jb];
                out[base + ib] = acc;
            }
        }
    return out;
}

GridFn QuadratureGrid::d_t(const GridFn& f) const { return apply_t_matrix(dt1_, f); }
GridFn QuadratureGrid::d2_t(const GridFn& f) const { return apply_t_matrix(dt2_, f); }
GridFn QuadratureGrid::d_alpha(const GridFn& f) const { return apply_alpha_matrix(da1_, f); }
GridFn QuadratureGrid::d2_alpha(const GridFn& f) const { return apply_alpha_matrix(da2_, f); }
GridFn QuadratureGrid::d_beta(const GridFn& f) const { return apply_beta_matrix(db1_, f); }
GridFn QuadratureGrid::d2_beta(const GridFn& f) const { return apply_beta_matrix(db2_, f); }

GridFn laplacian_apply(const GridFn& f, const QuadratureGrid& grid) {
    GridFn ft = grid.d_t(f);
    GridFn ftt = grid.d2_t(f);
    GridFn faa = grid.d2_alpha(f);
    GridFn fbb = grid.d2_beta(f);
    GridFn out(f.size());
    for (int it = 0; it < grid.nt(); ++it) {
        const double t = grid.t_node(it);
        const double cot = std::cos(t) / std::sin(t);
        const double ica = 1.0 / MetricDiagS3::g_aa(t);
        const double icb = 1.0 / MetricDiagS3::g_bb(t);
        for (int ia = 0; ia < grid.na(); ++ia)
            for (int ib = 0; ib < grid.nb(); ++ib) {
                const std::size_t q = grid.index(it, ia, ib);
                out[q] = 4.0 * ftt[q] + 4.0 * cot * ft[q] + ica * faa[q] + icb * fbb[q];
            }
    }
    return out;
}

GridS2::GridS2(int ntheta, int nphi) : ntheta_(ntheta), nphi_(nphi) {
    if (ntheta < 4 || nphi < 4)
        throw SizeError("GridS2: sizes must be >= 4");
    numeric::GaussRule gl = numeric::gauss_legendre(ntheta, -1.0, 1.0);
    th_.resize(ntheta);
    thw_.resize(ntheta);
    aw_.resize(ntheta);
    // descending in x = cos(theta) gives ascending theta
    for (int i = 0; i < ntheta; ++i) {
        const double x = gl.nodes[ntheta - 1 - i];
        th_[i] = std::acos(x);
        aw_[i] = gl.weights[ntheta - 1 - i];          // weight for sin(th) dth
        thw_[i] = aw_[i] / std::sin(th_[i]);          // plain dtheta weight
    }
    dphi_ = kTwoPi / nphi;
    ph_.resize(nphi);
    for (int j = 0; j < nphi; ++j) ph_[j] = dphi_ * j;
}

}  // namespace berrylink
