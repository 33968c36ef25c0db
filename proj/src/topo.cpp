#include "berrylink/topo.hpp"

#include <cmath>
#include <complex>
#include <numbers>

namespace berrylink {

namespace {
constexpr double kPi = std::numbers::pi;

double round_half_integer(double x) { return 0.5 * std::round(2.0 * x); }
}  // namespace

InvariantResult chern_number(const MapSpec& s2map, const GridS2& grid) {
    if (!s2map.is_s2())
        throw DomainMismatch("chern_number: spec is not an S^2 map");
    InvariantResult r;
    r.raw = 0.5 * pontrjagin_index(s2map, grid);
    r.normalized = r.raw;
    r.rounded = round_half_integer(r.raw);
    r.residual = std::abs(r.raw - r.rounded);
    return r;
}

InvariantResult chern_number_plaquette(const HermitianField& field, int band,
                                       int ntheta, int nphi) {
    if (ntheta < 4 || nphi < 4)
        throw SizeError("chern_number_plaquette: lattice must be >= 4x4");

    // band eigenvector at each lattice vertex; poles evaluated once
    const int nv = ntheta + 1;
    std::vector<Eigen::VectorXcd> psi(static_cast<std::size_t>(nv) * nphi);
    auto vec_at = [&](int i, int j) -> Eigen::VectorXcd& {
        return psi[static_cast<std::size_t>(i) * nphi + j];
    };
    for (int i = 0; i <= ntheta; ++i) {
        const double theta = kPi * i / ntheta;
        const bool pole = (i == 0 || i == ntheta);
        for (int j = 0; j < nphi; ++j) {
            if (pole && j > 0) {
                vec_at(i, j) = vec_at(i, 0);
                continue;
            }
            const double phi = 2.0 * kPi * j / nphi;
            Eigen::MatrixXcd H = field(AngleCoordS2(theta, phi));
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
            if (es.info() != Eigen::Success)
                throw ConvergenceError("chern_number_plaquette: eigensolve failed");
            if (band < 0 || band >= H.rows())
                throw ConfigError("chern_number_plaquette: band index out of range");
            vec_at(i, j) = es.eigenvectors().col(band);
        }
    }

    auto link = [&](int i1, int j1, int i2, int j2) {
        const Cplx u = vec_at(i1, j1 % nphi).dot(vec_at(i2, j2 % nphi));
        if (std::abs(u) < 1e-6)
            throw BandDegeneracy("chern_number_plaquette: vanishing link overlap");
        return u;
    };

    double total = 0.0;
    for (int i = 0; i < ntheta; ++i)
        for (int j = 0; j < nphi; ++j) {
            const Cplx w = link(i, j, i + 1, j) * link(i + 1, j, i + 1, j + 1) *
                           link(i + 1, j + 1, i, j + 1) * link(i, j + 1, i, j);
            total += std::arg(w);
        }

    InvariantResult r;
    const double winding = total / (2.0 * kPi);  // integer-quantized
    r.raw = 0.5 * winding;
    r.normalized = r.raw;
    r.rounded = round_half_integer(r.raw);
    r.residual = std::abs(r.raw - r.rounded);
    return r;
}

HermitianField spin1_identity_field() {
    const double s = 1.0 / std::sqrt(2.0);
    Eigen::Matrix3cd Sx, Sy, Sz;
    Sx << 0, s, 0, s, 0, s, 0, s, 0;
    Sy << 0, Cplx(0, -s), 0, Cplx(0, s), 0, Cplx(0, -s), 0, Cplx(0, s), 0;
    Sz << 1, 0, 0, 0, 0, 0, 0, 0, -1;
    return [Sx, Sy, Sz](const AngleCoordS2& p) -> Eigen::MatrixXcd {
        const double st = std::sin(p.theta);
        return st * std::cos(p.phi) * Sx + st * std::sin(p.phi) * Sy +
               std::cos(p.theta) * Sz;
    };
}

HermitianField hsigma_field(const MapSpec& s2map) {
    if (!s2map.is_s2())
        throw DomainMismatch("hsigma_field: spec is not an S^2 map");
    return [s2map](const AngleCoordS2& p) -> Eigen::MatrixXcd {
        const UnitVec3 h = eval_map(s2map, p);
        Eigen::Matrix2cd H;
        H << h.z(), Cplx(h.x(), -h.y()), Cplx(h.x(), h.y()), -h.z();
        return H;
    };
}

InvariantResult chern_simons_raw(const MapSpec& hopf, const QuadratureGrid& grid) {
    if (hopf.kind != MapSpec::Kind::HopfS3)
        throw DomainMismatch("chern_simons_raw: spec is not a Hopf variant");

    // A ^ dA = (A_t F_ab - A_alpha F_tb + A_beta F_ta) dt^da^db
    GridFn density = grid.sample([&](const AngleCoordS3& p) -> Cplx {
        const ConnectionS3 A = connection_analytic(hopf, p);
        const CurvatureS3 F = curvature_from_h(hopf, p);
        return A.A_t * F.F_ab - A.A_alpha * F.F_tb + A.A_beta * F.F_ta;
    });

    InvariantResult r;
    r.raw = grid.integrate_coordinate(density).real();
    r.normalized = r.raw / (4.0 * kPi);
    const double msq_units = r.raw / (-4.0 * kPi * kPi);
    r.rounded = std::round(msq_units);
    r.residual = std::abs(r.raw - (-4.0 * kPi * kPi) * r.rounded);
    return r;
}

namespace {

double seg_seg_distance(const Eigen::Vector3d& p1, const Eigen::Vector3d& q1,
                        const Eigen::Vector3d& p2, const Eigen::Vector3d& q2) {
    // closest distance between segments [p1,q1] and [p2,q2]
    const Eigen::Vector3d d1 = q1 - p1, d2 = q2 - p2, r = p1 - p2;
    const double a = d1.squaredNorm(), e = d2.squaredNorm(), f = d2.dot(r);
    double s = 0.0, t = 0.0;
    if (a <= 1e-30 && e <= 1e-30) return r.norm();
    if (a <= 1e-30) {
        t = std::clamp(f / e, 0.0, 1.0);
    } else {
        const double c = d1.dot(r);
        if (e <= 1e-30) {
            s = std::clamp(-c / a, 0.0, 1.0);
        } else {
            const double b = d1.dot(d2);
            const double denom = a * e - b * b;
            if (denom > 1e-30) s = std::clamp((b * f - c * e) / denom, 0.0, 1.0);
            t = (b * s + f) / e;
            if (t < 0.0) {
                t = 0.0;
                s = std::clamp(-c / a, 0.0, 1.0);
            } else if (t > 1.0) {
                t = 1.0;
                s = std::clamp((b - c) / a, 0.0, 1.0);
            }
        }
    }
    return (p1 + s * d1 - (p2 + t * d2)).norm();
}

struct SegmentSoup {
    std::vector<Eigen::Vector3d> mid, dir;
    double max_half_len = 0.0;
};

SegmentSoup to_segments(const std::vector<Eigen::Vector3d>& pts, int refine) {
    SegmentSoup s;
    const std::size_t n = pts.size() - 1;  // closing point repeated
    s.mid.reserve(n * refine);
    s.dir.reserve(n * refine);
    for (std::size_t i = 0; i < n; ++i) {
        const Eigen::Vector3d a = pts[i];
        const Eigen::Vector3d step = (pts[i + 1] - pts[i]) / refine;
        for (int k = 0; k < refine; ++k) {
            s.mid.push_back(a + (k + 0.5) * step);
            s.dir.push_back(step);
            s.max_half_len = std::max(s.max_half_len, 0.5 * step.norm());
        }
    }
    return s;
}

double gauss_sum(const SegmentSoup& c1, const SegmentSoup& c2) {
    double acc = 0.0;
    for (std::size_t i = 0; i < c1.mid.size(); ++i) {
        const Eigen::Vector3d mi = c1.mid[i], di = c1.dir[i];
        for (std::size_t j = 0; j < c2.mid.size(); ++j) {
            const Eigen::Vector3d r = mi - c2.mid[j];
            const double rn = r.norm();
            acc += di.cross(c2.dir[j]).dot(r) / (rn * rn * rn);
        }
    }
    return acc / (4.0 * kPi);
}

void check_curve(const Polyline3& c, const char* which) {
    if (!c.closed) throw OpenCurve(std::string("linking_number: ") + which + " is not closed");
    if (c.pts.size() < 2 || (c.pts.front() - c.pts.back()).norm() > 1e-9)
        throw OpenCurve(std::string("linking_number: ") + which +
                        " does not repeat its first point");
    if (c.pts.size() - 1 < 16)
        throw SizeError(std::string("linking_number: ") + which + " has fewer than 16 segments");
}

}  // namespace

double linking_number(const Polyline3& c1, const Polyline3& c2) {
    check_curve(c1, "curve 1");
    check_curve(c2, "curve 2");

    const SegmentSoup s1 = to_segments(c1.pts, 1);
    const SegmentSoup s2 = to_segments(c2.pts, 1);

    // proximity check: exact segment distance wherever the midpoint bound allows < 1e-6
    const double guard = s1.max_half_len + s2.max_half_len + 1e-6;
    for (std::size_t i = 0; i < s1.mid.size(); ++i)
        for (std::size_t j = 0; j < s2.mid.size(); ++j) {
            if ((s1.mid[i] - s2.mid[j]).norm() >= guard) continue;
            const double d = seg_seg_distance(
                s1.mid[i] - 0.5 * s1.dir[i], s1.mid[i] + 0.5 * s1.dir[i],
                s2.mid[j] - 0.5 * s2.dir[j], s2.mid[j] + 0.5 * s2.dir[j]);
            if (d < 1e-6) throw CurvesTooClose("linking_number: curves closer than 1e-6");
        }

    const double coarse = gauss_sum(s1, s2);
    const double fine = gauss_sum(to_segments(c1.pts, 2), to_segments(c2.pts, 2));
    return (4.0 * fine - coarse) / 3.0;
}

}  // namespace berrylink
